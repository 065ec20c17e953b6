//! `lemotif`: analyze journal text, render motifs, preprocess icons,
//! evaluate the classifier and serve the HTTP API.

mod commands;
mod config;
mod error;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crate::config::Config;
use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "lemotif", version, about = "Turn journal entries into generative motifs")]
struct Cli {
    /// TOML config file; falls back to $LEMOTIF_CONFIG.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Extract topic and emotion labels from an entry.
    Analyze(commands::analyze::Args),
    /// Render an entry as a motif PNG with a JSON sidecar.
    Motif(commands::motif::Args),
    /// Turn `<topic>.png` icons into shape masks.
    Icons(commands::icons::Args),
    /// Threshold sweeps over a labeled dataset, or preference analysis.
    Eval(commands::eval::Args),
    /// Run the HTTP service.
    Serve(commands::serve::Args),
}

fn run(cli: Cli) -> Result<(), CliError> {
    let config = Config::discover(cli.config.as_deref())?;
    match cli.command {
        Command::Analyze(args) => commands::analyze::run(&config, args),
        Command::Motif(args) => commands::motif::run(&config, args),
        Command::Icons(args) => commands::icons::run(args),
        Command::Eval(args) => commands::eval::run(&config, args),
        Command::Serve(args) => commands::serve::run(&config, args),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            let err = CliError::bad_input(first.trim_start_matches("error: "));
            eprintln!("{err}");
            return err.exit_code();
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("{err}");
            err.exit_code()
        }
    }
}
