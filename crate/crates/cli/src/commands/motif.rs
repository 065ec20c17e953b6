use std::fs;
use std::path::{Path, PathBuf};

use lemotif_core::classify::classify_entry;
use lemotif_core::motifs::{render_entry, RenderContext, StyleId, DEFAULT_SEED};
use serde_json::Value;

use super::SeedArg;
use crate::config::Config;
use crate::error::{CliError, Result};
use crate::input::{MotifInput, Source};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Labels JSON (as printed by `analyze`), entry JSON or plain text.
    input: Option<PathBuf>,
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,
    #[arg(long)]
    style: Option<String>,
    /// Style parameters as a JSON object.
    #[arg(long, value_name = "JSON")]
    params: Option<String>,
    /// Integer seed (decimal or 0x hex) or `random`.
    #[arg(long)]
    seed: Option<SeedArg>,
    /// Output PNG; the sidecar goes next to it with a `.json` extension.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Panel side in pixels.
    #[arg(long)]
    size: Option<u32>,
    #[arg(long)]
    no_captions: bool,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long, value_name = "DIR")]
    shapes_dir: Option<PathBuf>,
    #[arg(long, value_name = "URL")]
    remote: Option<String>,
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| CliError::bad_input(format!("cannot create {}: {e}", parent.display())))?;
    }
    fs::write(path, bytes).map_err(|e| CliError::bad_input(format!("cannot write {}: {e}", path.display())))
}

pub fn run(config: &Config, args: Args) -> Result<()> {
    let style_name = args.style.as_deref().or(config.style.as_deref()).unwrap_or(StyleId::CirclePacking.name());
    let style: StyleId = style_name.parse().map_err(|e| CliError::bad_input(format!("{e}")))?;
    let params_json = match &args.params {
        Some(text) => serde_json::from_str::<Value>(text)
            .map_err(|e| CliError::bad_input(format!("--params is not valid JSON: {e}")))?,
        // config params belong to the config's style
        None if config.style.as_deref() == Some(style.name()) => config.params.clone().unwrap_or(Value::Null),
        None => Value::Null,
    };
    let params = style.parse_params(&params_json).map_err(|e| CliError::bad_input(format!("invalid params: {e}")))?;
    let seed = match args.seed {
        Some(s) => s.resolve()?,
        None => config.seed.unwrap_or(DEFAULT_SEED),
    };
    let shapes = config.shapes(args.shapes_dir.as_deref())?;
    let threshold = config.threshold(args.threshold)?;

    let (id, label_sets) = match Source::read(args.input.as_deref(), args.text.as_deref())?.motif_input()? {
        MotifInput::Labels { id, label_sets } => (id, label_sets),
        MotifInput::Entry(entry) => {
            let backend = config.backend(args.remote.as_deref())?;
            let sets = classify_entry(&entry, backend.as_ref(), threshold)?;
            (entry.id, sets)
        }
    };
    let ctx = RenderContext::new(config.palette()?, &shapes, config.canvas_size(args.size));
    let motif = render_entry(&label_sets, &params, seed, &ctx, !args.no_captions)?;

    let out = match args.out {
        Some(path) => path,
        None => config.out_dir.clone().unwrap_or_default().join(format!("{id}-{}.png", style.name())),
    };
    write(&out, &motif.image.encode_png())?;
    let mut sidecar = serde_json::to_string_pretty(&motif.sidecar(&id)).map_err(|e| CliError::internal(e.to_string()))?;
    sidecar.push('\n');
    write(&out.with_extension("json"), sidecar.as_bytes())?;
    println!("{}", out.display());
    Ok(())
}
