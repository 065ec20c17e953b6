use std::path::PathBuf;

use lemotif_core::classify::{score_entry, select_labels};
use serde_json::json;

use super::print_json;
use crate::config::Config;
use crate::error::Result;
use crate::input::Source;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Entry JSON or plain text; `-` reads stdin.
    input: Option<PathBuf>,
    /// Analyze this text instead of a file.
    #[arg(long, conflicts_with = "input")]
    text: Option<String>,
    #[arg(long)]
    threshold: Option<f64>,
    /// Also print every label probability.
    #[arg(long)]
    probs: bool,
    /// Remote classifier endpoint, overriding the lexicon.
    #[arg(long, value_name = "URL")]
    remote: Option<String>,
}

pub fn run(config: &Config, args: Args) -> Result<()> {
    let threshold = config.threshold(args.threshold)?;
    let entry = Source::read(args.input.as_deref(), args.text.as_deref())?.entry()?;
    let backend = config.backend(args.remote.as_deref())?;
    let probs = score_entry(&entry, backend.as_ref())?;
    let label_sets: Vec<_> = probs.iter().map(|p| select_labels(p, threshold)).collect();
    let mut out = json!({ "id": entry.id, "threshold": threshold, "label_sets": label_sets });
    if args.probs {
        out["probs"] = probs.iter().map(|p| p.to_json()).collect();
    }
    print_json(&out)
}
