use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use lemotif_core::domain::Entry;
use lemotif_core::eval::{
    consistency_check, cross_validate, evaluate, preference_tally, samples_from_entries, score_samples, Averaging,
    EvalError, EvalOptions, Factor, Prediction, PreferenceMatrix, TestUnit, ThresholdMetrics,
};
use lemotif_core::motifs::DEFAULT_SEED;
use serde::Deserialize;
use serde_json::{json, Value};

use super::{print_json, SeedArg};
use crate::config::Config;
use crate::error::{CliError, Kind, Result};
use crate::input::Source;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// JSON array of labeled entries.
    #[arg(required_unless_present = "preferences", conflicts_with = "preferences")]
    dataset: Option<PathBuf>,
    /// Comma list (`0.2,0.5`) or range `start:end:step`.
    #[arg(long, default_value = "0.1:0.9:0.1")]
    thresholds: String,
    #[arg(long, default_value_t = 5)]
    splits: usize,
    /// Held-out share of each split.
    #[arg(long, default_value_t = 0.2)]
    split_frac: f64,
    #[arg(long)]
    seed: Option<SeedArg>,
    /// Score the whole dataset once instead of held-out splits.
    #[arg(long)]
    whole: bool,
    /// Average per-label metrics instead of pooling counts.
    #[arg(long = "macro")]
    macro_average: bool,
    /// Count only the labels a motif would use (top topic, four emotions).
    #[arg(long)]
    salient: bool,
    /// Also write one CSV row per threshold.
    #[arg(long, value_name = "FILE")]
    csv: Option<PathBuf>,
    #[arg(long, value_name = "URL")]
    remote: Option<String>,
    /// Preference study file: consistency per subject plus factor tallies.
    #[arg(long, value_name = "FILE")]
    preferences: Option<PathBuf>,
}

/// Parses `a,b,c` or `start:end:step`, rounding away float drift.
pub fn parse_thresholds(spec: &str) -> Result<Vec<f64>> {
    let bad = || CliError::bad_input(format!("bad --thresholds `{spec}`"));
    let num = |s: &str| s.trim().parse::<f64>().map_err(|_| bad());
    let values = if let [start, end, step] = spec.split(':').collect::<Vec<_>>()[..] {
        let (start, end, step) = (num(start)?, num(end)?, num(step)?);
        if step <= 0.0 || end < start {
            return Err(bad());
        }
        let n = ((end - start) / step + 1e-9).floor() as usize;
        (0..=n).map(|i| ((start + i as f64 * step) * 1e9).round() / 1e9).collect()
    } else {
        spec.split(',').map(num).collect::<Result<Vec<_>>>()?
    };
    if values.is_empty() || values.iter().any(|t| !(0.0..=1.0).contains(t)) {
        return Err(bad());
    }
    Ok(values)
}

fn eval_error(e: EvalError) -> CliError {
    match e {
        EvalError::Classify(c) => c.into(),
        other => CliError::bad_input(other.to_string()),
    }
}

fn row_json(m: &ThresholdMetrics) -> Value {
    json!({
        "f1": m.f1.value,
        "norm_acc": m.norm_acc.value,
        "flags": m.flags,
        "counts": m.counts,
        "splits": m.splits.iter().map(|s| json!({ "f1": s.f1.value, "norm_acc": s.norm_acc.value })).collect::<Vec<_>>(),
    })
}

fn csv(rows: &[ThresholdMetrics]) -> String {
    let mut out = String::from("threshold,f1,norm_acc,tp,fp,tn,fn,flags\n");
    for m in rows {
        let c = m.counts;
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            m.threshold,
            m.f1.value,
            m.norm_acc.value,
            c.tp,
            c.fp,
            c.tn,
            c.fn_,
            m.flags.join(";")
        );
    }
    out
}

pub fn run(config: &Config, args: Args) -> Result<()> {
    if let Some(path) = &args.preferences {
        return preferences(path);
    }
    let thresholds = parse_thresholds(&args.thresholds)?;
    let seed = match args.seed {
        Some(s) => s.resolve()?,
        None => config.seed.unwrap_or(DEFAULT_SEED),
    };
    let path = args.dataset.as_deref().expect("clap requires a dataset");
    let source = Source::read(Some(path), None)?;
    let entries: Vec<Entry> = source.parse_json()?;
    let samples = samples_from_entries(&entries).map_err(eval_error)?;
    let options = EvalOptions {
        averaging: if args.macro_average { Averaging::Macro } else { Averaging::Micro },
        prediction: if args.salient { Prediction::Salient } else { Prediction::AboveThreshold },
    };
    let backend = config.backend(args.remote.as_deref())?;
    let rows = if args.whole {
        let probs = score_samples(&samples, backend.as_ref()).map_err(eval_error)?;
        evaluate(&samples, &probs, &thresholds, options)
    } else {
        cross_validate(&samples, backend.as_ref(), args.splits, args.split_frac, &thresholds, seed, options)
    }
    .map_err(eval_error)?;

    if let Some(csv_path) = &args.csv {
        fs::write(csv_path, csv(&rows))
            .map_err(|e| CliError::bad_input(format!("cannot write {}: {e}", csv_path.display())))?;
    }
    let by_threshold: serde_json::Map<String, Value> =
        rows.iter().map(|m| (m.threshold.to_string(), row_json(m))).collect();
    print_json(&by_threshold)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct StudyFile {
    items: usize,
    /// Per subject, `[a, b, winner]` for every pair.
    subjects: Vec<Vec<(usize, usize, usize)>>,
    #[serde(default)]
    factors: Vec<FactorSpec>,
    #[serde(default)]
    unit: TestUnit,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FactorSpec {
    name: String,
    /// `[with, without]` item pairs.
    pairs: Vec<(usize, usize)>,
}

fn preferences(path: &std::path::Path) -> Result<()> {
    let study: StudyFile = Source::read(Some(path), None)?.parse_json()?;
    let matrices = study
        .subjects
        .iter()
        .enumerate()
        .map(|(i, choices)| {
            PreferenceMatrix::from_choices(study.items, choices)
                .map_err(|e| CliError::bad_input(format!("subject {i}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    let checks: Vec<Value> = matrices
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let c = consistency_check(m);
            json!({ "subject": i, "consistent": c.consistent, "violations": c.violations })
        })
        .collect();
    let consistent = checks.iter().filter(|c| c["consistent"] == true).count();
    let mut out = BTreeMap::new();
    out.insert("subjects", json!(checks));
    out.insert("consistent", json!(consistent));
    out.insert("inconsistent", json!(matrices.len() - consistent));
    if !study.factors.is_empty() {
        let factors: Vec<Factor> =
            study.factors.into_iter().map(|f| Factor { name: f.name, pairs: f.pairs }).collect();
        let tallies = preference_tally(&matrices, &factors, study.unit).map_err(|e| CliError::new(Kind::BadInput, e.to_string()))?;
        out.insert("factors", json!(tallies));
    }
    print_json(&out)
}
