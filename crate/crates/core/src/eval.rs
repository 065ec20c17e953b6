//! Multi-label metrics, held-out threshold sweeps and pairwise-preference
//! analysis.
//!
//! The lexicon backend has nothing to train, so [`cross_validate`] is
//! repeated held-out scoring: each split reshuffles the samples and scores
//! only the held-out share. Do not expect the headline accuracy of a
//! trained classifier from it.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, StudentsT};
use thiserror::Error;

use crate::classify::{select_labels, Classifier, ClassifyError, LabelProbs};
use crate::domain::{Emotion, Entry, Topic};
use crate::render::Rng;

/// Topics plus emotions.
pub const LABEL_COUNT: usize = Topic::COUNT + Emotion::COUNT;

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("EmptyDataset: no labeled samples")]
    EmptyDataset,
    #[error("entry {entry} sub-entry {index} has no ground-truth {missing}")]
    MissingLabels { entry: String, index: usize, missing: &'static str },
    #[error("split_frac must lie strictly between 0 and 1, got {0}")]
    SplitFrac(f64),
    #[error("need at least one split")]
    NoSplits,
    #[error("threshold {0} outside [0, 1]")]
    Threshold(f64),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("IncompleteMatrix: {0}")]
    IncompleteMatrix(String),
    #[error("need at least 2 preference matrices, got {0}")]
    TooFewMatrices(usize),
    #[error("NoRelevantPairs: factor {0} matched no compared pair")]
    NoRelevantPairs(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ConfusionCounts {
    pub tp: u64,
    pub fp: u64,
    pub tn: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
}

impl ConfusionCounts {
    pub fn record(&mut self, predicted: bool, actual: bool) {
        match (predicted, actual) {
            (true, true) => self.tp += 1,
            (true, false) => self.fp += 1,
            (false, false) => self.tn += 1,
            (false, true) => self.fn_ += 1,
        }
    }

    pub fn merge(&mut self, other: &ConfusionCounts) {
        self.tp += other.tp;
        self.fp += other.fp;
        self.tn += other.tn;
        self.fn_ += other.fn_;
    }

    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.tn + self.fn_
    }
}

/// A metric value; `undefined` marks a zero denominator, in which case
/// `value` is 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metric {
    pub value: f64,
    pub undefined: bool,
}

impl Metric {
    const UNDEFINED: Metric = Metric { value: 0.0, undefined: true };

    fn defined(value: f64) -> Metric {
        Metric { value, undefined: false }
    }
}

pub fn f1(c: &ConfusionCounts) -> Metric {
    if c.tp + c.fp == 0 || c.tp + c.fn_ == 0 {
        return Metric::UNDEFINED;
    }
    let p = c.tp as f64 / (c.tp + c.fp) as f64;
    let r = c.tp as f64 / (c.tp + c.fn_) as f64;
    if p + r == 0.0 {
        // tp = 0: both rates are zero and the harmonic mean has no value
        return Metric { value: 0.0, undefined: true };
    }
    Metric::defined(2.0 * p * r / (p + r))
}

/// Mean of the true positive and true negative rates.
pub fn normalized_accuracy(c: &ConfusionCounts) -> Metric {
    if c.tp + c.fn_ == 0 || c.tn + c.fp == 0 {
        return Metric::UNDEFINED;
    }
    let tpr = c.tp as f64 / (c.tp + c.fn_) as f64;
    let tnr = c.tn as f64 / (c.tn + c.fp) as f64;
    Metric::defined((tpr + tnr) / 2.0)
}

/// Ground truth for one sub-entry.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LabeledSample {
    pub text: String,
    pub topics: Vec<Topic>,
    pub emotions: Vec<Emotion>,
}

impl LabeledSample {
    fn truth(&self) -> [bool; LABEL_COUNT] {
        let mut out = [false; LABEL_COUNT];
        for t in &self.topics {
            out[t.index()] = true;
        }
        for e in &self.emotions {
            out[Topic::COUNT + e.index()] = true;
        }
        out
    }
}

/// Flattens entries into samples; every sub-entry must carry both label
/// lists (an empty list is fine).
pub fn samples_from_entries(entries: &[Entry]) -> Result<Vec<LabeledSample>, EvalError> {
    let mut out = Vec::new();
    for entry in entries {
        for (index, sub) in entry.sub_entries.iter().enumerate() {
            let missing = |what| EvalError::MissingLabels { entry: entry.id.clone(), index, missing: what };
            let topics = sub.topics.clone().ok_or_else(|| missing("topics"))?;
            let emotions = sub.emotions.clone().ok_or_else(|| missing("emotions"))?;
            out.push(LabeledSample { text: sub.text.clone(), topics, emotions });
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Averaging {
    /// Pool confusion counts over all labels.
    #[default]
    Micro,
    /// Average per-label metrics.
    Macro,
}

/// Which labels count as predicted at a threshold.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Prediction {
    /// Every label scoring above the threshold.
    #[default]
    AboveThreshold,
    /// Only what [`select_labels`] keeps: the top topic and up to four
    /// emotions.
    Salient,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct EvalOptions {
    pub averaging: Averaging,
    pub prediction: Prediction,
}

fn predicted(p: &LabelProbs, threshold: f64, mode: Prediction) -> [bool; LABEL_COUNT] {
    let mut out = [false; LABEL_COUNT];
    match mode {
        Prediction::AboveThreshold => {
            for (slot, v) in out.iter_mut().zip(p.values()) {
                *slot = v > threshold;
            }
        }
        Prediction::Salient => {
            let ls = select_labels(p, threshold);
            if let Some(t) = ls.topic {
                out[t.index()] = true;
            }
            for e in ls.emotions {
                out[Topic::COUNT + e.index()] = true;
            }
        }
    }
    out
}

/// Per-label confusion counts for the given samples at one threshold.
pub fn label_counts(
    probs: &[LabelProbs],
    samples: &[LabeledSample],
    threshold: f64,
    mode: Prediction,
) -> [ConfusionCounts; LABEL_COUNT] {
    let mut counts = [ConfusionCounts::default(); LABEL_COUNT];
    for (p, s) in probs.iter().zip(samples) {
        let pred = predicted(p, threshold, mode);
        for ((c, &guess), actual) in counts.iter_mut().zip(&pred).zip(s.truth()) {
            c.record(guess, actual);
        }
    }
    counts
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scores {
    pub f1: Metric,
    pub norm_acc: Metric,
}

impl Scores {
    pub fn from_labels(counts: &[ConfusionCounts; LABEL_COUNT], averaging: Averaging) -> Scores {
        match averaging {
            Averaging::Micro => {
                let mut pooled = ConfusionCounts::default();
                counts.iter().for_each(|c| pooled.merge(c));
                Scores { f1: f1(&pooled), norm_acc: normalized_accuracy(&pooled) }
            }
            Averaging::Macro => {
                let mean = |m: fn(&ConfusionCounts) -> Metric| {
                    let ms: Vec<Metric> = counts.iter().map(m).collect();
                    Metric {
                        value: ms.iter().map(|m| m.value).sum::<f64>() / ms.len() as f64,
                        undefined: ms.iter().any(|m| m.undefined),
                    }
                };
                Scores { f1: mean(f1), norm_acc: mean(normalized_accuracy) }
            }
        }
    }
}

/// Metrics at one threshold, pooled over every held-out sample of every
/// split.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdMetrics {
    pub threshold: f64,
    pub f1: Metric,
    pub norm_acc: Metric,
    /// Micro-pooled counts, whatever the averaging mode.
    pub counts: ConfusionCounts,
    /// Metrics of each split on its own.
    pub splits: Vec<Scores>,
    pub flags: Vec<String>,
}

fn check_thresholds(thresholds: &[f64]) -> Result<(), EvalError> {
    match thresholds.iter().find(|t| !(0.0..=1.0).contains(*t)) {
        Some(&t) => Err(EvalError::Threshold(t)),
        None => Ok(()),
    }
}

/// Scores the samples once; every split and threshold reuses these.
pub fn score_samples(samples: &[LabeledSample], backend: &dyn Classifier) -> Result<Vec<LabelProbs>, EvalError> {
    samples.iter().map(|s| backend.score(&s.text).map_err(EvalError::from)).collect()
}

/// Metrics over the whole dataset, no splitting.
pub fn evaluate(
    samples: &[LabeledSample],
    probs: &[LabelProbs],
    thresholds: &[f64],
    options: EvalOptions,
) -> Result<Vec<ThresholdMetrics>, EvalError> {
    if samples.is_empty() {
        return Err(EvalError::EmptyDataset);
    }
    check_thresholds(thresholds)?;
    let all: Vec<usize> = (0..samples.len()).collect();
    Ok(thresholds.iter().map(|&t| sweep_point(samples, probs, std::slice::from_ref(&all), t, options)).collect())
}

fn sweep_point(
    samples: &[LabeledSample],
    probs: &[LabelProbs],
    splits: &[Vec<usize>],
    threshold: f64,
    options: EvalOptions,
) -> ThresholdMetrics {
    let mut pooled = [ConfusionCounts::default(); LABEL_COUNT];
    let mut per_split = Vec::with_capacity(splits.len());
    for held_out in splits {
        let p: Vec<LabelProbs> = held_out.iter().map(|&i| probs[i].clone()).collect();
        let s: Vec<LabeledSample> = held_out.iter().map(|&i| samples[i].clone()).collect();
        let counts = label_counts(&p, &s, threshold, options.prediction);
        for (acc, c) in pooled.iter_mut().zip(&counts) {
            acc.merge(c);
        }
        per_split.push(Scores::from_labels(&counts, options.averaging));
    }
    let scores = Scores::from_labels(&pooled, options.averaging);
    let mut micro = ConfusionCounts::default();
    pooled.iter().for_each(|c| micro.merge(c));
    let mut flags = Vec::new();
    if scores.f1.undefined {
        flags.push("f1_undefined".to_string());
    }
    if scores.norm_acc.undefined {
        flags.push("norm_acc_undefined".to_string());
    }
    ThresholdMetrics { threshold, f1: scores.f1, norm_acc: scores.norm_acc, counts: micro, splits: per_split, flags }
}

/// Held-out sample indices for each split. Split `s` shuffles with
/// `Rng::derive_seed(seed, s)` and holds out the first
/// `round(split_frac * n)` samples (at least one).
pub fn holdout_splits(n: usize, k: usize, split_frac: f64, seed: u64) -> Vec<Vec<usize>> {
    let held = ((split_frac * n as f64).round() as usize).clamp(1, n);
    (0..k as u64)
        .map(|s| {
            let mut idx: Vec<usize> = (0..n).collect();
            Rng::new(Rng::derive_seed(seed, s)).shuffle(&mut idx);
            idx.truncate(held);
            idx
        })
        .collect()
}

/// Repeated held-out evaluation: `k` seeded splits, each holding out
/// `split_frac` of the samples, metrics pooled per threshold.
pub fn cross_validate(
    samples: &[LabeledSample],
    backend: &dyn Classifier,
    k: usize,
    split_frac: f64,
    thresholds: &[f64],
    seed: u64,
    options: EvalOptions,
) -> Result<Vec<ThresholdMetrics>, EvalError> {
    if samples.is_empty() {
        return Err(EvalError::EmptyDataset);
    }
    if !(split_frac > 0.0 && split_frac < 1.0) {
        return Err(EvalError::SplitFrac(split_frac));
    }
    if k == 0 {
        return Err(EvalError::NoSplits);
    }
    check_thresholds(thresholds)?;
    let probs = score_samples(samples, backend)?;
    let splits = holdout_splits(samples.len(), k, split_frac, seed);
    Ok(thresholds.iter().map(|&t| sweep_point(samples, &probs, &splits, t, options)).collect())
}

/// One subject's pairwise choices over `n` items.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferenceMatrix {
    n: usize,
    /// `beats[a * n + b]`: a was chosen over b.
    beats: Vec<bool>,
}

impl PreferenceMatrix {
    /// Builds from `(a, b, winner)` choices; every unordered pair must
    /// appear exactly once.
    pub fn from_choices(n: usize, choices: &[(usize, usize, usize)]) -> Result<Self, EvalError> {
        let mut beats = vec![false; n * n];
        let mut seen = vec![false; n * n];
        for &(a, b, w) in choices {
            if a >= n || b >= n || a == b {
                return Err(EvalError::IncompleteMatrix(format!("invalid pair ({a}, {b}) for {n} items")));
            }
            if w != a && w != b {
                return Err(EvalError::IncompleteMatrix(format!("winner {w} not in pair ({a}, {b})")));
            }
            let (lo, hi) = (a.min(b), a.max(b));
            if seen[lo * n + hi] {
                return Err(EvalError::IncompleteMatrix(format!("pair ({lo}, {hi}) given twice")));
            }
            seen[lo * n + hi] = true;
            let l = if w == a { b } else { a };
            beats[w * n + l] = true;
        }
        let expected = n * n.saturating_sub(1) / 2;
        if choices.len() != expected {
            return Err(EvalError::IncompleteMatrix(format!("{} of {expected} pairs present", choices.len())));
        }
        Ok(PreferenceMatrix { n, beats })
    }

    /// The matrix a strict ranking induces; `ranking[0]` is most preferred.
    pub fn from_ranking(ranking: &[usize]) -> Result<Self, EvalError> {
        let n = ranking.len();
        let mut choices = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                choices.push((ranking[i], ranking[j], ranking[i]));
            }
        }
        PreferenceMatrix::from_choices(n, &choices)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.beats[a * self.n + b]
    }

    /// Number of items each item beat.
    pub fn win_counts(&self) -> Vec<usize> {
        (0..self.n).map(|a| (0..self.n).filter(|&b| self.prefers(a, b)).count()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Consistency {
    pub consistent: bool,
    /// Each directed 3-cycle once, as `(a, b, c)` with a>b>c>a and `a` the
    /// smallest index.
    pub violations: Vec<(usize, usize, usize)>,
}

pub fn consistency_check(m: &PreferenceMatrix) -> Consistency {
    let n = m.len();
    let mut violations = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if m.prefers(a, b) && m.prefers(b, c) && m.prefers(c, a) {
                    violations.push((a, b, c));
                } else if m.prefers(a, c) && m.prefers(c, b) && m.prefers(b, a) {
                    violations.push((a, c, b));
                }
            }
        }
    }
    Consistency { consistent: violations.is_empty(), violations }
}

/// A manipulated factor: pairs of items identical except that `with`
/// has the factor and `without` lacks it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factor {
    pub name: String,
    pub pairs: Vec<(usize, usize)>,
}

/// What the t-test treats as one observation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TestUnit {
    /// Each subject's preference rate over the factor's pairs.
    #[default]
    Subject,
    /// Each compared pair, scored 1 or 0.
    Pair,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorTally {
    pub factor: String,
    /// Relevant comparisons pooled over subjects.
    pub comparisons: usize,
    pub wins: usize,
    pub rate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// `None` when every observation is identical and differs from 0.5.
    pub t: Option<f64>,
    pub p_value: f64,
}

const Z95: f64 = 1.959_963_984_540_054;

/// Two-sided one-sample t-test of the observations against 0.5.
pub fn t_test_half(xs: &[f64]) -> (Option<f64>, f64) {
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
    if var == 0.0 {
        return if mean == 0.5 { (Some(0.0), 1.0) } else { (None, 0.0) };
    }
    let t = (mean - 0.5) / (var / m).sqrt();
    let dist = StudentsT::new(0.0, 1.0, m - 1.0).expect("m >= 2");
    (Some(t), 2.0 * (1.0 - dist.cdf(t.abs())))
}

pub fn preference_tally(
    matrices: &[PreferenceMatrix],
    factors: &[Factor],
    unit: TestUnit,
) -> Result<Vec<FactorTally>, EvalError> {
    if matrices.len() < 2 {
        return Err(EvalError::TooFewMatrices(matrices.len()));
    }
    factors
        .iter()
        .map(|factor| {
            let mut observations = Vec::new();
            let (mut comparisons, mut wins) = (0, 0);
            for m in matrices {
                let outcomes: Vec<bool> = factor
                    .pairs
                    .iter()
                    .filter(|&&(w, wo)| w < m.len() && wo < m.len() && w != wo)
                    .map(|&(w, wo)| m.prefers(w, wo))
                    .collect();
                if outcomes.is_empty() {
                    continue;
                }
                let won = outcomes.iter().filter(|&&o| o).count();
                comparisons += outcomes.len();
                wins += won;
                match unit {
                    TestUnit::Subject => observations.push(won as f64 / outcomes.len() as f64),
                    TestUnit::Pair => observations.extend(outcomes.iter().map(|&o| if o { 1.0 } else { 0.0 })),
                }
            }
            if comparisons == 0 {
                return Err(EvalError::NoRelevantPairs(factor.name.clone()));
            }
            let rate = wins as f64 / comparisons as f64;
            let half = Z95 * (rate * (1.0 - rate) / comparisons as f64).sqrt();
            let (t, p_value) =
                if observations.len() >= 2 { t_test_half(&observations) } else { (None, f64::NAN) };
            Ok(FactorTally {
                factor: factor.name.clone(),
                comparisons,
                wins,
                rate,
                ci_low: (rate - half).max(0.0),
                ci_high: (rate + half).min(1.0),
                t,
                p_value,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(tp: u64, fp: u64, tn: u64, fn_: u64) -> ConfusionCounts {
        ConfusionCounts { tp, fp, tn, fn_ }
    }

    #[test]
    fn f1_hand_arithmetic() {
        let m = f1(&counts(30, 20, 0, 10));
        assert!(!m.undefined);
        assert!((m.value - 2.0 / 3.0).abs() < 1e-12);
        assert_eq!(f1(&counts(5, 0, 3, 0)).value, 1.0);
        let zero = f1(&counts(0, 4, 3, 0));
        assert_eq!(zero.value, 0.0);
        assert!(zero.undefined);
    }

    #[test]
    fn normalized_accuracy_hand_arithmetic() {
        let m = normalized_accuracy(&counts(8, 4, 6, 2));
        assert!((m.value - 0.7).abs() < 1e-12);
        assert_eq!(normalized_accuracy(&counts(7, 0, 9, 0)).value, 1.0);
        assert_eq!(normalized_accuracy(&counts(7, 9, 0, 0)).value, 0.5);
        assert!(normalized_accuracy(&counts(0, 0, 9, 0)).undefined);
    }

    #[test]
    fn minimal_cycle() {
        let m = PreferenceMatrix::from_choices(3, &[(0, 1, 0), (1, 2, 1), (0, 2, 2)]).unwrap();
        let c = consistency_check(&m);
        assert!(!c.consistent);
        assert_eq!(c.violations, vec![(0, 1, 2)]);
    }

    #[test]
    fn incomplete_matrix_rejected() {
        assert!(matches!(
            PreferenceMatrix::from_choices(3, &[(0, 1, 0), (1, 2, 1)]),
            Err(EvalError::IncompleteMatrix(_))
        ));
        assert!(matches!(
            PreferenceMatrix::from_choices(3, &[(0, 1, 0), (1, 0, 1), (1, 2, 1)]),
            Err(EvalError::IncompleteMatrix(_))
        ));
    }

    #[test]
    fn splits_hold_out_requested_share() {
        let s = holdout_splits(60, 5, 0.2, 9);
        assert_eq!(s.len(), 5);
        assert!(s.iter().all(|h| h.len() == 12));
        assert_ne!(s[0], s[1]);
        assert_eq!(s, holdout_splits(60, 5, 0.2, 9));
    }
}
