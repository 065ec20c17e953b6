//! Text to topic/emotion labels.
//!
//! A [`Classifier`] produces one independent probability per label (29 in
//! total); [`select_labels`] then keeps the top topic and up to four
//! emotions above the threshold. Two backends ship: a keyword [`Lexicon`]
//! and a [`RemoteClassifier`] that calls an external model over HTTP.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{DomainError, Emotion, Entry, Topic};

/// Probability above which a label is reported.
pub const DEFAULT_THRESHOLD: f64 = 0.2;
/// At most this many emotions are kept per sub-entry.
pub const MAX_EMOTIONS: usize = 4;
pub const LEXICON_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("remote classifier timed out")]
    Timeout,
    #[error("malformed classifier response: {0}")]
    MalformedResponse(String),
    #[error("remote classifier returned HTTP {status}")]
    RemoteError { status: u16 },
    #[error("remote classifier unreachable: {0}")]
    Transport(String),
    #[error("sub-entry {}: {source}", index + 1)]
    SubEntry {
        /// Zero-based position of the failing sub-entry.
        index: usize,
        #[source]
        source: Box<ClassifyError>,
    },
}

impl ClassifyError {
    /// The backend error with any sub-entry tagging removed.
    pub fn root(&self) -> &ClassifyError {
        match self {
            ClassifyError::SubEntry { source, .. } => source.root(),
            other => other,
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum LexiconError {
    #[error("unsupported lexicon version {0}")]
    Version(u32),
    #[error("keyword `{0}` must be one or two lowercase words separated by a single space")]
    BadKeyword(String),
    #[error("keyword `{0}` appears twice")]
    Duplicate(String),
    #[error("keyword `{keyword}` has weight {weight} outside (0, 1]")]
    BadWeight { keyword: String, weight: f64 },
    #[error("keyword `{0}` has no labels")]
    NoLabels(String),
    #[error("keyword `{keyword}`: {source}")]
    Label { keyword: String, source: DomainError },
    #[error("malformed lexicon: {0}")]
    Format(String),
}

/// Either vocabulary's member; the two name sets are disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Topic(Topic),
    Emotion(Emotion),
}

impl FromStr for Label {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<Topic>()
            .map(Label::Topic)
            .or_else(|_| s.parse::<Emotion>().map(Label::Emotion))
            .map_err(|_| DomainError::UnknownEmotion(s.to_string()))
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Topic(t) => t.fmt(f),
            Label::Emotion(e) => e.fmt(f),
        }
    }
}

/// Independent per-label probabilities: 11 topics and 18 emotions.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelProbs {
    pub topic: [f64; Topic::COUNT],
    pub emotion: [f64; Emotion::COUNT],
}

impl Default for LabelProbs {
    fn default() -> Self {
        LabelProbs { topic: [0.0; Topic::COUNT], emotion: [0.0; Emotion::COUNT] }
    }
}

impl LabelProbs {
    pub fn topic_prob(&self, t: Topic) -> f64 {
        self.topic[t.index()]
    }

    pub fn emotion_prob(&self, e: Emotion) -> f64 {
        self.emotion[e.index()]
    }

    pub fn get(&self, label: Label) -> f64 {
        match label {
            Label::Topic(t) => self.topic_prob(t),
            Label::Emotion(e) => self.emotion_prob(e),
        }
    }

    pub fn set(&mut self, label: Label, p: f64) {
        match label {
            Label::Topic(t) => self.topic[t.index()] = p,
            Label::Emotion(e) => self.emotion[e.index()] = p,
        }
    }

    /// All 29 values in vocabulary order, topics first.
    pub fn values(&self) -> impl Iterator<Item = f64> + '_ {
        self.topic.iter().chain(self.emotion.iter()).copied()
    }

    pub fn is_valid(&self) -> bool {
        self.values().all(|p| (0.0..=1.0).contains(&p))
    }

    /// Parses `{"topic_probs": {...}, "emotion_probs": {...}}`, requiring
    /// every label exactly once with a value in `[0, 1]`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self, ClassifyError> {
        let bad = |m: String| ClassifyError::MalformedResponse(m);
        let obj = value.as_object().ok_or_else(|| bad("expected a JSON object".into()))?;
        let mut probs = LabelProbs::default();
        let mut read = |key: &str, names: &[&str], parse: &dyn Fn(&str) -> Option<Label>| {
            let map = obj
                .get(key)
                .and_then(|v| v.as_object())
                .ok_or_else(|| bad(format!("missing object `{key}`")))?;
            for (name, v) in map {
                let label = parse(name).ok_or_else(|| bad(format!("unknown label `{name}` in `{key}`")))?;
                let p = v.as_f64().ok_or_else(|| bad(format!("`{key}.{name}` is not a number")))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(bad(format!("`{key}.{name}` = {p} is outside [0, 1]")));
                }
                probs.set(label, p);
            }
            if let Some(missing) = names.iter().find(|n| !map.contains_key(**n)) {
                return Err(bad(format!("`{key}` is missing `{missing}`")));
            }
            Ok(())
        };
        let topic_names: Vec<&str> = Topic::ALL.iter().map(|t| t.name()).collect();
        let emotion_names: Vec<&str> = Emotion::ALL.iter().map(|e| e.name()).collect();
        read("topic_probs", &topic_names, &|s| s.parse().ok().map(Label::Topic))?;
        read("emotion_probs", &emotion_names, &|s| s.parse().ok().map(Label::Emotion))?;
        Ok(probs)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let topics: BTreeMap<&str, f64> = Topic::ALL.iter().map(|t| (t.name(), self.topic_prob(*t))).collect();
        let emotions: BTreeMap<&str, f64> =
            Emotion::ALL.iter().map(|e| (e.name(), self.emotion_prob(*e))).collect();
        serde_json::json!({ "topic_probs": topics, "emotion_probs": emotions })
    }
}

impl Serialize for LabelProbs {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LabelProbs {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(deserializer)?;
        LabelProbs::from_json(&value).map_err(serde::de::Error::custom)
    }
}

/// The salient labels of one sub-entry.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelSet {
    pub topic: Option<Topic>,
    /// Highest probability first; at most [`MAX_EMOTIONS`].
    #[serde(default)]
    pub emotions: Vec<Emotion>,
}

/// Keeps the single most likely topic and up to four most likely emotions
/// whose probability is strictly above `threshold`. Ties go to the label
/// that comes first alphabetically.
pub fn select_labels(p: &LabelProbs, threshold: f64) -> LabelSet {
    let mut topic: Option<Topic> = None;
    for t in Topic::ALL {
        let v = p.topic_prob(t);
        if v > threshold && topic.is_none_or(|best| v > p.topic_prob(best)) {
            topic = Some(t);
        }
    }
    let mut emotions: Vec<Emotion> = Emotion::ALL.into_iter().filter(|e| p.emotion_prob(*e) > threshold).collect();
    // stable sort keeps enumeration order among equal probabilities
    emotions.sort_by(|a, b| p.emotion_prob(*b).total_cmp(&p.emotion_prob(*a)));
    emotions.truncate(MAX_EMOTIONS);
    LabelSet { topic, emotions }
}

/// Anything that maps text to [`LabelProbs`].
pub trait Classifier: Send + Sync {
    fn score(&self, text: &str) -> Result<LabelProbs, ClassifyError>;
}

/// Lowercases and splits on every non-alphanumeric character.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(|t| t.to_lowercase())
        .collect()
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconFile {
    version: u32,
    entries: Vec<LexiconFileEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LexiconFileEntry {
    keyword: String,
    labels: Vec<(String, f64)>,
}

/// Keyword evidence table. Keywords are single words or two-word phrases.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    words: HashMap<String, Vec<(Label, f64)>>,
    phrases: HashMap<String, Vec<(Label, f64)>>,
}

impl Lexicon {
    /// The keyword list shipped with the crate.
    pub fn bundled() -> Lexicon {
        Lexicon::from_json(include_str!("../data/lexicon.json")).expect("bundled lexicon is valid")
    }

    pub fn from_json(text: &str) -> Result<Lexicon, LexiconError> {
        let file: LexiconFile = serde_json::from_str(text).map_err(|e| LexiconError::Format(e.to_string()))?;
        if file.version != LEXICON_VERSION {
            return Err(LexiconError::Version(file.version));
        }
        let mut lex = Lexicon::default();
        for entry in file.entries {
            let mut labels = Vec::with_capacity(entry.labels.len());
            for (name, weight) in entry.labels {
                let label = name
                    .parse()
                    .map_err(|source| LexiconError::Label { keyword: entry.keyword.clone(), source })?;
                labels.push((label, weight));
            }
            lex.insert(&entry.keyword, labels)?;
        }
        Ok(lex)
    }

    pub fn insert(&mut self, keyword: &str, labels: Vec<(Label, f64)>) -> Result<(), LexiconError> {
        let tokens = tokenize(keyword);
        if tokens.is_empty() || tokens.len() > 2 || tokens.join(" ") != keyword {
            return Err(LexiconError::BadKeyword(keyword.to_string()));
        }
        if labels.is_empty() {
            return Err(LexiconError::NoLabels(keyword.to_string()));
        }
        if let Some((_, w)) = labels.iter().find(|(_, w)| !(*w > 0.0 && *w <= 1.0)) {
            return Err(LexiconError::BadWeight { keyword: keyword.to_string(), weight: *w });
        }
        let table = if tokens.len() == 1 { &mut self.words } else { &mut self.phrases };
        if table.insert(keyword.to_string(), labels).is_some() {
            return Err(LexiconError::Duplicate(keyword.to_string()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.words.len() + self.phrases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Number of keywords carrying evidence for `label`.
    pub fn keywords_for(&self, label: Label) -> usize {
        self.words
            .values()
            .chain(self.phrases.values())
            .filter(|ls| ls.iter().any(|(l, _)| *l == label))
            .count()
    }

    pub fn to_json(&self) -> String {
        let mut entries: Vec<LexiconFileEntry> = self
            .words
            .iter()
            .chain(self.phrases.iter())
            .map(|(k, ls)| LexiconFileEntry {
                keyword: k.clone(),
                labels: ls.iter().map(|(l, w)| (l.to_string(), *w)).collect(),
            })
            .collect();
        entries.sort_by(|a, b| a.keyword.cmp(&b.keyword));
        serde_json::to_string_pretty(&LexiconFile { version: LEXICON_VERSION, entries }).expect("lexicon json")
    }
}

/// Noisy-or over keyword hits: each label scores `1 − Π(1 − w)` over every
/// matched occurrence; labels with no hits score 0.
pub fn score_lexicon(text: &str, lex: &Lexicon) -> LabelProbs {
    let tokens = tokenize(text);
    let mut miss = LabelProbs { topic: [1.0; Topic::COUNT], emotion: [1.0; Emotion::COUNT] };
    let mut apply = |labels: &Vec<(Label, f64)>| {
        for (label, w) in labels {
            let m = miss.get(*label);
            miss.set(*label, m * (1.0 - w));
        }
    };
    for token in &tokens {
        if let Some(labels) = lex.words.get(token) {
            apply(labels);
        }
    }
    if !lex.phrases.is_empty() {
        for pair in tokens.windows(2) {
            let phrase = format!("{} {}", pair[0], pair[1]);
            if let Some(labels) = lex.phrases.get(&phrase) {
                apply(labels);
            }
        }
    }
    LabelProbs { topic: miss.topic.map(|m| 1.0 - m), emotion: miss.emotion.map(|m| 1.0 - m) }
}

impl Classifier for Lexicon {
    fn score(&self, text: &str) -> Result<LabelProbs, ClassifyError> {
        Ok(score_lexicon(text, self))
    }
}

/// Client for an external model speaking
/// `POST {"text": ...}` → `{"topic_probs": {...}, "emotion_probs": {...}}`.
#[derive(Debug, Clone)]
pub struct RemoteClassifier {
    endpoint: String,
    agent: ureq::Agent,
}

impl RemoteClassifier {
    pub fn new(endpoint: impl Into<String>, timeout: Duration) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .http_status_as_error(false)
            .build()
            .into();
        RemoteClassifier { endpoint: endpoint.into(), agent }
    }

    pub fn endpoint(&self) -> &str {
        &self.endpoint
    }
}

pub fn score_remote(text: &str, client: &RemoteClassifier) -> Result<LabelProbs, ClassifyError> {
    let transport = |e: ureq::Error| match e {
        ureq::Error::Timeout(_) => ClassifyError::Timeout,
        ureq::Error::Io(io) if io.kind() == std::io::ErrorKind::TimedOut => ClassifyError::Timeout,
        other => ClassifyError::Transport(other.to_string()),
    };
    let mut response = client
        .agent
        .post(&client.endpoint)
        .send_json(serde_json::json!({ "text": text }))
        .map_err(transport)?;
    let status = response.status().as_u16();
    if !(200..300).contains(&status) {
        return Err(ClassifyError::RemoteError { status });
    }
    let body = response.body_mut().read_to_string().map_err(transport)?;
    let value: serde_json::Value =
        serde_json::from_str(&body).map_err(|e| ClassifyError::MalformedResponse(e.to_string()))?;
    LabelProbs::from_json(&value)
}

impl Classifier for RemoteClassifier {
    fn score(&self, text: &str) -> Result<LabelProbs, ClassifyError> {
        score_remote(text, self)
    }
}

/// Scores every sub-entry in order; errors name the failing sub-entry.
pub fn score_entry(entry: &Entry, backend: &dyn Classifier) -> Result<Vec<LabelProbs>, ClassifyError> {
    entry
        .sub_entries
        .iter()
        .enumerate()
        .map(|(index, sub)| {
            backend.score(&sub.text).map_err(|e| ClassifyError::SubEntry { index, source: Box::new(e) })
        })
        .collect()
}

pub fn classify_entry(entry: &Entry, backend: &dyn Classifier, threshold: f64) -> Result<Vec<LabelSet>, ClassifyError> {
    Ok(score_entry(entry, backend)?.iter().map(|p| select_labels(p, threshold)).collect())
}
