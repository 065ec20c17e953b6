//! Topic and emotion vocabularies, valence grouping, colors and journal
//! entry types shared by the rest of the crate.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("unknown topic `{0}`")]
    UnknownTopic(String),
    #[error("unknown emotion `{0}`")]
    UnknownEmotion(String),
    #[error("empty input")]
    EmptyInput,
    #[error("invalid color `{0}`: expected #RRGGBB")]
    BadColor(String),
    #[error("palette is missing a color for `{0}`")]
    MissingColor(Emotion),
    #[error("palette colors for `{0}` and `{1}` are closer than {2} (max-channel distance {3})")]
    ColorsTooClose(Emotion, Emotion, u8, u8),
    #[error("entry must hold 1 to 3 sub-entries, got {0}")]
    SubEntryCount(usize),
    #[error("sub-entry {0} has labels but no text")]
    EmptyText(usize),
    #[error("malformed palette file: {0}")]
    PaletteFormat(String),
}

macro_rules! vocabulary {
    ($(#[$meta:meta])* $name:ident, $err:ident, $count:literal, [$($variant:ident => $text:literal),+ $(,)?]) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const COUNT: usize = $count;
            pub const ALL: [$name; $count] = [$($name::$variant),+];

            pub fn name(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }

            /// Position in the alphabetical enumeration order.
            pub fn index(self) -> usize {
                self as usize
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.name())
            }
        }

        impl FromStr for $name {
            type Err = DomainError;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                match s {
                    $($text => Ok($name::$variant),)+
                    other => Err(DomainError::$err(other.to_string())),
                }
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(self.name())
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }
    };
}

vocabulary!(
    /// The fixed set of life topics a sub-entry can be about.
    Topic, UnknownTopic, 11, [
    Exercise => "exercise",
    Family => "family",
    Food => "food",
    Friends => "friends",
    God => "god",
    Health => "health",
    Love => "love",
    Recreation => "recreation",
    School => "school",
    Sleep => "sleep",
    Work => "work",
]);

vocabulary!(
    /// The fixed set of feelings a sub-entry can express.
    Emotion, UnknownEmotion, 18, [
    Afraid => "afraid",
    Angry => "angry",
    Anxious => "anxious",
    Ashamed => "ashamed",
    Awkward => "awkward",
    Bored => "bored",
    Calm => "calm",
    Confused => "confused",
    Disgusted => "disgusted",
    Excited => "excited",
    Frustrated => "frustrated",
    Happy => "happy",
    Jealous => "jealous",
    Nostalgic => "nostalgic",
    Proud => "proud",
    Sad => "sad",
    Satisfied => "satisfied",
    Surprised => "surprised",
]);

/// Coarse emotional polarity used by the traffic-light baselines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Valence {
    Negative,
    Neutral,
    Positive,
}

impl Valence {
    pub const ALL: [Valence; 3] = [Valence::Negative, Valence::Neutral, Valence::Positive];

    /// Display color: red, yellow or green.
    pub fn color(self) -> Rgb {
        match self {
            Valence::Negative => Rgb::new(255, 0, 0),
            Valence::Neutral => Rgb::new(255, 255, 0),
            Valence::Positive => Rgb::new(0, 128, 0),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Valence::Negative => "negative",
            Valence::Neutral => "neutral",
            Valence::Positive => "positive",
        }
    }

    // Higher rank wins a tie in `majority_valence`.
    fn tie_rank(self) -> u8 {
        match self {
            Valence::Neutral => 0,
            Valence::Negative => 1,
            Valence::Positive => 2,
        }
    }
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn valence_of(e: Emotion) -> Valence {
    use Emotion::*;
    match e {
        Afraid | Angry | Anxious | Ashamed | Disgusted | Frustrated | Jealous | Sad => {
            Valence::Negative
        }
        Awkward | Bored | Calm | Confused | Nostalgic | Surprised => Valence::Neutral,
        Excited | Happy | Proud | Satisfied => Valence::Positive,
    }
}

/// Most frequent valence over a multiset of emotions.
///
/// Ties prefer positive, then negative, then neutral.
pub fn majority_valence<'a, I>(emotions: I) -> Result<Valence, DomainError>
where
    I: IntoIterator<Item = &'a Emotion>,
{
    let mut counts = [0usize; 3];
    let mut seen = false;
    for &e in emotions {
        seen = true;
        counts[valence_of(e) as usize] += 1;
    }
    if !seen {
        return Err(DomainError::EmptyInput);
    }
    Ok(Valence::ALL
        .into_iter()
        .max_by_key(|v| (counts[*v as usize], v.tie_rank()))
        .expect("three valences"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgb {
    pub r: u8,
    pub g: u8,
    pub b: u8,
}

impl Rgb {
    pub const WHITE: Rgb = Rgb::new(255, 255, 255);
    pub const BLACK: Rgb = Rgb::new(0, 0, 0);

    pub const fn new(r: u8, g: u8, b: u8) -> Self {
        Rgb { r, g, b }
    }

    pub fn channels(self) -> [u8; 3] {
        [self.r, self.g, self.b]
    }

    /// Largest per-channel absolute difference.
    pub fn max_channel_distance(self, other: Rgb) -> u8 {
        self.channels()
            .iter()
            .zip(other.channels())
            .map(|(a, b)| a.abs_diff(b))
            .max()
            .unwrap_or(0)
    }

    pub fn to_hex(self) -> String {
        format!("#{:02X}{:02X}{:02X}", self.r, self.g, self.b)
    }

    pub fn with_alpha(self, a: u8) -> Rgba {
        Rgba { r: self.r, g: self.g, b: self.b, a }
    }
}

impl FromStr for Rgb {
    type Err = DomainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || DomainError::BadColor(s.to_string());
        let hex = s.strip_prefix('#').ok_or_else(bad)?;
        if hex.len() != 6 || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let channel = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| bad());
        Ok(Rgb::new(channel(0)?, channel(2)?, channel(4)?))
    }
}

impl fmt::Display for Rgb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for Rgb {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Rgb {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Straight (non-premultiplied) RGBA color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rgba {
    pub r: u8,
    pub g: u8,
    pub b: u8,
    pub a: u8,
}

impl Rgba {
    pub fn rgb(self) -> Rgb {
        Rgb::new(self.r, self.g, self.b)
    }
}

/// Default minimum max-channel distance between two emotion colors.
pub const DEFAULT_MIN_COLOR_DISTANCE: u8 = 60;

/// Emotion to color mapping.
///
/// The bundled table follows common associations (dark red for angry,
/// yellow for happy, light blue for calm) while keeping every pair of
/// colors at least [`DEFAULT_MIN_COLOR_DISTANCE`] apart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Palette {
    emotion_colors: [Rgb; Emotion::COUNT],
}

const DEFAULT_EMOTION_COLORS: [Rgb; Emotion::COUNT] = [
    Rgb::new(75, 0, 130),    // afraid
    Rgb::new(139, 0, 0),     // angry
    Rgb::new(255, 140, 0),   // anxious
    Rgb::new(139, 69, 19),   // ashamed
    Rgb::new(200, 200, 60),  // awkward
    Rgb::new(160, 160, 160), // bored
    Rgb::new(135, 206, 250), // calm
    Rgb::new(255, 105, 180), // confused
    Rgb::new(110, 150, 40),  // disgusted
    Rgb::new(255, 0, 255),   // excited
    Rgb::new(255, 60, 60),   // frustrated
    Rgb::new(255, 230, 0),   // happy
    Rgb::new(0, 160, 0),     // jealous
    Rgb::new(190, 140, 220), // nostalgic
    Rgb::new(0, 0, 255),     // proud
    Rgb::new(40, 80, 160),   // sad
    Rgb::new(0, 200, 180),   // satisfied
    Rgb::new(120, 255, 120), // surprised
];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PaletteFile {
    emotion_colors: BTreeMap<String, String>,
}

impl Default for Palette {
    fn default() -> Self {
        Palette { emotion_colors: DEFAULT_EMOTION_COLORS }
    }
}

impl Palette {
    /// Builds a palette, rejecting pairs of colors closer than `min_distance`.
    /// A floor of zero still requires every color to be distinct.
    pub fn new(colors: [Rgb; Emotion::COUNT], min_distance: u8) -> Result<Self, DomainError> {
        let floor = min_distance.max(1);
        for (i, a) in Emotion::ALL.iter().enumerate() {
            for b in &Emotion::ALL[i + 1..] {
                let d = colors[a.index()].max_channel_distance(colors[b.index()]);
                if d < floor {
                    return Err(DomainError::ColorsTooClose(*a, *b, floor, d));
                }
            }
        }
        Ok(Palette { emotion_colors: colors })
    }

    /// Parses an override file `{"emotion_colors": {"<emotion>": "#RRGGBB", ...}}`.
    pub fn from_json(text: &str, min_distance: u8) -> Result<Self, DomainError> {
        let file: PaletteFile =
            serde_json::from_str(text).map_err(|e| DomainError::PaletteFormat(e.to_string()))?;
        let mut colors: [Option<Rgb>; Emotion::COUNT] = [None; Emotion::COUNT];
        for (key, hex) in &file.emotion_colors {
            let emotion: Emotion = key.parse()?;
            colors[emotion.index()] = Some(hex.parse()?);
        }
        let mut out = [Rgb::BLACK; Emotion::COUNT];
        for e in Emotion::ALL {
            out[e.index()] = colors[e.index()].ok_or(DomainError::MissingColor(e))?;
        }
        Palette::new(out, min_distance)
    }

    pub fn color(&self, e: Emotion) -> Rgb {
        self.emotion_colors[e.index()]
    }

    pub fn valence_color(&self, v: Valence) -> Rgb {
        v.color()
    }

    /// Smallest max-channel distance over all pairs of emotion colors.
    pub fn min_pairwise_distance(&self) -> u8 {
        let mut best = u8::MAX;
        for i in 0..Emotion::COUNT {
            for j in i + 1..Emotion::COUNT {
                best = best.min(self.emotion_colors[i].max_channel_distance(self.emotion_colors[j]));
            }
        }
        best
    }

    pub fn to_json(&self) -> serde_json::Value {
        let map: BTreeMap<&str, String> = Emotion::ALL
            .iter()
            .map(|e| (e.name(), self.color(*e).to_hex()))
            .collect();
        serde_json::json!({ "emotion_colors": map })
    }
}

/// One free-text passage of a journal entry with optional ground truth.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubEntry {
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topics: Option<Vec<Topic>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub emotions: Option<Vec<Emotion>>,
}

impl SubEntry {
    pub fn new(text: impl Into<String>) -> Self {
        SubEntry { text: text.into(), topics: None, emotions: None }
    }

    pub fn has_labels(&self) -> bool {
        self.topics.is_some() || self.emotions.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub id: String,
    pub sub_entries: Vec<SubEntry>,
}

impl Entry {
    pub const MAX_SUB_ENTRIES: usize = 3;

    pub fn new(id: impl Into<String>, sub_entries: Vec<SubEntry>) -> Result<Self, DomainError> {
        let entry = Entry { id: id.into(), sub_entries };
        entry.validate()?;
        Ok(entry)
    }

    pub fn validate(&self) -> Result<(), DomainError> {
        let n = self.sub_entries.len();
        if !(1..=Self::MAX_SUB_ENTRIES).contains(&n) {
            return Err(DomainError::SubEntryCount(n));
        }
        for (i, sub) in self.sub_entries.iter().enumerate() {
            if sub.has_labels() && sub.text.trim().is_empty() {
                return Err(DomainError::EmptyText(i + 1));
            }
        }
        Ok(())
    }

    /// Splits raw text into sub-entries at blank lines.
    pub fn from_text(id: impl Into<String>, text: &str) -> Result<Self, DomainError> {
        let mut paragraphs: Vec<String> = Vec::new();
        let mut current = String::new();
        for line in text.lines() {
            if line.trim().is_empty() {
                if !current.is_empty() {
                    paragraphs.push(std::mem::take(&mut current));
                }
            } else {
                if !current.is_empty() {
                    current.push(' ');
                }
                current.push_str(line.trim());
            }
        }
        if !current.is_empty() {
            paragraphs.push(current);
        }
        if paragraphs.is_empty() {
            return Err(DomainError::EmptyInput);
        }
        Entry::new(id, paragraphs.into_iter().map(SubEntry::new).collect())
    }
}
