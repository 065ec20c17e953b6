use std::fs;
use std::io::Read;
use std::path::Path;

use lemotif_core::classify::LabelSet;
use lemotif_core::domain::Entry;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, Result};

/// Raw input plus a name for diagnostics.
pub struct Source {
    pub name: String,
    pub content: String,
}

impl Source {
    /// `--text` wins; otherwise reads `path`, or stdin for `-`.
    pub fn read(path: Option<&Path>, text: Option<&str>) -> Result<Source> {
        let source = match (text, path) {
            (Some(t), _) => Source { name: "--text".into(), content: t.to_string() },
            (None, Some(p)) if p == Path::new("-") => {
                let mut content = String::new();
                std::io::stdin()
                    .read_to_string(&mut content)
                    .map_err(|e| CliError::bad_input(format!("cannot read stdin: {e}")))?;
                Source { name: "<stdin>".into(), content }
            }
            (None, Some(p)) => {
                let content = fs::read_to_string(p)
                    .map_err(|e| CliError::bad_input(format!("cannot read {}: {e}", p.display())))?;
                Source { name: p.display().to_string(), content }
            }
            (None, None) => return Err(CliError::bad_input("no input: pass a file, `-` or --text")),
        };
        if source.content.trim().is_empty() {
            return Err(CliError::bad_input(format!("{}: input is empty", source.name)));
        }
        Ok(source)
    }

    fn is_json(&self) -> bool {
        self.content.trim_start().starts_with('{')
    }

    /// Id for raw text: the file stem, or `entry`.
    fn default_id(&self) -> String {
        Path::new(&self.name)
            .file_stem()
            .and_then(|s| s.to_str())
            .filter(|s| !s.starts_with('<') && !s.starts_with('-'))
            .unwrap_or("entry")
            .to_string()
    }

    pub fn parse_json<T: DeserializeOwned>(&self) -> Result<T> {
        let de = &mut serde_json::Deserializer::from_str(&self.content);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CliError::bad_input(format!("{}:{}:{}: at `{path}`: {inner}", self.name, inner.line(), inner.column()))
        })
    }

    /// An entry JSON document, or raw text split into sub-entries at blank
    /// lines.
    pub fn entry(&self) -> Result<Entry> {
        let entry = if self.is_json() {
            self.parse_json::<Entry>()?
        } else {
            Entry::from_text(self.default_id(), &self.content)
                .map_err(|e| CliError::bad_input(format!("{}: {e}", self.name)))?
        };
        entry.validate().map_err(|e| CliError::bad_input(format!("{}: {e}", self.name)))?;
        Ok(entry)
    }

    /// Labels ready to render, or an entry still to classify.
    pub fn motif_input(&self) -> Result<MotifInput> {
        if self.is_json() {
            let probe: Value = self.parse_json()?;
            if probe.get("label_sets").is_some() {
                let labels: LabelsFile = self.parse_json()?;
                return Ok(MotifInput::Labels {
                    id: labels.id.unwrap_or_else(|| self.default_id()),
                    label_sets: labels.label_sets,
                });
            }
        }
        Ok(MotifInput::Entry(self.entry()?))
    }
}

/// The output of `analyze`, or any object with `label_sets`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelsFile {
    id: Option<String>,
    label_sets: Vec<LabelSet>,
    #[serde(default)]
    #[allow(dead_code)]
    threshold: Option<f64>,
    #[serde(default)]
    #[allow(dead_code)]
    probs: Option<Value>,
}

pub enum MotifInput {
    Entry(Entry),
    Labels { id: String, label_sets: Vec<LabelSet> },
}
