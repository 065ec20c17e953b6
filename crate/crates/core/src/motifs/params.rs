//! Style identifiers and their parameter schemas.
//!
//! One table per style drives both validation and the registry served to
//! clients. Length parameters are pixels on a 512-px canvas and are scaled
//! proportionally for other canvas sizes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StyleId {
    CirclePacking,
    StringDoll,
    Carpet,
    Tile,
    Glass,
    B1,
    B2,
    B3,
    B4,
    B5,
    B6,
    B7,
}

impl StyleId {
    pub const ALL: [StyleId; 12] = [
        StyleId::CirclePacking,
        StyleId::StringDoll,
        StyleId::Carpet,
        StyleId::Tile,
        StyleId::Glass,
        StyleId::B1,
        StyleId::B2,
        StyleId::B3,
        StyleId::B4,
        StyleId::B5,
        StyleId::B6,
        StyleId::B7,
    ];

    /// The five full styles, without baselines.
    pub const STYLES: [StyleId; 5] =
        [StyleId::CirclePacking, StyleId::StringDoll, StyleId::Carpet, StyleId::Tile, StyleId::Glass];

    pub fn name(self) -> &'static str {
        match self {
            StyleId::CirclePacking => "circle_packing",
            StyleId::StringDoll => "string_doll",
            StyleId::Carpet => "carpet",
            StyleId::Tile => "tile",
            StyleId::Glass => "glass",
            StyleId::B1 => "b1",
            StyleId::B2 => "b2",
            StyleId::B3 => "b3",
            StyleId::B4 => "b4",
            StyleId::B5 => "b5",
            StyleId::B6 => "b6",
            StyleId::B7 => "b7",
        }
    }

    pub fn is_baseline(self) -> bool {
        !StyleId::STYLES.contains(&self)
    }

    pub fn description(self) -> &'static str {
        match self {
            StyleId::CirclePacking => "non-overlapping circles of decreasing size packed into the topic shape",
            StyleId::StringDoll => "curved strings between random boundary points with a thin highlight",
            StyleId::Carpet => "grid of cells hatched with parallel lines, regions filled with emotion colors",
            StyleId::Tile => "one diagonal per grid cell, regions filled with emotion colors",
            StyleId::Glass => "translucent topic icons layered inside the topic shape",
            StyleId::B1 => "circle packing on a square",
            StyleId::B2 => "string doll on a square",
            StyleId::B3 => "topic shape split into solid vertical bands, one per emotion",
            StyleId::B4 => "solid vertical bands on a square",
            StyleId::B5 => "topic shape filled with the majority valence color",
            StyleId::B6 => "square filled with the majority valence color",
            StyleId::B7 => "one square per entry in the day's majority valence color",
        }
    }

    pub fn schema(self) -> &'static [ParamSpec] {
        match self {
            StyleId::CirclePacking | StyleId::B1 => CIRCLE_PACKING,
            StyleId::StringDoll | StyleId::B2 => STRING_DOLL,
            StyleId::Carpet => CARPET,
            StyleId::Tile => TILE,
            StyleId::Glass => GLASS,
            StyleId::B3 | StyleId::B4 | StyleId::B5 | StyleId::B6 | StyleId::B7 => &[],
        }
    }

    /// Validates a JSON parameter object, filling in defaults.
    ///
    /// `null` means all defaults.
    pub fn parse_params(self, value: &Value) -> Result<StyleParams, ParamError> {
        let empty = Map::new();
        let given = match value {
            Value::Null => &empty,
            Value::Object(map) => map,
            _ => return Err(ParamError::new("params", "must be a JSON object")),
        };
        let schema = self.schema();
        if let Some(key) = given.keys().find(|k| !schema.iter().any(|s| s.name == k.as_str())) {
            return Err(ParamError::new(key, format!("unknown parameter for style {self}")));
        }
        let mut values = BTreeMap::new();
        for spec in schema {
            let v = match given.get(spec.name) {
                Some(raw) => spec.parse(raw)?,
                None => spec.default.to_value(),
            };
            values.insert(spec.name, v);
        }
        let params = StyleParams { style: self, values };
        params.check_relations()?;
        Ok(params)
    }

    pub fn default_params(self) -> StyleParams {
        self.parse_params(&Value::Null).expect("defaults validate")
    }

    /// Registry entry as served to clients.
    pub fn registry_entry(self) -> Value {
        json!({
            "id": self.name(),
            "baseline": self.is_baseline(),
            "description": self.description(),
            "params": self.schema().iter().map(|s| s.to_json()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for StyleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unsupported style {0:?}")]
pub struct UnsupportedStyle(pub String);

impl FromStr for StyleId {
    type Err = UnsupportedStyle;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        StyleId::ALL.into_iter().find(|id| id.name() == s).ok_or_else(|| UnsupportedStyle(s.to_string()))
    }
}

/// Full registry: every style with its parameter schema.
pub fn registry() -> Value {
    Value::Array(StyleId::ALL.iter().map(|s| s.registry_entry()).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{field}: {message}")]
pub struct ParamError {
    pub field: String,
    pub message: String,
}

impl ParamError {
    pub fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ParamError { field: field.into(), message: message.into() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    Int,
    Float,
    IntList,
}

impl ParamKind {
    fn name(self) -> &'static str {
        match self {
            ParamKind::Int => "int",
            ParamKind::Float => "float",
            ParamKind::IntList => "int_list",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DefaultValue {
    Int(i64),
    Float(f64),
    IntList(&'static [i64]),
}

impl DefaultValue {
    fn to_value(self) -> ParamValue {
        match self {
            DefaultValue::Int(v) => ParamValue::Int(v),
            DefaultValue::Float(v) => ParamValue::Float(v),
            DefaultValue::IntList(v) => ParamValue::IntList(v.to_vec()),
        }
    }
}

/// One tunable parameter. For lists, `min`/`max` bound each element and
/// `max_len` bounds the length.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub min: f64,
    pub max: f64,
    pub max_len: usize,
    pub default: DefaultValue,
    pub description: &'static str,
}

impl ParamSpec {
    const fn int(name: &'static str, min: i64, max: i64, default: i64, description: &'static str) -> Self {
        ParamSpec {
            name,
            kind: ParamKind::Int,
            min: min as f64,
            max: max as f64,
            max_len: 1,
            default: DefaultValue::Int(default),
            description,
        }
    }

    const fn float(name: &'static str, min: f64, max: f64, default: f64, description: &'static str) -> Self {
        ParamSpec { name, kind: ParamKind::Float, min, max, max_len: 1, default: DefaultValue::Float(default), description }
    }

    const fn list(
        name: &'static str,
        min: i64,
        max: i64,
        max_len: usize,
        default: &'static [i64],
        description: &'static str,
    ) -> Self {
        ParamSpec {
            name,
            kind: ParamKind::IntList,
            min: min as f64,
            max: max as f64,
            max_len,
            default: DefaultValue::IntList(default),
            description,
        }
    }

    fn parse(&self, raw: &Value) -> Result<ParamValue, ParamError> {
        let err = |msg: String| ParamError::new(self.name, msg);
        let int = |v: &Value| -> Result<i64, ParamError> {
            let n = v.as_f64().ok_or_else(|| err(format!("expected an integer, got {v}")))?;
            if n.fract() != 0.0 {
                return Err(err(format!("expected an integer, got {v}")));
            }
            if n < self.min || n > self.max {
                return Err(err(format!("{v} is outside [{}, {}]", self.min, self.max)));
            }
            Ok(n as i64)
        };
        match self.kind {
            ParamKind::Int => int(raw).map(ParamValue::Int),
            ParamKind::Float => {
                let n = raw.as_f64().ok_or_else(|| err(format!("expected a number, got {raw}")))?;
                if n < self.min || n > self.max {
                    return Err(err(format!("{n} is outside [{}, {}]", self.min, self.max)));
                }
                Ok(ParamValue::Float(n))
            }
            ParamKind::IntList => {
                let items = raw.as_array().ok_or_else(|| err(format!("expected a list of integers, got {raw}")))?;
                if items.is_empty() || items.len() > self.max_len {
                    return Err(err(format!("expected 1 to {} items, got {}", self.max_len, items.len())));
                }
                items.iter().map(int).collect::<Result<_, _>>().map(ParamValue::IntList)
            }
        }
    }

    fn to_json(self) -> Value {
        let bound = |v: f64| match self.kind {
            ParamKind::Float => json!(v),
            _ => json!(v as i64),
        };
        let default = match self.default {
            DefaultValue::Int(v) => json!(v),
            DefaultValue::Float(v) => json!(v),
            DefaultValue::IntList(v) => json!(v),
        };
        let mut out = json!({
            "name": self.name,
            "type": self.kind.name(),
            "min": bound(self.min),
            "max": bound(self.max),
            "default": default,
            "description": self.description,
        });
        if self.kind == ParamKind::IntList {
            out["max_len"] = json!(self.max_len);
        }
        out
    }
}

const CIRCLE_PACKING: &[ParamSpec] = &[
    ParamSpec::list("radii", 1, 256, 8, &[24, 16, 10, 6], "circle radii in pixels, strictly decreasing"),
    ParamSpec::list("counts", 0, 5000, 8, &[20, 40, 80, 160], "circles requested per radius"),
    ParamSpec::int("max_trials", 1, 100_000, 500, "placement attempts per circle before giving up"),
];

const STRING_DOLL: &[ParamSpec] = &[
    ParamSpec::int("n_strokes", 0, 2000, 60, "number of strings"),
    ParamSpec::int("w_min", 1, 64, 4, "narrowest stroke width in pixels"),
    ParamSpec::int("w_max", 1, 64, 10, "widest stroke width in pixels"),
    ParamSpec::float("sigma_frac", 0.0, 1.0, 0.2, "control point noise as a fraction of the canvas side"),
];

const CARPET: &[ParamSpec] = &[
    ParamSpec::int("grid", 1, 64, 4, "cells per side"),
    ParamSpec::int("spacing", 2, 512, 12, "distance between parallel lines in pixels"),
    ParamSpec::int("thickness", 1, 64, 2, "line thickness in pixels"),
    ParamSpec::list("angles", 0, 135, 4, &[0, 45, 90, 135], "allowed line angles in degrees (0, 45, 90, 135)"),
];

const TILE: &[ParamSpec] = &[
    ParamSpec::int("grid", 1, 128, 8, "cells per side"),
    ParamSpec::float("p_diag", 0.0, 1.0, 0.5, "probability of the \"/\" diagonal"),
    ParamSpec::int("line_width", 1, 64, 2, "diagonal width in pixels"),
];

const GLASS: &[ParamSpec] = &[
    ParamSpec::int("passes", 0, 20, 3, "layers of icons"),
    ParamSpec::int("icons_per_pass", 0, 200, 12, "icons placed per layer"),
    ParamSpec::float("scale_min", 0.01, 1.0, 0.15, "smallest icon size as a fraction of the canvas"),
    ParamSpec::float("scale_max", 0.01, 1.0, 0.45, "largest icon size as a fraction of the canvas"),
    ParamSpec::int("alpha_min", 0, 255, 80, "lowest icon opacity"),
    ParamSpec::int("alpha_max", 0, 255, 180, "highest icon opacity"),
];

#[derive(Debug, Clone, PartialEq)]
pub enum ParamValue {
    Int(i64),
    Float(f64),
    IntList(Vec<i64>),
}

impl ParamValue {
    fn to_json(&self) -> Value {
        match self {
            ParamValue::Int(v) => json!(v),
            ParamValue::Float(v) => json!(v),
            ParamValue::IntList(v) => json!(v),
        }
    }
}

/// Validated parameters for one style, defaults filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct StyleParams {
    style: StyleId,
    values: BTreeMap<&'static str, ParamValue>,
}

impl StyleParams {
    pub fn style(&self) -> StyleId {
        self.style
    }

    pub fn to_json(&self) -> Value {
        Value::Object(self.values.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect())
    }

    fn int(&self, name: &str) -> i64 {
        match self.values.get(name) {
            Some(ParamValue::Int(v)) => *v,
            other => panic!("parameter {name} is not an int: {other:?}"),
        }
    }

    fn float(&self, name: &str) -> f64 {
        match self.values.get(name) {
            Some(ParamValue::Float(v)) => *v,
            other => panic!("parameter {name} is not a float: {other:?}"),
        }
    }

    fn list(&self, name: &str) -> &[i64] {
        match self.values.get(name) {
            Some(ParamValue::IntList(v)) => v,
            other => panic!("parameter {name} is not a list: {other:?}"),
        }
    }

    fn check_relations(&self) -> Result<(), ParamError> {
        match self.style {
            StyleId::CirclePacking | StyleId::B1 => {
                let radii = self.list("radii");
                if radii.windows(2).any(|w| w[0] <= w[1]) {
                    return Err(ParamError::new("radii", "must be strictly decreasing"));
                }
                let counts = self.list("counts");
                if counts.len() != radii.len() {
                    return Err(ParamError::new(
                        "counts",
                        format!("needs one count per radius ({}), got {}", radii.len(), counts.len()),
                    ));
                }
            }
            StyleId::StringDoll | StyleId::B2 => {
                if self.int("w_min") > self.int("w_max") {
                    return Err(ParamError::new("w_max", "must be at least w_min"));
                }
            }
            StyleId::Carpet => {
                if let Some(a) = self.list("angles").iter().find(|a| ![0, 45, 90, 135].contains(*a)) {
                    return Err(ParamError::new("angles", format!("{a} is not one of 0, 45, 90, 135")));
                }
            }
            StyleId::Glass => {
                if self.float("scale_min") > self.float("scale_max") {
                    return Err(ParamError::new("scale_max", "must be at least scale_min"));
                }
                if self.int("alpha_min") > self.int("alpha_max") {
                    return Err(ParamError::new("alpha_max", "must be at least alpha_min"));
                }
            }
            _ => {}
        }
        Ok(())
    }

    pub fn circle_packing(&self) -> CirclePackingParams {
        CirclePackingParams {
            radii: self.list("radii").iter().map(|&r| r as u32).collect(),
            counts: self.list("counts").iter().map(|&c| c as u32).collect(),
            max_trials: self.int("max_trials") as u32,
        }
    }

    pub fn string_doll(&self) -> StringDollParams {
        StringDollParams {
            n_strokes: self.int("n_strokes") as u32,
            w_min: self.int("w_min") as u32,
            w_max: self.int("w_max") as u32,
            sigma_frac: self.float("sigma_frac"),
        }
    }

    pub fn carpet(&self) -> CarpetParams {
        CarpetParams {
            grid: self.int("grid") as u32,
            spacing: self.int("spacing") as u32,
            thickness: self.int("thickness") as u32,
            angles: self.list("angles").iter().map(|&a| a as u32).collect(),
        }
    }

    pub fn tile(&self) -> TileParams {
        TileParams {
            grid: self.int("grid") as u32,
            p_diag: self.float("p_diag"),
            line_width: self.int("line_width") as u32,
        }
    }

    pub fn glass(&self) -> GlassParams {
        GlassParams {
            passes: self.int("passes") as u32,
            icons_per_pass: self.int("icons_per_pass") as u32,
            scale_min: self.float("scale_min"),
            scale_max: self.float("scale_max"),
            alpha_min: self.int("alpha_min") as u8,
            alpha_max: self.int("alpha_max") as u8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirclePackingParams {
    pub radii: Vec<u32>,
    pub counts: Vec<u32>,
    pub max_trials: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StringDollParams {
    pub n_strokes: u32,
    pub w_min: u32,
    pub w_max: u32,
    pub sigma_frac: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CarpetParams {
    pub grid: u32,
    pub spacing: u32,
    pub thickness: u32,
    pub angles: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TileParams {
    pub grid: u32,
    pub p_diag: f64,
    pub line_width: u32,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GlassParams {
    pub passes: u32,
    pub icons_per_pass: u32,
    pub scale_min: f64,
    pub scale_max: f64,
    pub alpha_min: u8,
    pub alpha_max: u8,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn style_names_round_trip() {
        for id in StyleId::ALL {
            assert_eq!(id.name().parse::<StyleId>().unwrap(), id);
            assert_eq!(serde_json::to_value(id).unwrap(), json!(id.name()));
        }
        assert_eq!("autoencoder".parse::<StyleId>(), Err(UnsupportedStyle("autoencoder".into())));
    }

    #[test]
    fn defaults_validate_against_their_own_ranges() {
        for id in StyleId::ALL {
            let p = id.default_params();
            assert_eq!(id.parse_params(&p.to_json()).unwrap(), p);
            for spec in id.schema() {
                let v = &p.to_json()[spec.name];
                let nums: Vec<f64> = match v {
                    Value::Array(items) => items.iter().map(|x| x.as_f64().unwrap()).collect(),
                    x => vec![x.as_f64().unwrap()],
                };
                assert!(nums.iter().all(|n| *n >= spec.min && *n <= spec.max), "{id}.{}", spec.name);
            }
        }
    }

    #[test]
    fn errors_name_the_field() {
        let bad = |style: StyleId, v: Value| style.parse_params(&v).unwrap_err().field;
        assert_eq!(bad(StyleId::Tile, json!({"grid": 0})), "grid");
        assert_eq!(bad(StyleId::Tile, json!({"grid": 2.5})), "grid");
        assert_eq!(bad(StyleId::Tile, json!({"p_diag": "x"})), "p_diag");
        assert_eq!(bad(StyleId::Tile, json!({"bogus": 1})), "bogus");
        assert_eq!(bad(StyleId::CirclePacking, json!({"radii": [4, 8]})), "radii");
        assert_eq!(bad(StyleId::CirclePacking, json!({"counts": [1]})), "counts");
        assert_eq!(bad(StyleId::StringDoll, json!({"w_min": 9, "w_max": 5})), "w_max");
        assert_eq!(bad(StyleId::Carpet, json!({"angles": [30]})), "angles");
        assert_eq!(bad(StyleId::Glass, json!({"alpha_min": 200, "alpha_max": 100})), "alpha_max");
        assert_eq!(bad(StyleId::B5, json!({"grid": 3})), "grid");
        assert_eq!(bad(StyleId::B5, json!([1])), "params");
    }

    #[test]
    fn partial_params_keep_other_defaults() {
        let p = StyleId::Tile.parse_params(&json!({"grid": 8, "p_diag": 1.0})).unwrap().tile();
        assert_eq!(p, TileParams { grid: 8, p_diag: 1.0, line_width: 2 });
        let p = StyleId::Carpet.parse_params(&json!({"grid": 2.0})).unwrap().carpet();
        assert_eq!(p.grid, 2);
    }

    #[test]
    fn registry_lists_every_style() {
        let reg = registry();
        let ids: Vec<&str> = reg.as_array().unwrap().iter().map(|e| e["id"].as_str().unwrap()).collect();
        assert_eq!(ids, StyleId::ALL.map(StyleId::name));
        assert_eq!(reg[0]["params"][0]["default"], json!([24, 16, 10, 6]));
    }
}
