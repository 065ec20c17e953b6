//! Optional TOML configuration. Relative paths resolve against the
//! directory holding the config file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Duration;

use lemotif_core::classify::{Classifier, Lexicon, RemoteClassifier, DEFAULT_THRESHOLD};
use lemotif_core::domain::{Palette, DEFAULT_MIN_COLOR_DISTANCE};
use lemotif_core::iconproc::{ShapeSet, DEFAULT_CANVAS_SIZE};
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, Kind, Result};

pub const CONFIG_ENV: &str = "LEMOTIF_CONFIG";

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    palette: Option<PathBuf>,
    lexicon: Option<PathBuf>,
    shapes_dir: Option<PathBuf>,
    remote: Option<String>,
    remote_timeout_ms: Option<u64>,
    style: Option<String>,
    params: Option<BTreeMap<String, toml::Value>>,
    threshold: Option<f64>,
    seed: Option<u64>,
    out_dir: Option<PathBuf>,
    canvas_size: Option<u32>,
    server: Option<ServerConfig>,
}

#[derive(Debug, Default, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ServerConfig {
    pub host: Option<String>,
    pub port: Option<u16>,
    #[serde(default)]
    pub cors_origins: Vec<String>,
    pub static_dir: Option<PathBuf>,
}

/// Loaded and validated settings; every referenced path exists.
#[derive(Debug, Default)]
pub struct Config {
    pub palette: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub shapes_dir: Option<PathBuf>,
    pub remote: Option<String>,
    pub remote_timeout: Option<Duration>,
    pub style: Option<String>,
    pub params: Option<Value>,
    pub threshold: Option<f64>,
    pub seed: Option<u64>,
    pub out_dir: Option<PathBuf>,
    pub canvas_size: Option<u32>,
    pub server: ServerConfig,
}

fn resolve(base: &Path, p: Option<PathBuf>) -> Option<PathBuf> {
    p.map(|p| if p.is_absolute() { p } else { base.join(p) })
}

impl Config {
    /// Reads `explicit`, else the file named by `LEMOTIF_CONFIG`, else
    /// returns the defaults.
    pub fn discover(explicit: Option<&Path>) -> Result<Config> {
        let from_env = std::env::var_os(CONFIG_ENV).map(PathBuf::from);
        match explicit.map(Path::to_path_buf).or(from_env) {
            Some(path) => Config::load(&path),
            None => Ok(Config::default()),
        }
    }

    pub fn load(path: &Path) -> Result<Config> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::bad_input(format!("cannot read config {}: {e}", path.display())))?;
        let raw: RawConfig =
            toml::from_str(&text).map_err(|e| CliError::bad_input(format!("{}: {}", path.display(), e.message())))?;
        let base = path.parent().unwrap_or(Path::new("."));
        let config = Config {
            palette: resolve(base, raw.palette),
            lexicon: resolve(base, raw.lexicon),
            shapes_dir: resolve(base, raw.shapes_dir),
            remote: raw.remote,
            remote_timeout: raw.remote_timeout_ms.map(Duration::from_millis),
            style: raw.style,
            params: raw
                .params
                .map(|p| serde_json::to_value(p).map_err(|e| CliError::bad_input(format!("config params: {e}"))))
                .transpose()?,
            threshold: raw.threshold,
            seed: raw.seed,
            out_dir: resolve(base, raw.out_dir),
            canvas_size: raw.canvas_size,
            server: ServerConfig {
                static_dir: resolve(base, raw.server.as_ref().and_then(|s| s.static_dir.clone())),
                ..raw.server.unwrap_or_default()
            },
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<()> {
        for (name, path) in [
            ("palette", &self.palette),
            ("lexicon", &self.lexicon),
            ("out_dir", &self.out_dir),
            ("server.static_dir", &self.server.static_dir),
        ] {
            if let Some(p) = path {
                if !p.exists() {
                    return Err(CliError::bad_input(format!("config {name}: {} does not exist", p.display())));
                }
            }
        }
        if let Some(dir) = &self.shapes_dir {
            if !dir.is_dir() {
                return Err(CliError::new(Kind::ShapesMissing, format!("shapes directory {} not found", dir.display())));
            }
        }
        if let Some(t) = self.threshold {
            check_threshold(t)?;
        }
        // fail fast on a bad palette
        self.palette()?;
        Ok(())
    }

    pub fn palette(&self) -> Result<Palette> {
        match &self.palette {
            None => Ok(Palette::default()),
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::bad_input(format!("cannot read palette {}: {e}", path.display())))?;
                Palette::from_json(&text, DEFAULT_MIN_COLOR_DISTANCE)
                    .map_err(|e| CliError::bad_input(format!("palette {}: {e}", path.display())))
            }
        }
    }

    /// The remote classifier when an endpoint is set, else the lexicon.
    pub fn backend(&self, remote_override: Option<&str>) -> Result<Arc<dyn Classifier>> {
        if let Some(endpoint) = remote_override.or(self.remote.as_deref()) {
            let timeout = self.remote_timeout.unwrap_or(Duration::from_secs(10));
            return Ok(Arc::new(RemoteClassifier::new(endpoint, timeout)));
        }
        match &self.lexicon {
            None => Ok(Arc::new(Lexicon::bundled())),
            Some(path) => {
                let text = fs::read_to_string(path)
                    .map_err(|e| CliError::bad_input(format!("cannot read lexicon {}: {e}", path.display())))?;
                let lex = Lexicon::from_json(&text)
                    .map_err(|e| CliError::bad_input(format!("lexicon {}: {e}", path.display())))?;
                Ok(Arc::new(lex))
            }
        }
    }

    pub fn shapes(&self, dir_override: Option<&Path>) -> Result<ShapeSet> {
        match dir_override.or(self.shapes_dir.as_deref()) {
            None => Ok(ShapeSet::bundled().clone()),
            Some(dir) if !dir.is_dir() => {
                Err(CliError::new(Kind::ShapesMissing, format!("shapes directory {} not found", dir.display())))
            }
            Some(dir) => ShapeSet::load_dir(dir)
                .map_err(|e| CliError::new(Kind::ShapesMissing, format!("shapes directory {}: {e}", dir.display()))),
        }
    }

    pub fn threshold(&self, flag: Option<f64>) -> Result<f64> {
        let t = flag.or(self.threshold).unwrap_or(DEFAULT_THRESHOLD);
        check_threshold(t)?;
        Ok(t)
    }

    pub fn canvas_size(&self, flag: Option<u32>) -> u32 {
        flag.or(self.canvas_size).unwrap_or(DEFAULT_CANVAS_SIZE)
    }
}

fn check_threshold(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(CliError::bad_input(format!("threshold must lie strictly between 0 and 1, got {t}")))
    }
}
