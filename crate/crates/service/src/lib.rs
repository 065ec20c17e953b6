//! HTTP API over the analysis and motif pipeline.
//!
//! Routes live under `/api/v1`. Handlers share read-only state only, so
//! identical requests always produce identical responses. Entries are
//! never stored.

mod error;

use std::future::Future;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::{to_bytes, Body, Bytes};
use axum::extract::{RawQuery, State};
use axum::http::{header, HeaderName, HeaderValue, Method};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use base64::Engine;
use lemotif_core::classify::{score_entry, select_labels, Classifier, LabelSet, Lexicon, DEFAULT_THRESHOLD};
use lemotif_core::domain::{Entry, Palette};
use lemotif_core::iconproc::{ShapeSet, DEFAULT_CANVAS_SIZE};
use lemotif_core::motifs::{render_entry, registry, MotifError, RenderContext, StyleId, DEFAULT_SEED};
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};
use tokio::net::TcpListener;
use tower_http::cors::{AllowOrigin, CorsLayer};
use tower_http::services::ServeDir;

pub use error::{ApiError, ErrorCode};

/// Largest accepted request body.
pub const BODY_LIMIT: usize = 64 * 1024;
pub const SEED_HEADER: &str = "x-motif-seed";
pub const MIN_CANVAS: u32 = 64;
pub const MAX_CANVAS: u32 = 1024;

pub struct ServiceConfig {
    pub backend: Arc<dyn Classifier>,
    pub palette: Palette,
    pub shapes: ShapeSet,
    pub threshold: f64,
    pub canvas_size: u32,
    /// Origins allowed by CORS; empty means any `localhost` or loopback
    /// origin.
    pub cors_origins: Vec<String>,
    /// Directory of static files served for unmatched paths (the web UI).
    pub static_dir: Option<PathBuf>,
}

impl ServiceConfig {
    /// Bundled lexicon, palette and shapes.
    pub fn bundled() -> Self {
        ServiceConfig {
            backend: Arc::new(Lexicon::bundled()),
            palette: Palette::default(),
            shapes: ShapeSet::bundled().clone(),
            threshold: DEFAULT_THRESHOLD,
            canvas_size: DEFAULT_CANVAS_SIZE,
            cors_origins: Vec::new(),
            static_dir: None,
        }
    }
}

struct AppState {
    backend: Arc<dyn Classifier>,
    threshold: f64,
    palette: Palette,
    shapes: ShapeSet,
    ctx: Arc<RenderContext>,
}

type Shared = Arc<AppState>;

pub fn router(config: ServiceConfig) -> Router {
    let ctx = Arc::new(RenderContext::new(config.palette.clone(), &config.shapes, config.canvas_size));
    let state = Arc::new(AppState {
        backend: config.backend,
        threshold: config.threshold,
        palette: config.palette,
        shapes: config.shapes,
        ctx,
    });
    let api = Router::new()
        .route("/api/v1/analyze", post(analyze))
        .route("/api/v1/motif", post(motif))
        .route("/api/v1/styles", get(styles))
        .route("/healthz", get(|| async { "ok" }))
        .with_state(state)
        .layer(cors(&config.cors_origins));
    match config.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

fn is_loopback_origin(origin: &str) -> bool {
    let Some(rest) = origin.strip_prefix("http://").or_else(|| origin.strip_prefix("https://")) else {
        return false;
    };
    ["localhost", "127.0.0.1", "[::1]"]
        .iter()
        .any(|host| rest.strip_prefix(host).is_some_and(|tail| tail.is_empty() || tail.starts_with(':')))
}

fn cors(origins: &[String]) -> CorsLayer {
    let allow = if origins.is_empty() {
        AllowOrigin::predicate(|origin: &HeaderValue, _| origin.to_str().is_ok_and(is_loopback_origin))
    } else {
        AllowOrigin::list(origins.iter().filter_map(|o| HeaderValue::from_str(o).ok()))
    };
    CorsLayer::new()
        .allow_origin(allow)
        .allow_methods([Method::GET, Method::POST])
        .allow_headers([header::CONTENT_TYPE])
        .expose_headers([HeaderName::from_static(SEED_HEADER)])
}

/// Serves until `shutdown` resolves, then drains in-flight requests.
pub async fn serve(
    listener: TcpListener,
    app: Router,
    shutdown: impl Future<Output = ()> + Send + 'static,
) -> std::io::Result<()> {
    axum::serve(listener, app).with_graceful_shutdown(shutdown).await
}

async fn read_body(body: Body) -> Result<Bytes, ApiError> {
    to_bytes(body, BODY_LIMIT)
        .await
        .map_err(|_| ApiError::bad_request(format!("request body exceeds {BODY_LIMIT} bytes")))
}

fn parse_json<T: DeserializeOwned>(bytes: &[u8]) -> Result<T, ApiError> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        let err = ApiError::bad_request(e.into_inner().to_string());
        if path == "." { err } else { err.with_detail(path) }
    })
}

/// Where the text to analyze comes from.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct AnalyzeRequest {
    text: Option<String>,
    entry: Option<Entry>,
    threshold: Option<f64>,
}

fn entry_from(text: Option<String>, entry: Option<Entry>) -> Result<Entry, ApiError> {
    let entry = match (text, entry) {
        (Some(text), None) => Entry::from_text("entry", &text).map_err(|e| ApiError::bad_request(e.to_string()).with_detail("text"))?,
        (None, Some(entry)) => entry,
        _ => return Err(ApiError::bad_request("give exactly one of `text` or `entry`")),
    };
    entry.validate().map_err(|e| ApiError::bad_request(e.to_string()).with_detail("entry.sub_entries"))?;
    Ok(entry)
}

fn threshold_or(given: Option<f64>, default: f64) -> Result<f64, ApiError> {
    match given {
        Some(t) if !(0.0..=1.0).contains(&t) => {
            Err(ApiError::bad_request("threshold must lie in [0, 1]").with_detail("threshold"))
        }
        Some(t) => Ok(t),
        None => Ok(default),
    }
}

async fn classify(state: &Shared, entry: Entry, threshold: f64) -> Result<(Vec<LabelSet>, Vec<Value>), ApiError> {
    let backend = state.backend.clone();
    let probs = tokio::task::spawn_blocking(move || score_entry(&entry, backend.as_ref()))
        .await
        .map_err(ApiError::internal)?
        .map_err(|e| ApiError::new(ErrorCode::BackendUnavailable, e.to_string()))?;
    let sets = probs.iter().map(|p| select_labels(p, threshold)).collect();
    Ok((sets, probs.iter().map(|p| p.to_json()).collect()))
}

async fn analyze(State(state): State<Shared>, body: Body) -> Result<Json<Value>, ApiError> {
    let req: AnalyzeRequest = parse_json(&read_body(body).await?)?;
    let threshold = threshold_or(req.threshold, state.threshold)?;
    let entry = entry_from(req.text, req.entry)?;
    let id = entry.id.clone();
    let (label_sets, probs) = classify(&state, entry, threshold).await?;
    Ok(Json(json!({ "id": id, "threshold": threshold, "label_sets": label_sets, "probs": probs })))
}

/// Accepts a seed as a JSON number or a decimal string, since browsers
/// lose precision above 2^53.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum SeedValue {
    Number(u64),
    Text(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    #[default]
    Png,
    Json,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct MotifRequestBody {
    label_sets: Option<Vec<LabelSet>>,
    text: Option<String>,
    entry: Option<Entry>,
    style: Option<String>,
    #[serde(default)]
    params: Value,
    seed: Option<SeedValue>,
    captions: Option<bool>,
    format: Option<Format>,
    threshold: Option<f64>,
    canvas_size: Option<u32>,
}

fn motif_error(e: MotifError) -> ApiError {
    match e {
        MotifError::Params(p) => {
            let field = format!("params.{}", p.field);
            ApiError::bad_request(p.to_string()).with_detail(field)
        }
        MotifError::ShapeMissing(t) => ApiError::new(ErrorCode::ShapeMissing, format!("no shape for topic `{t}`")),
        MotifError::PanelCount(_) => ApiError::bad_request(e.to_string()).with_detail("label_sets"),
        MotifError::TooManyColors(_) | MotifError::EmptyColorList | MotifError::ValenceColorCount(_) => {
            ApiError::bad_request(e.to_string()).with_detail("label_sets")
        }
        MotifError::DegenerateOutline => ApiError::internal(e),
    }
}

async fn motif(State(state): State<Shared>, RawQuery(query): RawQuery, body: Body) -> Result<Response, ApiError> {
    let req: MotifRequestBody = parse_json(&read_body(body).await?)?;
    let style: StyleId = req.style.as_deref().unwrap_or(StyleId::CirclePacking.name()).parse().map_err(
        |e: lemotif_core::motifs::UnsupportedStyle| {
            ApiError::new(ErrorCode::UnsupportedStyle, e.to_string()).with_detail("style")
        },
    )?;
    let params = style.parse_params(&req.params).map_err(|e| motif_error(e.into()))?;
    let seed = match req.seed {
        None => DEFAULT_SEED,
        Some(SeedValue::Number(n)) => n,
        Some(SeedValue::Text(s)) => {
            s.parse().map_err(|_| ApiError::bad_request("seed must be an unsigned 64-bit integer").with_detail("seed"))?
        }
    };
    let query_json = query.as_deref().is_some_and(|q| q.split('&').any(|kv| kv == "format=json"));
    let format = if query_json { Format::Json } else { req.format.unwrap_or_default() };
    let threshold = threshold_or(req.threshold, state.threshold)?;

    let (id, label_sets) = match (req.label_sets, req.text, req.entry) {
        (Some(sets), None, None) => ("motif".to_string(), sets),
        (None, text, entry) if text.is_some() || entry.is_some() => {
            let entry = entry_from(text, entry)?;
            let id = entry.id.clone();
            (id, classify(&state, entry, threshold).await?.0)
        }
        _ => return Err(ApiError::bad_request("give exactly one of `label_sets`, `text` or `entry`")),
    };

    let ctx = match req.canvas_size {
        None => state.ctx.clone(),
        Some(size) if size == state.ctx.canvas_size() => state.ctx.clone(),
        Some(size) if (MIN_CANVAS..=MAX_CANVAS).contains(&size) => {
            Arc::new(RenderContext::new(state.palette.clone(), &state.shapes, size))
        }
        Some(_) => {
            return Err(ApiError::bad_request(format!("canvas_size must lie in {MIN_CANVAS}..={MAX_CANVAS}"))
                .with_detail("canvas_size"))
        }
    };
    let captions = req.captions.unwrap_or(true);
    let rendered = tokio::task::spawn_blocking(move || {
        render_entry(&label_sets, &params, seed, &ctx, captions).map(|m| (m.image.encode_png(), m.sidecar(&id)))
    })
    .await
    .map_err(ApiError::internal)?
    .map_err(motif_error)?;
    let (png, sidecar) = rendered;
    let seed_header = [(HeaderName::from_static(SEED_HEADER), seed.to_string())];
    Ok(match format {
        Format::Png => (seed_header, [(header::CONTENT_TYPE, "image/png")], png).into_response(),
        Format::Json => {
            let png_base64 = base64::engine::general_purpose::STANDARD.encode(png);
            (seed_header, Json(json!({ "png_base64": png_base64, "sidecar": sidecar }))).into_response()
        }
    })
}

async fn styles() -> Json<Value> {
    Json(json!({ "styles": registry(), "default": StyleId::CirclePacking.name() }))
}

#[cfg(test)]
mod tests {
    use super::is_loopback_origin;

    #[test]
    fn loopback_origins() {
        for ok in ["http://localhost", "http://localhost:5173", "http://127.0.0.1:8080", "https://[::1]:3000"] {
            assert!(is_loopback_origin(ok), "{ok}");
        }
        for bad in ["http://localhost.evil.com", "http://example.com", "localhost:80", "http://127.0.0.10"] {
            assert!(!is_loopback_origin(bad), "{bad}");
        }
    }
}
