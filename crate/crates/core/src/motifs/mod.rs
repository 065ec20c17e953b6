//! Procedural motif styles, ablation baselines and entry assembly.
//!
//! A style paints one panel: a canvas the size of the topic shape, with the
//! shape outline drawn first and every later pixel confined to the shape
//! interior. Each panel also yields a [`DrawLog`] of the primitives it
//! placed so callers can audit or replay a render.

mod baselines;
mod compose;
pub mod font;
mod params;
mod styles;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{Rgb, Topic};
use crate::iconproc::ShapeMask;
use crate::render::Canvas;

pub use baselines::{bands, solid};
pub use compose::{
    assemble_entry, caption_for, caption_strip, render_entry, EntryMotif, PanelRecord, RenderContext,
    CAPTION_HEIGHT, CAPTION_PAD, GUTTER,
};
pub use params::{
    registry, CarpetParams, CirclePackingParams, DefaultValue, GlassParams, ParamError, ParamKind, ParamSpec,
    ParamValue, StringDollParams, StyleId, StyleParams, TileParams, UnsupportedStyle,
};
pub use styles::{carpet, carpet_barrier, circle_packing, glass, glass_stamp, string_doll, tile, tile_barrier};

pub const BACKGROUND: Rgb = Rgb::WHITE;
pub const OUTLINE_COLOR: Rgb = Rgb::new(64, 64, 64);
/// Hatching lines (carpet, tile) and caption text.
pub const LINE_COLOR: Rgb = Rgb::new(24, 24, 24);
/// Canvas side that pixel-valued parameters refer to.
pub const REFERENCE_CANVAS: u32 = 512;
/// Used when a caller does not pick a seed.
pub const DEFAULT_SEED: u64 = 0x5EED_1E30_71F0;
/// Emotion colors per panel.
pub const MAX_COLORS: usize = 4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MotifError {
    #[error("EmptyColorList: the style needs at least one color")]
    EmptyColorList,
    #[error("too many colors: {0} (at most {MAX_COLORS})")]
    TooManyColors(usize),
    #[error("valence styles take exactly one color, got {0}")]
    ValenceColorCount(usize),
    #[error("DegenerateOutline: fewer than two outline pixels")]
    DegenerateOutline,
    #[error("invalid parameter {0}")]
    Params(#[from] ParamError),
    #[error("an entry needs 1 to 3 panels, got {0}")]
    PanelCount(usize),
    #[error("no shape for topic {0}")]
    ShapeMissing(Topic),
}

/// Everything a style needs to paint one panel.
#[derive(Debug, Clone)]
pub struct MotifRequest<'a> {
    pub shape: &'a ShapeMask,
    pub colors: Vec<Rgb>,
    pub params: &'a StyleParams,
    pub seed: u64,
}

impl MotifRequest<'_> {
    pub fn canvas_size(&self) -> u32 {
        self.shape.canvas_size
    }

    /// A length given at the reference canvas, in pixels of this canvas.
    pub fn scaled(&self, px: u32) -> f64 {
        px as f64 * self.canvas_size() as f64 / REFERENCE_CANVAS as f64
    }

    /// Like [`scaled`](Self::scaled), rounded, at least one pixel.
    pub fn scaled_px(&self, px: u32) -> u32 {
        (self.scaled(px).round() as u32).max(1)
    }

    fn checked_colors(&self) -> Result<&[Rgb], MotifError> {
        match self.colors.len() {
            0 => Err(MotifError::EmptyColorList),
            n if n > MAX_COLORS => Err(MotifError::TooManyColors(n)),
            _ => Ok(&self.colors),
        }
    }
}

/// One rendered panel.
#[derive(Debug, Clone, PartialEq)]
pub struct Motif {
    pub image: Canvas,
    pub caption: String,
    pub log: DrawLog,
}

/// Primitives placed by a render, in drawing order. Color indices refer to
/// the request's color list.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DrawLog {
    /// Outline only, nothing painted inside.
    Empty,
    Circles { circles: Vec<CircleRecord> },
    Strokes { strokes: Vec<StrokeRecord> },
    Carpet { spacing: u32, thickness: u32, cells: Vec<CarpetCell> },
    Tile { grid: u32, line_width: u32, cells: Vec<String>, region_colors: Vec<usize> },
    Glass { stamps: Vec<GlassStamp> },
    Bands { bands: Vec<Band> },
    Solid { color: Rgb },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CircleRecord {
    pub x: u32,
    pub y: u32,
    pub r: f64,
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StrokeRecord {
    pub p0: [f64; 2],
    pub p1: [f64; 2],
    pub ctrl: [f64; 2],
    pub width: u32,
    pub color: usize,
    pub overlay_width: u32,
    pub overlay_color: Rgb,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CarpetCell {
    pub row: u32,
    pub col: u32,
    pub x0: u32,
    pub y0: u32,
    pub x1: u32,
    pub y1: u32,
    pub angle: u32,
    pub region_colors: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GlassStamp {
    pub icon: Topic,
    /// Top-left corner; may lie off canvas.
    pub x: i64,
    pub y: i64,
    pub size: u32,
    pub color: usize,
    pub alpha: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Band {
    /// Half-open column range.
    pub x0: u32,
    pub x1: u32,
    pub color: usize,
    pub area: usize,
}

/// Blank canvas with the shape outline painted.
pub fn outline_canvas(shape: &ShapeMask) -> Canvas {
    let mut canvas = Canvas::new(shape.canvas_size, shape.canvas_size, BACKGROUND);
    canvas.fill_mask(&shape.outline, OUTLINE_COLOR);
    canvas
}

/// The panel used when a sub-entry has no emotions to paint.
pub fn outline_only(shape: &ShapeMask) -> Motif {
    Motif { image: outline_canvas(shape), caption: String::new(), log: DrawLog::Empty }
}

/// Renders one panel in the request's style. Baselines that swap the
/// topic shape for a square expect the caller to pass the square.
pub fn render_motif(req: &MotifRequest) -> Result<Motif, MotifError> {
    match req.params.style() {
        StyleId::CirclePacking | StyleId::B1 => circle_packing(req),
        StyleId::StringDoll | StyleId::B2 => string_doll(req),
        StyleId::Carpet => carpet(req),
        StyleId::Tile => tile(req),
        StyleId::Glass => glass(req),
        StyleId::B3 | StyleId::B4 => bands(req),
        StyleId::B5 | StyleId::B6 | StyleId::B7 => solid(req),
    }
}
