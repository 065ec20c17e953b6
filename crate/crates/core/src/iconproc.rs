//! Turns topic icons into canonical shape masks.
//!
//! The pipeline is binarize → crop/recenter/resize → extreme-point outline
//! → dilate → fill. Every stage is a pure function over [`RasterMask`].

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Cursor;
use std::path::Path;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::Topic;

pub const DEFAULT_CANVAS_SIZE: u32 = 512;
pub const DEFAULT_DILATION_RADIUS: u32 = 2;
pub const DEFAULT_BINARIZE_THRESHOLD: u8 = 128;
/// The icon's bounding box is scaled to this fraction of the canvas side.
pub const MARGIN_FACTOR: f64 = 0.9;
/// A border flood fill reaching this share of the background means the
/// outline does not enclose anything.
pub const OPEN_OUTLINE_RATIO: f64 = 0.98;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IconError {
    #[error("EmptyImage")]
    EmptyImage,
    #[error("EmptyMask (no foreground pixels)")]
    EmptyMask,
    #[error("OpenOutline (border fill reached {reached} of {background} background pixels)")]
    OpenOutline { reached: usize, background: usize },
    #[error("Fragmented (interior has {0} separate components)")]
    Fragmented(usize),
    #[error("cannot decode image: {0}")]
    Decode(String),
    #[error("bad PBM data: {0}")]
    Pbm(String),
    #[error("mask dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(u32, u32, u32, u32),
}

/// An [`IconError`] tagged with the pipeline stage that raised it.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{stage}: {source}")]
pub struct StageError {
    pub stage: &'static str,
    #[source]
    pub source: IconError,
}

#[derive(Debug, Error)]
pub enum ShapeSetError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("bad manifest: {0}")]
    Manifest(String),
    #[error("{topic}: {source}")]
    Mask { topic: Topic, source: IconError },
    #[error("shape set has no mask for `{0}`")]
    MissingTopic(Topic),
}

/// 8-bit grayscale raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrayImage {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl GrayImage {
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Result<Self, IconError> {
        if width == 0 || height == 0 || data.len() != (width as usize) * (height as usize) {
            return Err(IconError::EmptyImage);
        }
        Ok(GrayImage { width, height, data })
    }

    pub fn filled(width: u32, height: u32, value: u8) -> Self {
        GrayImage { width, height, data: vec![value; width as usize * height as usize] }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    /// Decodes a PNG. Color is reduced with integer luma
    /// `(299 r + 587 g + 114 b) / 1000`; alpha is flattened onto white.
    pub fn decode_png(bytes: &[u8]) -> Result<Self, IconError> {
        let mut decoder = png::Decoder::new(Cursor::new(bytes));
        decoder.set_transformations(png::Transformations::EXPAND | png::Transformations::STRIP_16);
        let mut reader = decoder.read_info().map_err(|e| IconError::Decode(e.to_string()))?;
        let mut buf = vec![0; reader.output_buffer_size().ok_or(IconError::EmptyImage)?];
        let info = reader.next_frame(&mut buf).map_err(|e| IconError::Decode(e.to_string()))?;
        let (w, h) = (info.width, info.height);
        let px = w as usize * h as usize;
        let buf = &buf[..info.buffer_size()];
        let luma = |r: u8, g: u8, b: u8| ((r as u32 * 299 + g as u32 * 587 + b as u32 * 114) / 1000) as u8;
        let over_white = |v: u8, a: u8| ((v as u32 * a as u32 + 255 * (255 - a as u32) + 127) / 255) as u8;
        let data: Vec<u8> = match info.color_type {
            png::ColorType::Grayscale => buf.to_vec(),
            png::ColorType::GrayscaleAlpha => buf.chunks_exact(2).map(|p| over_white(p[0], p[1])).collect(),
            png::ColorType::Rgb => buf.chunks_exact(3).map(|p| luma(p[0], p[1], p[2])).collect(),
            png::ColorType::Rgba => buf
                .chunks_exact(4)
                .map(|p| over_white(luma(p[0], p[1], p[2]), p[3]))
                .collect(),
            png::ColorType::Indexed => {
                return Err(IconError::Decode("unexpanded indexed color".into()));
            }
        };
        if data.len() != px {
            return Err(IconError::Decode("unexpected buffer size".into()));
        }
        GrayImage::new(w, h, data)
    }

    pub fn encode_png(&self) -> Vec<u8> {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, self.width, self.height);
            enc.set_color(png::ColorType::Grayscale);
            enc.set_depth(png::BitDepth::Eight);
            let mut writer = enc.write_header().expect("in-memory PNG header");
            writer.write_image_data(&self.data).expect("in-memory PNG data");
        }
        out
    }
}

/// Row-major binary raster; `true` is foreground.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RasterMask {
    width: u32,
    height: u32,
    bits: Vec<bool>,
}

impl fmt::Debug for RasterMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RasterMask {}x{}", self.width, self.height)?;
        if self.width <= 64 && self.height <= 64 {
            for y in 0..self.height {
                let row: String =
                    (0..self.width).map(|x| if self.get(x, y) { '#' } else { '.' }).collect();
                writeln!(f, "{row}")?;
            }
        }
        Ok(())
    }
}

impl RasterMask {
    pub fn new(width: u32, height: u32) -> Self {
        RasterMask { width, height, bits: vec![false; width as usize * height as usize] }
    }

    pub fn filled(width: u32, height: u32) -> Self {
        RasterMask { width, height, bits: vec![true; width as usize * height as usize] }
    }

    pub fn from_bits(width: u32, height: u32, bits: Vec<bool>) -> Option<Self> {
        (bits.len() == width as usize * height as usize).then_some(RasterMask { width, height, bits })
    }

    pub fn from_fn(width: u32, height: u32, mut f: impl FnMut(u32, u32) -> bool) -> Self {
        let mut bits = Vec::with_capacity(width as usize * height as usize);
        for y in 0..height {
            for x in 0..width {
                bits.push(f(x, y));
            }
        }
        RasterMask { width, height, bits }
    }

    /// Parses rows of `#`/`.` characters; handy for small fixtures.
    pub fn from_ascii(rows: &[&str]) -> Self {
        let height = rows.len() as u32;
        let width = rows.first().map_or(0, |r| r.chars().count()) as u32;
        let bits = rows.iter().flat_map(|r| r.chars().map(|c| c == '#')).collect();
        RasterMask { width, height, bits }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    #[inline]
    pub fn index(&self, x: u32, y: u32) -> usize {
        y as usize * self.width as usize + x as usize
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> bool {
        self.bits[self.index(x, y)]
    }

    /// Like `get` but treats everything outside the raster as background.
    #[inline]
    pub fn get_signed(&self, x: i64, y: i64) -> bool {
        x >= 0 && y >= 0 && (x as u64) < self.width as u64 && (y as u64) < self.height as u64 && self.get(x as u32, y as u32)
    }

    #[inline]
    pub fn get_index(&self, i: usize) -> bool {
        self.bits[i]
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, v: bool) {
        let i = self.index(x, y);
        self.bits[i] = v;
    }

    #[inline]
    pub fn set_index(&mut self, i: usize, v: bool) {
        self.bits[i] = v;
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn same_size(&self, other: &RasterMask) -> bool {
        self.width == other.width && self.height == other.height
    }

    pub fn is_subset_of(&self, other: &RasterMask) -> bool {
        self.same_size(other) && self.bits.iter().zip(&other.bits).all(|(a, b)| !a || *b)
    }

    pub fn union(&self, other: &RasterMask) -> RasterMask {
        assert!(self.same_size(other));
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect();
        RasterMask { width: self.width, height: self.height, bits }
    }

    pub fn and_not(&self, other: &RasterMask) -> RasterMask {
        assert!(self.same_size(other));
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| *a && !*b).collect();
        RasterMask { width: self.width, height: self.height, bits }
    }

    /// Positions of foreground pixels in row-major order.
    pub fn foreground(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let w = self.width as usize;
        self.bits
            .iter()
            .enumerate()
            .filter(|(_, b)| **b)
            .map(move |(i, _)| ((i % w) as u32, (i / w) as u32))
    }

    /// Inclusive bounding box `(x0, y0, x1, y1)` of the foreground.
    pub fn bbox(&self) -> Option<(u32, u32, u32, u32)> {
        let mut it = self.foreground();
        let (x, y) = it.next()?;
        let (mut x0, mut y0, mut x1, mut y1) = (x, y, x, y);
        for (x, y) in it {
            x0 = x0.min(x);
            x1 = x1.max(x);
            y0 = y0.min(y);
            y1 = y1.max(y);
        }
        Some((x0, y0, x1, y1))
    }

    /// Nearest-neighbor resample to `width` × `height`.
    pub fn resized(&self, width: u32, height: u32) -> RasterMask {
        let (sw, sh) = (self.width as u64, self.height as u64);
        RasterMask::from_fn(width, height, |x, y| {
            let sx = ((2 * x as u64 + 1) * sw / (2 * width as u64)) as u32;
            let sy = ((2 * y as u64 + 1) * sh / (2 * height as u64)) as u32;
            self.get(sx, sy)
        })
    }

    /// 4-connected components in order of their smallest row-major index.
    /// Each component lists its pixel indices in ascending order.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let (w, h) = (self.width as usize, self.height as usize);
        let mut seen = vec![false; self.bits.len()];
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for start in 0..self.bits.len() {
            if !self.bits[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut region = Vec::new();
            while let Some(i) = stack.pop() {
                region.push(i);
                let (x, y) = (i % w, i / w);
                let mut visit = |j: usize| {
                    if self.bits[j] && !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                };
                if x > 0 {
                    visit(i - 1);
                }
                if x + 1 < w {
                    visit(i + 1);
                }
                if y > 0 {
                    visit(i - w);
                }
                if y + 1 < h {
                    visit(i + w);
                }
            }
            region.sort_unstable();
            out.push(region);
        }
        out
    }

    /// Binary PBM (`P4`), foreground written as 1 (black).
    pub fn to_pbm(&self) -> Vec<u8> {
        let mut out = format!("P4\n{} {}\n", self.width, self.height).into_bytes();
        let row_bytes = (self.width as usize).div_ceil(8);
        for y in 0..self.height {
            let mut row = vec![0u8; row_bytes];
            for x in 0..self.width {
                if self.get(x, y) {
                    row[x as usize / 8] |= 0x80 >> (x % 8);
                }
            }
            out.extend_from_slice(&row);
        }
        out
    }

    pub fn from_pbm(data: &[u8]) -> Result<Self, IconError> {
        let bad = |m: &str| IconError::Pbm(m.to_string());
        let mut pos = 0;
        let next_token = |pos: &mut usize| -> Result<String, IconError> {
            loop {
                while *pos < data.len() && data[*pos].is_ascii_whitespace() {
                    *pos += 1;
                }
                if *pos < data.len() && data[*pos] == b'#' {
                    while *pos < data.len() && data[*pos] != b'\n' {
                        *pos += 1;
                    }
                    continue;
                }
                break;
            }
            let start = *pos;
            while *pos < data.len() && !data[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
            if start == *pos {
                return Err(bad("truncated header"));
            }
            Ok(String::from_utf8_lossy(&data[start..*pos]).into_owned())
        };
        if next_token(&mut pos)? != "P4" {
            return Err(bad("missing P4 magic"));
        }
        let width: u32 = next_token(&mut pos)?.parse().map_err(|_| bad("bad width"))?;
        let height: u32 = next_token(&mut pos)?.parse().map_err(|_| bad("bad height"))?;
        // exactly one whitespace byte separates the header from the raster
        pos += 1;
        let row_bytes = (width as usize).div_ceil(8);
        let raster = data.get(pos..).ok_or_else(|| bad("missing raster"))?;
        if raster.len() < row_bytes * height as usize {
            return Err(bad("truncated raster"));
        }
        Ok(RasterMask::from_fn(width, height, |x, y| {
            raster[y as usize * row_bytes + x as usize / 8] & (0x80 >> (x % 8)) != 0
        }))
    }
}

/// Foreground where intensity is below `threshold` (dark ink on a light background).
pub fn binarize(gray: &GrayImage, threshold: u8) -> Result<RasterMask, IconError> {
    if gray.data.is_empty() {
        return Err(IconError::EmptyImage);
    }
    let bits = gray.data.iter().map(|v| *v < threshold).collect();
    Ok(RasterMask { width: gray.width, height: gray.height, bits })
}

/// Crops to the foreground's bounding box, scales it (aspect preserved,
/// nearest neighbor) so its longer side is `⌊0.9·size⌋`, and centers it on
/// a `size` × `size` canvas.
pub fn crop_recenter_resize(m: &RasterMask, size: u32) -> Result<RasterMask, IconError> {
    let (x0, y0, x1, y1) = m.bbox().ok_or(IconError::EmptyMask)?;
    let (bw, bh) = ((x1 - x0 + 1) as u64, (y1 - y0 + 1) as u64);
    let target = ((size as f64) * MARGIN_FACTOR).floor().max(1.0) as u64;
    let long = bw.max(bh);
    let out_w = ((bw * target + long / 2) / long).max(1);
    let out_h = ((bh * target + long / 2) / long).max(1);
    let off_x = (size as u64 - out_w) / 2;
    let off_y = (size as u64 - out_h) / 2;
    let mut out = RasterMask::new(size, size);
    for oy in 0..out_h {
        let sy = y0 as u64 + (2 * oy + 1) * bh / (2 * out_h);
        for ox in 0..out_w {
            let sx = x0 as u64 + (2 * ox + 1) * bw / (2 * out_w);
            if m.get(sx as u32, sy as u32) {
                out.set((off_x + ox) as u32, (off_y + oy) as u32, true);
            }
        }
    }
    Ok(out)
}

/// Keeps only the first and last foreground pixel of every row and column.
pub fn extreme_point_outline(m: &RasterMask) -> Result<RasterMask, IconError> {
    let (w, h) = (m.width, m.height);
    let mut out = RasterMask::new(w, h);
    let mut col_first: Vec<Option<u32>> = vec![None; w as usize];
    let mut col_last: Vec<u32> = vec![0; w as usize];
    let mut any = false;
    for y in 0..h {
        let mut row_first = None;
        let mut row_last = 0;
        for x in 0..w {
            if m.get(x, y) {
                row_first.get_or_insert(x);
                row_last = x;
                col_first[x as usize].get_or_insert(y);
                col_last[x as usize] = y;
            }
        }
        if let Some(first) = row_first {
            any = true;
            out.set(first, y, true);
            out.set(row_last, y, true);
        }
    }
    if !any {
        return Err(IconError::EmptyMask);
    }
    for x in 0..w {
        if let Some(first) = col_first[x as usize] {
            out.set(x, first, true);
            out.set(x, col_last[x as usize], true);
        }
    }
    Ok(out)
}

/// Dilation with a `(2r+1)`-square structuring element, clipped at borders.
pub fn dilate(m: &RasterMask, radius: u32) -> RasterMask {
    let (w, h) = (m.width as usize, m.height as usize);
    let r = radius as usize;
    // separable: a running count over each row, then over each column
    let mut horizontal = vec![false; w * h];
    let mut prefix = vec![0u32; w.max(h) + 1];
    for y in 0..h {
        for x in 0..w {
            prefix[x + 1] = prefix[x] + m.bits[y * w + x] as u32;
        }
        for x in 0..w {
            let lo = x.saturating_sub(r);
            let hi = (x + r + 1).min(w);
            horizontal[y * w + x] = prefix[hi] > prefix[lo];
        }
    }
    let mut out = vec![false; w * h];
    for x in 0..w {
        for y in 0..h {
            prefix[y + 1] = prefix[y] + horizontal[y * w + x] as u32;
        }
        for y in 0..h {
            let lo = y.saturating_sub(r);
            let hi = (y + r + 1).min(h);
            out[y * w + x] = prefix[hi] > prefix[lo];
        }
    }
    RasterMask { width: m.width, height: m.height, bits: out }
}

/// Region enclosed by `outline`, including the outline itself.
///
/// Background pixels 4-connected to the canvas border are outside; the
/// rest is inside. Fails when the outside covers at least 98% of the
/// non-outline pixels.
pub fn fill_interior(outline: &RasterMask) -> Result<RasterMask, IconError> {
    let (w, h) = (outline.width as usize, outline.height as usize);
    let mut outside = vec![false; w * h];
    let mut stack = Vec::new();
    let push = |i: usize, outside: &mut Vec<bool>, stack: &mut Vec<usize>| {
        if !outline.bits[i] && !outside[i] {
            outside[i] = true;
            stack.push(i);
        }
    };
    for x in 0..w {
        push(x, &mut outside, &mut stack);
        push((h - 1) * w + x, &mut outside, &mut stack);
    }
    for y in 0..h {
        push(y * w, &mut outside, &mut stack);
        push(y * w + w - 1, &mut outside, &mut stack);
    }
    while let Some(i) = stack.pop() {
        let (x, y) = (i % w, i / w);
        if x > 0 {
            push(i - 1, &mut outside, &mut stack);
        }
        if x + 1 < w {
            push(i + 1, &mut outside, &mut stack);
        }
        if y > 0 {
            push(i - w, &mut outside, &mut stack);
        }
        if y + 1 < h {
            push(i + w, &mut outside, &mut stack);
        }
    }
    let background = outline.bits.iter().filter(|b| !**b).count();
    let reached = outside.iter().filter(|b| **b).count();
    if background > 0 && reached as f64 >= OPEN_OUTLINE_RATIO * background as f64 {
        return Err(IconError::OpenOutline { reached, background });
    }
    let bits = outside.into_iter().map(|o| !o).collect();
    Ok(RasterMask { width: outline.width, height: outline.height, bits })
}

/// A topic's outer shape: a thick outline and the filled region it bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeMask {
    /// `None` for the generic square used when no topic applies.
    pub topic: Option<Topic>,
    pub outline: RasterMask,
    pub interior: RasterMask,
    pub canvas_size: u32,
}

impl ShapeMask {
    /// A centered square occupying the canonical icon box.
    pub fn square(size: u32, dilation_radius: u32) -> ShapeMask {
        let solid = RasterMask::filled(1, 1);
        let boxed = crop_recenter_resize(&solid, size).expect("non-empty");
        let outline = dilate(&extreme_point_outline(&boxed).expect("non-empty"), dilation_radius);
        let interior = fill_interior(&outline).unwrap_or_else(|_| boxed.union(&outline));
        ShapeMask { topic: None, outline, interior, canvas_size: size }
    }

    pub fn resized(&self, size: u32) -> ShapeMask {
        if size == self.canvas_size {
            return self.clone();
        }
        ShapeMask {
            topic: self.topic,
            outline: self.outline.resized(size, size),
            interior: self.interior.resized(size, size),
            canvas_size: size,
        }
    }
}

/// Runs the full pipeline on a grayscale icon.
pub fn build_shape(
    topic: Topic,
    icon: &GrayImage,
    size: u32,
    dilation_radius: u32,
) -> Result<ShapeMask, StageError> {
    let stage = |stage: &'static str| move |source: IconError| StageError { stage, source };
    let mask = binarize(icon, DEFAULT_BINARIZE_THRESHOLD).map_err(stage("binarize"))?;
    let canonical = crop_recenter_resize(&mask, size).map_err(stage("crop"))?;
    let sparse = extreme_point_outline(&canonical).map_err(stage("outline"))?;
    let outline = dilate(&sparse, dilation_radius);
    let interior = fill_interior(&outline).map_err(stage("fill"))?;
    let parts = interior.components().len();
    if parts != 1 {
        return Err(StageError { stage: "fill", source: IconError::Fragmented(parts) });
    }
    Ok(ShapeMask { topic: Some(topic), outline, interior, canvas_size: size })
}

/// On-disk manifest accompanying the PBM pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeManifest {
    pub canvas_size: u32,
    pub dilation_radius: u32,
    pub topics: Vec<Topic>,
}

/// One shape mask per topic, all on the same canvas size.
#[derive(Debug, Clone)]
pub struct ShapeSet {
    canvas_size: u32,
    dilation_radius: u32,
    shapes: BTreeMap<Topic, ShapeMask>,
}

macro_rules! bundled_masks {
    ($($topic:ident => $name:literal),+ $(,)?) => {
        [$(
            (
                Topic::$topic,
                include_bytes!(concat!("../data/shapes/", $name, ".outline.pbm")).as_slice(),
                include_bytes!(concat!("../data/shapes/", $name, ".interior.pbm")).as_slice(),
            )
        ),+]
    };
}

static BUNDLED: OnceLock<ShapeSet> = OnceLock::new();

impl ShapeSet {
    pub fn new(canvas_size: u32, dilation_radius: u32) -> Self {
        ShapeSet { canvas_size, dilation_radius, shapes: BTreeMap::new() }
    }

    /// The eleven pre-processed masks shipped with the crate.
    pub fn bundled() -> &'static ShapeSet {
        BUNDLED.get_or_init(|| {
            let manifest: ShapeManifest =
                serde_json::from_str(include_str!("../data/shapes/manifest.json"))
                    .expect("bundled manifest");
            let mut set = ShapeSet::new(manifest.canvas_size, manifest.dilation_radius);
            let files = bundled_masks!(
                Exercise => "exercise", Family => "family", Food => "food",
                Friends => "friends", God => "god", Health => "health", Love => "love",
                Recreation => "recreation", School => "school", Sleep => "sleep", Work => "work",
            );
            for (topic, outline, interior) in files {
                let outline = RasterMask::from_pbm(outline).expect("bundled outline");
                let interior = RasterMask::from_pbm(interior).expect("bundled interior");
                set.insert(ShapeMask { topic: Some(topic), outline, interior, canvas_size: manifest.canvas_size });
            }
            set
        })
    }

    pub fn insert(&mut self, shape: ShapeMask) {
        if let Some(topic) = shape.topic {
            self.shapes.insert(topic, shape);
        }
    }

    pub fn get(&self, topic: Topic) -> Option<&ShapeMask> {
        self.shapes.get(&topic)
    }

    pub fn canvas_size(&self) -> u32 {
        self.canvas_size
    }

    pub fn dilation_radius(&self) -> u32 {
        self.dilation_radius
    }

    pub fn topics(&self) -> impl Iterator<Item = Topic> + '_ {
        self.shapes.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.shapes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shapes.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.shapes.len() == Topic::COUNT
    }

    pub fn manifest(&self) -> ShapeManifest {
        ShapeManifest {
            canvas_size: self.canvas_size,
            dilation_radius: self.dilation_radius,
            topics: self.topics().collect(),
        }
    }

    /// Same set resampled to another canvas size.
    pub fn resized(&self, size: u32) -> ShapeSet {
        ShapeSet {
            canvas_size: size,
            dilation_radius: self.dilation_radius,
            shapes: self.shapes.iter().map(|(t, s)| (*t, s.resized(size))).collect(),
        }
    }

    /// Loads `manifest.json` and the `<topic>.outline.pbm` /
    /// `<topic>.interior.pbm` pairs it lists.
    pub fn load_dir(dir: &Path) -> Result<ShapeSet, ShapeSetError> {
        let read = |name: String| {
            let path = dir.join(&name);
            fs::read(&path).map_err(|source| ShapeSetError::Io { path: path.display().to_string(), source })
        };
        let manifest: ShapeManifest = serde_json::from_slice(&read("manifest.json".into())?)
            .map_err(|e| ShapeSetError::Manifest(e.to_string()))?;
        let mut set = ShapeSet::new(manifest.canvas_size, manifest.dilation_radius);
        for topic in manifest.topics {
            let mask = |kind: &str| {
                let mask = RasterMask::from_pbm(&read(format!("{topic}.{kind}.pbm"))?)
                    .map_err(|source| ShapeSetError::Mask { topic, source })?;
                if mask.width() != manifest.canvas_size || mask.height() != manifest.canvas_size {
                    return Err(ShapeSetError::Mask {
                        topic,
                        source: IconError::DimensionMismatch(
                            mask.width(),
                            mask.height(),
                            manifest.canvas_size,
                            manifest.canvas_size,
                        ),
                    });
                }
                Ok(mask)
            };
            let outline = mask("outline")?;
            let interior = mask("interior")?;
            set.insert(ShapeMask { topic: Some(topic), outline, interior, canvas_size: manifest.canvas_size });
        }
        Ok(set)
    }

    pub fn write_dir(&self, dir: &Path) -> Result<(), ShapeSetError> {
        let write = |name: String, bytes: &[u8]| {
            let path = dir.join(name);
            fs::write(&path, bytes).map_err(|source| ShapeSetError::Io { path: path.display().to_string(), source })
        };
        fs::create_dir_all(dir)
            .map_err(|source| ShapeSetError::Io { path: dir.display().to_string(), source })?;
        for (topic, shape) in &self.shapes {
            write(format!("{topic}.outline.pbm"), &shape.outline.to_pbm())?;
            write(format!("{topic}.interior.pbm"), &shape.interior.to_pbm())?;
        }
        let mut manifest = serde_json::to_string_pretty(&self.manifest()).expect("manifest");
        manifest.push('\n');
        write("manifest.json".into(), manifest.as_bytes())
    }
}
