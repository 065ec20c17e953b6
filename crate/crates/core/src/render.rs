//! Deterministic raster primitives shared by every motif style.

use std::io::Cursor;

use thiserror::Error;

use crate::domain::{Rgb, Rgba};
use crate::iconproc::RasterMask;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RenderError {
    #[error("bezier sample step must be in (0, 0.5], got {0}")]
    BadStep(f64),
    #[error("canvas dimensions must be positive")]
    EmptyCanvas,
    #[error("cannot decode PNG: {0}")]
    Decode(String),
}

/// xoshiro256** seeded through splitmix64.
///
/// Only integer arithmetic and IEEE-exact float operations (plus `libm`
/// for the logarithm) are used, so a seed yields the same stream on every
/// platform.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rng {
    s: [u64; 4],
}

pub fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        let mut sm = seed;
        let s = [splitmix64(&mut sm), splitmix64(&mut sm), splitmix64(&mut sm), splitmix64(&mut sm)];
        Rng { s }
    }

    /// An independent stream for sub-job `stream` of the job seeded with `seed`.
    pub fn derive_seed(seed: u64, stream: u64) -> u64 {
        let mut sm = seed ^ stream.wrapping_mul(0xD1B5_4A32_D192_ED03);
        splitmix64(&mut sm)
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in `[0, 1)` with 53 bits of precision.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform integer in `[0, n)`; `n` must be positive.
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0, "empty range");
        // Lemire's multiply-shift with rejection
        let threshold = n.wrapping_neg() % n;
        loop {
            let m = (self.next_u64() as u128) * (n as u128);
            if (m as u64) >= threshold {
                return (m >> 64) as u64;
            }
        }
    }

    /// Uniform integer in `[lo, hi]`.
    pub fn range_inclusive(&mut self, lo: i64, hi: i64) -> i64 {
        assert!(lo <= hi);
        lo + self.below((hi - lo) as u64 + 1) as i64
    }

    /// Uniform real in `[lo, hi)`; returns `lo` when the range is empty.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.next_f64()
    }

    pub fn bernoulli(&mut self, p: f64) -> bool {
        self.next_f64() < p
    }

    /// Standard normal sample (Marsaglia polar method).
    pub fn gaussian(&mut self) -> f64 {
        loop {
            let u = 2.0 * self.next_f64() - 1.0;
            let v = 2.0 * self.next_f64() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                return u * (-2.0 * libm::log(s) / s).sqrt();
            }
        }
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        &items[self.below(items.len() as u64) as usize]
    }

    pub fn shuffle<T>(&mut self, items: &mut [T]) {
        for i in (1..items.len()).rev() {
            let j = self.below(i as u64 + 1) as usize;
            items.swap(i, j);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn distance(self, other: Point) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn midpoint(self, other: Point) -> Point {
        Point::new((self.x + other.x) / 2.0, (self.y + other.y) / 2.0)
    }
}

/// Straight-alpha RGBA raster, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canvas {
    width: u32,
    height: u32,
    pixels: Vec<[u8; 4]>,
}

impl Canvas {
    pub fn new(width: u32, height: u32, background: Rgb) -> Self {
        assert!(width > 0 && height > 0, "canvas dimensions must be positive");
        let px = [background.r, background.g, background.b, 255];
        Canvas { width, height, pixels: vec![px; width as usize * height as usize] }
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn pixels(&self) -> &[[u8; 4]] {
        &self.pixels
    }

    #[inline]
    pub fn index(&self, x: u32, y: u32) -> usize {
        y as usize * self.width as usize + x as usize
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> [u8; 4] {
        self.pixels[self.index(x, y)]
    }

    #[inline]
    pub fn rgb_at(&self, i: usize) -> Rgb {
        let p = self.pixels[i];
        Rgb::new(p[0], p[1], p[2])
    }

    #[inline]
    pub fn set_index(&mut self, i: usize, color: Rgb) {
        self.pixels[i] = [color.r, color.g, color.b, 255];
    }

    #[inline]
    pub fn set(&mut self, x: u32, y: u32, color: Rgb) {
        let i = self.index(x, y);
        self.set_index(i, color);
    }

    /// Paints every foreground pixel of `mask`.
    pub fn fill_mask(&mut self, mask: &RasterMask, color: Rgb) {
        assert_eq!((mask.width(), mask.height()), (self.width, self.height));
        for (i, on) in mask.bits().iter().enumerate() {
            if *on {
                self.set_index(i, color);
            }
        }
    }

    pub fn fill_rect(&mut self, x0: u32, y0: u32, w: u32, h: u32, color: Rgb) {
        for y in y0..(y0 + h).min(self.height) {
            for x in x0..(x0 + w).min(self.width) {
                self.set(x, y, color);
            }
        }
    }

    /// Copies `src` with its top-left corner at `(x, y)`.
    pub fn blit(&mut self, src: &Canvas, x: u32, y: u32) {
        for sy in 0..src.height {
            let dy = y + sy;
            if dy >= self.height {
                break;
            }
            for sx in 0..src.width {
                let dx = x + sx;
                if dx >= self.width {
                    break;
                }
                let i = self.index(dx, dy);
                self.pixels[i] = src.get(sx, sy);
            }
        }
    }

    /// 8-bit RGBA PNG.
    pub fn encode_png(&self) -> Vec<u8> {
        let mut out = Vec::new();
        {
            let mut enc = png::Encoder::new(&mut out, self.width, self.height);
            enc.set_color(png::ColorType::Rgba);
            enc.set_depth(png::BitDepth::Eight);
            let mut writer = enc.write_header().expect("in-memory PNG header");
            writer.write_image_data(self.pixels.as_flattened()).expect("in-memory PNG data");
        }
        out
    }

    /// Decodes an 8-bit RGB or RGBA PNG.
    pub fn decode_png(bytes: &[u8]) -> Result<Canvas, RenderError> {
        let err = |e: png::DecodingError| RenderError::Decode(e.to_string());
        let decoder = png::Decoder::new(Cursor::new(bytes));
        let mut reader = decoder.read_info().map_err(err)?;
        let mut buf = vec![0; reader.output_buffer_size().ok_or(RenderError::EmptyCanvas)?];
        let info = reader.next_frame(&mut buf).map_err(err)?;
        if info.bit_depth != png::BitDepth::Eight {
            return Err(RenderError::Decode("only 8-bit images are supported".into()));
        }
        let buf = &buf[..info.buffer_size()];
        let pixels: Vec<[u8; 4]> = match info.color_type {
            png::ColorType::Rgba => buf.chunks_exact(4).map(|p| [p[0], p[1], p[2], p[3]]).collect(),
            png::ColorType::Rgb => buf.chunks_exact(3).map(|p| [p[0], p[1], p[2], 255]).collect(),
            other => return Err(RenderError::Decode(format!("unsupported color type {other:?}"))),
        };
        Ok(Canvas { width: info.width, height: info.height, pixels })
    }

    /// Binary PPM (`P6`); alpha is dropped.
    pub fn encode_ppm(&self) -> Vec<u8> {
        let mut out = format!("P6\n{} {}\n255\n", self.width, self.height).into_bytes();
        for p in &self.pixels {
            out.extend_from_slice(&p[..3]);
        }
        out
    }
}

/// Samples `B(t) = (1−t)²·p0 + 2(1−t)t·ctrl + t²·p1` at `t = 0, step, 2·step, …, 1`.
pub fn quad_bezier_points(p0: Point, p1: Point, ctrl: Point, step: f64) -> Result<Vec<Point>, RenderError> {
    if !(step > 0.0 && step <= 0.5) {
        return Err(RenderError::BadStep(step));
    }
    let eval = |t: f64| {
        let u = 1.0 - t;
        Point::new(
            u * u * p0.x + 2.0 * u * t * ctrl.x + t * t * p1.x,
            u * u * p0.y + 2.0 * u * t * ctrl.y + t * t * p1.y,
        )
    };
    let n = (1.0 / step).floor() as usize;
    let mut pts: Vec<Point> = (0..=n).map(|i| eval(i as f64 * step)).collect();
    if (n as f64) * step < 1.0 {
        pts.push(eval(1.0));
    } else if let Some(last) = pts.last_mut() {
        *last = p1;
    }
    pts[0] = p0;
    Ok(pts)
}

/// Sample step for stroking a quadratic curve: half a pixel along the
/// control polygon, which bounds the arc length from above.
pub fn bezier_step(p0: Point, p1: Point, ctrl: Point) -> f64 {
    let length = p0.distance(ctrl) + ctrl.distance(p1);
    (1.0 / (2.0 * length.max(1.0))).min(0.5)
}

fn stamp_disc(canvas: &mut Canvas, center: Point, radius: f64, color: Rgb, clip: &RasterMask) {
    let r2 = radius * radius;
    let x0 = (center.x - radius).ceil().max(0.0) as i64;
    let x1 = (center.x + radius).floor().min(canvas.width as f64 - 1.0) as i64;
    let y0 = (center.y - radius).ceil().max(0.0) as i64;
    let y1 = (center.y + radius).floor().min(canvas.height as f64 - 1.0) as i64;
    for y in y0..=y1 {
        let dy = y as f64 - center.y;
        for x in x0..=x1 {
            let dx = x as f64 - center.x;
            if dx * dx + dy * dy <= r2 {
                let i = canvas.index(x as u32, y as u32);
                if clip.get_index(i) {
                    canvas.set_index(i, color);
                }
            }
        }
    }
}

/// Stamps a filled disc of diameter `width` at every point; pixels outside
/// `clip` are never touched.
pub fn stroke_polyline(canvas: &mut Canvas, pts: &[Point], width: f64, color: Rgb, clip: &RasterMask) {
    assert_eq!((clip.width(), clip.height()), (canvas.width, canvas.height));
    let radius = width.max(1.0) / 2.0;
    let mut last: Option<(i64, i64)> = None;
    for p in pts {
        // consecutive samples often land on the same spot at sub-pixel steps
        let key = ((p.x * 8.0).round() as i64, (p.y * 8.0).round() as i64);
        if last == Some(key) {
            continue;
        }
        last = Some(key);
        stamp_disc(canvas, *p, radius, color, clip);
    }
}

/// Sets pixels within `radius` of `center` (and inside `clip`) to `color`.
pub fn fill_circle(canvas: &mut Canvas, center: Point, radius: f64, color: Rgb, clip: &RasterMask) {
    assert_eq!((clip.width(), clip.height()), (canvas.width, canvas.height));
    stamp_disc(canvas, center, radius, color, clip);
}

/// 4-connected components of `m AND NOT barriers`, ordered by their
/// smallest row-major pixel index.
pub fn connected_regions(m: &RasterMask, barriers: &RasterMask) -> Vec<Vec<usize>> {
    m.and_not(barriers).components()
}

/// Squared Euclidean distance from each pixel to the nearest pixel that is
/// not in `m`; pixels beyond the border count as outside. Zero outside `m`.
pub fn squared_distance_to_exterior(m: &RasterMask) -> Vec<u64> {
    let (w, h) = (m.width() as usize, m.height() as usize);
    let (pw, ph) = (w + 2, h + 2);
    let mut grid = vec![0i64; pw * ph];
    for y in 0..h {
        for x in 0..w {
            if m.get_index(y * w + x) {
                grid[(y + 1) * pw + x + 1] = EDT_INF;
            }
        }
    }
    let n = pw.max(ph);
    let (mut f, mut out, mut v, mut z) = (vec![0; n], vec![0; n], vec![0usize; n], vec![0.0; n + 1]);
    for x in 0..pw {
        for y in 0..ph {
            f[y] = grid[y * pw + x];
        }
        lower_envelope(&f[..ph], &mut out[..ph], &mut v, &mut z);
        for y in 0..ph {
            grid[y * pw + x] = out[y];
        }
    }
    for y in 0..ph {
        f[..pw].copy_from_slice(&grid[y * pw..(y + 1) * pw]);
        lower_envelope(&f[..pw], &mut out[..pw], &mut v, &mut z);
        grid[y * pw..(y + 1) * pw].copy_from_slice(&out[..pw]);
    }
    let mut result = Vec::with_capacity(w * h);
    for y in 0..h {
        result.extend(grid[(y + 1) * pw + 1..(y + 1) * pw + 1 + w].iter().map(|d| *d as u64));
    }
    result
}

const EDT_INF: i64 = 1 << 40;

// One-dimensional squared distance transform of a sampled function
// (lower envelope of parabolas rooted at each sample).
fn lower_envelope(f: &[i64], out: &mut [i64], v: &mut [usize], z: &mut [f64]) {
    let n = f.len();
    let sq = |q: usize| (q * q) as i64;
    let meet = |q: usize, p: usize| ((f[q] + sq(q)) - (f[p] + sq(p))) as f64 / (2 * q - 2 * p) as f64;
    let mut k = 0;
    v[0] = 0;
    z[0] = f64::NEG_INFINITY;
    z[1] = f64::INFINITY;
    for q in 1..n {
        let mut s = meet(q, v[k]);
        while s <= z[k] {
            k -= 1;
            s = meet(q, v[k]);
        }
        k += 1;
        v[k] = q;
        z[k] = s;
        z[k + 1] = f64::INFINITY;
    }
    k = 0;
    for (q, o) in out.iter_mut().enumerate() {
        while z[k + 1] < q as f64 {
            k += 1;
        }
        let d = q as i64 - v[k] as i64;
        *o = d * d + f[v[k]];
    }
}

/// Integer `x / 255` rounded half up.
#[inline]
pub fn div255_round(x: u32) -> u8 {
    ((x + 127) / 255) as u8
}

/// Source-over blend of one channel: `src·a + dst·(1 − a)`, `a = alpha/255`.
#[inline]
pub fn blend_channel(src: u8, dst: u8, alpha: u8) -> u8 {
    let a = alpha as u32;
    div255_round(src as u32 * a + dst as u32 * (255 - a))
}

pub fn blend(src: Rgba, dst: Rgb) -> Rgb {
    Rgb::new(
        blend_channel(src.r, dst.r, src.a),
        blend_channel(src.g, dst.g, src.a),
        blend_channel(src.b, dst.b, src.a),
    )
}

/// Blends `color` over every pixel index in `region`.
pub fn composite_over(canvas: &mut Canvas, color: Rgba, region: &[usize]) {
    for &i in region {
        let dst = canvas.pixels[i];
        let a = color.a as u32;
        canvas.pixels[i] = [
            blend_channel(color.r, dst[0], color.a),
            blend_channel(color.g, dst[1], color.a),
            blend_channel(color.b, dst[2], color.a),
            div255_round(a * 255 + dst[3] as u32 * (255 - a)),
        ];
    }
}

/// Positive factors blend toward white, negative toward black.
pub fn lighten_darken(color: Rgb, factor: f64) -> Rgb {
    let f = factor.clamp(-1.0, 1.0);
    let adjust = |c: u8| {
        let c = c as f64;
        let v = if f >= 0.0 { c + (255.0 - c) * f } else { c * (1.0 + f) };
        (v + 0.5).floor().clamp(0.0, 255.0) as u8
    };
    Rgb::new(adjust(color.r), adjust(color.g), adjust(color.b))
}
