use std::collections::HashMap;

use crate::domain::Topic;
use crate::iconproc::{RasterMask, ShapeSet};
use crate::render::{
    bezier_step, composite_over, connected_regions, fill_circle, lighten_darken, quad_bezier_points,
    squared_distance_to_exterior, stroke_polyline, Canvas, Point, Rng,
};

use super::{
    outline_canvas, CarpetCell, CircleRecord, DrawLog, GlassStamp, Motif, MotifError, MotifRequest, StrokeRecord,
    LINE_COLOR,
};

fn finish(image: Canvas, log: DrawLog) -> Result<Motif, MotifError> {
    Ok(Motif { image, caption: String::new(), log })
}

/// Rejection-sampled circle packing, largest radius first.
///
/// Centers are interior pixels drawn uniformly. A circle is kept when every
/// pixel within its radius is interior and its center is at least `r1 + r2`
/// from every circle already placed.
pub fn circle_packing(req: &MotifRequest) -> Result<Motif, MotifError> {
    let colors = req.checked_colors()?;
    let p = req.params.circle_packing();
    let shape = req.shape;
    let size = shape.canvas_size as usize;
    let mut rng = Rng::new(req.seed);
    let mut canvas = outline_canvas(shape);

    let clearance = squared_distance_to_exterior(&shape.interior);
    let candidates: Vec<usize> = (0..size * size).filter(|&i| shape.interior.get_index(i)).collect();
    let radii: Vec<f64> = p.radii.iter().map(|&r| req.scaled(r)).collect();
    let cell = (2.0 * radii[0]).ceil().max(1.0) as usize;
    let grid_side = size / cell + 1;
    let mut grid: Vec<Vec<usize>> = vec![Vec::new(); grid_side * grid_side];
    let mut placed: Vec<CircleRecord> = Vec::new();

    if !candidates.is_empty() {
        for (&r, &count) in radii.iter().zip(&p.counts) {
            for _ in 0..count {
                for _ in 0..p.max_trials {
                    let i = candidates[rng.below(candidates.len() as u64) as usize];
                    if clearance[i] as f64 <= r * r {
                        continue;
                    }
                    let (x, y) = (i % size, i / size);
                    let (gx, gy) = (x / cell, y / cell);
                    let overlaps = (gy.saturating_sub(1)..=(gy + 1).min(grid_side - 1)).any(|cy| {
                        (gx.saturating_sub(1)..=(gx + 1).min(grid_side - 1)).any(|cx| {
                            grid[cy * grid_side + cx].iter().any(|&k| {
                                let o = &placed[k];
                                let (dx, dy) = (o.x as f64 - x as f64, o.y as f64 - y as f64);
                                dx * dx + dy * dy < (r + o.r) * (r + o.r)
                            })
                        })
                    });
                    if overlaps {
                        continue;
                    }
                    let color = rng.below(colors.len() as u64) as usize;
                    grid[gy * grid_side + gx].push(placed.len());
                    placed.push(CircleRecord { x: x as u32, y: y as u32, r, color });
                    break;
                }
            }
        }
    }
    for c in &placed {
        fill_circle(&mut canvas, Point::new(c.x as f64, c.y as f64), c.r, colors[c.color], &shape.interior);
    }
    finish(canvas, DrawLog::Circles { circles: placed })
}

/// Quadratic strings between random outline points, each followed by a
/// thinner lightened or darkened copy along the same curve.
pub fn string_doll(req: &MotifRequest) -> Result<Motif, MotifError> {
    let colors = req.checked_colors()?;
    let p = req.params.string_doll();
    let shape = req.shape;
    let size = shape.canvas_size;
    let boundary: Vec<(u32, u32)> = shape.outline.foreground().collect();
    if boundary.len() < 2 {
        return Err(MotifError::DegenerateOutline);
    }
    let mut rng = Rng::new(req.seed);
    let mut canvas = outline_canvas(shape);
    let sigma = p.sigma_frac * size as f64;
    let (w_min, w_max) = (req.scaled_px(p.w_min), req.scaled_px(p.w_max));
    let point = |(x, y): (u32, u32)| Point::new(x as f64, y as f64);

    let mut strokes = Vec::with_capacity(p.n_strokes as usize);
    for _ in 0..p.n_strokes {
        let n = boundary.len() as u64;
        let a = rng.below(n);
        let mut b = rng.below(n - 1);
        if b >= a {
            b += 1;
        }
        let (p0, p1) = (point(boundary[a as usize]), point(boundary[b as usize]));
        let mid = p0.midpoint(p1);
        let ctrl = Point::new(mid.x + sigma * rng.gaussian(), mid.y + sigma * rng.gaussian());
        let width = rng.range_inclusive(w_min as i64, w_max as i64) as u32;
        let color = rng.below(colors.len() as u64) as usize;
        let factor = if rng.bernoulli(0.5) { 0.3 } else { -0.3 };
        let overlay_width = (width / 4).max(1);
        let overlay_color = lighten_darken(colors[color], factor);

        let pts = quad_bezier_points(p0, p1, ctrl, bezier_step(p0, p1, ctrl)).expect("step within (0, 0.5]");
        stroke_polyline(&mut canvas, &pts, width as f64, colors[color], &shape.interior);
        stroke_polyline(&mut canvas, &pts, overlay_width as f64, overlay_color, &shape.interior);
        strokes.push(StrokeRecord {
            p0: [p0.x, p0.y],
            p1: [p1.x, p1.y],
            ctrl: [ctrl.x, ctrl.y],
            width,
            color,
            overlay_width,
            overlay_color,
        });
    }
    finish(canvas, DrawLog::Strokes { strokes })
}

/// Whether cell-relative pixel `(u, v)` lies on a hatching line.
///
/// Lines run at `angle` degrees, one every `spacing` pixels measured along
/// the axis (or diagonal) they cross, each `thickness` pixels wide. The
/// first line sits one spacing in from the cell edge.
pub fn carpet_barrier(angle: u32, u: u32, v: u32, cell_height: u32, spacing: u32, thickness: u32) -> bool {
    let q = match angle {
        0 => v,
        90 => u,
        45 => u + v,
        135 => u + (cell_height - 1 - v),
        _ => unreachable!("angles are validated"),
    };
    q >= spacing && q % spacing < thickness
}

/// Grid of cells, each hatched with parallel lines at a random angle; the
/// pieces between the lines are filled with random colors.
pub fn carpet(req: &MotifRequest) -> Result<Motif, MotifError> {
    let colors = req.checked_colors()?;
    let p = req.params.carpet();
    let shape = req.shape;
    let size = shape.canvas_size;
    let n = p.grid.min(size);
    let spacing = req.scaled_px(p.spacing).max(2);
    let thickness = req.scaled_px(p.thickness).min(spacing - 1);
    let mut rng = Rng::new(req.seed);
    let mut canvas = outline_canvas(shape);
    let paintable = shape.interior.and_not(&shape.outline);

    let mut cells = Vec::with_capacity((n * n) as usize);
    for row in 0..n {
        for col in 0..n {
            let (x0, x1) = (col * size / n, (col + 1) * size / n);
            let (y0, y1) = (row * size / n, (row + 1) * size / n);
            let (cw, ch) = (x1 - x0, y1 - y0);
            let angle = *rng.choose(&p.angles);
            let on_line = |u: u32, v: u32| carpet_barrier(angle, u, v, ch, spacing, thickness);
            let area = RasterMask::from_fn(cw, ch, |u, v| paintable.get(x0 + u, y0 + v));
            let lines = RasterMask::from_fn(cw, ch, on_line);
            let mut region_colors = Vec::new();
            for region in connected_regions(&area, &lines) {
                let c = rng.below(colors.len() as u64) as usize;
                region_colors.push(c);
                for i in region {
                    let (u, v) = (i as u32 % cw, i as u32 / cw);
                    canvas.set(x0 + u, y0 + v, colors[c]);
                }
            }
            for (u, v) in area.foreground() {
                if lines.get(u, v) {
                    canvas.set(x0 + u, y0 + v, LINE_COLOR);
                }
            }
            cells.push(CarpetCell { row, col, x0, y0, x1, y1, angle, region_colors });
        }
    }
    finish(canvas, DrawLog::Carpet { spacing, thickness, cells })
}

/// Whether cell-relative pixel `(u, v)` lies on the cell's diagonal.
///
/// `rising` is the "/" diagonal from bottom-left to top-right. A pixel is
/// on it when its center is within `width / 2` of the line, evaluated in
/// exact integer arithmetic.
pub fn tile_barrier(rising: bool, u: u32, v: u32, cw: u32, ch: u32, width: u32) -> bool {
    let (u, v, cw, ch, w) = (u as i64, v as i64, cw as i64, ch as i64, width as i64);
    // twice the signed area term of the pixel center against the diagonal
    let g = if rising {
        (2 * u + 1) * ch + (2 * v + 1) * cw - 2 * cw * ch
    } else {
        (2 * u + 1) * ch - (2 * v + 1) * cw
    };
    g * g <= w * w * (cw * cw + ch * ch)
}

/// One random diagonal per grid cell; the connected pieces of the shape
/// between diagonals are filled with random colors.
pub fn tile(req: &MotifRequest) -> Result<Motif, MotifError> {
    let colors = req.checked_colors()?;
    let p = req.params.tile();
    let shape = req.shape;
    let size = shape.canvas_size;
    let n = p.grid.min(size);
    let width = req.scaled_px(p.line_width);
    let mut rng = Rng::new(req.seed);
    let mut canvas = outline_canvas(shape);
    let paintable = shape.interior.and_not(&shape.outline);

    let cells: Vec<bool> = (0..n * n).map(|_| rng.bernoulli(p.p_diag)).collect();
    let bound = |k: u32| k * size / n;
    let mut col_of = vec![0u32; size as usize];
    for c in 0..n {
        for x in bound(c)..bound(c + 1) {
            col_of[x as usize] = c;
        }
    }
    let lines = RasterMask::from_fn(size, size, |x, y| {
        let (col, row) = (col_of[x as usize], col_of[y as usize]);
        let (x0, y0) = (bound(col), bound(row));
        let (cw, ch) = (bound(col + 1) - x0, bound(row + 1) - y0);
        tile_barrier(cells[(row * n + col) as usize], x - x0, y - y0, cw, ch, width)
    });

    let mut region_colors = Vec::new();
    for region in connected_regions(&paintable, &lines) {
        let c = rng.below(colors.len() as u64) as usize;
        region_colors.push(c);
        for i in region {
            canvas.set_index(i, colors[c]);
        }
    }
    for i in 0..(size * size) as usize {
        if lines.get_index(i) && paintable.get_index(i) {
            canvas.set_index(i, LINE_COLOR);
        }
    }
    let cells = cells.into_iter().map(|rising| if rising { "/" } else { "\\" }.to_string()).collect();
    finish(canvas, DrawLog::Tile { grid: n, line_width: width, cells, region_colors })
}

/// The mask a glass stamp paints: the bundled icon interior for `topic`
/// resampled to `size`×`size`.
pub fn glass_stamp(topic: Topic, size: u32) -> RasterMask {
    let icon = ShapeSet::bundled().get(topic).expect("bundled set is complete");
    icon.interior.resized(size, size)
}

/// Layers of translucent topic icons of random size, position, color and
/// opacity, composited inside the shape.
pub fn glass(req: &MotifRequest) -> Result<Motif, MotifError> {
    let colors = req.checked_colors()?;
    let p = req.params.glass();
    let shape = req.shape;
    let size = shape.canvas_size;
    let mut rng = Rng::new(req.seed);
    let mut canvas = outline_canvas(shape);
    let mut cache: HashMap<(Topic, u32), RasterMask> = HashMap::new();
    let mut stamps = Vec::new();
    let mut region = Vec::new();

    for _ in 0..p.passes {
        for _ in 0..p.icons_per_pass {
            let icon = Topic::ALL[rng.below(Topic::COUNT as u64) as usize];
            let side = ((rng.uniform(p.scale_min, p.scale_max) * size as f64).round() as u32).max(1);
            let x = rng.below(size as u64) as i64 - (side / 2) as i64;
            let y = rng.below(size as u64) as i64 - (side / 2) as i64;
            let color = rng.below(colors.len() as u64) as usize;
            let alpha = rng.range_inclusive(p.alpha_min as i64, p.alpha_max as i64) as u8;

            let mask = cache.entry((icon, side)).or_insert_with(|| glass_stamp(icon, side));
            region.clear();
            for (sx, sy) in mask.foreground() {
                let (cx, cy) = (x + sx as i64, y + sy as i64);
                if shape.interior.get_signed(cx, cy) {
                    region.push(cy as usize * size as usize + cx as usize);
                }
            }
            composite_over(&mut canvas, colors[color].with_alpha(alpha), &region);
            stamps.push(GlassStamp { icon, x, y, size: side, color, alpha });
        }
    }
    finish(canvas, DrawLog::Glass { stamps })
}
