use super::{outline_canvas, Band, DrawLog, Motif, MotifError, MotifRequest};

/// Splits the shape into one vertical band per color, each holding as
/// close to an equal share of the paintable area as whole columns allow.
pub fn bands(req: &MotifRequest) -> Result<Motif, MotifError> {
    let colors = req.checked_colors()?;
    let shape = req.shape;
    let size = shape.canvas_size;
    let mut canvas = outline_canvas(shape);
    let paintable = shape.interior.and_not(&shape.outline);

    let column_area: Vec<usize> = (0..size).map(|x| (0..size).filter(|&y| paintable.get(x, y)).count()).collect();
    let total: usize = column_area.iter().sum();
    let k = colors.len();
    // before[x] = paintable pixels left of column x
    let mut before = vec![0usize; size as usize + 1];
    for x in 0..size as usize {
        before[x + 1] = before[x] + column_area[x];
    }
    // each cut goes at the column boundary whose left area is nearest i/k of the total
    let mut cuts = vec![0u32];
    for i in 1..k {
        let target = (i * total) as f64 / k as f64;
        let lo = *cuts.last().expect("non-empty");
        let best = (lo..=size)
            .min_by(|&a, &b| {
                let da = (before[a as usize] as f64 - target).abs();
                let db = (before[b as usize] as f64 - target).abs();
                da.total_cmp(&db)
            })
            .expect("non-empty range");
        cuts.push(best);
    }
    cuts.push(size);

    let mut bands = Vec::with_capacity(k);
    for (color, w) in cuts.windows(2).enumerate() {
        let (x0, x1) = (w[0], w[1]);
        for x in x0..x1 {
            for y in 0..size {
                if paintable.get(x, y) {
                    canvas.set(x, y, colors[color]);
                }
            }
        }
        let area = before[x1 as usize] - before[x0 as usize];
        bands.push(Band { x0, x1, color, area });
    }
    Ok(Motif { image: canvas, caption: String::new(), log: DrawLog::Bands { bands } })
}

/// Fills the shape with a single valence color.
pub fn solid(req: &MotifRequest) -> Result<Motif, MotifError> {
    let color = match req.colors.as_slice() {
        [] => return Err(MotifError::EmptyColorList),
        [c] => *c,
        more => return Err(MotifError::ValenceColorCount(more.len())),
    };
    let shape = req.shape;
    let mut canvas = outline_canvas(shape);
    canvas.fill_mask(&shape.interior.and_not(&shape.outline), color);
    Ok(Motif { image: canvas, caption: String::new(), log: DrawLog::Solid { color } })
}
