use serde::Serialize;
use serde_json::{json, Value};

use crate::classify::LabelSet;
use crate::domain::{majority_valence, Palette, Rgb, Topic};
use crate::iconproc::{ShapeMask, ShapeSet};
use crate::render::{Canvas, Rng};

use super::font::{draw_text, text_width, GLYPH_HEIGHT};
use super::{outline_only, render_motif, DrawLog, Motif, MotifError, MotifRequest, StyleId, StyleParams};
use super::{BACKGROUND, LINE_COLOR};

/// Horizontal space between panels.
pub const GUTTER: u32 = 16;
pub const CAPTION_PAD: u32 = 8;
/// Height of the caption strip under each panel.
pub const CAPTION_HEIGHT: u32 = 2 * GLYPH_HEIGHT + 2 * CAPTION_PAD;

/// `"topic: emotion, emotion"`, with `general` standing in for a missing
/// topic.
pub fn caption_for(labels: &LabelSet) -> String {
    let topic = labels.topic.map_or("general", Topic::name);
    if labels.emotions.is_empty() {
        format!("{topic}: (no feelings detected)")
    } else {
        let names: Vec<&str> = labels.emotions.iter().map(|e| e.name()).collect();
        format!("{topic}: {}", names.join(", "))
    }
}

/// A `width`-wide strip with `text` centered, at double size when it fits,
/// otherwise single size, otherwise cut short with `..`.
pub fn caption_strip(text: &str, width: u32) -> Canvas {
    let mut strip = Canvas::new(width, CAPTION_HEIGHT, BACKGROUND);
    let room = width.saturating_sub(2 * CAPTION_PAD);
    let (text, scale) = if text_width(text, 2) <= room {
        (text.to_string(), 2)
    } else if text_width(text, 1) <= room {
        (text.to_string(), 1)
    } else {
        let fits = ((room + 1) / 6) as usize;
        let kept: String = text.chars().take(fits.saturating_sub(2)).collect();
        (if fits >= 3 { kept + ".." } else { String::new() }, 1)
    };
    let x = (width - text_width(&text, scale)) / 2;
    let y = (CAPTION_HEIGHT - GLYPH_HEIGHT * scale) / 2;
    draw_text(&mut strip, x, y, &text, scale, LINE_COLOR);
    strip
}

/// Places panels left to right with a fixed gutter, optionally with each
/// panel's caption in a strip underneath.
pub fn assemble_entry(motifs: &[Motif], captions_on: bool) -> Result<Canvas, MotifError> {
    if motifs.is_empty() || motifs.len() > 3 {
        return Err(MotifError::PanelCount(motifs.len()));
    }
    let width = motifs.iter().map(|m| m.image.width()).sum::<u32>() + GUTTER * (motifs.len() as u32 - 1);
    let art_height = motifs.iter().map(|m| m.image.height()).max().expect("non-empty");
    let height = art_height + if captions_on { CAPTION_HEIGHT } else { 0 };
    let mut out = Canvas::new(width, height, BACKGROUND);
    let mut x = 0;
    for m in motifs {
        out.blit(&m.image, x, 0);
        if captions_on {
            out.blit(&caption_strip(&m.caption, m.image.width()), x, art_height);
        }
        x += m.image.width() + GUTTER;
    }
    Ok(out)
}

/// Shared, read-only inputs for rendering entries at one canvas size.
#[derive(Debug, Clone)]
pub struct RenderContext {
    palette: Palette,
    shapes: ShapeSet,
    square: ShapeMask,
}

impl RenderContext {
    pub fn new(palette: Palette, shapes: &ShapeSet, canvas_size: u32) -> Self {
        let square = ShapeMask::square(canvas_size, shapes.dilation_radius());
        RenderContext { palette, shapes: shapes.resized(canvas_size), square }
    }

    /// Default palette and the bundled shapes.
    pub fn bundled(canvas_size: u32) -> Self {
        RenderContext::new(Palette::default(), ShapeSet::bundled(), canvas_size)
    }

    pub fn canvas_size(&self) -> u32 {
        self.square.canvas_size
    }

    pub fn palette(&self) -> &Palette {
        &self.palette
    }

    pub fn shapes(&self) -> &ShapeSet {
        &self.shapes
    }

    /// Centered square used by the shapeless baselines and when no topic
    /// was detected.
    pub fn square(&self) -> &ShapeMask {
        &self.square
    }
}

/// What was drawn in one panel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PanelRecord {
    pub caption: String,
    /// Topic whose shape was used; `None` for the square.
    pub shape: Option<Topic>,
    pub colors: Vec<Rgb>,
    pub seed: u64,
    pub log: DrawLog,
}

/// A rendered entry: the assembled image plus everything needed to
/// reproduce or audit it.
#[derive(Debug, Clone)]
pub struct EntryMotif {
    pub image: Canvas,
    pub style: StyleId,
    pub params: Value,
    pub seed: u64,
    pub canvas_size: u32,
    pub label_sets: Vec<LabelSet>,
    pub panels: Vec<PanelRecord>,
}

impl EntryMotif {
    pub fn sidecar(&self, id: &str) -> Value {
        json!({
            "id": id,
            "style": self.style,
            "seed": self.seed,
            "params": self.params,
            "canvas_size": self.canvas_size,
            "width": self.image.width(),
            "height": self.image.height(),
            "label_sets": self.label_sets,
            "panels": self.panels,
        })
    }
}

struct Job<'a> {
    shape: &'a ShapeMask,
    colors: Vec<Rgb>,
    caption: String,
}

fn plan<'a>(label_sets: &[LabelSet], style: StyleId, ctx: &'a RenderContext) -> Result<Vec<Job<'a>>, MotifError> {
    if style == StyleId::B7 {
        let all: Vec<_> = label_sets.iter().flat_map(|ls| ls.emotions.iter()).collect();
        let job = match majority_valence(all) {
            Ok(v) => Job { shape: &ctx.square, colors: vec![ctx.palette.valence_color(v)], caption: format!("day: {v}") },
            Err(_) => Job { shape: &ctx.square, colors: vec![], caption: "day: (no feelings detected)".into() },
        };
        return Ok(vec![job]);
    }
    let on_square = matches!(style, StyleId::B1 | StyleId::B2 | StyleId::B4 | StyleId::B6);
    label_sets
        .iter()
        .map(|ls| {
            let shape = match ls.topic {
                Some(t) if !on_square => ctx.shapes.get(t).ok_or(MotifError::ShapeMissing(t))?,
                _ => &ctx.square,
            };
            let colors = match style {
                StyleId::B5 | StyleId::B6 => majority_valence(&ls.emotions)
                    .map(|v| vec![ctx.palette.valence_color(v)])
                    .unwrap_or_default(),
                _ => ls.emotions.iter().map(|e| ctx.palette.color(*e)).collect(),
            };
            Ok(Job { shape, colors, caption: caption_for(ls) })
        })
        .collect()
}

/// Renders one panel per sub-entry (one for the whole day under B7) in
/// parallel and assembles them. Panel `i` uses the seed
/// `Rng::derive_seed(seed, i)`.
pub fn render_entry(
    label_sets: &[LabelSet],
    params: &StyleParams,
    seed: u64,
    ctx: &RenderContext,
    captions_on: bool,
) -> Result<EntryMotif, MotifError> {
    if label_sets.is_empty() || label_sets.len() > 3 {
        return Err(MotifError::PanelCount(label_sets.len()));
    }
    let jobs = plan(label_sets, params.style(), ctx)?;
    let seeds: Vec<u64> = (0..jobs.len() as u64).map(|i| Rng::derive_seed(seed, i)).collect();
    let results: Vec<Result<Motif, MotifError>> = std::thread::scope(|scope| {
        let handles: Vec<_> = jobs
            .iter()
            .zip(&seeds)
            .map(|(job, &seed)| {
                scope.spawn(move || {
                    let mut motif = if job.colors.is_empty() {
                        outline_only(job.shape)
                    } else {
                        render_motif(&MotifRequest { shape: job.shape, colors: job.colors.clone(), params, seed })?
                    };
                    motif.caption = job.caption.clone();
                    Ok(motif)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("render thread panicked")).collect()
    });
    let motifs = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    let image = assemble_entry(&motifs, captions_on)?;
    let panels = motifs
        .into_iter()
        .zip(jobs)
        .zip(seeds)
        .map(|((m, job), seed)| PanelRecord {
            caption: m.caption,
            shape: job.shape.topic,
            colors: job.colors,
            seed,
            log: m.log,
        })
        .collect();
    Ok(EntryMotif {
        image,
        style: params.style(),
        params: params.to_json(),
        seed,
        canvas_size: ctx.canvas_size(),
        label_sets: label_sets.to_vec(),
        panels,
    })
}
