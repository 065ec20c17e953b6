//! Acceptance suite: one PASS/FAIL line per criterion.

use std::collections::HashSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use axum::body::Body;
use axum::http::{Request, StatusCode};
use http_body_util::BodyExt;
use lemotif_core::classify::{select_labels, Classifier, ClassifyError, LabelProbs, LabelSet};
use lemotif_core::domain::{valence_of, Emotion, Palette, Rgb, Topic, Valence};
use lemotif_core::eval::{
    consistency_check, evaluate, f1, normalized_accuracy, ConfusionCounts, EvalOptions, LabeledSample,
    PreferenceMatrix,
};
use lemotif_core::iconproc::{dilate, extreme_point_outline, fill_interior, IconError, RasterMask, ShapeSet};
use lemotif_core::motifs::{
    render_entry, render_motif, DrawLog, MotifRequest, RenderContext, StyleId, BACKGROUND, LINE_COLOR, OUTLINE_COLOR,
};
use lemotif_core::render::{connected_regions, Rng};
use serde_json::{json, Value};
use tower::ServiceExt;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn random_colors(rng: &mut Rng, palette: &Palette, max: usize) -> Vec<Rgb> {
    let mut emotions = Emotion::ALL.to_vec();
    rng.shuffle(&mut emotions);
    let n = 1 + rng.below(max as u64) as usize;
    emotions[..n].iter().map(|e| palette.color(*e)).collect()
}

fn mask_containment() -> Outcome {
    let start = Instant::now();
    let shapes = ShapeSet::bundled();
    let palette = Palette::default();
    let mut rng = Rng::new(1);
    let (mut renders, mut outside) = (0, 0usize);
    for style in StyleId::STYLES {
        let params = style.default_params();
        for topic in Topic::ALL {
            let shape = shapes.get(topic).ok_or(format!("no shape for {topic}"))?;
            for seed in [11, 22, 33] {
                let colors = random_colors(&mut rng, &palette, 4);
                let m = render_motif(&MotifRequest { shape, colors, params: &params, seed })
                    .map_err(|e| format!("{style:?}/{topic}: {e}"))?;
                renders += 1;
                outside += m
                    .image
                    .pixels()
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !shape.interior.get_index(*i))
                    .filter(|(i, _)| m.image.rgb_at(*i) != BACKGROUND)
                    .count();
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(renders == 165, format!("{renders} renders"))?;
    check(outside == 0, format!("{outside} art pixels outside the interior"))?;
    check(secs < 60.0, format!("took {secs:.1} s"))?;
    Ok(format!("165 renders at 512 px, 0 pixels outside, {secs:.1} s"))
}

fn palette_closure() -> Outcome {
    let palette = Palette::default();
    let sets = [ShapeSet::bundled().resized(128), ShapeSet::bundled().resized(256)];
    let mut rng = Rng::new(2);
    let mut runs = 0;
    for style in [StyleId::CirclePacking, StyleId::Tile, StyleId::Carpet] {
        for _ in 0..50 {
            let set = &sets[rng.below(2) as usize];
            let shape = set.get(*rng.choose(&Topic::ALL)).unwrap();
            let colors = random_colors(&mut rng, &palette, 4);
            let params = match style {
                StyleId::Tile => json!({
                    "grid": rng.range_inclusive(1, 16),
                    "p_diag": rng.uniform(0.0, 1.0),
                    "line_width": rng.range_inclusive(1, 6),
                }),
                StyleId::Carpet => {
                    let spacing = rng.range_inclusive(4, 30);
                    json!({ "grid": rng.range_inclusive(1, 8), "spacing": spacing, "thickness": rng.range_inclusive(1, spacing - 1) })
                }
                _ => json!({ "max_trials": rng.range_inclusive(50, 600) }),
            };
            let params = style.parse_params(&params).map_err(|e| format!("{style:?} params: {e}"))?;
            let seed = rng.next_u64();
            let m = render_motif(&MotifRequest { shape, colors: colors.clone(), params: &params, seed })
                .map_err(|e| e.to_string())?;
            let allowed: HashSet<Rgb> = colors.iter().copied().chain([LINE_COLOR, OUTLINE_COLOR, BACKGROUND]).collect();
            let stray = (0..m.image.pixels().len()).filter(|&i| !allowed.contains(&m.image.rgb_at(i))).count();
            check(stray == 0, format!("{style:?} seed {seed}: {stray} pixels off palette"))?;
            runs += 1;
        }
    }
    Ok(format!("{runs} renders, every pixel in the declared set"))
}

fn circle_geometry() -> Outcome {
    let palette = Palette::default();
    let sets = [ShapeSet::bundled().resized(128), ShapeSet::bundled().resized(256)];
    let params = StyleId::CirclePacking.default_params();
    let mut rng = Rng::new(3);
    let (mut circles_seen, mut violations) = (0, 0);
    for run in 0..50u64 {
        let set = &sets[(run % 2) as usize];
        let shape = set.get(Topic::ALL[run as usize % Topic::COUNT]).unwrap();
        let req = MotifRequest { shape, colors: random_colors(&mut rng, &palette, 4), params: &params, seed: run * 7919 };
        let m = render_motif(&req).map_err(|e| e.to_string())?;
        let DrawLog::Circles { circles } = m.log else { return Err("log is not a circle log".into()) };
        let size = shape.canvas_size as i64;
        for (i, a) in circles.iter().enumerate() {
            for b in &circles[i + 1..] {
                let d = ((a.x as f64 - b.x as f64).powi(2) + (a.y as f64 - b.y as f64).powi(2)).sqrt();
                if d < a.r + b.r - 1e-9 {
                    violations += 1;
                }
            }
            let reach = a.r.ceil() as i64;
            for dy in -reach..=reach {
                for dx in -reach..=reach {
                    if ((dx * dx + dy * dy) as f64) > a.r * a.r {
                        continue;
                    }
                    let (x, y) = (a.x as i64 + dx, a.y as i64 + dy);
                    let inside = x >= 0 && y >= 0 && x < size && y < size && shape.interior.get(x as u32, y as u32);
                    if !inside {
                        violations += 1;
                    }
                }
            }
        }
        circles_seen += circles.len();
    }
    check(circles_seen > 0, "no circles placed")?;
    check(violations == 0, format!("{violations} violations"))?;
    Ok(format!("50 runs, {circles_seen} circles, 0 overlap or containment violations"))
}

fn seed_determinism() -> Outcome {
    let ctx = RenderContext::bundled(128);
    let mut rng = Rng::new(4);
    for i in 0..30 {
        let style = StyleId::ALL[i % StyleId::ALL.len()];
        let n = 1 + rng.below(3) as usize;
        let sets: Vec<LabelSet> = (0..n)
            .map(|_| {
                let mut emotions = Emotion::ALL.to_vec();
                rng.shuffle(&mut emotions);
                emotions.truncate(rng.below(5) as usize);
                let topic = if rng.bernoulli(0.9) { Some(*rng.choose(&Topic::ALL)) } else { None };
                LabelSet { topic, emotions }
            })
            .collect();
        let params = style.default_params();
        let seed = rng.next_u64();
        let a = render_entry(&sets, &params, seed, &ctx, true).map_err(|e| e.to_string())?.image.encode_png();
        let b = render_entry(&sets, &params, seed, &ctx, true).map_err(|e| e.to_string())?.image.encode_png();
        check(a == b, format!("config {i} ({}) differs", style.name()))?;
    }
    Ok("30 configs, 30 byte-identical PNG pairs".into())
}

fn random_mask(rng: &mut Rng) -> RasterMask {
    let (w, h) = (1 + rng.below(32) as u32, 1 + rng.below(32) as u32);
    let density = rng.uniform(0.0, 0.7);
    RasterMask::from_fn(w, h, |_, _| rng.bernoulli(density))
}

/// A random outline that often closes: rectangle rings plus noise.
fn random_outline(rng: &mut Rng) -> RasterMask {
    let (w, h) = (3 + rng.below(30) as u32, 3 + rng.below(30) as u32);
    let rings: Vec<(u32, u32, u32, u32)> = (0..1 + rng.below(3))
        .map(|_| {
            let x0 = rng.below(w as u64 - 2) as u32;
            let y0 = rng.below(h as u64 - 2) as u32;
            let x1 = x0 + 2 + rng.below((w - x0 - 2) as u64) as u32;
            let y1 = y0 + 2 + rng.below((h - y0 - 2) as u64) as u32;
            (x0, y0, x1.min(w - 1), y1.min(h - 1))
        })
        .collect();
    let noise = rng.uniform(0.0, 0.15);
    RasterMask::from_fn(w, h, |x, y| {
        rings.iter().any(|&(x0, y0, x1, y1)| {
            (x >= x0 && x <= x1 && (y == y0 || y == y1)) || (y >= y0 && y <= y1 && (x == x0 || x == x1))
        }) || rng.bernoulli(noise)
    })
}

fn brute_outline(m: &RasterMask) -> Option<RasterMask> {
    if m.count() == 0 {
        return None;
    }
    let (w, h) = (m.width(), m.height());
    Some(RasterMask::from_fn(w, h, |x, y| {
        m.get(x, y)
            && ((0..x).all(|i| !m.get(i, y))
                || (x + 1..w).all(|i| !m.get(i, y))
                || (0..y).all(|j| !m.get(x, j))
                || (y + 1..h).all(|j| !m.get(x, j)))
    }))
}

fn brute_dilate(m: &RasterMask, r: u32) -> RasterMask {
    let r = r as i64;
    RasterMask::from_fn(m.width(), m.height(), |x, y| {
        (-r..=r).any(|dy| (-r..=r).any(|dx| m.get_signed(x as i64 + dx, y as i64 + dy)))
    })
}

/// Outside = non-outline pixels reachable from the border, grown until
/// nothing changes.
fn brute_fill(outline: &RasterMask) -> Result<RasterMask, ()> {
    let (w, h) = (outline.width(), outline.height());
    let mut outside = RasterMask::from_fn(w, h, |x, y| {
        !outline.get(x, y) && (x == 0 || y == 0 || x == w - 1 || y == h - 1)
    });
    loop {
        let grown = RasterMask::from_fn(w, h, |x, y| {
            outside.get(x, y)
                || (!outline.get(x, y)
                    && [(-1, 0), (1, 0), (0, -1), (0, 1)]
                        .iter()
                        .any(|(dx, dy)| outside.get_signed(x as i64 + dx, y as i64 + dy)))
        });
        if grown == outside {
            break;
        }
        outside = grown;
    }
    let background = outline.len() - outline.count();
    if background > 0 && outside.count() as f64 >= 0.98 * background as f64 {
        return Err(());
    }
    Ok(RasterMask::from_fn(w, h, |x, y| !outside.get(x, y)))
}

/// Components by min-label propagation, ordered by smallest index.
fn brute_regions(m: &RasterMask, barriers: &RasterMask) -> Vec<Vec<usize>> {
    let (w, h) = (m.width() as usize, m.height() as usize);
    let open: Vec<bool> = (0..w * h).map(|i| m.get_index(i) && !barriers.get_index(i)).collect();
    let mut label: Vec<usize> = (0..w * h).collect();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..w * h {
            if !open[i] {
                continue;
            }
            let (x, y) = (i % w, i / w);
            let mut neighbours = Vec::new();
            if x > 0 {
                neighbours.push(i - 1);
            }
            if x + 1 < w {
                neighbours.push(i + 1);
            }
            if y > 0 {
                neighbours.push(i - w);
            }
            if y + 1 < h {
                neighbours.push(i + w);
            }
            for j in neighbours {
                if open[j] && label[j] < label[i] {
                    label[i] = label[j];
                    changed = true;
                }
            }
        }
    }
    let mut roots: Vec<usize> = (0..w * h).filter(|&i| open[i] && label[i] == i).collect();
    roots.sort_unstable();
    roots.iter().map(|&r| (0..w * h).filter(|&i| open[i] && label[i] == r).collect()).collect()
}

fn icon_pipeline_oracle() -> Outcome {
    let mut rng = Rng::new(5);
    let mut closed = 0;
    for case in 0..200 {
        let m = random_mask(&mut rng);
        let ours = extreme_point_outline(&m);
        match (brute_outline(&m), &ours) {
            (None, Err(IconError::EmptyMask)) => {}
            (Some(want), Ok(got)) if &want == got => {}
            _ => return Err(format!("outline mismatch on case {case}")),
        }
        let r = rng.below(4) as u32;
        check(dilate(&m, r) == brute_dilate(&m, r), format!("dilate mismatch on case {case}, r={r}"))?;

        let outline = if case % 2 == 0 { random_outline(&mut rng) } else { random_mask(&mut rng) };
        match (brute_fill(&outline), fill_interior(&outline)) {
            (Err(()), Err(IconError::OpenOutline { .. })) => {}
            (Ok(want), Ok(got)) if want == got => closed += 1,
            _ => return Err(format!("fill mismatch on case {case}")),
        }

        let barriers = random_mask(&mut rng).resized(m.width(), m.height());
        check(
            connected_regions(&m, &barriers) == brute_regions(&m, &barriers),
            format!("regions mismatch on case {case}"),
        )?;
    }
    check(closed > 20, format!("only {closed} closed outlines exercised"))?;
    Ok(format!("200 random masks, 4 operations exact ({closed} closed outlines)"))
}

fn valence_mapping() -> Outcome {
    use Emotion::*;
    // afraid, angry, anxious, ashamed, disgusted, frustrated, jealous, sad -> negative;
    // awkward, bored, calm, confused, nostalgic, surprised -> neutral;
    // excited, happy, proud, satisfied -> positive
    let negative = [Afraid, Angry, Anxious, Ashamed, Disgusted, Frustrated, Jealous, Sad];
    let neutral = [Awkward, Bored, Calm, Confused, Nostalgic, Surprised];
    let positive = [Excited, Happy, Proud, Satisfied];
    let mut matched = 0;
    for (group, v) in [(&negative[..], Valence::Negative), (&neutral[..], Valence::Neutral), (&positive[..], Valence::Positive)] {
        for e in group {
            check(valence_of(*e) == v, format!("{e} maps to {}", valence_of(*e)))?;
            matched += 1;
        }
    }
    check(matched == 18 && Emotion::COUNT == 18, "not all 18 emotions covered")?;
    let sizes: Vec<usize> =
        Valence::ALL.iter().map(|v| Emotion::ALL.iter().filter(|e| valence_of(**e) == *v).count()).collect();
    check(sizes == [8, 6, 4], format!("partition sizes {sizes:?}"))?;
    Ok("18/18 emotions, sizes 8/6/4".into())
}

fn brute_select(p: &LabelProbs, t: f64) -> LabelSet {
    let mut topic = None;
    let mut best = f64::NEG_INFINITY;
    for (i, &v) in p.topic.iter().enumerate() {
        if v > t && v > best {
            best = v;
            topic = Some(Topic::ALL[i]);
        }
    }
    let mut above: Vec<(usize, f64)> = p.emotion.iter().copied().enumerate().filter(|(_, v)| *v > t).collect();
    above.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    LabelSet { topic, emotions: above.iter().take(4).map(|(i, _)| Emotion::ALL[*i]).collect() }
}

fn label_selection() -> Outcome {
    let mut rng = Rng::new(6);
    for case in 0..1000 {
        let coarse = case % 2 == 0;
        let mut draw = || if coarse { rng.below(11) as f64 / 10.0 } else { rng.next_f64() };
        let mut p = LabelProbs::default();
        for v in p.topic.iter_mut() {
            *v = draw();
        }
        for v in p.emotion.iter_mut() {
            *v = draw();
        }
        let t = if coarse { rng.below(10) as f64 / 10.0 } else { rng.next_f64() };
        let got = select_labels(&p, t);
        check(got == brute_select(&p, t), format!("case {case}: selector disagrees"))?;
        let higher = select_labels(&p, t + rng.uniform(0.0, 1.0 - t));
        let subset = higher.topic.is_none_or(|x| got.topic == Some(x))
            && higher.emotions.iter().all(|e| got.emotions.contains(e));
        check(subset, format!("case {case}: raising the threshold added labels"))?;
    }
    Ok("1000 random probability sets, exact agreement, monotone".into())
}

/// tp, fp, tn, fn, then expected F1 and normalized accuracy (None = undefined).
type Fixture = (u64, u64, u64, u64, Option<f64>, Option<f64>);

const CONFUSION_FIXTURES: [Fixture; 20] = [
    (30, 20, 0, 10, Some(0.6666666666666666), Some(0.375)),
    (8, 4, 6, 2, Some(0.7272727272727273), Some(0.7)),
    (5, 0, 3, 0, Some(1.0), Some(1.0)),
    (1, 1, 1, 1, Some(0.5), Some(0.5)),
    (0, 4, 3, 5, None, Some(0.21428571428571427)),
    (10, 0, 0, 10, Some(0.6666666666666666), None),
    (12, 3, 40, 5, Some(0.75), Some(0.8180574555403557)),
    (100, 0, 1, 0, Some(1.0), Some(1.0)),
    (3, 7, 11, 13, Some(0.23076923076923078), Some(0.3993055555555556)),
    (50, 50, 50, 50, Some(0.5), Some(0.5)),
    (7, 0, 93, 1, Some(0.9333333333333333), Some(0.9375)),
    (1, 0, 0, 0, Some(1.0), None),
    (2, 9, 17, 4, Some(0.23529411764705882), Some(0.4935897435897436)),
    (0, 0, 29, 1, None, Some(0.5)),
    (64, 16, 800, 20, Some(0.7804878048780488), Some(0.8711484593837535)),
    (9, 1, 1, 9, Some(0.6428571428571429), Some(0.5)),
    (40, 10, 5, 45, Some(0.5925925925925926), Some(0.4019607843137255)),
    (13, 26, 250, 13, Some(0.4), Some(0.7028985507246377)),
    (83, 43, 1553, 61, Some(0.6148148148148148), Some(0.7747232664995823)),
    (0, 3, 0, 7, None, Some(0.0)),
];

struct AlwaysYes;

impl Classifier for AlwaysYes {
    fn score(&self, _: &str) -> Result<LabelProbs, ClassifyError> {
        Ok(LabelProbs { topic: [1.0; Topic::COUNT], emotion: [1.0; Emotion::COUNT] })
    }
}

fn metrics_oracle() -> Outcome {
    for (i, &(tp, fp, tn, fn_, want_f1, want_na)) in CONFUSION_FIXTURES.iter().enumerate() {
        let c = ConfusionCounts { tp, fp, tn, fn_ };
        let (got_f1, got_na) = (f1(&c), normalized_accuracy(&c));
        for (name, got, want) in [("f1", got_f1, want_f1), ("norm_acc", got_na, want_na)] {
            let ok = match want {
                Some(v) => !got.undefined && (got.value - v).abs() <= 1e-12,
                None => got.undefined && got.value == 0.0,
            };
            check(ok, format!("fixture {i} {name}: got {got:?}, want {want:?}"))?;
        }
    }
    let entries: Vec<lemotif_core::domain::Entry> =
        serde_json::from_str(include_str!("../../core/data/fixtures/dataset.json")).map_err(|e| e.to_string())?;
    let samples: Vec<LabeledSample> =
        lemotif_core::eval::samples_from_entries(&entries).map_err(|e| e.to_string())?;
    let probs: Vec<LabelProbs> = samples.iter().map(|s| AlwaysYes.score(&s.text).unwrap()).collect();
    let rows = evaluate(&samples, &probs, &[0.2], EvalOptions::default()).map_err(|e| e.to_string())?;
    check(rows[0].norm_acc.value == 0.5, format!("constant-positive norm_acc {}", rows[0].norm_acc.value))?;
    Ok("20 fixtures within 1e-12, constant-positive predictor at 0.500".into())
}

fn consistency() -> Outcome {
    let mut rng = Rng::new(8);
    let mut total_cycles = 0;
    for case in 0..100 {
        let mut choices = Vec::new();
        for a in 0..9 {
            for b in a + 1..9 {
                choices.push((a, b, if rng.bernoulli(0.5) { a } else { b }));
            }
        }
        let m = PreferenceMatrix::from_choices(9, &choices).map_err(|e| e.to_string())?;
        let mut brute = 0;
        for a in 0..9 {
            for b in 0..9 {
                for c in 0..9 {
                    if a < b && a < c && b != c && m.prefers(a, b) && m.prefers(b, c) && m.prefers(c, a) {
                        brute += 1;
                    }
                }
            }
        }
        let found = consistency_check(&m).violations.len();
        check(found == brute, format!("matrix {case}: {found} vs {brute} cycles"))?;
        total_cycles += brute;

        let mut order: Vec<usize> = (0..9).collect();
        rng.shuffle(&mut order);
        let ranked = PreferenceMatrix::from_ranking(&order).map_err(|e| e.to_string())?;
        let c = consistency_check(&ranked);
        check(c.consistent && c.violations.is_empty(), format!("total order {order:?} reported inconsistent"))?;
    }
    Ok(format!("100 random matrices match ({total_cycles} cycles), 100 total orders consistent"))
}

fn end_to_end() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_lemotif");
    let fixture = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data/fixtures/entry.json");
    let dir = tempfile::TempDir::new().map_err(|e| e.to_string())?;
    let out = dir.path().join("day.png");
    let start = Instant::now();
    let run = Command::new(bin)
        .env_remove("LEMOTIF_CONFIG")
        .args(["motif", fixture, "--out", out.to_str().unwrap()])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    check(run.status.success(), String::from_utf8_lossy(&run.stderr).into_owned())?;
    let png = fs::read(&out).map_err(|e| e.to_string())?;
    let width = u32::from_be_bytes(png[16..20].try_into().unwrap());
    check(width == 1568, format!("width {width}"))?;
    let sidecar: Value =
        serde_json::from_slice(&fs::read(out.with_extension("json")).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let analyzed = Command::new(bin).env_remove("LEMOTIF_CONFIG").args(["analyze", fixture]).output().map_err(|e| e.to_string())?;
    let analyzed: Value = serde_json::from_slice(&analyzed.stdout).map_err(|e| e.to_string())?;
    check(sidecar["label_sets"] == analyzed["label_sets"], "sidecar labels differ from analyze")?;
    check(elapsed < Duration::from_secs(5), format!("took {:.2} s", elapsed.as_secs_f64()))?;
    Ok(format!("1568 px wide, labels match analyze, {:.2} s", elapsed.as_secs_f64()))
}

async fn post(app: &axum::Router, uri: &str, body: &Value) -> (StatusCode, Vec<u8>) {
    let req = Request::post(uri).header("content-type", "application/json").body(Body::from(body.to_string())).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    (status, resp.into_body().collect().await.unwrap().to_bytes().to_vec())
}

fn service_contract() -> Outcome {
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build().map_err(|e| e.to_string())?;
    rt.block_on(async {
        let app = lemotif_service::router(lemotif_service::ServiceConfig::bundled());
        let styles = ["circle_packing", "string_doll", "carpet", "tile", "glass", "b3"];
        let bodies: Vec<Value> = (0..16)
            .map(|i| {
                json!({
                    "label_sets": [
                        { "topic": Topic::ALL[i % 11].name(), "emotions": ["happy", "calm"] },
                        { "topic": "work", "emotions": ["anxious", "proud", "sad"] }
                    ],
                    "style": styles[i % styles.len()],
                    "seed": i,
                    "canvas_size": 256
                })
            })
            .collect();
        let mut sequential = Vec::new();
        for b in &bodies {
            sequential.push(post(&app, "/api/v1/motif", b).await);
        }
        let handles: Vec<_> = bodies
            .iter()
            .cloned()
            .map(|b| {
                let app = app.clone();
                tokio::spawn(async move { post(&app, "/api/v1/motif", &b).await })
            })
            .collect();
        for (i, (h, want)) in handles.into_iter().zip(&sequential).enumerate() {
            let got = h.await.map_err(|e| e.to_string())?;
            check(got.0 == StatusCode::OK, format!("request {i}: {}", got.0))?;
            check(&got == want, format!("request {i}: concurrent bytes differ"))?;
        }

        let req = Request::get("/api/v1/styles").body(Body::empty()).unwrap();
        let resp = app.clone().oneshot(req).await.unwrap();
        let registry: Value = serde_json::from_slice(&resp.into_body().collect().await.unwrap().to_bytes()).unwrap();
        let mut rejected = Vec::new();
        let list = registry["styles"].as_array().ok_or("no styles array")?;
        for style in list {
            let params: serde_json::Map<String, Value> = style["params"]
                .as_array()
                .unwrap()
                .iter()
                .map(|p| (p["name"].as_str().unwrap().to_string(), p["default"].clone()))
                .collect();
            let body = json!({
                "label_sets": [{ "topic": "love", "emotions": ["happy", "jealous"] }],
                "style": style["id"],
                "params": params,
                "canvas_size": 128
            });
            let (status, _) = post(&app, "/api/v1/motif", &body).await;
            if status != StatusCode::OK {
                rejected.push(style["id"].to_string());
            }
        }
        check(rejected.is_empty(), format!("defaults rejected for {rejected:?}"))?;
        Ok(format!("16 concurrent = sequential, {} style defaults accepted", list.len()))
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("mask containment", mask_containment),
        ("palette closure", palette_closure),
        ("circle packing geometry", circle_geometry),
        ("seed determinism", seed_determinism),
        ("icon pipeline oracle", icon_pipeline_oracle),
        ("valence mapping", valence_mapping),
        ("label selection", label_selection),
        ("metrics oracle", metrics_oracle),
        ("consistency check", consistency),
        ("end-to-end", end_to_end),
        ("service contract", service_contract),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        match outcome {
            Ok(detail) => println!("PASS [{:>2}] {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
