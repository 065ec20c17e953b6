use std::fs;
use std::io::{Read, Write};
use std::net::TcpStream;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};
use std::time::{Duration, Instant};

use lemotif_core::domain::Palette;
use lemotif_core::iconproc::GrayImage;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use tempfile::TempDir;

const CORE_DATA: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/data");

fn data(rel: &str) -> PathBuf {
    Path::new(CORE_DATA).join(rel)
}

fn lemotif() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lemotif"));
    cmd.env_remove("LEMOTIF_CONFIG");
    cmd
}

fn run(args: &[&str]) -> Output {
    lemotif().args(args).output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

/// Exit code plus the single diagnostic line.
fn failure(out: &Output) -> (i32, String) {
    let stderr = String::from_utf8_lossy(&out.stderr).into_owned();
    assert_eq!(stderr.trim_end().lines().count(), 1, "diagnostic must be one line: {stderr}");
    assert!(stderr.starts_with("error["), "{stderr}");
    (out.status.code().unwrap(), stderr)
}

fn sha(path: &Path) -> Vec<u8> {
    Sha256::digest(fs::read(path).unwrap()).to_vec()
}

#[test]
fn analyze_text_finds_exercise() {
    let v = stdout_json(&run(&["analyze", "--text", "went to the gym, felt proud"]));
    assert_eq!(v["label_sets"][0]["topic"], "exercise");
    assert!(v["label_sets"][0]["emotions"].as_array().unwrap().contains(&json!("proud")));
}

#[test]
fn analyze_extreme_threshold_is_empty() {
    let v = stdout_json(&run(&["analyze", "--text", "went to the gym, felt proud\n\ntired and anxious", "--threshold", "0.99"]));
    assert_eq!(v["label_sets"].as_array().unwrap().len(), 2);
    for set in v["label_sets"].as_array().unwrap() {
        assert_eq!(set, &json!({ "topic": null, "emotions": [] }));
    }
}

#[test]
fn analyze_probs_flag() {
    let v = stdout_json(&run(&["analyze", "--text", "gym", "--probs"]));
    assert_eq!(v["probs"][0]["emotion_probs"].as_object().unwrap().len(), 18);
}

#[test]
fn analyze_rejects_bad_input() {
    let dir = TempDir::new().unwrap();
    let empty = dir.path().join("empty.txt");
    fs::write(&empty, "").unwrap();
    assert_eq!(failure(&run(&["analyze", empty.to_str().unwrap()])).0, 2);

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{\n  \"id\": \"x\",\n  \"sub_entries\": [ {\"text\": \"a\", \"emotions\": [\"gloomy\"]} ]\n}").unwrap();
    let (code, msg) = failure(&run(&["analyze", broken.to_str().unwrap()]));
    assert_eq!(code, 2);
    assert!(msg.contains("broken.json:3:"), "{msg}");
    assert!(msg.contains("sub_entries[0].emotions[0]"), "{msg}");

    let four = dir.path().join("four.txt");
    fs::write(&four, "a\n\nb\n\nc\n\nd").unwrap();
    assert_eq!(failure(&run(&["analyze", four.to_str().unwrap()])).0, 2);
    assert_eq!(failure(&run(&["analyze", "/no/such/file"])).0, 2);
}

#[test]
fn remote_failure_exits_3() {
    let port = std::net::TcpListener::bind("127.0.0.1:0").unwrap().local_addr().unwrap().port();
    let url = format!("http://127.0.0.1:{port}/classify");
    let (code, msg) = failure(&run(&["analyze", "--text", "hello", "--remote", &url]));
    assert_eq!(code, 3);
    assert!(msg.starts_with("error[remote]"), "{msg}");
}

#[test]
fn motif_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.png"), dir.path().join("b.png"));
    for out in [&a, &b] {
        let o = run(&["motif", "--text", "gym then dinner with mom", "--style", "glass", "--seed", "99", "--size", "128", "--out", out.to_str().unwrap()]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        assert_eq!(String::from_utf8_lossy(&o.stdout).trim(), out.to_str().unwrap());
    }
    assert_eq!(sha(&a), sha(&b));
    assert_eq!(fs::read(a.with_extension("json")).unwrap(), fs::read(b.with_extension("json")).unwrap());
}

#[test]
fn random_seed_varies() {
    let dir = TempDir::new().unwrap();
    let (a, b) = (dir.path().join("a.png"), dir.path().join("b.png"));
    for out in [&a, &b] {
        let o = run(&["motif", "--text", "gym, felt proud", "--seed", "random", "--size", "96", "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
    }
    assert_ne!(sha(&a), sha(&b));
    let side: Value = serde_json::from_slice(&fs::read(a.with_extension("json")).unwrap()).unwrap();
    assert!(side["seed"].is_u64());
}

#[test]
fn tile_with_certain_diagonal_logs_only_slashes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("t.png");
    let o = run(&[
        "motif", "--text", "gym felt proud", "--style", "tile", "--params", r#"{"grid":8,"p_diag":1.0}"#,
        "--size", "128", "--out", out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let side: Value = serde_json::from_slice(&fs::read(out.with_extension("json")).unwrap()).unwrap();
    let cells = side["panels"][0]["log"]["cells"].as_array().unwrap();
    assert_eq!(cells.len(), 64);
    assert!(cells.iter().all(|c| c == "/"));
}

#[test]
fn fixture_motif_width_and_labels_match_analyze() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("day.png");
    let fixture = data("fixtures/entry.json");
    let o = run(&["motif", fixture.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let png = fs::read(&out).unwrap();
    let width = u32::from_be_bytes(png[16..20].try_into().unwrap());
    assert_eq!(width, 3 * 512 + 2 * 16);
    let side: Value = serde_json::from_slice(&fs::read(out.with_extension("json")).unwrap()).unwrap();
    let analyzed = stdout_json(&run(&["analyze", fixture.to_str().unwrap()]));
    assert_eq!(side["label_sets"], analyzed["label_sets"]);
    assert_eq!(side["id"], "fixture-day");
}

#[test]
fn labels_json_input_matches_entry_input() {
    let dir = TempDir::new().unwrap();
    let fixture = data("fixtures/entry.json");
    let labels = dir.path().join("labels.json");
    fs::write(&labels, run(&["analyze", fixture.to_str().unwrap()]).stdout).unwrap();
    let (a, b) = (dir.path().join("a.png"), dir.path().join("b.png"));
    assert!(run(&["motif", fixture.to_str().unwrap(), "--size", "96", "--out", a.to_str().unwrap()]).status.success());
    assert!(run(&["motif", labels.to_str().unwrap(), "--size", "96", "--out", b.to_str().unwrap()]).status.success());
    assert_eq!(sha(&a), sha(&b));
}

#[test]
fn motif_errors() {
    let (code, msg) = failure(&run(&["motif", "--text", "gym", "--style", "carpet", "--params", r#"{"spacing":0}"#]));
    assert_eq!(code, 2);
    assert!(msg.contains("spacing"), "{msg}");
    let (code, msg) = failure(&run(&["motif", "--text", "gym", "--style", "autoencoder"]));
    assert_eq!(code, 2);
    assert!(msg.contains("autoencoder"));
    let (code, _) = failure(&run(&["motif", "--text", "gym", "--shapes-dir", "/definitely/missing"]));
    assert_eq!(code, 4);
}

#[test]
fn icons_from_bundled_sources_reproduce_bundled_shapes() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("shapes");
    let icons = data("icons");
    let o = run(&["icons", icons.to_str().unwrap(), out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let pbm = fs::read_dir(&out).unwrap().filter(|e| e.as_ref().unwrap().path().extension().unwrap() == "pbm").count();
    assert_eq!(pbm, 22);
    let manifest: Value = serde_json::from_slice(&fs::read(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["topics"].as_array().unwrap().len(), 11);
    let first: Vec<_> = ["manifest.json", "love.outline.pbm", "sleep.interior.pbm"].iter().map(|f| sha(&out.join(f))).collect();
    // bundled shapes were produced by this same pipeline at the same settings
    for f in ["manifest.json", "love.outline.pbm", "sleep.interior.pbm"] {
        assert_eq!(sha(&out.join(f)), sha(&data("shapes").join(f)), "{f}");
    }
    let o = run(&["icons", icons.to_str().unwrap(), out.to_str().unwrap()]);
    assert!(o.status.success());
    let again: Vec<_> = ["manifest.json", "love.outline.pbm", "sleep.interior.pbm"].iter().map(|f| sha(&out.join(f))).collect();
    assert_eq!(first, again);

    // the produced directory is usable for rendering
    let png = dir.path().join("m.png");
    let o = run(&["motif", "--text", "gym", "--shapes-dir", out.to_str().unwrap(), "--size", "96", "--out", png.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn icons_report_stage_errors_and_bad_names() {
    let dir = TempDir::new().unwrap();
    let input = dir.path().join("in");
    fs::create_dir(&input).unwrap();
    fs::copy(data("icons/love.png"), input.join("love.png")).unwrap();
    fs::write(input.join("sleep.png"), GrayImage::filled(64, 64, 255).encode_png()).unwrap();
    let out = dir.path().join("out");
    let (code, msg) = failure(&run(&["icons", input.to_str().unwrap(), out.to_str().unwrap(), "--size", "128"]));
    assert_ne!(code, 0);
    assert!(msg.contains("sleep.png: crop: EmptyMask"), "{msg}");
    assert!(out.join("love.outline.pbm").exists());

    fs::write(input.join("dragons.png"), GrayImage::filled(8, 8, 0).encode_png()).unwrap();
    let (code, msg) = failure(&run(&["icons", input.to_str().unwrap(), out.to_str().unwrap()]));
    assert_eq!(code, 2);
    assert!(msg.contains("dragons"), "{msg}");
}

#[test]
fn eval_default_sweep_has_nine_rows() {
    let v = stdout_json(&run(&["eval", data("fixtures/dataset.json").to_str().unwrap()]));
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    assert_eq!(keys.len(), 9);
    assert!(v["0.5"]["f1"].is_f64());
    assert_eq!(v["0.5"]["splits"].as_array().unwrap().len(), 5);
}

// dataset_expected.json is written by scripts/eval_oracle.py
#[test]
fn eval_whole_matches_reference_script() {
    let expected: Vec<Value> = serde_json::from_slice(&fs::read(data("fixtures/dataset_expected.json")).unwrap()).unwrap();
    let v = stdout_json(&run(&["eval", data("fixtures/dataset.json").to_str().unwrap(), "--whole"]));
    for row in expected {
        let key = row["threshold"].as_f64().unwrap().to_string();
        let got = &v[&key];
        assert_eq!(got["counts"], row["counts"], "{key}");
        assert!((got["f1"].as_f64().unwrap() - row["f1"].as_f64().unwrap_or(0.0)).abs() < 1e-12);
        assert!((got["norm_acc"].as_f64().unwrap() - row["norm_acc"].as_f64().unwrap_or(0.0)).abs() < 1e-12);
    }
}

#[test]
fn eval_perfect_fixture_and_csv() {
    let dir = TempDir::new().unwrap();
    let lexicon = dir.path().join("lex.json");
    fs::write(
        &lexicon,
        json!({ "version": 1, "entries": [
            { "keyword": "gym", "labels": [["exercise", 0.95]] },
            { "keyword": "proud", "labels": [["proud", 0.95]] },
            { "keyword": "exam", "labels": [["school", 0.95], ["anxious", 0.95]] }
        ]})
        .to_string(),
    )
    .unwrap();
    let config = dir.path().join("lemotif.toml");
    fs::write(&config, "lexicon = \"lex.json\"\n").unwrap();
    let dataset = dir.path().join("d.json");
    fs::write(
        &dataset,
        json!([{ "id": "a", "sub_entries": [
            { "text": "gym proud", "topics": ["exercise"], "emotions": ["proud"] },
            { "text": "exam", "topics": ["school"], "emotions": ["anxious"] }
        ]}])
        .to_string(),
    )
    .unwrap();
    let csv = dir.path().join("m.csv");
    let o = lemotif()
        .env("LEMOTIF_CONFIG", &config)
        .args(["eval", dataset.to_str().unwrap(), "--split-frac", "0.5", "--csv", csv.to_str().unwrap()])
        .output()
        .unwrap();
    let v = stdout_json(&o);
    for (_, row) in v.as_object().unwrap() {
        assert_eq!(row["f1"], 1.0);
    }
    let text = fs::read_to_string(csv).unwrap();
    assert_eq!(text.lines().count(), 10);
    assert!(text.starts_with("threshold,f1,norm_acc"));
}

#[test]
fn eval_requires_ground_truth() {
    let dir = TempDir::new().unwrap();
    let dataset = dir.path().join("d.json");
    fs::write(&dataset, json!([{ "id": "a", "sub_entries": [{ "text": "gym" }] }]).to_string()).unwrap();
    let (code, msg) = failure(&run(&["eval", dataset.to_str().unwrap()]));
    assert_eq!(code, 2);
    assert!(msg.contains("ground-truth"), "{msg}");
}

#[test]
fn eval_preferences_mode() {
    let dir = TempDir::new().unwrap();
    let mut subjects = Vec::new();
    for s in 0..4 {
        let mut choices = Vec::new();
        for a in 0..3 {
            for b in a + 1..3 {
                choices.push(json!([a, b, if s == 3 && (a, b) == (0, 2) { b } else { a }]));
            }
        }
        subjects.push(json!(choices));
    }
    let study = dir.path().join("s.json");
    fs::write(&study, json!({ "items": 3, "subjects": subjects, "factors": [{ "name": "f", "pairs": [[0, 1]] }] }).to_string())
        .unwrap();
    let v = stdout_json(&run(&["eval", "--preferences", study.to_str().unwrap()]));
    assert_eq!(v["consistent"], 3);
    assert_eq!(v["subjects"][3]["violations"], json!([[0, 1, 2]]));
    assert_eq!(v["factors"][0]["rate"], 1.0);
}

#[test]
fn config_validation() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("c.toml");
    fs::write(&cfg, "threshold = 1.5\n").unwrap();
    assert_eq!(failure(&run(&["--config", cfg.to_str().unwrap(), "analyze", "--text", "x"])).0, 2);
    fs::write(&cfg, "palette = \"missing.json\"\n").unwrap();
    assert_eq!(failure(&run(&["--config", cfg.to_str().unwrap(), "analyze", "--text", "x"])).0, 2);
    fs::write(&cfg, "colour = 1\n").unwrap();
    assert_eq!(failure(&run(&["--config", cfg.to_str().unwrap(), "analyze", "--text", "x"])).0, 2);
    fs::write(&cfg, "seed = 5\nstyle = \"tile\"\n[params]\ngrid = 2\n").unwrap();
    let png = dir.path().join("o.png");
    let o = lemotif()
        .env("LEMOTIF_CONFIG", &cfg)
        .args(["motif", "--text", "gym", "--size", "64", "--out", png.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let side: Value = serde_json::from_slice(&fs::read(png.with_extension("json")).unwrap()).unwrap();
    assert_eq!((side["seed"].as_u64(), side["style"].as_str()), (Some(5), Some("tile")));
    assert_eq!(side["params"]["grid"], 2);
}

fn bad_palette_config(dir: &Path) -> PathBuf {
    let mut palette = Palette::default().to_json();
    palette["emotion_colors"]["sad"] = palette["emotion_colors"]["happy"].clone();
    fs::write(dir.join("palette.json"), palette.to_string()).unwrap();
    let cfg = dir.join("bad.toml");
    fs::write(&cfg, "palette = \"palette.json\"\n").unwrap();
    cfg
}

fn http_get(port: u16, path: &str) -> std::io::Result<String> {
    let mut s = TcpStream::connect(("127.0.0.1", port))?;
    s.write_all(format!("GET {path} HTTP/1.1\r\nhost: x\r\nconnection: close\r\n\r\n").as_bytes())?;
    let mut out = String::new();
    s.read_to_string(&mut out)?;
    Ok(out)
}

#[test]
fn serve_lifecycle() {
    let mut child = lemotif().args(["serve", "--port", "0"]).stdout(Stdio::piped()).stderr(Stdio::null()).spawn().unwrap();
    let mut stdout = child.stdout.take().unwrap();
    let mut line = Vec::new();
    let mut byte = [0u8];
    while stdout.read(&mut byte).unwrap() == 1 && byte[0] != b'\n' {
        line.push(byte[0]);
    }
    let line = String::from_utf8(line).unwrap();
    let port: u16 = line.rsplit(':').next().unwrap().parse().unwrap();
    let resp = http_get(port, "/healthz").unwrap();
    assert!(resp.starts_with("HTTP/1.1 200") && resp.ends_with("ok"), "{resp}");

    // busy port
    let (code, msg) = failure(&run(&["serve", "--port", &port.to_string()]));
    assert_eq!(code, 5, "{msg}");

    let status = Command::new("kill").args(["-TERM", &child.id().to_string()]).status().unwrap();
    assert!(status.success());
    let deadline = Instant::now() + Duration::from_secs(10);
    loop {
        if let Some(status) = child.try_wait().unwrap() {
            assert!(status.success());
            break;
        }
        assert!(Instant::now() < deadline, "server did not stop");
        std::thread::sleep(Duration::from_millis(50));
    }
    assert!(http_get(port, "/healthz").is_err());
}

#[test]
fn serve_refuses_bad_palette() {
    let dir = TempDir::new().unwrap();
    let cfg = bad_palette_config(dir.path());
    let (code, msg) = failure(&run(&["serve", "--config", cfg.to_str().unwrap(), "--port", "0"]));
    assert_eq!(code, 2);
    assert!(msg.contains("palette"), "{msg}");
}

#[test]
fn usage_errors_are_single_line() {
    assert_eq!(failure(&run(&["frobnicate"])).0, 2);
    assert_eq!(failure(&run(&["motif", "--seed", "soon", "--text", "x"])).0, 2);
    assert!(run(&["--help"]).status.success());
}
