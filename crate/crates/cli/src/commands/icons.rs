use std::fs;
use std::path::PathBuf;

use lemotif_core::domain::Topic;
use lemotif_core::iconproc::{build_shape, GrayImage, ShapeSet, DEFAULT_CANVAS_SIZE, DEFAULT_DILATION_RADIUS};

use crate::error::{CliError, Result};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Directory of `<topic>.png` icons.
    input: PathBuf,
    /// Where the PBM pairs and manifest go.
    out: PathBuf,
    #[arg(long, default_value_t = DEFAULT_CANVAS_SIZE)]
    size: u32,
    /// Outline dilation radius in pixels.
    #[arg(long, default_value_t = DEFAULT_DILATION_RADIUS)]
    dilate: u32,
}

pub fn run(args: Args) -> Result<()> {
    if args.size < 8 {
        return Err(CliError::bad_input(format!("--size must be at least 8, got {}", args.size)));
    }
    let listing = fs::read_dir(&args.input)
        .map_err(|e| CliError::bad_input(format!("cannot read {}: {e}", args.input.display())))?;
    let mut icons: Vec<(Topic, PathBuf)> = Vec::new();
    for item in listing {
        let path = item.map_err(|e| CliError::bad_input(e.to_string()))?.path();
        if !path.extension().is_some_and(|x| x.eq_ignore_ascii_case("png")) {
            continue;
        }
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default();
        let topic: Topic = stem
            .parse()
            .map_err(|_| CliError::bad_input(format!("{}: `{stem}` is not a topic", path.display())))?;
        icons.push((topic, path));
    }
    if icons.is_empty() {
        return Err(CliError::bad_input(format!("{} holds no .png icons", args.input.display())));
    }
    icons.sort();

    let mut set = ShapeSet::new(args.size, args.dilate);
    let mut failures = Vec::new();
    for (topic, path) in &icons {
        let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
        let built = fs::read(path)
            .map_err(|e| e.to_string())
            .and_then(|bytes| GrayImage::decode_png(&bytes).map_err(|e| format!("decode: {e}")))
            .and_then(|gray| build_shape(*topic, &gray, args.size, args.dilate).map_err(|e| e.to_string()));
        match built {
            Ok(shape) => set.insert(shape),
            Err(e) => failures.push(format!("{name}: {e}")),
        }
    }
    if !set.is_empty() {
        set.write_dir(&args.out).map_err(|e| CliError::bad_input(e.to_string()))?;
    }
    println!("wrote {} of {} shapes to {}", set.len(), icons.len(), args.out.display());
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::bad_input(format!("{} icon(s) failed: {}", failures.len(), failures.join("; "))))
    }
}
