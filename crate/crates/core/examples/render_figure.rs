//! Renders the three-level illustration construction and the carpet as plain
//! PPM images. Pass an output directory, or the system temp dir is used.

use std::path::PathBuf;

use moran::corpus;
use moran::oracle::{render_ppm, DEFAULT_GUARD};

fn main() -> moran::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(std::env::temp_dir);
    let jobs = [
        ("figure_one.ppm", corpus::figure_one(), 3, 720),
        ("carpet.ppm", corpus::bedford_mcmullen(), 5, 486),
    ];
    for (name, c, level, width) in jobs {
        let image = render_ppm(&c, level, width, DEFAULT_GUARD)?;
        let path = dir.join(name);
        std::fs::write(&path, image).map_err(|e| moran::Error::Io(e.to_string()))?;
        println!("wrote {} (level {level}, {width}x{width})", path.display());
    }
    Ok(())
}
