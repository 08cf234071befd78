//! Loads a JSON spec file, runs the set and measure computations and prints
//! the report as JSON and CSV. Defaults to the bundled carpet spec.

use std::path::PathBuf;

use moran::dimension::set_dimensions;
use moran::measure::hausdorff_packing_dims;
use moran::report::{DimensionSection, MeasureSection};
use moran::{RunReport, SpecFile};

fn main() -> moran::Result<()> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("specs/carpet.json"));
    let (c, p) = SpecFile::load(&path)?.build()?;
    println!("{}", c.describe());

    let mut report = RunReport::new(&c);
    report.dimensions = Some(DimensionSection::from(&set_dimensions(&c, 1000, 200)?));
    if let Some(p) = &p {
        report.measure = Some(MeasureSection::new(&hausdorff_packing_dims(&c, p, 1000)?, 1000));
    }
    print!("{}", report.to_json());
    println!();
    print!("{}", report.to_csv());
    Ok(())
}
