//! Geometric box counts of the carpet prefractal at the scales `R_k`,
//! against the approximate-square counts and the box dimension.

use moran::corpus;
use moran::counting::count_approx_squares;
use moran::dimension::box_limit;
use moran::oracle::{box_count, DEFAULT_GUARD};

fn main() -> moran::Result<()> {
    let c = corpus::bedford_mcmullen();
    let d = box_limit(&c);
    println!("box dimension {d:.6}");
    println!("{:>3} {:>9} {:>9} {:>11} {:>12}", "k", "boxes", "squares", "box ratio", "square ratio");
    for k in 2..=10 {
        let scale = c.r_k(k);
        let boxes = box_count(&c, k + 2, &scale, DEFAULT_GUARD)?;
        let squares = count_approx_squares(&c, k);
        let log_r = c.log_r(k);
        println!(
            "{k:>3} {boxes:>9} {:>9} {:>11.4} {:>12.4}",
            squares.to_string(),
            (boxes as f64).ln() / log_r,
            squares.log_value / log_r
        );
    }
    Ok(())
}
