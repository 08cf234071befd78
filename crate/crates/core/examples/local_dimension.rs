//! Sampled local ratios `-log mu(S_k(x)) / log R_k`. On the carpet they
//! settle near the entropy dimension; on a construction whose level types
//! alternate in runs of doubling length they keep swinging.

use moran::corpus;
use moran::measure::{entropy_dimensions, ProbAssignment};
use moran::oracle::{local_dim_samples, DEFAULT_GUARD};

fn main() -> moran::Result<()> {
    let carpet = corpus::bedford_mcmullen();
    let p = ProbAssignment::uniform(&carpet);
    let samples = local_dim_samples(&carpet, &p, 7, 8, 400, DEFAULT_GUARD)?;
    let dim = entropy_dimensions(&carpet, &p, 400)?;
    println!("carpet: entropy dimension {:.5}", dim.lower);
    for s in &samples {
        let (lo, hi) = s.range(200, 400);
        println!("  sample {}: ratio at 400 = {:.5}, range over [200, 400] = [{lo:.5}, {hi:.5}]", s.index, s.ratio(400));
    }

    let osc = corpus::oscillating();
    let p = ProbAssignment::uniform(&osc);
    let samples = local_dim_samples(&osc, &p, 7, 3, 400, DEFAULT_GUARD)?;
    let window = entropy_dimensions(&osc, &p, 400)?.convergence;
    println!();
    println!(
        "oscillating: entropy ratios over [{}, 400] span [{:.5}, {:.5}]",
        window.tail_start, window.tail_min, window.tail_max
    );
    for s in &samples {
        let (lo, hi) = s.range(window.tail_start, 400);
        println!("  sample {}: [{lo:.5}, {hi:.5}], gap {:.5}", s.index, hi - lo);
    }
    Ok(())
}
