//! Entropy, Hausdorff and packing dimensions of product measures, with the
//! separation conditions that back them.

use moran::corpus;
use moran::measure::{entropy_k, hausdorff_packing_dims, uniform_fiber_measure, ProbAssignment};

fn main() -> moran::Result<()> {
    let carpet = corpus::bedford_mcmullen();
    let p = ProbAssignment::uniform(&carpet);
    for k in [2, 5, 50, 500] {
        let e = entropy_k(&carpet, &p, k);
        println!("carpet, uniform: H_{k} = {:.6}, H_k / log R_k = {:.6}", e.entropy, e.ratio);
    }
    let d = hausdorff_packing_dims(&carpet, &p, 2000)?;
    println!(
        "hausdorff = {:.6}, packing = {:.6}, {:?} (fsc {}, bsc {}, msc {} with max boundary marginal {})",
        d.hausdorff, d.packing, d.validity, d.fsc.holds, d.bsc.holds, d.msc.holds, d.msc.max_boundary_marginal
    );

    let unif = corpus::uniform_fibres();
    let q = uniform_fiber_measure(&unif)?;
    let d = hausdorff_packing_dims(&unif, &q, 2000)?;
    let path = d.fibre_path.expect("uniform-fibre assignment");
    println!();
    println!(
        "uniform fibres: hausdorff = packing = {:.6}, set dimension {:.6}, boundary separation {}",
        d.hausdorff, path.set_dimension, path.separated
    );

    let skewed = ProbAssignment::from_weights(&carpet, |_, (i, _)| u64::from(i) + 1)?;
    let d = hausdorff_packing_dims(&carpet, &skewed, 2000)?;
    println!();
    println!("carpet, weights 1:2:3 by column: hausdorff = packing = {:.6}", d.hausdorff);

    let atom = ProbAssignment::single_atom(&carpet);
    println!("carpet, point mass: hausdorff = {}", hausdorff_packing_dims(&carpet, &atom, 100)?.hausdorff);
    Ok(())
}
