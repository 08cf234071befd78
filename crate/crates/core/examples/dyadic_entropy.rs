//! Entropy over dyadic grid cells against entropy over approximate squares
//! at the matching depth; the gap stays below `2 log 3 + log(4 (N+)^3)`.

use moran::construction::Construction;
use moran::corpus;
use moran::measure::ProbAssignment;
use moran::oracle::{brute_entropy, dyadic_entropy, DEFAULT_GUARD};
use num_bigint::BigInt;
use num_rational::BigRational;

fn square_depth(c: &Construction, n: u32) -> moran::Result<usize> {
    c.k_of_scale(&BigRational::new(BigInt::from(1), BigInt::from(1) << n))
}

fn main() -> moran::Result<()> {
    let c = corpus::bedford_mcmullen();
    let p = ProbAssignment::uniform(&c);
    println!("{:>3} {:>3} {:>10} {:>10} {:>8}", "n", "k", "dyadic", "squares", "gap");
    for n in 1..=10 {
        let dy = dyadic_entropy(&c, &p, n, DEFAULT_GUARD)?;
        let k = square_depth(&c, n)?;
        let sq = brute_entropy(&c, &p, k, DEFAULT_GUARD)?;
        println!("{n:>3} {k:>3} {:>10.5} {sq:>10.5} {:>8.5}", dy.entropy, (dy.entropy - sq).abs());
        if n == 10 {
            println!("bound {:.5}", dy.bound);
        }
    }
    Ok(())
}
