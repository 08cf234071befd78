//! Digit statistics, approximate-square counts and the nested min/max counts
//! that drive the lower and Assouad dimensions.

use moran::corpus;
use moran::counting::{count_approx_squares, digit_stats, nested_count, Bound};
use moran::dimension::{beta, xi};

fn main() -> moran::Result<()> {
    let c = corpus::bedford_mcmullen();
    let stats = digit_stats(c.level_at(1));
    println!("carpet level: r = {}, rows = {:?}, s = {}, s^ = {}", stats.r, stats.rows, stats.s, stats.shat);
    println!("r- = {}, r+ = {}, r^- = {}, r^+ = {}", stats.r_minus, stats.r_plus, stats.rhat_minus, stats.rhat_plus);

    println!();
    for k in 1..=8 {
        let l = c.l_of_k(k).l;
        println!("k = {k}: l(k) = {l}, N = {}", count_approx_squares(&c, k));
    }

    println!();
    for (k, k2) in [(1, 3), (2, 5), (5, 8), (10, 30)] {
        let (lo, case) = nested_count(&c, k, k2, Bound::Minus)?;
        let (hi, _) = nested_count(&c, k, k2, Bound::Plus)?;
        println!(
            "k = {k:>2}, k' = {k2:>2}: case {case}, N- = {lo}, N+ = {hi}, xi = {:.5}, beta = {:.5}",
            xi(&c, k, k2)?.value,
            beta(&c, k, k2)?.value
        );
    }

    let tall = corpus::tall();
    println!();
    println!("tall construction, k = 1: l = {}, N = {}", tall.l_of_k(1).l, count_approx_squares(&tall, 1));
    Ok(())
}
