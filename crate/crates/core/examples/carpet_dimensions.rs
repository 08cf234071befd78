//! Box, packing, lower and Assouad dimensions of the named constructions,
//! next to the closed forms for constant levels.

use moran::corpus;
use moran::dimension::set_dimensions;

fn main() -> moran::Result<()> {
    let named = [
        ("bedford-mcmullen", corpus::bedford_mcmullen()),
        ("tall", corpus::tall()),
        ("uniform-fibres", corpus::uniform_fibres()),
        ("full-grid", corpus::full_grid()),
        ("diagonal", corpus::diagonal()),
        ("alternating", corpus::alternating()),
    ];
    println!("{:<18} {:>10} {:>10} {:>10} {:>10}  regime", "construction", "lower_dim", "lower_box", "upper_box", "assouad");
    for (name, c) in &named {
        let d = set_dimensions(c, 2000, 400)?;
        println!(
            "{name:<18} {:>10.6} {:>10.6} {:>10.6} {:>10.6}  {:?}",
            d.lower_dim, d.lower_box, d.upper_box, d.assouad, d.regime
        );
    }

    let (ln2, ln3) = (2f64.ln(), 3f64.ln());
    println!();
    println!("carpet closed forms: box = 1 + log(3/2)/log 3 = {:.6}", 1.0 + (1.5f64).ln() / ln3);
    println!("                     lower = 1, assouad = 1 + log 2/log 3 = {:.6}", 1.0 + ln2 / ln3);

    let d = set_dimensions(&corpus::bedford_mcmullen(), 2000, 400)?;
    let seq = &d.box_dims.convergence;
    println!();
    println!("finite ratios log N_k / log R_k over k in [{}, {}]: min {:.6}, max {:.6}", seq.tail_start, seq.depth, seq.tail_min, seq.tail_max);
    println!(
        "assouad gap sequence at m = {}: {:.6} (error bar {:.4}, stabilized: {})",
        d.upper.gap_limit, d.upper.sequence.last, d.upper.error_bar, d.upper.stabilized
    );
    Ok(())
}
