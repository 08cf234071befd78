use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::construction::{ratio_to_f64, Construction, Digit};
use crate::error::{Error, Result};
use crate::measure::{cylinder_mass, entropy_term, ApproxSquare, ProbAssignment};
use crate::series::CompensatedSum;

use super::census::square_frontier;
use super::{check_guard, StableMap};

/// Sum of cylinder masses over every word of length `max(k, l)` whose
/// column and row digits match the square's prefixes.
pub fn brute_measure(c: &Construction, p: &ProbAssignment, sq: &ApproxSquare, guard: u128) -> Result<BigRational> {
    let sq = ApproxSquare::new(c, sq.k, sq.i_prefix.clone(), sq.j_prefix.clone())?;
    let depth = sq.k.max(sq.l);
    let choices: Vec<Vec<Digit>> = (1..=depth)
        .map(|h| {
            c.level_at(h)
                .digits()
                .iter()
                .copied()
                .filter(|&(i, j)| {
                    (h > sq.l || i == sq.i_prefix[h - 1]) && (h > sq.k || j == sq.j_prefix[h - 1])
                })
                .collect()
        })
        .collect();
    let words: u128 = choices.iter().map(|ch| ch.len() as u128).product();
    check_guard(words, guard)?;

    let mut total = BigRational::zero();
    let mut word = Vec::with_capacity(depth);
    let mut idx = vec![0usize; depth];
    if choices.iter().any(Vec::is_empty) {
        return Ok(total);
    }
    loop {
        word.clear();
        word.extend(idx.iter().zip(&choices).map(|(&i, ch)| ch[i]));
        total += cylinder_mass(c, p, &word)?;
        let mut h = depth;
        loop {
            if h == 0 {
                return Ok(total);
            }
            h -= 1;
            idx[h] += 1;
            if idx[h] < choices[h].len() {
                break;
            }
            idx[h] = 0;
        }
    }
}

/// Exact masses of all depth-`k` squares, accumulated word by word.
pub(crate) fn square_masses(
    c: &Construction,
    p: &ProbAssignment,
    k: usize,
    guard: u128,
) -> Result<Vec<(super::SquareKey, BigRational)>> {
    let frontier = square_frontier(c, k, guard, BigRational::one(), |h, d, w| w * p.prob(c, h, d))?;
    let mut masses: Vec<_> = frontier.into_iter().collect();
    masses.sort_by_key(|m| m.0);
    Ok(masses)
}

/// `sum -mu(S) log mu(S)` over the depth-`k` squares, in nats.
pub fn brute_entropy(c: &Construction, p: &ProbAssignment, k: usize, guard: u128) -> Result<f64> {
    let masses = square_masses(c, p, k, guard)?;
    Ok(masses
        .iter()
        .map(|(_, m)| entropy_term(ratio_to_f64(m)))
        .collect::<CompensatedSum>()
        .value())
}

/// Entropy of the mesh of dyadic cells of side `2^-n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DyadicEntropy {
    pub n: u32,
    /// Depth of the approximate squares whose masses were aggregated.
    pub depth: usize,
    /// Number of dyadic cells with positive mass.
    pub cells: usize,
    pub entropy: f64,
    /// Allowed gap to the approximate-square entropy at the matching depth.
    pub bound: f64,
}

/// `2 log 3 + log(4 (N+)^3)`.
pub fn dyadic_entropy_bound(c: &Construction) -> f64 {
    2.0 * 3f64.ln() + (4.0 * f64::from(c.n_plus()).powi(3)).ln()
}

/// Dyadic-cell entropy at side `2^-n`: every approximate square at depth
/// `k(2^-n) + 2` hands its mass to the dyadic cell holding its lower-left
/// corner.
pub fn dyadic_entropy(c: &Construction, p: &ProbAssignment, n: u32, guard: u128) -> Result<DyadicEntropy> {
    if n == 0 || n >= 127 {
        return Err(Error::DomainError(0.5f64.powi(n as i32)));
    }
    check_guard(1u128 << n, guard)?;
    let scale = BigRational::new(BigInt::one(), BigInt::one() << n);
    let depth = c.k_of_scale(&scale)? + 2;
    let l = c.l_of_k(depth).l;

    let probs: Vec<BTreeMap<Digit, f64>> = p
        .stored()
        .iter()
        .map(|level| level.iter().map(|(&d, x)| (d, ratio_to_f64(x))).collect())
        .collect();
    let frontier = square_frontier(c, depth, guard, 1.0f64, |h, d, w| {
        w * probs[c.stored_index(h)].get(&d).copied().unwrap_or(0.0)
    })?;

    let overflow = Error::Overflow { depth };
    let width_den = c.n_product(l).to_u128().ok_or_else(|| overflow.clone())?;
    let height_den = c.m_product(depth).to_u128().ok_or_else(|| overflow.clone())?;
    let side = 1u128 << n;
    let mut cells: StableMap<(u128, u128), f64> = StableMap::default();
    for (key, mass) in &frontier {
        if *mass == 0.0 {
            continue;
        }
        let a = key.column.checked_mul(side).ok_or_else(|| overflow.clone())? / width_den;
        let b = key.row.checked_mul(side).ok_or_else(|| overflow.clone())? / height_den;
        *cells.entry((a, b)).or_insert(0.0) += mass;
    }
    let mut masses: Vec<_> = cells.into_iter().collect();
    masses.sort_by_key(|m| m.0);
    let entropy = masses
        .iter()
        .map(|(_, m)| entropy_term(*m))
        .collect::<CompensatedSum>()
        .value();
    Ok(DyadicEntropy {
        n,
        depth,
        cells: masses.len(),
        entropy,
        bound: dyadic_entropy_bound(c),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::oracle::DEFAULT_GUARD;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn brute_measure_examples() {
        let bm = corpus::bedford_mcmullen();
        let p = ProbAssignment::uniform(&bm);
        let sq = ApproxSquare::new(&bm, 5, vec![0, 1, 2, 0], vec![0, 1, 0, 0, 0]).unwrap();
        assert_eq!(brute_measure(&bm, &p, &sq, DEFAULT_GUARD).unwrap(), rat(2, 243));
        let sq = ApproxSquare::new(&bm, 2, vec![2, 1], vec![0, 1]).unwrap();
        assert_eq!(brute_measure(&bm, &p, &sq, DEFAULT_GUARD).unwrap(), rat(1, 9));

        let atom = ProbAssignment::single_atom(&bm);
        let sq = ApproxSquare::new(&bm, 4, vec![0, 0, 0], vec![0, 0, 0, 0]).unwrap();
        assert_eq!(brute_measure(&bm, &atom, &sq, DEFAULT_GUARD).unwrap(), rat(1, 1));
    }

    #[test]
    fn brute_entropy_examples() {
        let bm = corpus::bedford_mcmullen();
        let p = ProbAssignment::uniform(&bm);
        let e2 = brute_entropy(&bm, &p, 2, DEFAULT_GUARD).unwrap();
        assert!((e2 - 2.0 * 3f64.ln()).abs() < 1e-12);
        let e5 = brute_entropy(&bm, &p, 5, DEFAULT_GUARD).unwrap();
        assert!((e5 - 5.0309633).abs() < 1e-6);
        let atom = ProbAssignment::single_atom(&bm);
        assert_eq!(brute_entropy(&bm, &atom, 6, DEFAULT_GUARD).unwrap(), 0.0);
    }

    #[test]
    fn square_masses_sum_to_one() {
        for c in corpus::all() {
            let p = ProbAssignment::uniform(&c);
            let total: BigRational = square_masses(&c, &p, 4, DEFAULT_GUARD)
                .unwrap()
                .into_iter()
                .map(|(_, m)| m)
                .sum();
            assert_eq!(total, rat(1, 1));
        }
    }

    #[test]
    fn dyadic_examples() {
        let full = corpus::full_grid();
        let p = ProbAssignment::uniform(&full);
        for n in 1..8 {
            let d = dyadic_entropy(&full, &p, n, DEFAULT_GUARD).unwrap();
            assert!((d.entropy - f64::from(n) * 2.0 * 2f64.ln()).abs() < 1e-9);
        }
        let bm = corpus::bedford_mcmullen();
        let atom = ProbAssignment::single_atom(&bm);
        assert_eq!(dyadic_entropy(&bm, &atom, 6, DEFAULT_GUARD).unwrap().entropy, 0.0);
        let bound = dyadic_entropy_bound(&bm);
        assert!((bound - (2.0 * 3f64.ln() + 108f64.ln())).abs() < 1e-12);
        assert!(dyadic_entropy(&bm, &atom, 0, DEFAULT_GUARD).is_err());
    }

    #[test]
    fn dyadic_close_to_square_entropy() {
        let bm = corpus::bedford_mcmullen();
        let p = ProbAssignment::uniform(&bm);
        for n in 1..=8 {
            let d = dyadic_entropy(&bm, &p, n, DEFAULT_GUARD).unwrap();
            let scale = BigRational::new(BigInt::one(), BigInt::one() << n);
            let k = bm.k_of_scale(&scale).unwrap();
            let squares = brute_entropy(&bm, &p, k, DEFAULT_GUARD).unwrap();
            assert!((d.entropy - squares).abs() <= d.bound, "n={n}");
        }
    }
}
