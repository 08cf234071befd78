use rand::distributions::{Distribution, WeightedIndex};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::{ratio_to_f64, Construction, Digit};
use crate::error::Result;
use crate::measure::{marginals, ProbAssignment};

use super::check_guard;

/// One sampled point: its coding word and `-log mu(S_k(w)) / log R_k` for
/// `k = 1..=k_max` (entry `k - 1`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LocalDimSample {
    pub index: u64,
    pub word: Vec<Digit>,
    pub ratios: Vec<f64>,
}

impl LocalDimSample {
    /// Ratio at depth `k`.
    pub fn ratio(&self, k: usize) -> f64 {
        self.ratios[k - 1]
    }

    /// `(min, max)` of the ratios over `from..=to`.
    pub fn range(&self, from: usize, to: usize) -> (f64, f64) {
        self.ratios[from - 1..to]
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &r| (lo.min(r), hi.max(r)))
    }
}

struct LevelTable {
    digits: Vec<Digit>,
    sampler: WeightedIndex<f64>,
    ln_p: Vec<f64>,
    ln_q: Vec<f64>,
    ln_qhat: Vec<f64>,
}

fn level_tables(c: &Construction, p: &ProbAssignment) -> Vec<LevelTable> {
    p.stored()
        .iter()
        .zip(c.stored_levels())
        .map(|(probs, level)| {
            let mg = marginals(probs, level);
            let digits: Vec<Digit> = probs.keys().copied().collect();
            let weights: Vec<f64> = probs.values().map(ratio_to_f64).collect();
            LevelTable {
                sampler: WeightedIndex::new(&weights).expect("probabilities sum to 1"),
                ln_p: weights.iter().map(|w| w.ln()).collect(),
                ln_q: digits.iter().map(|d| ratio_to_f64(&mg.row(d.1)).ln()).collect(),
                ln_qhat: digits.iter().map(|d| ratio_to_f64(&mg.col(d.0)).ln()).collect(),
                digits,
            }
        })
        .collect()
}

/// Samples `count` words from the product measure, word `index` drawn from
/// stream `index` of a ChaCha8 generator seeded with `seed`, and reports the
/// local ratio along each word's approximate squares.
pub fn local_dim_samples(
    c: &Construction,
    p: &ProbAssignment,
    seed: u64,
    count: usize,
    k_max: usize,
    guard: u128,
) -> Result<Vec<LocalDimSample>> {
    let l_table = c.l_table(k_max);
    let depth = k_max.max(l_table[k_max]);
    check_guard(count as u128 * depth as u128, guard)?;
    let tables = level_tables(c, p);

    let samples = (0..count as u64)
        .into_par_iter()
        .map(|index| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(index);
            let mut word = Vec::with_capacity(depth);
            // prefix sums of log p, log q(j_h) and log q^(i_h)
            let mut cum_p = vec![0.0; depth + 1];
            let mut cum_q = vec![0.0; depth + 1];
            let mut cum_qhat = vec![0.0; depth + 1];
            for h in 1..=depth {
                let t = &tables[c.stored_index(h)];
                let pick = t.sampler.sample(&mut rng);
                word.push(t.digits[pick]);
                cum_p[h] = cum_p[h - 1] + t.ln_p[pick];
                cum_q[h] = cum_q[h - 1] + t.ln_q[pick];
                cum_qhat[h] = cum_qhat[h - 1] + t.ln_qhat[pick];
            }
            let ratios = (1..=k_max)
                .map(|k| {
                    let l = l_table[k];
                    let log_mass = if l <= k {
                        cum_p[l] + cum_q[k] - cum_q[l]
                    } else {
                        cum_p[k] + cum_qhat[l] - cum_qhat[k]
                    };
                    // adding 0.0 turns -0.0 into 0.0
                    -log_mass / c.log_r(k) + 0.0
                })
                .collect();
            LocalDimSample { index, word, ratios }
        })
        .collect();
    Ok(samples)
}
