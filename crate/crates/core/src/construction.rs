//! Defining data of a self-affine Moran set and its scale bookkeeping.
//!
//! A [`Construction`] is an eventually periodic sequence of [`Level`]s: a
//! finite preperiod followed by a nonempty period repeated forever. Levels
//! are 1-indexed, so `level_at(1)` is the first stored level.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::counting::{digit_stats, DigitStats, Stat};
use crate::error::{Error, Result};
use crate::series::{IntSeries, LevelSeries};

/// A digit `(i, j)`: column `i`, row `j`.
pub type Digit = (u32, u32);

/// Depth up to which scale comparisons are always done with exact integers.
pub const EXACT_DEPTH: usize = 64;

/// Log-domain comparisons closer than this are re-done exactly.
const TIE_ESCALATION: f64 = 1e-9;

/// One construction stage: an `n x m` grid and the retained cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Level {
    n: u32,
    m: u32,
    digits: BTreeSet<Digit>,
}

/// Unvalidated level data, as read from a spec file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSpec {
    pub n: u32,
    pub m: u32,
    pub digits: Vec<[u32; 2]>,
}

impl LevelSpec {
    pub fn validate(&self) -> Result<Level> {
        Level::new(self.n, self.m, self.digits.iter().map(|d| (d[0], d[1])))
    }
}

impl From<&Level> for LevelSpec {
    fn from(level: &Level) -> Self {
        LevelSpec {
            n: level.n,
            m: level.m,
            digits: level.digits.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl Level {
    /// Builds a level, rejecting bad bases, out-of-range digits and digit
    /// sets with fewer than two elements (checked in that order).
    pub fn new(n: u32, m: u32, digits: impl IntoIterator<Item = Digit>) -> Result<Self> {
        validate(Level {
            n,
            m,
            digits: digits.into_iter().collect(),
        })
    }

    /// The level keeping every cell of the grid.
    pub fn full_grid(n: u32, m: u32) -> Result<Self> {
        Level::new(n, m, (0..n).flat_map(|i| (0..m).map(move |j| (i, j))))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn digits(&self) -> &BTreeSet<Digit> {
        &self.digits
    }

    pub fn contains(&self, digit: Digit) -> bool {
        self.digits.contains(&digit)
    }

    /// Number of retained cells, `r`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

/// Checks the level invariants and hands the level back unchanged.
pub fn validate(level: Level) -> Result<Level> {
    if level.n < 2 || level.m < 2 {
        return Err(Error::BadBase {
            n: level.n,
            m: level.m,
        });
    }
    if let Some(&(i, j)) = level.digits.iter().find(|&&(i, j)| i >= level.n || j >= level.m) {
        return Err(Error::OutOfRangeDigit {
            i,
            j,
            n: level.n,
            m: level.m,
        });
    }
    if level.digits.len() < 2 {
        return Err(Error::TooFewDigits {
            count: level.digits.len(),
        });
    }
    Ok(level)
}

/// Vertical depth `k`, the matching horizontal depth `l`, and the log scales
/// `log R_k = sum_{i<=k} log m_i` and `log N_l = sum_{i<=l} log n_i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalePair {
    pub k: usize,
    pub l: usize,
    pub log_r_k: f64,
    pub log_n_l: f64,
}

/// An eventually periodic sequence of levels.
#[derive(Debug, Clone)]
pub struct Construction {
    preperiod: Vec<Level>,
    period: Vec<Level>,
    stats: Vec<DigitStats>,
    log_m: LevelSeries,
    log_n: LevelSeries,
    prod_m: IntSeries,
    prod_n: IntSeries,
    stat_logs: Vec<LevelSeries>,
    stat_ints: Vec<IntSeries>,
}

impl Construction {
    pub fn new(preperiod: Vec<Level>, period: Vec<Level>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        let pre_len = preperiod.len();
        let stored: Vec<&Level> = preperiod.iter().chain(period.iter()).collect();
        let stats: Vec<DigitStats> = stored.iter().map(|l| digit_stats(l)).collect();
        let logs = |f: &dyn Fn(&Level) -> u32| {
            let vals: Vec<f64> = stored.iter().map(|l| f64::from(f(l)).ln()).collect();
            LevelSeries::new(&vals, pre_len)
        };
        let ints = |f: &dyn Fn(&Level) -> u32| IntSeries::new(stored.iter().map(|l| f(l)).collect(), pre_len);

        let stat_ints: Vec<IntSeries> = Stat::ALL
            .iter()
            .map(|&s| IntSeries::new(stats.iter().map(|st| st.get(s)).collect(), pre_len))
            .collect();
        let stat_logs: Vec<LevelSeries> = Stat::ALL
            .iter()
            .map(|&s| {
                let vals: Vec<f64> = stats.iter().map(|st| f64::from(st.get(s)).ln()).collect();
                LevelSeries::new(&vals, pre_len)
            })
            .collect();

        Ok(Construction {
            log_m: logs(&|l| l.m),
            log_n: logs(&|l| l.n),
            prod_m: ints(&|l| l.m),
            prod_n: ints(&|l| l.n),
            stats,
            stat_logs,
            stat_ints,
            preperiod,
            period,
        })
    }

    /// A construction repeating a single level.
    pub fn constant(level: Level) -> Self {
        Construction::new(Vec::new(), vec![level]).expect("nonempty period")
    }

    /// Validates raw level data, reporting the 1-based index of the first
    /// offending level.
    pub fn from_specs(preperiod: &[LevelSpec], period: &[LevelSpec]) -> Result<Self> {
        let check = |offset: usize, specs: &[LevelSpec]| -> Result<Vec<Level>> {
            specs
                .iter()
                .enumerate()
                .map(|(idx, s)| s.validate().map_err(|e| Error::in_level(offset + idx + 1, e)))
                .collect()
        };
        let pre = check(0, preperiod)?;
        let per = check(preperiod.len(), period)?;
        Construction::new(pre, per)
    }

    pub fn preperiod(&self) -> &[Level] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Level] {
        &self.period
    }

    /// Preperiod followed by one copy of the period.
    pub fn stored_levels(&self) -> impl Iterator<Item = &Level> {
        self.preperiod.iter().chain(self.period.iter())
    }

    pub fn stored_len(&self) -> usize {
        self.preperiod.len() + self.period.len()
    }

    /// Position of level `k` within [`Construction::stored_levels`].
    pub fn stored_index(&self, k: usize) -> usize {
        assert!(k >= 1, "levels are 1-indexed");
        let pre = self.preperiod.len();
        if k <= pre {
            k - 1
        } else {
            pre + (k - pre - 1) % self.period.len()
        }
    }

    pub fn level_at(&self, k: usize) -> &Level {
        let idx = self.stored_index(k);
        if idx < self.preperiod.len() {
            &self.preperiod[idx]
        } else {
            &self.period[idx - self.preperiod.len()]
        }
    }

    pub fn stats_at(&self, k: usize) -> &DigitStats {
        &self.stats[self.stored_index(k)]
    }

    pub fn stored_stats(&self) -> &[DigitStats] {
        &self.stats
    }

    /// `N+`: the largest base appearing anywhere.
    pub fn n_plus(&self) -> u32 {
        self.stored_levels().map(|l| l.n.max(l.m)).max().unwrap_or(0)
    }

    /// `sum_{i<=k} log m_i`.
    pub fn log_r(&self, k: usize) -> f64 {
        self.log_m.cum(k)
    }

    /// `sum_{i<=l} log n_i`.
    pub fn log_n(&self, l: usize) -> f64 {
        self.log_n.cum(l)
    }

    /// `sum_{a<i<=b} log m_i`.
    pub fn log_m_between(&self, a: usize, b: usize) -> f64 {
        self.log_m.sum(a, b)
    }

    pub fn m_product(&self, k: usize) -> BigUint {
        self.prod_m.cum_product(k)
    }

    pub fn n_product(&self, l: usize) -> BigUint {
        self.prod_n.cum_product(l)
    }

    pub(crate) fn period_m_product(&self) -> &BigUint {
        self.prod_m.period_product()
    }

    pub(crate) fn period_n_product(&self) -> &BigUint {
        self.prod_n.period_product()
    }

    pub(crate) fn mean_log_m(&self) -> f64 {
        self.log_m.period_mean()
    }

    pub(crate) fn mean_log_n(&self) -> f64 {
        self.log_n.period_mean()
    }

    /// `sum_{a<i<=b} log stat_i`.
    pub(crate) fn stat_log_sum(&self, stat: Stat, a: usize, b: usize) -> f64 {
        self.stat_logs[stat.index()].sum(a, b)
    }

    pub(crate) fn stat_product(&self, stat: Stat, a: usize, b: usize) -> BigUint {
        self.stat_ints[stat.index()].product(a, b)
    }

    pub(crate) fn stat_mean_log(&self, stat: Stat) -> f64 {
        self.stat_logs[stat.index()].period_mean()
    }

    /// Compares `n_1 ... n_l` with `m_1 ... m_k`.
    pub fn compare_scales(&self, l: usize, k: usize) -> Ordering {
        if l <= EXACT_DEPTH && k <= EXACT_DEPTH {
            return self.n_product(l).cmp(&self.m_product(k));
        }
        let diff = self.log_n(l) - self.log_r(k);
        if diff.abs() < TIE_ESCALATION {
            self.n_product(l).cmp(&self.m_product(k))
        } else if diff < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// The horizontal depth `l(k)`: the unique `l` with
    /// `n_1...n_{l-1} < m_1...m_k <= n_1...n_l`. `l(0) = 0`.
    pub fn l_of_k(&self, k: usize) -> ScalePair {
        let mut l = self.log_n.invert(self.log_r(k) - 1e-7);
        while self.compare_scales(l, k) == Ordering::Less {
            l += 1;
        }
        while l > 0 && self.compare_scales(l - 1, k) != Ordering::Less {
            l -= 1;
        }
        ScalePair {
            k,
            l,
            log_r_k: self.log_r(k),
            log_n_l: self.log_n(l),
        }
    }

    /// `l(k)` for every `k` in `0..=max_k`.
    pub fn l_table(&self, max_k: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(max_k + 1);
        let mut l = 0usize;
        for k in 0..=max_k {
            if k > EXACT_DEPTH {
                // Jump close to the answer instead of walking level by level.
                l = l.max(self.log_n.invert(self.log_r(k) - 1e-7).saturating_sub(1));
            }
            while self.compare_scales(l, k) == Ordering::Less {
                l += 1;
            }
            out.push(l);
        }
        out
    }

    /// The vertical depth `k(delta)`: the unique `k >= 1` with
    /// `1/(m_1...m_k) <= delta < 1/(m_1...m_{k-1})`.
    pub fn k_of_delta(&self, delta: f64) -> Result<usize> {
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::DomainError(delta));
        }
        let exact = BigRational::from_float(delta).ok_or(Error::DomainError(delta))?;
        self.k_of_scale(&exact)
    }

    /// [`Construction::k_of_delta`] for an exact rational scale.
    pub fn k_of_scale(&self, delta: &BigRational) -> Result<usize> {
        let approx = ratio_to_f64(delta);
        if !(delta > &BigRational::from_integer(0.into()) && delta < &BigRational::one()) {
            return Err(Error::DomainError(approx));
        }
        let target = -approx.ln();
        // covers(k): m_1...m_k * delta >= 1
        let covers = |k: usize| -> bool {
            let diff = self.log_r(k) - target;
            if k <= EXACT_DEPTH || diff.abs() < TIE_ESCALATION {
                let prod = BigRational::from_integer(self.m_product(k).into());
                prod * delta >= BigRational::one()
            } else {
                diff > 0.0
            }
        };
        let mut k = self.log_m.invert(target - 1e-7).max(1);
        while !covers(k) {
            k += 1;
        }
        while k > 1 && covers(k - 1) {
            k -= 1;
        }
        Ok(k)
    }

    /// Exact `R_k = 1/(m_1 ... m_k)` as a rational.
    pub fn r_k(&self, k: usize) -> BigRational {
        BigRational::new(BigUint::one().into(), self.m_product(k).into())
    }

    /// Short human-readable summary used in reports.
    pub fn describe(&self) -> String {
        format!(
            "{} preperiod level(s), {} period level(s), N+ = {}",
            self.preperiod.len(),
            self.period.len(),
            self.n_plus()
        )
    }
}

/// `level_at` as a free function.
pub fn level_at(c: &Construction, k: usize) -> &Level {
    c.level_at(k)
}

/// `l_of_k` as a free function.
pub fn l_of_k(c: &Construction, k: usize) -> ScalePair {
    c.l_of_k(k)
}

/// `k_of_delta` as a free function.
pub fn k_of_delta(c: &Construction, delta: f64) -> Result<usize> {
    c.k_of_delta(delta)
}

/// `N+` as a free function.
pub fn n_plus(c: &Construction) -> u32 {
    c.n_plus()
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn validate_examples() {
        assert!(Level::new(3, 2, [(0, 0), (1, 1), (2, 0)]).is_ok());
        assert!(matches!(
            Level::new(3, 2, [(3, 0), (1, 1)]),
            Err(Error::OutOfRangeDigit { i: 3, j: 0, .. })
        ));
        assert!(matches!(Level::new(3, 2, [(0, 0)]), Err(Error::TooFewDigits { count: 1 })));
        assert!(matches!(Level::new(1, 2, [(0, 0), (0, 1)]), Err(Error::BadBase { .. })));
    }

    #[test]
    fn level_at_wraps_the_period() {
        let c = corpus::alternating();
        let (a, b) = (&c.preperiod()[0], &c.period()[0]);
        assert_eq!(c.level_at(1), a);
        assert_eq!(c.level_at(2), b);
        assert_eq!(c.level_at(4), b);
        assert_eq!(c.level_at(5), &c.period()[1]);
        let bm = corpus::bedford_mcmullen();
        assert_eq!(bm.level_at(1_000_000), &bm.period()[0]);
    }

    #[test]
    fn k_of_delta_examples() {
        let c = corpus::bedford_mcmullen();
        assert_eq!(c.k_of_delta(0.3).unwrap(), 2);
        assert_eq!(c.k_of_delta(0.5).unwrap(), 1);
        assert_eq!(c.k_of_delta(2f64.powi(-10)).unwrap(), 10);
        assert!(matches!(c.k_of_delta(1.0), Err(Error::DomainError(_))));
        assert!(matches!(c.k_of_delta(0.0), Err(Error::DomainError(_))));
    }

    #[test]
    fn l_of_k_examples() {
        let bm = corpus::bedford_mcmullen();
        assert_eq!(bm.l_of_k(2).l, 2);
        assert_eq!(bm.l_of_k(5).l, 4);
        let tall = corpus::tall();
        assert_eq!(tall.l_of_k(2).l, 4);
        assert_eq!(bm.l_of_k(0).l, 0);
    }

    #[test]
    fn n_plus_examples() {
        assert_eq!(corpus::bedford_mcmullen().n_plus(), 3);
        assert_eq!(corpus::tall().n_plus(), 3);
        let mixed = Construction::new(
            vec![],
            vec![
                Level::new(3, 2, [(0, 0), (1, 1)]).unwrap(),
                Level::new(5, 4, [(0, 0), (1, 1)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(mixed.n_plus(), 5);
    }

    #[test]
    fn scale_pair_brackets_exactly() {
        for c in corpus::all() {
            let table = c.l_table(200);
            for k in 1..=200 {
                let sp = c.l_of_k(k);
                assert_eq!(sp.l, table[k], "k={k}");
                if k <= EXACT_DEPTH {
                    let rk = c.m_product(k);
                    assert!(c.n_product(sp.l) >= rk);
                    assert!(c.n_product(sp.l - 1) < rk);
                }
                if k > 1 {
                    assert!(table[k] >= table[k - 1]);
                    assert!(c.log_r(k) > c.log_r(k - 1));
                }
            }
        }
    }

    #[test]
    fn k_of_delta_is_left_closed_at_every_scale() {
        for c in corpus::all() {
            for k in 1..=64 {
                assert_eq!(c.k_of_scale(&c.r_k(k)).unwrap(), k);
            }
        }
    }

    #[test]
    fn exact_tie_with_power_bases() {
        // n = 4, m = 2 ties at every even k
        let c = Construction::constant(Level::new(4, 2, [(0, 0), (3, 1)]).unwrap());
        for k in 1..=300 {
            assert_eq!(c.l_of_k(k).l, k.div_ceil(2), "k={k}");
        }
    }
}
