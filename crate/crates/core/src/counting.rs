//! Digit statistics and the approximate-square counting functions
//! `N_{l,k}`, `N-_{k,k'}` and `N+_{k,k'}`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::construction::{Construction, Level};
use crate::error::{Error, Result};

/// Ranges whose total length is at most this also carry an exact product.
pub const EXACT_RANGE: usize = 64;

/// Row and column statistics of one digit set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigitStats {
    /// `r`: number of digits.
    pub r: u32,
    /// `r(j)` for every occupied row `j`.
    pub rows: BTreeMap<u32, u32>,
    /// `r^(i)` for every occupied column `i`.
    pub cols: BTreeMap<u32, u32>,
    pub r_minus: u32,
    pub r_plus: u32,
    pub rhat_minus: u32,
    pub rhat_plus: u32,
    /// Number of occupied rows.
    pub s: u32,
    /// Number of occupied columns.
    pub shat: u32,
}

/// Per-level statistics that appear as factors in the counting formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Stat {
    R,
    S,
    SHat,
    RMinus,
    RPlus,
    RHatMinus,
    RHatPlus,
}

impl Stat {
    pub const ALL: [Stat; 7] = [
        Stat::R,
        Stat::S,
        Stat::SHat,
        Stat::RMinus,
        Stat::RPlus,
        Stat::RHatMinus,
        Stat::RHatPlus,
    ];

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

impl DigitStats {
    pub fn get(&self, stat: Stat) -> u32 {
        match stat {
            Stat::R => self.r,
            Stat::S => self.s,
            Stat::SHat => self.shat,
            Stat::RMinus => self.r_minus,
            Stat::RPlus => self.r_plus,
            Stat::RHatMinus => self.rhat_minus,
            Stat::RHatPlus => self.rhat_plus,
        }
    }
}

pub fn digit_stats(level: &Level) -> DigitStats {
    let mut rows = BTreeMap::new();
    let mut cols = BTreeMap::new();
    for &(i, j) in level.digits() {
        *rows.entry(j).or_insert(0u32) += 1;
        *cols.entry(i).or_insert(0u32) += 1;
    }
    // only occupied rows/columns are stored, so min/max skip zeros
    let min_max = |m: &BTreeMap<u32, u32>| {
        (
            m.values().copied().min().unwrap_or(0),
            m.values().copied().max().unwrap_or(0),
        )
    };
    let (r_minus, r_plus) = min_max(&rows);
    let (rhat_minus, rhat_plus) = min_max(&cols);
    DigitStats {
        r: level.len() as u32,
        s: rows.len() as u32,
        shat: cols.len() as u32,
        rows,
        cols,
        r_minus,
        r_plus,
        rhat_minus,
        rhat_plus,
    }
}

/// A positive integer count carried as its natural log, plus the exact value
/// when the product is short enough.
#[derive(Debug, Clone, PartialEq)]
pub struct LogCount {
    pub log_value: f64,
    pub exact: Option<BigUint>,
}

impl LogCount {
    pub fn one() -> Self {
        LogCount {
            log_value: 0.0,
            exact: Some(BigUint::one()),
        }
    }

    pub fn exact_u64(&self) -> Option<u64> {
        self.exact.as_ref().and_then(|e| e.to_u64())
    }

    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

impl fmt::Display for LogCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.exact {
            Some(e) => write!(f, "{e}"),
            None => write!(f, "exp({})", self.log_value),
        }
    }
}

/// Product of `stat_i` over `from < i <= to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorRange {
    pub stat: Stat,
    pub from: usize,
    pub to: usize,
}

impl FactorRange {
    const EMPTY: FactorRange = FactorRange {
        stat: Stat::R,
        from: 0,
        to: 0,
    };

    fn new(stat: Stat, from: usize, to: usize) -> Self {
        FactorRange { stat, from, to }
    }

    pub fn len(&self) -> usize {
        self.to.saturating_sub(self.from)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Multiplies out a list of factor ranges.
pub fn evaluate(c: &Construction, ranges: &[FactorRange]) -> LogCount {
    let log_value: f64 = ranges
        .iter()
        .map(|r| c.stat_log_sum(r.stat, r.from, r.to))
        .sum();
    let total: usize = ranges.iter().map(FactorRange::len).sum();
    let exact = (total <= EXACT_RANGE).then(|| {
        ranges
            .iter()
            .fold(BigUint::one(), |acc, r| acc * c.stat_product(r.stat, r.from, r.to))
    });
    LogCount { log_value, exact }
}

fn log_of(c: &Construction, ranges: &[FactorRange]) -> f64 {
    ranges.iter().map(|r| c.stat_log_sum(r.stat, r.from, r.to)).sum()
}

/// Factor ranges of `N_{l,k}`.
pub fn approx_square_factors(k: usize, l: usize) -> [FactorRange; 2] {
    if l <= k {
        [FactorRange::new(Stat::R, 0, l), FactorRange::new(Stat::S, l, k)]
    } else {
        [FactorRange::new(Stat::R, 0, k), FactorRange::new(Stat::SHat, k, l)]
    }
}

/// `N_{l,k}(E)`: the number of depth-`k` approximate squares.
pub fn count_approx_squares(c: &Construction, k: usize) -> LogCount {
    let l = c.l_of_k(k).l;
    evaluate(c, &approx_square_factors(k, l))
}

/// `log N_{l,k}` with `l` supplied by the caller.
pub(crate) fn log_count_approx_squares(c: &Construction, k: usize, l: usize) -> f64 {
    log_of(c, &approx_square_factors(k, l))
}

/// Which extreme of the nested count is taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Bound {
    Minus,
    Plus,
}

/// Relative order of `l = l(k)`, `l' = l(k')`, `k` and `k'`; the name lists
/// the four depths from smallest to largest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NestingCase {
    /// `l < l' <= k < k'`
    LLKK,
    /// `l <= k < l' <= k'`
    LKLK,
    /// `l <= k < k' <= l'`
    LKKL,
    /// `k <= l < l' <= k'`
    KLLK,
    /// `k <= l < k' <= l'`
    KLKL,
    /// `k < k' <= l < l'`
    KKLL,
}

impl fmt::Display for NestingCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Picks the case for `k < k'`. Where two displayed cases overlap on a
/// boundary they evaluate to the same product, since empty ranges are 1.
pub fn nesting_case(k: usize, k2: usize, l: usize, l2: usize) -> NestingCase {
    debug_assert!(k < k2 && l <= l2);
    if l2 <= k {
        NestingCase::LLKK
    } else if l <= k {
        if l2 <= k2 {
            NestingCase::LKLK
        } else {
            NestingCase::LKKL
        }
    } else if k2 <= l {
        NestingCase::KKLL
    } else if l2 <= k2 {
        NestingCase::KLLK
    } else {
        NestingCase::KLKL
    }
}

/// Factor ranges of `N-_{k,k'}` / `N+_{k,k'}` for the given case.
pub fn nested_factors(
    case: NestingCase,
    bound: Bound,
    k: usize,
    k2: usize,
    l: usize,
    l2: usize,
) -> [FactorRange; 3] {
    let (row_ext, col_ext) = match bound {
        Bound::Minus => (Stat::RMinus, Stat::RHatMinus),
        Bound::Plus => (Stat::RPlus, Stat::RHatPlus),
    };
    let f = FactorRange::new;
    match case {
        NestingCase::LLKK => [f(row_ext, l, l2), f(Stat::S, k, k2), FactorRange::EMPTY],
        NestingCase::LKLK => [f(row_ext, l, k), f(Stat::R, k, l2), f(Stat::S, l2, k2)],
        NestingCase::LKKL => [f(row_ext, l, k), f(Stat::R, k, k2), f(Stat::SHat, k2, l2)],
        NestingCase::KLLK => [f(col_ext, k, l), f(Stat::R, l, l2), f(Stat::S, l2, k2)],
        NestingCase::KLKL => [f(col_ext, k, l), f(Stat::R, l, k2), f(Stat::SHat, k2, l2)],
        NestingCase::KKLL => [f(col_ext, k, k2), f(Stat::SHat, l, l2), FactorRange::EMPTY],
    }
}

/// `log N+-_{k,k'}` with precomputed `l`, `l'`; the allocation-free path used
/// by the dimension scans.
pub(crate) fn nested_log(c: &Construction, k: usize, k2: usize, l: usize, l2: usize, bound: Bound) -> f64 {
    let case = nesting_case(k, k2, l, l2);
    log_of(c, &nested_factors(case, bound, k, k2, l, l2))
}

/// Source of nested counts. The oracle checks any implementation against
/// the brute-force census, which lets tests inject faulty ones.
pub trait NestedCounter: Sync {
    fn nested(&self, c: &Construction, k: usize, k2: usize, bound: Bound) -> Result<(LogCount, NestingCase)>;
}

/// The six-case product formulas.
#[derive(Debug, Clone, Copy, Default)]
pub struct SixCaseCounter;

impl NestedCounter for SixCaseCounter {
    fn nested(&self, c: &Construction, k: usize, k2: usize, bound: Bound) -> Result<(LogCount, NestingCase)> {
        nested_count(c, k, k2, bound)
    }
}

/// Min (`Bound::Minus`) or max (`Bound::Plus`) number of depth-`k2`
/// approximate squares inside one depth-`k` square. `k = 0` stands for the
/// unit square, giving `N_{l',k'}`.
pub fn nested_count(c: &Construction, k: usize, k2: usize, bound: Bound) -> Result<(LogCount, NestingCase)> {
    if k >= k2 {
        return Err(Error::BadRange { k, k2 });
    }
    let l = c.l_of_k(k).l;
    let l2 = c.l_of_k(k2).l;
    let case = nesting_case(k, k2, l, l2);
    Ok((evaluate(c, &nested_factors(case, bound, k, k2, l, l2)), case))
}

/// `N-_{k,k'}(E)`.
pub fn n_minus(c: &Construction, k: usize, k2: usize) -> Result<LogCount> {
    nested_count(c, k, k2, Bound::Minus).map(|(n, _)| n)
}

/// `N+_{k,k'}(E)`.
pub fn n_plus_count(c: &Construction, k: usize, k2: usize) -> Result<LogCount> {
    nested_count(c, k, k2, Bound::Plus).map(|(n, _)| n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn exact(n: LogCount) -> u64 {
        n.exact_u64().unwrap()
    }

    #[test]
    fn digit_stats_examples() {
        let bm = digit_stats(&Level::new(3, 2, [(0, 0), (1, 1), (2, 0)]).unwrap());
        assert_eq!(bm.r, 3);
        assert_eq!(bm.rows, BTreeMap::from([(0, 2), (1, 1)]));
        assert_eq!((bm.r_minus, bm.r_plus, bm.s), (1, 2, 2));
        assert_eq!(bm.cols, BTreeMap::from([(0, 1), (1, 1), (2, 1)]));
        assert_eq!((bm.rhat_minus, bm.rhat_plus, bm.shat), (1, 1, 3));

        let tall = digit_stats(&Level::new(2, 3, [(0, 0), (1, 1), (0, 2)]).unwrap());
        assert_eq!((tall.r, tall.s, tall.shat), (3, 3, 2));
        assert_eq!(tall.cols, BTreeMap::from([(0, 2), (1, 1)]));
        assert_eq!((tall.rhat_minus, tall.rhat_plus), (1, 2));

        let full = digit_stats(&Level::full_grid(2, 2).unwrap());
        assert_eq!((full.r, full.r_minus, full.r_plus, full.s, full.shat), (4, 2, 2, 2, 2));
    }

    #[test]
    fn digit_stats_invariants_hold_on_corpus() {
        for c in corpus::all() {
            for (st, level) in c.stored_stats().iter().zip(c.stored_levels()) {
                assert_eq!(st.rows.values().sum::<u32>(), st.r);
                assert_eq!(st.cols.values().sum::<u32>(), st.r);
                assert!(1 <= st.r_minus && st.r_minus <= st.r_plus && st.r_plus <= st.shat);
                assert!(1 <= st.rhat_minus && st.rhat_minus <= st.rhat_plus && st.rhat_plus <= st.s);
                assert!(st.s <= level.m() && st.shat <= level.n());
            }
        }
    }

    #[test]
    fn approx_square_count_examples() {
        let bm = corpus::bedford_mcmullen();
        assert_eq!(exact(count_approx_squares(&bm, 2)), 9);
        assert_eq!(exact(count_approx_squares(&bm, 5)), 162);
        assert_eq!(exact(count_approx_squares(&corpus::tall(), 1)), 6);
    }

    #[test]
    fn nested_count_examples() {
        let bm = corpus::bedford_mcmullen();
        assert_eq!(exact(n_minus(&bm, 2, 5).unwrap()), 18);
        assert_eq!(exact(n_minus(&bm, 5, 8).unwrap()), 12);
        assert_eq!(exact(n_minus(&bm, 1, 3).unwrap()), 6);
        // r+_5 r_6 s_7 s_8 = 2 * 3 * 2 * 2
        assert_eq!(exact(n_plus_count(&bm, 5, 8).unwrap()), 24);
        assert_eq!(exact(n_plus_count(&bm, 2, 5).unwrap()), 18);
        assert_eq!(nested_count(&bm, 5, 8, Bound::Minus).unwrap().1, NestingCase::LKLK);
        assert!(matches!(n_minus(&bm, 3, 3), Err(Error::BadRange { .. })));
        assert!(matches!(n_plus_count(&bm, 4, 2), Err(Error::BadRange { .. })));
    }

    #[test]
    fn full_grid_counts_are_full_products() {
        let full = corpus::full_grid();
        for k in 0..8 {
            for k2 in k + 1..10 {
                let lo = exact(n_minus(&full, k, k2).unwrap());
                let hi = exact(n_plus_count(&full, k, k2).unwrap());
                assert_eq!(lo, hi);
                assert_eq!(lo, 4u64.pow((k2 - k) as u32));
            }
        }
    }

    #[test]
    fn root_depth_gives_total_count() {
        for c in corpus::all() {
            for k2 in 1..12 {
                let total = count_approx_squares(&c, k2);
                assert_eq!(n_minus(&c, 0, k2).unwrap(), total);
                assert_eq!(n_plus_count(&c, 0, k2).unwrap(), total);
            }
        }
    }

    #[test]
    fn sandwich_and_ratio_bound() {
        for c in corpus::all() {
            for k in 1..10 {
                for k2 in k + 1..14 {
                    let lo = n_minus(&c, k, k2).unwrap().exact.unwrap();
                    let hi = n_plus_count(&c, k, k2).unwrap().exact.unwrap();
                    assert!(lo <= hi);
                    let outer = count_approx_squares(&c, k).exact.unwrap();
                    let inner = count_approx_squares(&c, k2).exact.unwrap();
                    // N- * N_k <= N_k' <= N+ * N_k
                    assert!(&lo * &outer <= inner, "{k} {k2}");
                    assert!(inner <= &hi * &outer, "{k} {k2}");
                }
            }
        }
    }

    #[test]
    fn log_value_tracks_exact_value() {
        for c in corpus::all() {
            for k in 1..30 {
                let n = count_approx_squares(&c, k);
                let e = n.exact.as_ref().unwrap().to_f64().unwrap().ln();
                assert!((n.log_value - e).abs() <= 1e-12 * e.max(1.0));
            }
        }
    }
}
