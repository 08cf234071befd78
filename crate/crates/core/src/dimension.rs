//! Box, packing, lower and Assouad dimensions of the set.
//!
//! For an eventually periodic construction every limit in the dimension
//! formulas exists and depends only on period averages, so the reported
//! values are those exact limits. The finite sequences behind them (the
//! ratios `a_k` and the gap infima/suprema `zeta_m`) are computed as well and
//! returned as convergence diagnostics; they approach the limits at rate
//! `O(1/k)` and `O(1/m)` respectively.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::Construction;
use crate::counting::{log_count_approx_squares, n_minus, n_plus_count, nested_log, Bound, Stat};
use crate::error::{Error, Result};

/// Asymptotic ordering of the horizontal and vertical scales over one
/// period.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Regime {
    /// `prod n > prod m` over the period: eventually `l(k) < k`.
    Wide,
    /// `prod n = prod m`: `l(k) - k` stays bounded.
    Balanced,
    /// `prod n < prod m`: eventually `l(k) > k`.
    Tall,
}

pub fn regime(c: &Construction) -> Regime {
    match c.period_n_product().cmp(c.period_m_product()) {
        std::cmp::Ordering::Greater => Regime::Wide,
        std::cmp::Ordering::Equal => Regime::Balanced,
        std::cmp::Ordering::Less => Regime::Tall,
    }
}

/// `lim l(k)/k`, the ratio of mean log bases.
pub fn depth_ratio(c: &Construction) -> f64 {
    c.mean_log_m() / c.mean_log_n()
}

/// Limit of `(sum_{i<=min(k,l)} both_i + sum_{between} one-sided_i) / log R_k`
/// given the period means of the three per-level quantities.
pub(crate) fn scale_limit(c: &Construction, both: f64, row_only: f64, col_only: f64) -> f64 {
    let lambda = depth_ratio(c);
    let num = match regime(c) {
        Regime::Wide => lambda * both + (1.0 - lambda) * row_only,
        Regime::Balanced => both,
        Regime::Tall => both + (lambda - 1.0) * col_only,
    };
    num / c.mean_log_m()
}

/// Limit of `log N_{l,k} / log R_k`.
pub fn box_limit(c: &Construction) -> f64 {
    scale_limit(
        c,
        c.stat_mean_log(Stat::R),
        c.stat_mean_log(Stat::S),
        c.stat_mean_log(Stat::SHat),
    )
}

/// `lim_m inf_k` (or `sup_k`) of `log N+-_{k,k+m} / log(m_{k+1}...m_{k+m})`.
pub fn gap_limit_value(c: &Construction, bound: Bound) -> f64 {
    let (row_ext, col_ext) = match bound {
        Bound::Minus => (Stat::RMinus, Stat::RHatMinus),
        Bound::Plus => (Stat::RPlus, Stat::RHatPlus),
    };
    let lambda = depth_ratio(c);
    let num = match regime(c) {
        Regime::Wide => lambda * c.stat_mean_log(row_ext) + c.stat_mean_log(Stat::S),
        Regime::Balanced => c.stat_mean_log(Stat::R),
        Regime::Tall => c.stat_mean_log(col_ext) + lambda * c.stat_mean_log(Stat::SHat),
    };
    num / c.mean_log_m()
}

/// A finite sequence of partial values and the spread of its tail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Convergence {
    /// Largest depth evaluated.
    pub depth: usize,
    /// First depth of the tail.
    pub tail_start: usize,
    pub tail_min: f64,
    pub tail_max: f64,
    /// Value at `depth`.
    pub last: f64,
    /// `partials[i]` is the value at depth `i + 1`.
    pub partials: Vec<f64>,
}

impl Convergence {
    /// Tail over the second half of `partials`.
    pub fn from_partials(partials: Vec<f64>) -> Self {
        Convergence::with_tail(partials, 2)
    }

    /// Tail over the last `1/fraction` of `partials`.
    pub fn with_tail(partials: Vec<f64>, fraction: usize) -> Self {
        let depth = partials.len();
        let tail_start = (depth - depth / fraction).max(1);
        let tail = &partials[tail_start - 1..];
        Convergence {
            depth,
            tail_start,
            tail_min: tail.iter().copied().fold(f64::INFINITY, f64::min),
            tail_max: tail.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            last: partials[depth - 1],
            partials,
        }
    }

    pub fn oscillation(&self) -> f64 {
        self.tail_max - self.tail_min
    }
}

/// Lower and upper box dimension (the upper one is also the packing
/// dimension).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoxDimensions {
    pub lower: f64,
    pub upper: f64,
    /// `a_k = log N_{l,k} / log R_k` for `k <= window`.
    pub convergence: Convergence,
}

pub(crate) fn check_window(c: &Construction, window: usize) -> Result<()> {
    let required = c.stored_len().max(2);
    if window < required {
        return Err(Error::WindowTooSmall { window, required });
    }
    Ok(())
}

/// `a_k = log N_{l,k}(E) / log(m_1 ... m_k)`.
pub fn box_ratio(c: &Construction, k: usize) -> f64 {
    let l = c.l_of_k(k).l;
    log_count_approx_squares(c, k, l) / c.log_r(k)
}

pub fn box_dimensions(c: &Construction, window: usize) -> Result<BoxDimensions> {
    check_window(c, window)?;
    let table = c.l_table(window);
    let partials = (1..=window)
        .map(|k| log_count_approx_squares(c, k, table[k]) / c.log_r(k))
        .collect();
    let limit = box_limit(c);
    Ok(BoxDimensions {
        lower: limit,
        upper: limit,
        convergence: Convergence::from_partials(partials),
    })
}

/// A ratio `log N+-_{k,k'} / log(m_{k+1} ... m_{k'})`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XiValue {
    pub k: usize,
    pub k2: usize,
    pub value: f64,
}

/// `xi_{k,k'}`, built from `N-`.
pub fn xi(c: &Construction, k: usize, k2: usize) -> Result<XiValue> {
    let n = n_minus(c, k, k2)?;
    Ok(XiValue {
        k,
        k2,
        value: n.log_value / c.log_m_between(k, k2),
    })
}

/// `beta_{k,k'}`, built from `N+`.
pub fn beta(c: &Construction, k: usize, k2: usize) -> Result<XiValue> {
    let n = n_plus_count(c, k, k2)?;
    Ok(XiValue {
        k,
        k2,
        value: n.log_value / c.log_m_between(k, k2),
    })
}

/// The lower or Assouad dimension together with the finite gap sequence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapLimit {
    pub value: f64,
    pub gap_limit: usize,
    /// `zeta_m` for `m = 1..=gap_limit`; the tail is the last quarter.
    pub sequence: Convergence,
    /// Largest starting depth `k` scanned for each gap.
    pub scan_depth: usize,
    /// Bound on `|zeta_m - value|` at `m = gap_limit` from the per-level
    /// factor sizes, the period length and the preperiod length.
    pub error_bar: f64,
    /// Whether `zeta_{gap_limit}` lies within `error_bar` of `value`.
    pub stabilized: bool,
}

fn scan_depth(c: &Construction, gap_limit: usize) -> usize {
    let base = c.preperiod().len() + c.period().len();
    let lambda = depth_ratio(c);
    let stretch = match regime(c) {
        Regime::Wide => lambda / (1.0 - lambda),
        Regime::Balanced => 1.0,
        Regime::Tall => 1.0 / (lambda - 1.0),
    };
    let extra = (gap_limit as f64 * stretch.min(50.0)).ceil() as usize;
    base + extra.max(gap_limit) + 1
}

fn error_bar(c: &Construction, gap_limit: usize) -> f64 {
    let log_np = f64::from(c.n_plus()).ln();
    let factor = 2.0 * log_np;
    let misalign = (2 * c.period().len() + c.preperiod().len()) as f64;
    let numerator = (3.0 * misalign + 4.0) * factor;
    let denominator = 2.0 * misalign * log_np;
    (numerator + denominator) / (gap_limit as f64 * std::f64::consts::LN_2)
}

fn gap_sequence(c: &Construction, gap_limit: usize, bound: Bound) -> Result<GapLimit> {
    let required = 2 * c.period().len();
    if gap_limit < required.max(2) {
        return Err(Error::WindowTooSmall {
            window: gap_limit,
            required: required.max(2),
        });
    }
    let scan = scan_depth(c, gap_limit);
    let table = c.l_table(scan + gap_limit);
    let partials: Vec<f64> = (1..=gap_limit)
        .into_par_iter()
        .map(|m| {
            let ratios = (0..=scan).map(|k| {
                let k2 = k + m;
                nested_log(c, k, k2, table[k], table[k2], bound) / c.log_m_between(k, k2)
            });
            match bound {
                Bound::Minus => ratios.fold(f64::INFINITY, f64::min),
                Bound::Plus => ratios.fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect();
    let value = gap_limit_value(c, bound);
    let bar = error_bar(c, gap_limit);
    let sequence = Convergence::with_tail(partials, 4);
    Ok(GapLimit {
        value,
        gap_limit,
        stabilized: (sequence.last - value).abs() <= bar,
        sequence,
        scan_depth: scan,
        error_bar: bar,
    })
}

/// Lower dimension: `lim_m inf_k xi_{k,k+m}`.
pub fn lower_dimension(c: &Construction, gap_limit: usize) -> Result<GapLimit> {
    gap_sequence(c, gap_limit, Bound::Minus)
}

/// Assouad dimension: `lim_m sup_k beta_{k,k+m}`.
pub fn assouad_dimension(c: &Construction, gap_limit: usize) -> Result<GapLimit> {
    gap_sequence(c, gap_limit, Bound::Plus)
}

/// All four set dimensions with their diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub lower_box: f64,
    pub upper_box: f64,
    pub lower_dim: f64,
    pub assouad: f64,
    pub window: usize,
    pub regime: Regime,
    pub box_dims: BoxDimensions,
    pub lower: GapLimit,
    pub upper: GapLimit,
}

impl DimensionReport {
    /// `lower_dim <= lower_box <= upper_box <= assouad`, up to `tol`.
    pub fn chain_holds(&self, tol: f64) -> bool {
        -tol <= self.lower_dim
            && self.lower_dim <= self.lower_box + tol
            && self.lower_box <= self.upper_box + tol
            && self.upper_box <= self.assouad + tol
            && self.assouad <= 2.0 + tol
    }
}

pub fn set_dimensions(c: &Construction, window: usize, gap_limit: usize) -> Result<DimensionReport> {
    let box_dims = box_dimensions(c, window)?;
    let lower = lower_dimension(c, gap_limit)?;
    let upper = assouad_dimension(c, gap_limit)?;
    Ok(DimensionReport {
        lower_box: box_dims.lower,
        upper_box: box_dims.upper,
        lower_dim: lower.value,
        assouad: upper.value,
        window,
        regime: regime(c),
        box_dims,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const LN2: f64 = std::f64::consts::LN_2;

    fn ln(x: f64) -> f64 {
        x.ln()
    }

    #[test]
    fn bedford_mcmullen_closed_forms() {
        let c = corpus::bedford_mcmullen();
        let d = set_dimensions(&c, 2000, 400).unwrap();
        let box_dim = 1.0 + ln(1.5) / ln(3.0);
        assert!((d.lower_box - box_dim).abs() < 1e-12);
        assert!((d.upper_box - box_dim).abs() < 1e-12);
        assert!((d.lower_dim - 1.0).abs() < 1e-12);
        assert!((d.assouad - (1.0 + LN2 / ln(3.0))).abs() < 1e-12);
        assert!((box_dim - 1.3690702).abs() < 1e-7);
        assert_eq!(d.regime, Regime::Wide);
    }

    #[test]
    fn transposed_carpet_matches() {
        let bm = set_dimensions(&corpus::bedford_mcmullen(), 600, 100).unwrap();
        let tall = set_dimensions(&corpus::tall(), 600, 100).unwrap();
        assert_eq!(tall.regime, Regime::Tall);
        for (a, b) in [
            (bm.lower_box, tall.lower_box),
            (bm.lower_dim, tall.lower_dim),
            (bm.assouad, tall.assouad),
        ] {
            assert!((a - b).abs() < 1e-12, "{a} {b}");
        }
        assert!((tall.upper_box - (2.0 - LN2 / ln(3.0))).abs() < 1e-12);
    }

    #[test]
    fn full_grid_and_diagonal() {
        let full = set_dimensions(&corpus::full_grid(), 100, 40).unwrap();
        for v in [full.lower_box, full.upper_box, full.lower_dim, full.assouad] {
            assert!((v - 2.0).abs() < 1e-12);
        }
        let diag = set_dimensions(&corpus::diagonal(), 100, 40).unwrap();
        for v in [diag.lower_box, diag.upper_box, diag.lower_dim, diag.assouad] {
            assert!((v - 1.0).abs() < 1e-12);
        }
        assert_eq!(diag.regime, Regime::Balanced);
        // balanced constructions have exact finite sequences too
        assert!((diag.lower.sequence.last - 1.0).abs() < 1e-12);
        assert!((full.box_dims.convergence.last - 2.0).abs() < 1e-12);
    }

    #[test]
    fn xi_and_beta_examples() {
        let c = corpus::bedford_mcmullen();
        let x = xi(&c, 5, 8).unwrap();
        assert!((x.value - ln(12.0) / ln(8.0)).abs() < 1e-12);
        assert!((x.value - 1.19499).abs() < 1e-5);
        let b = beta(&c, 5, 8).unwrap();
        assert!((b.value - ln(24.0) / ln(8.0)).abs() < 1e-12);
        let full = corpus::full_grid();
        assert!((xi(&full, 3, 7).unwrap().value - 2.0).abs() < 1e-12);
        assert!((beta(&full, 3, 7).unwrap().value - 2.0).abs() < 1e-12);
        assert!(matches!(xi(&c, 4, 4), Err(Error::BadRange { .. })));
    }

    #[test]
    fn finite_sequences_approach_limits() {
        for c in corpus::all() {
            let d = set_dimensions(&c, 2000, 400).unwrap();
            assert!(d.lower.stabilized && d.upper.stabilized);
            let conv = &d.box_dims.convergence;
            // a_k - limit = O(1/k): the tail is within (2 log N+)/(k log 2)
            let slack = 2.0 * f64::from(c.n_plus()).ln() * (c.stored_len() as f64 + 2.0)
                / (conv.tail_start as f64 * LN2);
            assert!(conv.tail_min >= d.lower_box - slack && conv.tail_max <= d.upper_box + slack);
        }
    }

    #[test]
    fn window_errors() {
        let c = corpus::alternating();
        assert!(matches!(box_dimensions(&c, 2), Err(Error::WindowTooSmall { .. })));
        assert!(matches!(lower_dimension(&c, 3), Err(Error::WindowTooSmall { .. })));
        assert!(lower_dimension(&c, 4).is_ok());
    }

    #[test]
    fn gap_sequences_tighten_when_doubled() {
        let c = corpus::bedford_mcmullen();
        let a = assouad_dimension(&c, 200).unwrap();
        let b = assouad_dimension(&c, 400).unwrap();
        assert_eq!(a.value, b.value);
        assert!((b.sequence.last - b.value).abs() <= a.error_bar);
        assert!((a.sequence.last - a.value).abs() <= a.error_bar);
    }
}
