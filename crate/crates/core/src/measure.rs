//! Self-affine Moran measures: cylinder and approximate-square masses, the
//! `k`-th entropy, entropy/Hausdorff/packing dimensions, and the separation
//! conditions under which the Hausdorff and packing formulas are known to
//! hold.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::construction::{ratio_to_f64, Construction, Digit, Level};
use crate::dimension::{check_window, scale_limit, Convergence};
use crate::error::{Error, Result};
use crate::series::{CompensatedSum, LevelSeries};

/// Per-level probability vectors `p_k` on `D_k`, stored for the preperiod
/// and one period and extended periodically. Only the support is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbAssignment {
    levels: Vec<BTreeMap<Digit, BigRational>>,
}

impl ProbAssignment {
    /// Validates one map per stored level: digits must belong to the level,
    /// masses must be nonnegative and sum to exactly 1.
    pub fn new(c: &Construction, levels: Vec<BTreeMap<Digit, BigRational>>) -> Result<Self> {
        if levels.len() != c.stored_len() {
            return Err(Error::InvalidProbability(format!(
                "expected {} level(s), got {}",
                c.stored_len(),
                levels.len()
            )));
        }
        let mut cleaned = Vec::with_capacity(levels.len());
        for (idx, (probs, level)) in levels.into_iter().zip(c.stored_levels()).enumerate() {
            let index = idx + 1;
            let mut total = BigRational::zero();
            let mut support = BTreeMap::new();
            for (digit, p) in probs {
                if !level.contains(digit) {
                    return Err(Error::InvalidProbability(format!(
                        "level {index}: digit ({}, {}) is not in the digit set",
                        digit.0, digit.1
                    )));
                }
                if p.is_negative() {
                    return Err(Error::InvalidProbability(format!(
                        "level {index}: negative probability {p} at ({}, {})",
                        digit.0, digit.1
                    )));
                }
                total += &p;
                if !p.is_zero() {
                    support.insert(digit, p);
                }
            }
            if !total.is_one() {
                return Err(Error::InvalidProbability(format!(
                    "level {index}: probabilities sum to {total}, expected 1"
                )));
            }
            cleaned.push(support);
        }
        Ok(ProbAssignment { levels: cleaned })
    }

    /// `p_k(w) = 1/r_k` on every level.
    pub fn uniform(c: &Construction) -> Self {
        let levels = c
            .stored_levels()
            .map(|level| {
                let p = BigRational::new(BigInt::one(), BigInt::from(level.len()));
                level.digits().iter().map(|&d| (d, p.clone())).collect()
            })
            .collect();
        ProbAssignment { levels }
    }

    /// Probabilities proportional to integer weights; `weight` receives the
    /// stored level index (0-based) and the digit.
    pub fn from_weights(c: &Construction, weight: impl Fn(usize, Digit) -> u64) -> Result<Self> {
        let mut levels = Vec::with_capacity(c.stored_len());
        for (idx, level) in c.stored_levels().enumerate() {
            let weights: Vec<(Digit, u64)> = level.digits().iter().map(|&d| (d, weight(idx, d))).collect();
            let total: u64 = weights.iter().map(|w| w.1).sum();
            if total == 0 {
                return Err(Error::InvalidProbability(format!("level {}: all weights are zero", idx + 1)));
            }
            levels.push(
                weights
                    .into_iter()
                    .map(|(d, w)| (d, BigRational::new(w.into(), total.into())))
                    .collect(),
            );
        }
        ProbAssignment::new(c, levels)
    }

    /// All mass on the smallest digit of each level.
    pub fn single_atom(c: &Construction) -> Self {
        let levels = c
            .stored_levels()
            .map(|level| {
                let first = *level.digits().iter().next().expect("nonempty");
                BTreeMap::from([(first, BigRational::one())])
            })
            .collect();
        ProbAssignment { levels }
    }

    pub fn stored(&self) -> &[BTreeMap<Digit, BigRational>] {
        &self.levels
    }

    /// `p_k` for level `k` (1-based).
    pub fn at<'a>(&'a self, c: &Construction, k: usize) -> &'a BTreeMap<Digit, BigRational> {
        &self.levels[c.stored_index(k)]
    }

    pub fn prob(&self, c: &Construction, k: usize, digit: Digit) -> BigRational {
        self.at(c, k).get(&digit).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Row marginal `q(j) = sum_i p(i, j)` and column marginal
/// `q^(i) = sum_j p(i, j)`, over the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Marginals {
    pub q: BTreeMap<u32, BigRational>,
    pub qhat: BTreeMap<u32, BigRational>,
}

impl Marginals {
    pub fn row(&self, j: u32) -> BigRational {
        self.q.get(&j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn col(&self, i: u32) -> BigRational {
        self.qhat.get(&i).cloned().unwrap_or_else(BigRational::zero)
    }
}

pub fn marginals(p: &BTreeMap<Digit, BigRational>, level: &Level) -> Marginals {
    let mut q = BTreeMap::new();
    let mut qhat = BTreeMap::new();
    for (&(i, j), mass) in p {
        debug_assert!(level.contains((i, j)));
        if mass.is_zero() {
            continue;
        }
        *q.entry(j).or_insert_with(BigRational::zero) += mass;
        *qhat.entry(i).or_insert_with(BigRational::zero) += mass;
    }
    Marginals { q, qhat }
}

/// `nu([w]) = p_1(w_1) ... p_k(w_k)`.
pub fn cylinder_mass(c: &Construction, p: &ProbAssignment, word: &[Digit]) -> Result<BigRational> {
    let mut mass = BigRational::one();
    for (h, &d) in word.iter().enumerate() {
        let k = h + 1;
        if !c.level_at(k).contains(d) {
            return Err(Error::InvalidWord { position: k });
        }
        mass *= p.prob(c, k, d);
    }
    Ok(mass)
}

/// The constraint `(i_1..i_l, j_1..j_k)` identifying one depth-`k`
/// approximate square.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ApproxSquare {
    pub k: usize,
    pub l: usize,
    pub i_prefix: Vec<u32>,
    pub j_prefix: Vec<u32>,
}

impl ApproxSquare {
    pub fn new(c: &Construction, k: usize, i_prefix: Vec<u32>, j_prefix: Vec<u32>) -> Result<Self> {
        let sq = ApproxSquare {
            k,
            l: c.l_of_k(k).l,
            i_prefix,
            j_prefix,
        };
        sq.check(c)?;
        Ok(sq)
    }

    /// The depth-`k` square containing the points coded by `word`, which
    /// must have length at least `max(k, l(k))`.
    pub fn of_word(c: &Construction, k: usize, word: &[Digit]) -> Result<Self> {
        let l = c.l_of_k(k).l;
        if word.len() < k.max(l) {
            return Err(Error::InvalidSquare(format!(
                "word of length {} is shorter than depth {}",
                word.len(),
                k.max(l)
            )));
        }
        ApproxSquare::new(
            c,
            k,
            word[..l].iter().map(|d| d.0).collect(),
            word[..k].iter().map(|d| d.1).collect(),
        )
    }

    fn check(&self, c: &Construction) -> Result<()> {
        let expected_l = c.l_of_k(self.k).l;
        if self.l != expected_l || self.i_prefix.len() != self.l || self.j_prefix.len() != self.k {
            return Err(Error::InvalidSquare(format!(
                "depth k={} needs {} column digits and {} row digits",
                self.k, expected_l, self.k
            )));
        }
        for h in 1..=self.k.max(self.l) {
            let level = c.level_at(h);
            let stats = c.stats_at(h);
            let ok = match (h <= self.l, h <= self.k) {
                (true, true) => level.contains((self.i_prefix[h - 1], self.j_prefix[h - 1])),
                (true, false) => stats.cols.contains_key(&self.i_prefix[h - 1]),
                (false, true) => stats.rows.contains_key(&self.j_prefix[h - 1]),
                (false, false) => true,
            };
            if !ok {
                return Err(Error::InvalidSquare(format!("no admissible digit at level {h}")));
            }
        }
        Ok(())
    }
}

/// `mu(S)` from the product of probabilities on the fully fixed levels and
/// marginals on the one-sided levels.
pub fn approx_square_mass(c: &Construction, p: &ProbAssignment, sq: &ApproxSquare) -> Result<BigRational> {
    sq.check(c)?;
    let mut mass = BigRational::one();
    for h in 1..=sq.k.max(sq.l) {
        let probs = p.at(c, h);
        let factor = match (h <= sq.l, h <= sq.k) {
            (true, true) => probs
                .get(&(sq.i_prefix[h - 1], sq.j_prefix[h - 1]))
                .cloned()
                .unwrap_or_else(BigRational::zero),
            (true, false) => marginals(probs, c.level_at(h)).col(sq.i_prefix[h - 1]),
            (false, true) => marginals(probs, c.level_at(h)).row(sq.j_prefix[h - 1]),
            (false, false) => BigRational::one(),
        };
        if factor.is_zero() {
            return Ok(factor);
        }
        mass *= factor;
    }
    Ok(mass)
}

/// `-x log x`, with `f(0) = 0`.
pub fn entropy_term(x: f64) -> f64 {
    if x <= 0.0 {
        0.0
    } else {
        -x * x.ln()
    }
}

fn shannon<'a>(masses: impl Iterator<Item = &'a BigRational>) -> f64 {
    masses
        .map(|m| entropy_term(ratio_to_f64(m)))
        .collect::<CompensatedSum>()
        .value()
}

/// Per-level entropies of `p`, `q` and `q^`, prefix-summed.
#[derive(Debug, Clone)]
pub(crate) struct EntropyProfile {
    pub(crate) h_p: LevelSeries,
    pub(crate) h_q: LevelSeries,
    pub(crate) h_qhat: LevelSeries,
}

impl EntropyProfile {
    pub(crate) fn new(c: &Construction, p: &ProbAssignment) -> Self {
        let pre = c.preperiod().len();
        let mut hp = Vec::new();
        let mut hq = Vec::new();
        let mut hqhat = Vec::new();
        for (probs, level) in p.stored().iter().zip(c.stored_levels()) {
            let mg = marginals(probs, level);
            hp.push(shannon(probs.values()));
            hq.push(shannon(mg.q.values()));
            hqhat.push(shannon(mg.qhat.values()));
        }
        EntropyProfile {
            h_p: LevelSeries::new(&hp, pre),
            h_q: LevelSeries::new(&hq, pre),
            h_qhat: LevelSeries::new(&hqhat, pre),
        }
    }

    pub(crate) fn entropy(&self, k: usize, l: usize) -> f64 {
        if l <= k {
            self.h_p.cum(l) + self.h_q.sum(l, k)
        } else {
            self.h_p.cum(k) + self.h_qhat.sum(k, l)
        }
    }
}

/// `H_k(p)` in nats and `H_k / log R_k`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyRecord {
    pub k: usize,
    pub l: usize,
    pub entropy: f64,
    pub ratio: f64,
}

/// The `k`-th entropy: the Shannon entropy of the masses of the depth-`k`
/// approximate squares.
pub fn entropy_k(c: &Construction, p: &ProbAssignment, k: usize) -> EntropyRecord {
    let profile = EntropyProfile::new(c, p);
    let l = c.l_of_k(k).l;
    let entropy = profile.entropy(k, l);
    EntropyRecord {
        k,
        l,
        entropy,
        ratio: if k == 0 { 0.0 } else { entropy / c.log_r(k) },
    }
}

/// Lower and upper entropy dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyDimensions {
    pub lower: f64,
    pub upper: f64,
    /// `H_k / log R_k` for `k <= window`.
    pub convergence: Convergence,
}

/// Limit of `H_k / log R_k`.
pub fn entropy_limit(c: &Construction, p: &ProbAssignment) -> f64 {
    let profile = EntropyProfile::new(c, p);
    scale_limit(
        c,
        profile.h_p.period_mean(),
        profile.h_q.period_mean(),
        profile.h_qhat.period_mean(),
    )
}

pub fn entropy_dimensions(c: &Construction, p: &ProbAssignment, window: usize) -> Result<EntropyDimensions> {
    check_window(c, window)?;
    let profile = EntropyProfile::new(c, p);
    let table = c.l_table(window);
    let partials = (1..=window)
        .map(|k| profile.entropy(k, table[k]) / c.log_r(k))
        .collect();
    let limit = scale_limit(
        c,
        profile.h_p.period_mean(),
        profile.h_q.period_mean(),
        profile.h_qhat.period_mean(),
    );
    Ok(EntropyDimensions {
        lower: limit,
        upper: limit,
        convergence: Convergence::from_partials(partials),
    })
}

/// Frequency separation: fraction of centred levels in the period.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FscReport {
    pub holds: bool,
    pub frequency: BigRational,
}

/// Boundary separation: per-side frequency of levels avoiding that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BscReport {
    pub holds: bool,
    pub left: BigRational,
    pub right: BigRational,
    pub bottom: BigRational,
    pub top: BigRational,
}

/// Measure separation: the largest mass any level puts on a boundary row or
/// column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MscReport {
    pub holds: bool,
    pub max_boundary_marginal: BigRational,
}

fn frequency(c: &Construction, pred: impl Fn(&Level) -> bool) -> BigRational {
    let hits = c.period().iter().filter(|l| pred(l)).count();
    BigRational::new(BigInt::from(hits), BigInt::from(c.period().len()))
}

fn avoids(level: &Level, pred: impl Fn(Digit) -> bool) -> bool {
    !level.digits().iter().any(|&d| pred(d))
}

pub fn check_fsc(c: &Construction) -> FscReport {
    let frequency = frequency(c, |l| {
        avoids(l, |(i, j)| i == 0 || i == l.n() - 1 || j == 0 || j == l.m() - 1)
    });
    FscReport {
        holds: frequency.is_positive(),
        frequency,
    }
}

pub fn check_bsc(c: &Construction) -> BscReport {
    let left = frequency(c, |l| avoids(l, |(i, _)| i == 0));
    let right = frequency(c, |l| avoids(l, |(i, _)| i == l.n() - 1));
    let bottom = frequency(c, |l| avoids(l, |(_, j)| j == 0));
    let top = frequency(c, |l| avoids(l, |(_, j)| j == l.m() - 1));
    BscReport {
        holds: [&left, &right, &bottom, &top].iter().all(|f| f.is_positive()),
        left,
        right,
        bottom,
        top,
    }
}

/// Sup over every stored level (hence over all `k`) of the four boundary
/// marginals; holds iff the sup is below 1.
pub fn check_msc(c: &Construction, p: &ProbAssignment) -> MscReport {
    let mut max = BigRational::zero();
    for (probs, level) in p.stored().iter().zip(c.stored_levels()) {
        let mg = marginals(probs, level);
        for v in [mg.row(0), mg.row(level.m() - 1), mg.col(0), mg.col(level.n() - 1)] {
            if v > max {
                max = v;
            }
        }
    }
    MscReport {
        holds: max < BigRational::one(),
        max_boundary_marginal: max,
    }
}

/// The assignment `p_k = 1/r_k`, defined when every level has `n >= m` and
/// equal nonzero row counts. Its Hausdorff and packing dimensions then
/// coincide with the set's.
pub fn uniform_fiber_measure(c: &Construction) -> Result<ProbAssignment> {
    for (idx, (level, stats)) in c.stored_levels().zip(c.stored_stats()).enumerate() {
        if level.n() < level.m() {
            return Err(Error::AspectOrderViolated { level: idx + 1 });
        }
        if stats.r_minus != stats.r_plus {
            return Err(Error::FiberCountsNotConstant { level: idx + 1 });
        }
    }
    Ok(ProbAssignment::uniform(c))
}

/// Whether the Hausdorff/packing values are backed by a separation
/// condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Validity {
    Unconditional,
    Conditional,
}

/// Present when `p` is the uniform-fibre assignment of the construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FibrePath {
    /// Boundary separation holds, so the equality with the set's Hausdorff
    /// and packing dimensions is backed by a theorem.
    pub separated: bool,
    /// Hausdorff and packing dimension of the set along this path.
    pub set_dimension: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MeasureDimensions {
    pub hausdorff: f64,
    pub packing: f64,
    pub entropy: EntropyDimensions,
    pub fsc: FscReport,
    pub bsc: BscReport,
    pub msc: MscReport,
    pub validity: Validity,
    pub fibre_path: Option<FibrePath>,
}

pub fn hausdorff_packing_dims(c: &Construction, p: &ProbAssignment, window: usize) -> Result<MeasureDimensions> {
    let entropy = entropy_dimensions(c, p, window)?;
    let fsc = check_fsc(c);
    let bsc = check_bsc(c);
    let msc = check_msc(c, p);
    let validity = if fsc.holds || bsc.holds || msc.holds {
        Validity::Unconditional
    } else {
        Validity::Conditional
    };
    let fibre_path = match uniform_fiber_measure(c) {
        Ok(q) if &q == p => Some(FibrePath {
            separated: bsc.holds,
            set_dimension: crate::dimension::box_limit(c),
        }),
        _ => None,
    };
    Ok(MeasureDimensions {
        hausdorff: entropy.lower,
        packing: entropy.upper,
        entropy,
        fsc,
        bsc,
        msc,
        validity,
        fibre_path,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn marginals_examples() {
        let c = corpus::bedford_mcmullen();
        let p = ProbAssignment::uniform(&c);
        let mg = marginals(p.at(&c, 1), c.level_at(1));
        assert_eq!(mg.q, BTreeMap::from([(0, rat(2, 3)), (1, rat(1, 3))]));
        assert_eq!(mg.qhat, BTreeMap::from([(0, rat(1, 3)), (1, rat(1, 3)), (2, rat(1, 3))]));

        let atom = BTreeMap::from([((0, 0), rat(1, 1))]);
        let mg = marginals(&atom, c.level_at(1));
        assert_eq!(mg.q, BTreeMap::from([(0, rat(1, 1))]));
        assert_eq!(mg.qhat, BTreeMap::from([(0, rat(1, 1))]));
    }

    #[test]
    fn cylinder_mass_examples() {
        let c = corpus::bedford_mcmullen();
        let p = ProbAssignment::uniform(&c);
        assert_eq!(cylinder_mass(&c, &p, &[(0, 0), (1, 1)]).unwrap(), rat(1, 9));
        assert_eq!(cylinder_mass(&c, &p, &[]).unwrap(), rat(1, 1));
        assert_eq!(
            cylinder_mass(&c, &p, &[(0, 0), (0, 1)]),
            Err(Error::InvalidWord { position: 2 })
        );
    }

    #[test]
    fn approx_square_mass_examples() {
        let c = corpus::bedford_mcmullen();
        let p = ProbAssignment::uniform(&c);
        let sq = ApproxSquare::new(&c, 5, vec![0, 1, 2, 0], vec![0, 1, 0, 0, 0]).unwrap();
        assert_eq!(approx_square_mass(&c, &p, &sq).unwrap(), rat(2, 243));
        let sq = ApproxSquare::new(&c, 2, vec![1, 2], vec![1, 0]).unwrap();
        assert_eq!(approx_square_mass(&c, &p, &sq).unwrap(), rat(1, 9));
        // (0, 1) is not a digit
        assert!(ApproxSquare::new(&c, 2, vec![0, 2], vec![1, 0]).is_err());
        assert!(ApproxSquare::new(&c, 2, vec![0], vec![0, 0]).is_err());

        let tall = corpus::tall();
        let p = ProbAssignment::uniform(&tall);
        let sq = ApproxSquare::new(&tall, 1, vec![0, 1], vec![2]).unwrap();
        // p_1(0, 2) * q^_2(1) = 1/3 * 1/3
        assert_eq!(approx_square_mass(&tall, &p, &sq).unwrap(), rat(1, 9));
        let sq = ApproxSquare::new(&tall, 1, vec![0, 0], vec![2]).unwrap();
        assert_eq!(approx_square_mass(&tall, &p, &sq).unwrap(), rat(2, 9));
    }

    #[test]
    fn entropy_examples() {
        let c = corpus::bedford_mcmullen();
        let p = ProbAssignment::uniform(&c);
        let ln3 = 3f64.ln();
        let ln2 = 2f64.ln();
        let e2 = entropy_k(&c, &p, 2);
        assert!((e2.entropy - 2.0 * ln3).abs() < 1e-12);
        assert!((e2.ratio - ln3 / ln2).abs() < 1e-12);
        let e5 = entropy_k(&c, &p, 5);
        let expected = 4.0 * ln3 + (ln3 - 2.0 / 3.0 * ln2);
        assert!((e5.entropy - expected).abs() < 1e-12);
        assert!((e5.entropy - 5.0309).abs() < 1e-4);
        assert!((e5.ratio - expected / (5.0 * ln2)).abs() < 1e-12);
        assert!((e5.ratio - 1.45163).abs() < 1e-5);
        let atom = ProbAssignment::single_atom(&c);
        assert_eq!(entropy_k(&c, &atom, 7).entropy, 0.0);
    }

    #[test]
    fn entropy_dimension_examples() {
        let c = corpus::bedford_mcmullen();
        let (ln2, ln3) = (2f64.ln(), 3f64.ln());
        let lambda = ln2 / ln3;
        let closed = (lambda * ln3 + (1.0 - lambda) * (ln3 - 2.0 / 3.0 * ln2)) / ln2;
        let d = entropy_dimensions(&c, &ProbAssignment::uniform(&c), 1000).unwrap();
        assert!((d.lower - closed).abs() < 1e-12 && (d.upper - closed).abs() < 1e-12);
        assert!((closed - 1.33890).abs() < 1e-4);

        let full = corpus::full_grid();
        let d = entropy_dimensions(&full, &ProbAssignment::uniform(&full), 100).unwrap();
        assert!((d.lower - 2.0).abs() < 1e-12 && (d.upper - 2.0).abs() < 1e-12);

        let d = entropy_dimensions(&c, &ProbAssignment::single_atom(&c), 100).unwrap();
        assert_eq!((d.lower, d.upper), (0.0, 0.0));
    }

    #[test]
    fn separation_examples() {
        let c = corpus::bedford_mcmullen();
        let fsc = check_fsc(&c);
        assert!(!fsc.holds && fsc.frequency.is_zero());
        let bsc = check_bsc(&c);
        assert!(!bsc.holds);
        assert!([bsc.left, bsc.right, bsc.bottom, bsc.top].iter().all(Zero::is_zero));

        let centred = Construction::constant(Level::new(5, 5, [(2, 2), (2, 3)]).unwrap());
        assert_eq!(check_fsc(&centred).frequency, rat(1, 1));
        let half = Construction::new(
            vec![],
            vec![
                Level::new(5, 5, [(2, 2), (2, 3)]).unwrap(),
                Level::new(5, 5, [(0, 2), (2, 3)]).unwrap(),
            ],
        )
        .unwrap();
        assert_eq!(check_fsc(&half).frequency, rat(1, 2));
        assert!(check_fsc(&half).holds);

        let top = check_bsc(&Construction::constant(Level::new(3, 3, [(1, 1), (1, 2)]).unwrap()));
        assert_eq!(
            (top.left, top.right, top.bottom, top.top.clone()),
            (rat(1, 1), rat(1, 1), rat(1, 1), rat(0, 1))
        );
        assert!(!top.holds);
        assert!(check_bsc(&Construction::constant(Level::new(4, 4, [(1, 1), (2, 2)]).unwrap())).holds);
    }

    #[test]
    fn msc_examples() {
        let c = corpus::bedford_mcmullen();
        let msc = check_msc(&c, &ProbAssignment::uniform(&c));
        assert!(msc.holds);
        assert_eq!(msc.max_boundary_marginal, rat(2, 3));

        let row0 = ProbAssignment::from_weights(&c, |_, (_, j)| u64::from(j == 0)).unwrap();
        let msc = check_msc(&c, &row0);
        assert!(!msc.holds);
        assert_eq!(msc.max_boundary_marginal, rat(1, 1));
        let dims = hausdorff_packing_dims(&c, &row0, 200).unwrap();
        assert_eq!(dims.validity, Validity::Conditional);

        let inner = Construction::constant(Level::new(4, 4, [(1, 1), (2, 2)]).unwrap());
        let msc = check_msc(&inner, &ProbAssignment::uniform(&inner));
        assert!(msc.holds && msc.max_boundary_marginal.is_zero());
    }

    #[test]
    fn uniform_fibre_examples() {
        let unif = corpus::uniform_fibres();
        let p = uniform_fiber_measure(&unif).unwrap();
        assert_eq!(p, ProbAssignment::uniform(&unif));
        let dims = hausdorff_packing_dims(&unif, &p, 1000).unwrap();
        let expected = 2f64.ln() / 3f64.ln() + 1.0;
        assert!((dims.hausdorff - expected).abs() < 1e-12);
        assert!((dims.packing - expected).abs() < 1e-12);
        let path = dims.fibre_path.unwrap();
        assert!((path.set_dimension - expected).abs() < 1e-12);
        assert!(!path.separated);

        assert_eq!(
            uniform_fiber_measure(&corpus::bedford_mcmullen()),
            Err(Error::FiberCountsNotConstant { level: 1 })
        );
        assert_eq!(
            uniform_fiber_measure(&corpus::tall()),
            Err(Error::AspectOrderViolated { level: 1 })
        );
    }

    #[test]
    fn probability_validation() {
        let c = corpus::bedford_mcmullen();
        let bad = vec![BTreeMap::from([((0, 0), rat(1, 2)), ((1, 1), rat(3, 8))])];
        let err = ProbAssignment::new(&c, bad).unwrap_err();
        assert!(err.to_string().contains("level 1") && err.to_string().contains("7/8"));
        let off = vec![BTreeMap::from([((0, 1), rat(1, 1))])];
        assert!(ProbAssignment::new(&c, off).is_err());
        let neg = vec![BTreeMap::from([((0, 0), rat(3, 2)), ((1, 1), rat(-1, 2))])];
        assert!(ProbAssignment::new(&c, neg).is_err());
    }

    #[test]
    fn measure_dimensions_for_carpet() {
        let c = corpus::bedford_mcmullen();
        let dims = hausdorff_packing_dims(&c, &ProbAssignment::uniform(&c), 2000).unwrap();
        assert!((dims.hausdorff - 1.33890).abs() < 1e-4);
        assert_eq!(dims.hausdorff, dims.packing);
        assert_eq!(dims.validity, Validity::Unconditional);
        assert!(dims.fibre_path.is_none());
    }
}
