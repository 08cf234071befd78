use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construction::Construction;
use crate::counting::{count_approx_squares, Bound, LogCount, NestedCounter};
use crate::error::Result;
use crate::measure::{approx_square_mass, entropy_k, ProbAssignment};

use super::census::census_approx_squares;
use super::mass::{brute_entropy, square_masses};
use super::{gamma_census, DEFAULT_GUARD};

/// Depth limits for [`verify_all`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Census, measure, entropy and superadditivity depth.
    pub max_depth: usize,
    /// Largest `k'` in the nested-count census.
    pub pairs_depth: usize,
    pub guard: u128,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_depth: 6,
            pairs_depth: 5,
            guard: DEFAULT_GUARD,
        }
    }
}

/// Outcome of one family of checks. `failures` lists the offending cases
/// with both values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckResult {
    fn new(name: &str, cases: usize, failures: Vec<String>) -> Self {
        CheckResult {
            name: name.to_string(),
            passed: failures.is_empty(),
            cases,
            failures,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

fn exact(count: &LogCount) -> Option<BigUint> {
    count.exact.clone()
}

/// Entropy checks stop here; deeper levels add no new code paths.
const ENTROPY_DEPTH: usize = 8;
const MEASURE_DEPTH: usize = 7;
const ENTROPY_TOLERANCE: f64 = 1e-12;

fn census_check(c: &Construction, opts: &VerifyOptions) -> Result<CheckResult> {
    let mut failures = Vec::new();
    for k in 1..=opts.max_depth {
        let census = census_approx_squares(c, k, opts.guard)?;
        let formula = count_approx_squares(c, k);
        if exact(&formula) != Some(BigUint::from(census)) {
            failures.push(format!("k={k}: census {census}, formula {formula}"));
        }
    }
    Ok(CheckResult::new("census", opts.max_depth, failures))
}

fn gamma_check(c: &Construction, opts: &VerifyOptions, counter: &dyn NestedCounter) -> Result<CheckResult> {
    let pairs: Vec<(usize, usize)> = (1..opts.pairs_depth)
        .flat_map(|k| (k + 1..=opts.pairs_depth).map(move |k2| (k, k2)))
        .collect();
    let outcomes: Vec<Result<Vec<String>>> = pairs
        .par_iter()
        .map(|&(k, k2)| {
            let (min, max) = gamma_census(c, k, k2, opts.guard)?;
            let mut bad = Vec::new();
            for (bound, census) in [(Bound::Minus, min), (Bound::Plus, max)] {
                let (count, case) = counter.nested(c, k, k2, bound)?;
                if exact(&count) != Some(BigUint::from(census)) {
                    bad.push(format!(
                        "k={k} k'={k2} case {case} {bound:?}: census {census}, formula {count}"
                    ));
                }
            }
            Ok(bad)
        })
        .collect();
    let mut failures = Vec::new();
    for outcome in outcomes {
        failures.extend(outcome?);
    }
    Ok(CheckResult::new("gamma", pairs.len(), failures))
}

fn measure_check(c: &Construction, p: &ProbAssignment, opts: &VerifyOptions) -> Result<CheckResult> {
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 1..=opts.max_depth.min(MEASURE_DEPTH) {
        for (key, brute) in square_masses(c, p, k, opts.guard)? {
            cases += 1;
            let sq = key.to_square(c, k);
            let formula = approx_square_mass(c, p, &sq)?;
            if formula != brute {
                failures.push(format!(
                    "k={k} columns {:?} rows {:?}: summed {brute}, formula {formula}",
                    sq.i_prefix, sq.j_prefix
                ));
            }
        }
    }
    Ok(CheckResult::new("measure", cases, failures))
}

fn entropy_check(c: &Construction, p: &ProbAssignment, opts: &VerifyOptions) -> Result<CheckResult> {
    let depth = opts.max_depth.min(ENTROPY_DEPTH);
    let mut failures = Vec::new();
    for k in 1..=depth {
        let brute = brute_entropy(c, p, k, opts.guard)?;
        let formula = entropy_k(c, p, k).entropy;
        if (brute - formula).abs() > ENTROPY_TOLERANCE {
            failures.push(format!("k={k}: summed {brute:.15}, formula {formula:.15}"));
        }
    }
    Ok(CheckResult::new("entropy", depth, failures))
}

fn superadditivity_check(c: &Construction, depth: usize, counter: &dyn NestedCounter) -> Result<CheckResult> {
    let mut table = vec![vec![None; depth + 1]; depth + 1];
    for (k, row) in table.iter_mut().enumerate() {
        for (k2, cell) in row.iter_mut().enumerate().skip(k + 1) {
            *cell = exact(&counter.nested(c, k, k2, Bound::Minus)?.0);
        }
    }
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 1..=depth {
        for k1 in k + 1..=depth {
            for k2 in k1 + 1..=depth {
                cases += 1;
                let (outer, a, b) = (&table[k][k2], &table[k][k1], &table[k1][k2]);
                match (outer, a, b) {
                    (Some(outer), Some(a), Some(b)) if *outer >= a * b => {}
                    _ => failures.push(format!(
                        "k={k} k'={k1} k''={k2}: N-={outer:?} < {a:?} * {b:?}"
                    )),
                }
            }
        }
    }
    Ok(CheckResult::new("superadditivity", cases, failures))
}

/// Runs every brute-force equality against `counter` (the six-case formulas
/// in production, a faulty stand-in in tests).
pub fn verify_all(
    c: &Construction,
    p: Option<&ProbAssignment>,
    opts: &VerifyOptions,
    counter: &dyn NestedCounter,
) -> Result<VerifyReport> {
    let mut checks = vec![census_check(c, opts)?, gamma_check(c, opts, counter)?];
    if let Some(p) = p {
        checks.push(measure_check(c, p, opts)?);
        checks.push(entropy_check(c, p, opts)?);
    }
    checks.push(superadditivity_check(c, opts.max_depth, counter)?);
    Ok(VerifyReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::counting::{nested_count, NestingCase, SixCaseCounter};
    use crate::error::Error;

    /// Swaps in the plus statistic for `N-` in one case.
    struct Corrupted(NestingCase);

    impl NestedCounter for Corrupted {
        fn nested(&self, c: &Construction, k: usize, k2: usize, bound: Bound) -> Result<(LogCount, NestingCase)> {
            let (count, case) = nested_count(c, k, k2, bound)?;
            if case == self.0 && bound == Bound::Minus {
                return Ok((nested_count(c, k, k2, Bound::Plus)?.0, case));
            }
            Ok((count, case))
        }
    }

    #[test]
    fn carpet_passes() {
        let c = corpus::bedford_mcmullen();
        let p = ProbAssignment::uniform(&c);
        let report = verify_all(&c, Some(&p), &VerifyOptions::default(), &SixCaseCounter).unwrap();
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.checks.len(), 5);
    }

    #[test]
    fn full_grid_passes() {
        let c = corpus::full_grid();
        let report = verify_all(&c, None, &VerifyOptions::default(), &SixCaseCounter).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn corrupted_case_is_reported() {
        let c = corpus::bedford_mcmullen();
        let opts = VerifyOptions {
            max_depth: 6,
            pairs_depth: 8,
            guard: DEFAULT_GUARD,
        };
        let report = verify_all(&c, None, &opts, &Corrupted(NestingCase::LKLK)).unwrap();
        let gamma = report.check("gamma").unwrap();
        assert!(!gamma.passed);
        assert!(gamma.failures.iter().any(|f| f.contains("k=5 k'=8 case LKLK")), "{:?}", gamma.failures);
    }

    #[test]
    fn guard_propagates() {
        let c = corpus::full_grid();
        let opts = VerifyOptions {
            max_depth: 10,
            pairs_depth: 3,
            guard: 1000,
        };
        assert!(matches!(
            verify_all(&c, None, &opts, &SixCaseCounter),
            Err(Error::GuardExceeded { .. })
        ));
    }
}
