//! Brute-force verification of the counting and measure formulas, including
//! a deliberately broken nested counter to show what a failure looks like.

use moran::construction::Construction;
use moran::corpus;
use moran::counting::{nested_count, Bound, LogCount, NestedCounter, NestingCase, SixCaseCounter};
use moran::measure::ProbAssignment;
use moran::oracle::{verify_all, VerifyOptions};

/// Returns the plus count where the minus count is asked for, in one case.
struct Broken;

impl NestedCounter for Broken {
    fn nested(&self, c: &Construction, k: usize, k2: usize, bound: Bound) -> moran::Result<(LogCount, NestingCase)> {
        let (count, case) = nested_count(c, k, k2, bound)?;
        if case == NestingCase::LKLK {
            return Ok((nested_count(c, k, k2, Bound::Plus)?.0, case));
        }
        Ok((count, case))
    }
}

fn main() -> moran::Result<()> {
    let opts = VerifyOptions::default();
    for c in corpus::all() {
        let p = ProbAssignment::uniform(&c);
        let report = verify_all(&c, Some(&p), &opts, &SixCaseCounter)?;
        let summary: Vec<String> = report
            .checks
            .iter()
            .map(|r| format!("{} {}/{}", r.name, if r.passed { "ok" } else { "FAIL" }, r.cases))
            .collect();
        println!("{}: {}", c.describe(), summary.join(", "));
    }

    let carpet = corpus::bedford_mcmullen();
    let opts = VerifyOptions {
        pairs_depth: 8,
        ..VerifyOptions::default()
    };
    let report = verify_all(&carpet, None, &opts, &Broken)?;
    let gamma = report.check("gamma").expect("gamma check runs");
    println!();
    println!("broken counter: gamma passed = {}", gamma.passed);
    for failure in gamma.failures.iter().take(3) {
        println!("  {failure}");
    }
    Ok(())
}
