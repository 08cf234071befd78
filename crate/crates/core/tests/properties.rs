//! Invariants over seeded random periodic constructions.

use moran::corpus;
use moran::counting::{count_approx_squares, n_minus, n_plus_count};
use moran::dimension::set_dimensions;
use moran::measure::{hausdorff_packing_dims, marginals, ProbAssignment};
use moran::{Construction, RunReport, SpecFile};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use proptest::prelude::*;

fn construction() -> impl Strategy<Value = Construction> {
    (any::<u64>(), 0u64..1000).prop_map(|(seed, index)| corpus::random_periodic(seed, index, 3, 5))
}

fn weighted(c: &Construction, salt: u64) -> ProbAssignment {
    ProbAssignment::from_weights(c, |idx, (i, j)| {
        (u64::from(i) * 7 + u64::from(j) * 13 + idx as u64 * 5 + salt) % 6
    })
    .unwrap_or_else(|_| ProbAssignment::uniform(c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn scales_bracket(c in construction(), k in 1usize..150) {
        let l = c.l_of_k(k).l;
        let rk = c.m_product(k);
        prop_assert!(c.n_product(l) >= rk);
        prop_assert!(l == 0 || c.n_product(l - 1) < rk);
    }

    #[test]
    fn nested_counts_sandwich_and_superadd(c in construction(), k in 0usize..10, a in 1usize..8, b in 1usize..8) {
        let (k1, k2) = (k + a, k + a + b);
        let lo = n_minus(&c, k, k2).unwrap().exact.unwrap();
        let hi = n_plus_count(&c, k, k2).unwrap().exact.unwrap();
        prop_assert!(lo <= hi);
        let first = n_minus(&c, k, k1).unwrap().exact.unwrap();
        let second = n_minus(&c, k1, k2).unwrap().exact.unwrap();
        prop_assert!(lo >= first * second);
        // nested counts never exceed the ratio of totals
        if k >= 1 {
            let outer = count_approx_squares(&c, k2).exact.unwrap();
            let inner = count_approx_squares(&c, k).exact.unwrap();
            prop_assert!(&lo * &inner <= outer);
            prop_assert!(&hi * &inner >= count_approx_squares(&c, k2).exact.unwrap());
        }
    }

    #[test]
    fn counts_are_positive(c in construction(), k in 1usize..40) {
        let n = count_approx_squares(&c, k);
        prop_assert!(n.log_value >= 0.0);
        if let Some(e) = n.exact {
            prop_assert!(e >= BigUint::one());
            prop_assert!((e.to_f64().unwrap().ln() - n.log_value).abs() <= 1e-9 * n.log_value.max(1.0));
        }
    }

    #[test]
    fn dimension_chain(c in construction()) {
        let d = set_dimensions(&c, 400, 60).unwrap();
        prop_assert!(d.chain_holds(1e-9), "{:?}", (d.lower_dim, d.lower_box, d.upper_box, d.assouad));
        for p in [ProbAssignment::uniform(&c), weighted(&c, 1)] {
            let m = hausdorff_packing_dims(&c, &p, 400).unwrap();
            prop_assert!(m.hausdorff <= m.packing + 1e-12);
            prop_assert!(m.packing <= d.upper_box + 1e-6);
            prop_assert!(m.hausdorff >= -1e-12);
        }
    }

    #[test]
    fn marginals_are_distributions(c in construction(), salt in 0u64..6) {
        let p = weighted(&c, salt);
        for (probs, level) in p.stored().iter().zip(c.stored_levels()) {
            let mg = marginals(probs, level);
            let q: BigRational = mg.q.values().cloned().sum();
            let qhat: BigRational = mg.qhat.values().cloned().sum();
            prop_assert_eq!(q, BigRational::one());
            prop_assert_eq!(qhat, BigRational::one());
            prop_assert!(mg.q.values().all(|v| *v > BigRational::zero()));
        }
    }

    #[test]
    fn spec_files_round_trip(c in construction(), salt in 0u64..6) {
        let p = weighted(&c, salt);
        let spec = SpecFile::from_construction(&c, Some(&p));
        let back = SpecFile::parse(&spec.to_json()).unwrap();
        let (c2, p2) = back.build().unwrap();
        prop_assert_eq!(c2.preperiod(), c.preperiod());
        prop_assert_eq!(c2.period(), c.period());
        prop_assert_eq!(p2.unwrap(), p);
    }

    #[test]
    fn reports_round_trip(c in construction()) {
        let mut report = RunReport::new(&c);
        report.dimensions = Some((&set_dimensions(&c, 200, 30).unwrap()).into());
        let text = report.to_json();
        let back = RunReport::from_json(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        prop_assert_eq!(back, report);
    }
}
