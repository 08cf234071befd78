//! Brute-force checks that do not go through the product formulas: word
//! enumeration on prefractals, a census of approximate squares, direct mass
//! and entropy summation, and seeded local-dimension sampling.

mod census;
mod geometry;
mod mass;
mod sampling;
mod verify;

pub use census::{census_approx_squares, gamma_census, SquareKey};
pub use geometry::{box_count, enumerate_rects, render_ppm, Rect};
pub use mass::{brute_entropy, brute_measure, dyadic_entropy, dyadic_entropy_bound, DyadicEntropy};
pub use sampling::{local_dim_samples, LocalDimSample};
pub use verify::{verify_all, CheckResult, VerifyOptions, VerifyReport};

use std::collections::HashMap;
use std::collections::hash_map::DefaultHasher;
use std::hash::BuildHasherDefault;

use crate::error::{Error, Result};

/// Default cap on the number of items any enumeration may touch.
pub const DEFAULT_GUARD: u128 = 10_000_000;

/// Hash map with a fixed hasher, so iteration order depends only on the
/// insertion sequence.
pub(crate) type StableMap<K, V> = HashMap<K, V, BuildHasherDefault<DefaultHasher>>;

pub(crate) fn check_guard(needed: u128, guard: u128) -> Result<()> {
    if needed > guard {
        Err(Error::GuardExceeded { needed, guard })
    } else {
        Ok(())
    }
}
