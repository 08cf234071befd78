//! Dimensions of planar self-affine Moran sets and measures.
//!
//! A [`Construction`] is an eventually periodic sequence of grid levels.
//! From it the crate computes approximate-square counts, the box, packing,
//! lower and Assouad dimensions of the limit set, and entropy, Hausdorff and
//! packing dimensions of product measures. The [`oracle`] module re-derives
//! the counting and measure identities by brute-force enumeration.

pub mod cli;
pub mod construction;
pub mod corpus;
pub mod counting;
pub mod dimension;
pub mod error;
pub mod measure;
pub mod oracle;
pub mod report;
mod series;
pub mod spec_file;

pub use construction::{Construction, Digit, Level, LevelSpec};
pub use counting::{count_approx_squares, digit_stats, n_minus, n_plus_count, Bound, DigitStats, LogCount};
pub use dimension::{set_dimensions, DimensionReport};
pub use error::{Error, Result};
pub use measure::{entropy_dimensions, entropy_k, hausdorff_packing_dims, ApproxSquare, ProbAssignment};
pub use report::RunReport;
pub use spec_file::SpecFile;
