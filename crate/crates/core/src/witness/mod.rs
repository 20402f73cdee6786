//! Rational zeros of `H_f` and what they certify.
//!
//! A zero of `H_f` with nonzero pairwise-distinct coordinates `x` yields the
//! remainder `r = f mod Π(T - x_i)` of degree at most `k - 1`, and the word of
//! `f` agrees with the codeword of `r` at every `x_i`. That is a certificate
//! that `f` does not generate a deep hole.

mod artin_schreier;
mod census;
mod search;
mod singular;

use thiserror::Error;

use crate::rscode::RsError;
use crate::symmetric::SymmetricError;

pub use artin_schreier::{artin_schreier_witness, trace_zero_elements, ASWitness};
pub use census::{count_points, PointCensus};
pub use search::{certificate_from_point, search_good_point, SearchOptions, SearchOutcome, WitnessCert};
pub use singular::{
    flag_linear_families, scan_infinity_singular, scan_rational_singular_points, set_partitions,
    LinearFamily, SingularPoint, EXHAUSTIVE_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("invalid dimensions: {0}")]
    InvalidDimensions(String),
    #[error("point is not a witness: {0}")]
    NotAWitness(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(&'static str),
    #[error("only {found} nonzero trace-zero elements, need {needed}")]
    InsufficientTraceZeroElements { needed: usize, found: usize },
    #[error("exhaustive scan over q^(k+1) = {size} points exceeds the limit {limit}")]
    TooLargeForExhaustive { size: u128, limit: u64 },
    #[error(transparent)]
    Code(#[from] RsError),
    #[error(transparent)]
    Symmetric(#[from] SymmetricError),
}

/// Number of distinct values among the coordinates.
pub fn distinct_count<T: Ord + Copy>(x: &[T]) -> usize {
    let mut v = x.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len()
}
