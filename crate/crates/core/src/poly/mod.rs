//! Univariate and sparse multivariate polynomials over a [`Field`](crate::gf::Field).

mod multi;
mod uni;

use thiserror::Error;

pub use multi::{elementary_symmetric, mv_eval, mv_partial, MVPoly, Monomial};
pub use uni::{uni_distinct_roots, uni_rem, UPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("divisor must be monic of degree at least one")]
    NonMonicDivisor,
    #[error("the zero polynomial has every element as a root")]
    ZeroPolynomial,
    #[error("expected {expected} coordinates, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("index {index} out of range (bound {bound})")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("expansion exceeds the cap of {cap} terms")]
    TooManyTerms { cap: usize },
}
