//! Exact-arithmetic workbench for deep holes of standard Reed–Solomon codes.
//!
//! A word generated by `f = T^{k+d} + f_{d-1} T^{k+d-1} + ... + f_0 T^k` is not
//! a deep hole of the code `C(F_q^*, k)` exactly when the symmetric polynomial
//! `H_f` (the `T^k` coefficient of `f mod (T - X_1)...(T - X_{k+1})`) has an
//! `F_q`-rational zero with nonzero, pairwise-distinct coordinates. This crate
//! builds `H_f` in the elementary-symmetric basis, searches for such zeros,
//! checks the answers against brute-force distance computations, scans
//! singular points, and evaluates the explicit point-count bounds exactly.
//!
//! Modules, bottom-up:
//! - [`gf`]: finite fields `F_{p^s}` with canonical integer element reps.
//! - [`poly`]: dense univariate and sparse multivariate polynomials.
//! - [`symmetric`]: `H_d`, `H_f`, their evaluation and gradients.
//! - [`rscode`]: the standard Reed–Solomon code and brute-force distances.
//! - [`witness`]: witness search, certificates, Artin–Schreier witnesses and
//!   singular-point scans.
//! - [`bounds`]: exact evaluation of the point-count bounds and thresholds.

pub mod bounds;
pub mod gf;
pub mod poly;
pub mod rscode;
pub mod symmetric;
pub mod witness;

pub use bounds::{BoundReport, Epsilon, Surd, Verdict};
pub use gf::{Felt, Field, GfError};
pub use poly::{MVPoly, PolyError, UPoly};
pub use rscode::{RSCode, RsError, Word};
pub use symmetric::{SymPoly, SymmetricError, TopPoly};
pub use witness::{ASWitness, SearchOptions, SearchOutcome, WitnessCert, WitnessError};
