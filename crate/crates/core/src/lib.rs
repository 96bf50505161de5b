//! Positive semidefinite approximation of Hermitian matrices through a
//! modified `LDL^H` factorization.
//!
//! [`decompose`] computes `P^T L D L^H P`, a PSD (or PD) matrix close to the
//! input while respecting bounds on its diagonal and on the pivots in `D`.
//! [`assemble`] forms that matrix in `O(n^2)`, and [`diagnose`] reports the
//! error, a-priori bounds, and a definiteness certificate.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analyze;
pub mod batch;
pub mod bounds;
pub mod decomposition;
pub mod error;
pub mod factorize;
pub mod matrix;
pub mod oracle;
pub mod permutation;
pub mod pivot;
pub mod reconstruct;
pub mod scalar;
pub mod testgen;

pub use analyze::{
    condition_bounds, diagnose, error_bounds, error_norms, ldl_condition_interval,
    psd_certificate, Definiteness, DiagnosticsReport,
};
pub use bounds::{default_epsilon, validate_bounds, BoundsConfig};
pub use decomposition::{ModifiedDecomposition, PivotStrategy};
pub use error::{Error, Result};
pub use factorize::{decompose, FactorizeWorkspace};
pub use matrix::{HermitianMatrix, Matrix};
pub use pivot::{minimal_change, PivotChoice, PivotState};
pub use reconstruct::{assemble, compose_explicit, determinant, solve_with_decomposition};
pub use scalar::Scalar;
