//! Dense symmetric linear algebra over two scalar types.
//!
//! [`SymMatrix<Rational>`] carries every certificate and is handled by the
//! exact routines in [`exact`]. [`SymMatrix<f64>`] feeds the Jacobi
//! eigensolver in [`eigen`]. Mixing the two is a type error, so there is no
//! runtime backing check.

pub mod eigen;
pub mod exact;
mod matrix;

pub use eigen::{eigen_sym, lambda_max, lambda_min, Eigen, DEFAULT_EIGEN_TOL, EIGEN_DIM_CAP};
pub use exact::{
    inverse, nullspace_basis, nullspace_basis_sym, pseudo_inverse, pseudo_inverse_general,
    psd_check_exact, rank, rank_exact, rref, schur_psd_check, LdlFactor, PsdWitness, SchurFailure,
    SchurReport, WitnessSummary,
};
pub use matrix::{Matrix, Scalar, SymMatrix};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("block split {split} is out of range for dimension {n}")]
    BadBlockSizes { split: usize, n: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("dimension {n} exceeds the cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("tolerance must be positive and finite, got {0}")]
    InvalidTolerance(f64),
}
