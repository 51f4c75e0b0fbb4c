//! Jacobi eigensolvers and one-sided Jacobi SVD for dense real matrices, with
//! a mixed-precision front end: a cheap binary32 solve produces approximate
//! eigenvectors (or right singular vectors), binary64 QR turns them into an
//! orthogonal basis, and the binary64 Jacobi iteration finishes from there.

pub mod eig;
pub mod error;
pub mod harness;
pub mod matgen;
pub mod numcore;
pub mod orth;
pub mod rotations;
pub mod svd;
pub mod tridiag;

pub use eig::{
    classical_jacobi, cyclic_jacobi, low_precision_eig, mixed_precision_jacobi, spectral_gap,
    JacobiF32, LowPrecisionEigensolver, SolveReport, StopRule, SymEigResult, ToleranceConfig,
    TridiagonalF32,
};
pub use error::{Error, Result};
pub use matgen::{generate, GroundTruth, MatGenSpec, MatrixKind};
pub use numcore::{DenseMatrix, Precision, Scalar, SymMatrix};
pub use orth::{householder_qr, mgs_qr, Orthogonalizer};
pub use rotations::JacobiRotation;
pub use svd::{
    gram_off_norm, low_precision_svd, mixed_precision_svd, one_sided_jacobi_svd, GramSeededF32,
    LowPrecisionSvdSolver, OneSidedF32, SvdResult,
};
