//! Algebra of dual complex matrices.
//!
//! A dual complex number is `a_s + a_d ε` with complex parts and `ε² = 0`;
//! a dual complex matrix is a pair of equally sized complex matrices
//! `A_s + A_d ε`. This crate provides:
//!
//! - dual scalar arithmetic and the lexicographic total order on dual reals
//!   ([`scalar`]),
//! - dense dual matrices, class predicates, and the shared JSON wire format
//!   ([`matrix`]),
//! - the dual singular value decomposition and the essential/nonessential
//!   split ([`svd`]),
//! - the Hartwig-Spindelböck decomposition of square dual matrices ([`hs`]),
//! - generalized inverses: NDMPI, MPDGI, DMPGI, DGGI, the dual inverse, and
//!   the group inverse of the essential part ([`inverse`]),
//! - executable characterization checks, equivalence suites, and structured
//!   random generators ([`suite`]).
//!
//! All numerical comparisons run through [`matrix::ToleranceConfig`]; standard
//! and dual parts are always tested separately.
//!
//! ```
//! use dualmat::{dual_svd, ndmpi_svd, ComplexMatrix, DualMatrix, ToleranceConfig};
//!
//! let tol = ToleranceConfig::default();
//! let a = DualMatrix::new(
//!     ComplexMatrix::diagonal(2, &[1.0, 0.0]),
//!     ComplexMatrix::diagonal(2, &[0.0, 1.0]),
//! )?;
//!
//! let svd = dual_svd(&a, &tol)?;
//! assert_eq!(svd.r(), 1); // one appreciable singular value: 1 + 0ε
//! assert_eq!(svd.t(), 2); // plus one positive infinitesimal: 0 + 1ε
//!
//! let pinv = ndmpi_svd(&a, &tol)?;
//! assert!((pinv.get(0, 0).std_part.re - 1.0).abs() < 1e-12);
//! assert!(pinv.get(1, 1).std_part.norm() < 1e-12);
//! # Ok::<(), dualmat::Error>(())
//! ```

pub mod complexmat;
pub mod hs;
pub mod inverse;
pub mod matrix;
pub mod scalar;
pub mod suite;
pub mod svd;

pub use complexmat::ComplexMatrix;
pub use hs::{hs_decompose, HsDecomposition};
pub use inverse::{
    dggi, dmpgi, group_inverse_essential, mpdgi, ndmpi_hs, ndmpi_svd, verify_inverse, InverseKind,
    InverseReport,
};
pub use matrix::{DualMatrix, MatrixClass, ToleranceConfig};
pub use scalar::{DualComplex, DualReal};
pub use suite::{
    classify_agreement, definitional_check, definitional_test, equivalence_suite,
    random_dual_matrix, run_trials, structural_check, structural_test, sufficiency_test,
    trial_seed, Agreement, ConditionResult, EquivalenceId, EquivalenceReport, GeneratorConfig,
    MatrixKind, PropertyCheck, PropertyId, SufficiencyId, SufficiencyOutcome, TheoremId,
    TrialSummary, Verdict, ViolationRecord,
};
pub use svd::{dual_svd, essential_part, nonessential_part, DualSvd};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: String, got: String },

    #[error("operation requires a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("standard part is singular at the configured rank threshold")]
    SingularStandardPart,

    #[error("iterative kernel failed to converge within the iteration cap")]
    ConvergenceFailure,

    #[error("within-group coupling could not be symmetrized")]
    DegenerateCoupling,

    #[error("square root undefined: standard part negative, or zero with nonzero dual part")]
    NegativeOrInfinitesimalSqrt,

    #[error("result failed self-validation: {0}")]
    SelfCheckFailed(String),

    #[error("invalid matrix file: {0}")]
    InvalidMatrixFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
