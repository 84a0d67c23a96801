//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("matrix is not symplectic: |det - 1| = {0:.3e}")]
    NotSymplectic(f64),

    /// Upper-right entry below the scale-relative freeness threshold.
    #[error("matrix is not free: |b| = {found:.3e} <= threshold {threshold:.3e}")]
    NotFree { found: f64, threshold: f64 },

    #[error("invalid quadratic form: {0}")]
    InvalidForm(String),

    #[error("invalid mass: {0} (must be > 0)")]
    InvalidMass(f64),

    #[error("integrator refused: {0}")]
    Integrator(String),

    #[error("degenerate lattice generator: |det| = {0:.3e}")]
    DegenerateLattice(f64),

    #[error("grid resolution inadequate: {0}")]
    Resolution(String),

    #[error("quadrature kernel undersampled: {0}")]
    KernelUndersampled(String),

    #[error("truncation radius inadequate, widen R: {0}")]
    WidenRadius(String),

    #[error("eigensolver failure: {0}")]
    Eigen(String),

    /// A convention cross-check that must hold by construction failed.
    #[error("convention violation: {0}")]
    Convention(String),
}

pub type Result<T> = std::result::Result<T, Error>;
