//! Numerical toolkit for time-frequency analysis on the line (d = 1):
//! the symplectic group Sp(2, R) and its metaplectic lifts, Gabor systems
//! over time-frequency lattices, ambiguity/Wigner representations, and
//! frame-bound estimation.
//!
//! The crate is organised around one question: which paired deformations of
//! a window and a lattice leave the Gabor frame bounds unchanged? Symplectic
//! matrices deform lattices; the corresponding metaplectic operators deform
//! windows; the `frame` module measures whether the bounds moved.
//!
//! Module map:
//! - [`symplectic`]: exact 2x2 group algebra — membership, inversion, free
//!   factorization, generating functions, oscillator flows, generator words.
//! - [`lattice`]: time-frequency lattices, enumeration, deformation,
//!   unimodular equality, square/hexagonal constructors.
//! - [`signal`]: sampled signals on centered grids, analytic Gaussians,
//!   Hermite batteries, and the three metaplectic generator operators.
//! - [`metaplectic`]: quadratic Fourier transforms built from descriptors,
//!   the quadrature oracle, inverses, and the projection back to Sp(2, R).
//! - [`tfa`]: STFT, ambiguity, Wigner surfaces and their interrelations,
//!   plus the covariance principle as an executable check.
//! - [`frame`]: Gabor systems, frame-bound estimators (battery and dense),
//!   and the invariance verdicts.
//! - [`suites`]: the named verification suites driven by the CLI and the
//!   acceptance tests.

pub mod error;
pub mod export;
pub mod fft;
pub mod frame;
pub mod lattice;
pub mod linalg;
pub mod metaplectic;
pub mod signal;
pub mod suites;
pub mod symplectic;
pub mod tfa;
pub mod tol;

pub use error::{Error, Result};
