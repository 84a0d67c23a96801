//! Centralized tolerances.
//!
//! Three regimes, by how the quantity is produced:
//! - pure 2x2 arithmetic: machine-precision class, 1e-12 (residuals of
//!   products of a handful of factors);
//! - FFT/quadrature-mediated identities on the default desk grid
//!   (N = 1024, dt = 1/32): 1e-6 .. 1e-9 depending on the operator chain;
//! - frame-bound comparisons: 1e-2 relative (estimator bias dominates).
//!
//! Every check in the crate and in the verification suites pins one of the
//! constants below; nothing asserts against an ad-hoc literal.

/// Algebraic identities of symplectic 2x2 arithmetic (group closure,
/// generating-form round trip, two-free factorization product).
pub const ALGEBRAIC: f64 = 1e-12;

/// Prop-2.6-style four-factor products over 1000 random matrices; one extra
/// digit of slack for the longer multiply chain.
pub const FACTORIZATION: f64 = 1e-11;

/// Membership test for `SymplecticMat` construction: |det - 1|.
pub const SYMPLECTIC_DET: f64 = 1e-12;

/// Numeric Hamiltonian integration vs. the closed-form oscillator flow.
pub const FLOW_NUMERIC: f64 = 1e-8;

/// Unitarity of generator operators on sampled battery signals.
pub const UNITARITY: f64 = 1e-9;

/// Analytic-Gaussian path vs. sampled path for the generator operators.
pub const ANALYTIC_VS_SAMPLED: f64 = 1e-9;

/// Metaplectic pipeline vs. direct quadrature of the kernel integral.
pub const PIPELINE_VS_QUADRATURE: f64 = 1e-7;

/// Metaplectic inverse round trip (up to a unimodular constant).
pub const INVERSE_ROUNDTRIP: f64 = 1e-8;

/// Eigenfunction residual of oscillator-flow operators on matched Gaussians
/// (sampled path).
pub const EIGENFUNCTION_SAMPLED: f64 = 1e-7;

/// Same, through the exact analytic-Gaussian path.
pub const EIGENFUNCTION_ANALYTIC: f64 = 1e-12;

/// Closed-form Gaussian ambiguity vs. numerics on [-3, 3]^2.
pub const AMBIGUITY_CLOSED_FORM: f64 = 1e-8;

/// Phase relation between cross-ambiguity and STFT.
pub const AMBIGUITY_STFT_PHASE: f64 = 1e-9;

/// Wigner vs. symplectic Fourier transform of the ambiguity function.
pub const WIGNER_SYMPLECTIC_FT: f64 = 1e-7;

/// Covariance principle A(S^f)(z) = Af(S^-1 z) on battery signals.
pub const COVARIANCE: f64 = 1e-6;

/// Worked-example ambiguity surfaces vs. their closed forms.
pub const EXAMPLE_SURFACE: f64 = 1e-6;

/// Relative frame-bound discrepancy for invariant pairings.
pub const BOUNDS_REL: f64 = 1e-2;

/// The non-invariant control pairing must exceed this.
pub const CONTROL_MIN_DISCREPANCY: f64 = 5e-2;

/// Battery vs. dense-oracle agreement on shipped systems (relative).
pub const ESTIMATOR_AGREEMENT: f64 = 5e-3;

/// Frame operator positive semidefiniteness: eigenvalues >= -PSD_FLOOR.
pub const PSD_FLOOR: f64 = 1e-9;

/// Stability of the upper bound under R -> R + 2 (relative to B).
pub const BESSEL_STABILITY: f64 = 1e-6;

/// Integer proximity for modular membership and lattice equality.
pub const INTEGER_PROXIMITY: f64 = 1e-9;

/// A_est below this multiple of B_est is reported as "no frame evidence".
pub const NO_FRAME_RATIO: f64 = 1e-3;

/// Transform-class tolerance relaxes to this when the grid is coarser than
/// the default desk grid (documented scaling for `--grid.n 512`).
pub const TRANSFORM_RELAXED: f64 = 1e-6;

/// Scale-relative freeness threshold factor: |b| must exceed
/// `FREE_EPS_FACTOR * max(1, ||S||_inf)`.
pub const FREE_EPS_FACTOR: f64 = 1e-9;
