//! Gabor systems, frame-bound estimation, and invariance verdicts.
//!
//! The frame operator of a system G(g, Lambda) acts as
//! S f = sum_lambda <f, pi(lambda) g> pi(lambda) g. Two inner
//! approximations of its spectral extremes are implemented:
//!
//! - battery: the K x K compression onto a fixed orthonormal Hermite
//!   battery, extreme eigenvalues of Q_{jk} = sum_l c_j(l) conj(c_k(l));
//! - dense: the full matrix on grid samples restricted to the central half
//!   of the grid, the brute-force oracle.
//!
//! Both produce inner Rayleigh bounds (A_est >= A_true, B_est <= B_true);
//! invariance verdicts compare *estimates* across deformed pairs using the
//! same battery on both sides, never transported batteries (which would
//! make the comparison an algebraic identity instead of a measurement).
//! Every report says so.

use crate::error::{Error, Result};
use crate::lattice::{lattices_equal, Lattice, LatticePointSet};
use crate::linalg;
use crate::metaplectic::{
    apply_matrix_gaussian, apply_matrix_sampled, descriptor_word, natural_projection,
};
use crate::signal::{gaussian, hermite_battery, phase_align, GridSpec, SampledSignal};
use crate::symplectic::{is_modular, oscillator_flow, SymplecticMat};
use crate::tfa::{ambiguity_gaussian_closed, ambiguity_surface, TFGrid};
use crate::tol;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

/// Fixed disclaimer attached to every report: the estimates are Rayleigh
/// extremes over finite subspaces, not certified optimal bounds.
pub const ESTIMATE_SCOPE_NOTE: &str =
    "bounds are subspace Rayleigh estimates on a fixed battery/grid; \
     equality of estimates across deformed pairs is verified, optimality is not";

/// A window paired with a truncated lattice.
#[derive(Clone, Debug)]
pub struct GaborSystem {
    pub window: SampledSignal,
    pub lattice: Lattice,
    pub radius: f64,
    points: LatticePointSet,
}

impl GaborSystem {
    /// Normalizes the window and enumerates the lattice ball once.
    pub fn new(window: SampledSignal, lattice: Lattice, radius: f64) -> Result<Self> {
        let window = window.normalize()?;
        let points = lattice.enumerate(radius)?;
        if points.is_empty() {
            return Err(Error::InvalidInput("no lattice points within the radius".into()));
        }
        if radius > window.grid.span() / 4.0 {
            return Err(Error::InvalidInput(format!(
                "truncation radius {radius} exceeds span/4: atoms would leave the grid"
            )));
        }
        Ok(Self { window, lattice, radius, points })
    }

    pub fn points(&self) -> &LatticePointSet {
        &self.points
    }

    /// Atom pi(lambda) g.
    pub fn atom(&self, x: f64, w: f64) -> Result<SampledSignal> {
        self.window.tf_shift(x, w)
    }

    /// <f, pi(lambda) g> for every lattice point, in enumeration order.
    pub fn coefficients(&self, f: &SampledSignal) -> Result<Vec<Complex64>> {
        self.points
            .points
            .par_iter()
            .map(|&(x, w)| Ok(f.inner(&self.atom(x, w)?)))
            .collect()
    }
}

/// Orthonormal test battery (Hermite functions at width 1 by default).
#[derive(Clone, Debug)]
pub struct TestBattery {
    pub members: Vec<SampledSignal>,
}

impl TestBattery {
    /// h_0 .. h_{k-1} at width m; validates orthonormality to 1e-9 and
    /// concentration inside span/4 to 1e-12.
    pub fn hermite(k: usize, m: f64, grid: GridSpec) -> Result<Self> {
        let members = hermite_battery(k, m, grid)?;
        for (i, hi) in members.iter().enumerate() {
            if hi.mass_fraction_outside(grid.span() / 4.0) > 1e-12 {
                return Err(Error::Resolution(format!(
                    "battery member {i} not concentrated in span/4"
                )));
            }
            for (j, hj) in members.iter().enumerate().skip(i) {
                let expect = if i == j { 1.0 } else { 0.0 };
                if (hi.inner(hj) - Complex64::new(expect, 0.0)).norm() > 1e-9 {
                    return Err(Error::Resolution(format!(
                        "battery Gram deviates at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(Self { members })
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorMethod {
    Battery,
    Dense,
}

/// Frame-bound estimates with their provenance.
#[derive(Clone, Debug, Serialize)]
pub struct FrameBoundsEstimate {
    pub a_est: f64,
    pub b_est: f64,
    pub method: EstimatorMethod,
    pub battery_k: usize,
    pub lattice_points: usize,
    pub grid_n: usize,
    pub grid_dt: f64,
    /// A_est below 1e-3 B_est: the data gives no evidence of a frame.
    pub no_frame_evidence: bool,
    pub scope_note: &'static str,
}

impl FrameBoundsEstimate {
    fn new(
        a_est: f64,
        b_est: f64,
        method: EstimatorMethod,
        battery_k: usize,
        sys: &GaborSystem,
    ) -> Self {
        Self {
            a_est,
            b_est,
            method,
            battery_k,
            lattice_points: sys.points.len(),
            grid_n: sys.window.grid.n(),
            grid_dt: sys.window.grid.dt(),
            no_frame_evidence: a_est < tol::NO_FRAME_RATIO * b_est,
            scope_note: ESTIMATE_SCOPE_NOTE,
        }
    }
}

/// Frame quadratic form sum_l |<f, pi(l) g>|^2 / ||f||^2, accumulated in
/// enumeration order. Refuses (widen-R) when f itself has a truncation
/// tail above 1e-10 over the adjacent annulus.
pub fn frame_quadratic_form(sys: &GaborSystem, f: &SampledSignal) -> Result<f64> {
    let f = f.normalize()?;
    let single = TestBattery { members: vec![f.clone()] };
    let tail = truncation_tail(sys, &single)?;
    if tail > 1e-10 {
        return Err(Error::WidenRadius(format!(
            "tail of this signal over (R, R+2] is {tail:.3e} > 1e-10 at R = {}",
            sys.radius
        )));
    }
    let coeffs = sys.coefficients(&f)?;
    Ok(coeffs.iter().map(|c| c.norm_sqr()).sum())
}

/// Truncation adequacy: largest battery tail sum over the annulus
/// (R, R + 2]. Must stay below 1e-10 for estimates to be trusted.
pub fn truncation_tail(sys: &GaborSystem, battery: &TestBattery) -> Result<f64> {
    let outer = sys.lattice.enumerate(sys.radius + 2.0)?;
    let r2 = sys.radius * sys.radius;
    let annulus: Vec<(f64, f64)> = outer
        .points
        .iter()
        .copied()
        .filter(|&(x, w)| x * x + w * w > r2)
        .collect();
    let mut worst: f64 = 0.0;
    for h in &battery.members {
        // |x| can exceed span/4 in the annulus, beyond the plain shift
        // limit; |<h, pi(lambda) g>| = |A_g h(lambda)| needs only
        // half-shifts of both signals, which stay in range.
        let tail: f64 = annulus
            .par_iter()
            .map(|&(x, w)| {
                crate::tfa::cross_ambiguity_point(h, &sys.window, x, w)
                    .map(|v| v.norm_sqr())
                    .unwrap_or(f64::INFINITY)
            })
            .sum();
        worst = worst.max(tail);
    }
    Ok(worst)
}

fn check_truncation(sys: &GaborSystem, battery: &TestBattery) -> Result<()> {
    let tail = truncation_tail(sys, battery)?;
    if tail > 1e-10 {
        return Err(Error::WidenRadius(format!(
            "battery tail over (R, R+2] is {tail:.3e} > 1e-10 at R = {}",
            sys.radius
        )));
    }
    Ok(())
}

/// Battery estimator: extreme eigenvalues of the K x K compression of the
/// frame operator onto the battery span.
///
/// Precondition is only that the battery invariants hold (enforced on
/// construction); truncation adequacy is gated by the comparison and
/// theorem drivers, which is where an inadequate radius would corrupt a
/// verdict.
pub fn estimate_bounds(sys: &GaborSystem, battery: &TestBattery) -> Result<FrameBoundsEstimate> {
    let k = battery.k();
    if k == 0 {
        return Err(Error::InvalidInput("empty battery".into()));
    }
    // Coefficient rows c_j(lambda), battery-major.
    let coeffs: Result<Vec<Vec<Complex64>>> =
        battery.members.par_iter().map(|h| sys.coefficients(h)).collect();
    let coeffs = coeffs?;
    let npts = sys.points.len();
    let mut q = vec![Complex64::new(0.0, 0.0); k * k];
    for j in 0..k {
        for jj in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in 0..npts {
                acc += coeffs[j][l] * coeffs[jj][l].conj();
            }
            q[j * k + jj] = acc;
        }
    }
    let (a_est, b_est) = linalg::hermitian_extremes(&q, k, 1e-10)?;
    Ok(FrameBoundsEstimate::new(a_est.max(0.0), b_est, EstimatorMethod::Battery, k, sys))
}

/// Hermite order of the dense oracle's concentration compression: the
/// default battery family, so the two routes measure extremes over the
/// same span and disagreement isolates assembly errors rather than
/// subspace-size effects (Rayleigh extremes converge only like the
/// inverse concentration radius, so richer-space agreement is not a
/// meaningful soundness check at desk scale).
pub const DENSE_COMPRESSION_K: usize = 40;

/// Dense oracle: assembles the full frame-operator matrix on grid samples
/// restricted to the central half of the grid (brute-force rank-one
/// accumulation, nothing shared with the battery route), verifies positive
/// semidefiniteness of its entire spectrum to -1e-9, then reports Rayleigh
/// extremes over the concentrated part of that sample space.
///
/// The raw sample space reaches phase-space corners far outside any
/// affordable truncation ball (|t| <= span/4 but |w| up to Nyquist), where
/// the truncated operator is legitimately near-null, so extremes over the
/// full space would measure truncation rather than frame bounds. The
/// reported bounds therefore come from the compression onto the
/// concentrated family, reached through the assembled matrix; only the
/// positive-semidefiniteness witness uses the full spectrum.
pub fn estimate_bounds_dense(sys: &GaborSystem) -> Result<FrameBoundsEstimate> {
    let (estimate, _) = dense_oracle(sys)?;
    Ok(estimate)
}

/// Full dense-oracle run: the bound estimate plus the smallest eigenvalue
/// of the raw assembled matrix (the positive-semidefiniteness witness).
pub fn dense_oracle(sys: &GaborSystem) -> Result<(FrameBoundsEstimate, f64)> {
    let grid = sys.window.grid;
    if grid.n() > 2048 {
        return Err(Error::InvalidInput(format!(
            "dense estimator cost guard: n = {} > 2048",
            grid.n()
        )));
    }
    let idx: Vec<usize> =
        (0..grid.n()).filter(|&kk| grid.t(kk).abs() <= grid.span() / 4.0).collect();
    let m = idx.len();
    let dt = grid.dt();
    let mut mat = vec![Complex64::new(0.0, 0.0); m * m];
    // Rank-one accumulation in enumeration order (deterministic).
    for &(x, w) in &sys.points.points {
        let atom = sys.atom(x, w)?;
        let restricted: Vec<Complex64> = idx.iter().map(|&kk| atom.samples[kk]).collect();
        for p in 0..m {
            let ap = restricted[p] * dt;
            for qx in 0..m {
                mat[p * m + qx] += ap * restricted[qx].conj();
            }
        }
    }
    let spectrum = linalg::hermitian_eigenvalues(&mat, m, 1e-10)?;
    let min_eigenvalue = spectrum[0];
    if min_eigenvalue < -tol::PSD_FLOOR {
        return Err(Error::Eigen(format!(
            "frame operator not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}"
        )));
    }

    // Compress onto the concentrated family through the assembled matrix.
    let fam = hermite_battery(DENSE_COMPRESSION_K, 1.0, grid)?;
    let k = fam.len();
    let vecs: Vec<Vec<Complex64>> = fam
        .iter()
        .map(|h| idx.iter().map(|&kk| h.samples[kk]).collect())
        .collect();
    // S v_k for every family member, then dt-weighted inner products.
    let images: Vec<Vec<Complex64>> = vecs
        .par_iter()
        .map(|vk| {
            (0..m)
                .map(|p| {
                    let row = &mat[p * m..(p + 1) * m];
                    row.iter().zip(vk).map(|(s, v)| s * v).sum()
                })
                .collect()
        })
        .collect();
    let mut q = vec![Complex64::new(0.0, 0.0); k * k];
    for j in 0..k {
        for kk in 0..k {
            let acc: Complex64 =
                vecs[j].iter().zip(&images[kk]).map(|(vj, sv)| vj.conj() * sv).sum();
            q[j * k + kk] = acc * dt;
        }
    }
    let (lo, hi) = linalg::hermitian_extremes(&q, k, 1e-8)?;
    Ok((
        FrameBoundsEstimate::new(lo.max(0.0), hi, EstimatorMethod::Dense, k, sys),
        min_eigenvalue,
    ))
}

/// Relative discrepancy of the bound estimates of two systems measured with
/// the same battery: max(|A1 - A2| / A1, |B1 - B2| / B1). Both systems must
/// pass truncation adequacy first.
pub fn compare_invariance(
    sys1: &GaborSystem,
    sys2: &GaborSystem,
    battery: &TestBattery,
) -> Result<f64> {
    check_truncation(sys1, battery)?;
    check_truncation(sys2, battery)?;
    let e1 = estimate_bounds(sys1, battery)?;
    let e2 = estimate_bounds(sys2, battery)?;
    if e1.a_est <= 0.0 || e1.b_est <= 0.0 {
        return Err(Error::InvalidInput(
            "reference system has vanishing bound estimate; discrepancy undefined".into(),
        ));
    }
    Ok(((e1.a_est - e2.a_est).abs() / e1.a_est).max((e1.b_est - e2.b_est).abs() / e1.b_est))
}

/// Verdict record shared by the theorem drivers.
#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub label: String,
    pub bounds_reference: FrameBoundsEstimate,
    pub bounds_deformed: FrameBoundsEstimate,
    pub discrepancy: f64,
    pub tolerance: f64,
    pub pass: bool,
    pub volume: f64,
    pub volume_below_one: bool,
    pub notes: Vec<String>,
}

/// Deformation invariance along one symplectic matrix: compares
/// G(g, Lambda) against G(S^ g, S Lambda).
pub fn verify_thm43(
    window: &SampledSignal,
    lattice: &Lattice,
    s: &SymplecticMat,
    battery: &TestBattery,
    radius: f64,
) -> Result<InvarianceReport> {
    // Build the lift through the descriptor word and confirm it projects
    // back onto S before trusting it.
    let word = descriptor_word(s)?;
    let proj = natural_projection(&word);
    if proj.max_abs_diff(s) > 1e-9 * s.norm_inf().max(1.0) {
        return Err(Error::Convention(format!(
            "descriptor word projects to the wrong matrix (residual {:.3e})",
            proj.max_abs_diff(s)
        )));
    }
    let transported = apply_matrix_sampled(s, window)?;
    let sys1 = GaborSystem::new(window.clone(), *lattice, radius)?;
    let sys2 = GaborSystem::new(transported, lattice.deform(s), radius)?;
    check_truncation(&sys1, battery)?;
    check_truncation(&sys2, battery)?;
    let bounds1 = estimate_bounds(&sys1, battery)?;
    let bounds2 = estimate_bounds(&sys2, battery)?;
    let discrepancy =
        ((bounds1.a_est - bounds2.a_est).abs() / bounds1.a_est).max(
            (bounds1.b_est - bounds2.b_est).abs() / bounds1.b_est,
        );
    let volume = lattice.volume();
    Ok(InvarianceReport {
        label: format!("thm43 S = [[{:.4}, {:.4}], [{:.4}, {:.4}]]", s.a, s.b, s.c, s.d),
        bounds_reference: bounds1,
        bounds_deformed: bounds2,
        discrepancy,
        tolerance: tol::BOUNDS_REL,
        pass: discrepancy <= tol::BOUNDS_REL,
        volume,
        volume_below_one: volume < 1.0,
        notes: vec![ESTIMATE_SCOPE_NOTE.into()],
    })
}

/// One flow angle of the elliptic-deformation verdict.
#[derive(Clone, Debug, Serialize)]
pub struct Thm44Case {
    pub tau: f64,
    pub eigen_residual_sampled: f64,
    pub eigen_residual_analytic: f64,
    pub ambiguity_residual: f64,
    pub bound_discrepancy: f64,
    pub pass: bool,
    pub quadrature_path_skipped: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm44Report {
    pub m: f64,
    pub cases: Vec<Thm44Case>,
    pub pass: bool,
    pub notes: Vec<String>,
}

/// Elliptic invariance: for each tau checks (i) the matched Gaussian is an
/// eigenfunction of the flow operator, (ii) its ambiguity is unchanged,
/// (iii) the frame bounds of (g_m, Lambda) vs (g_m, S_{tau,m} Lambda)
/// agree.
pub fn verify_thm44(
    m: f64,
    lattice: &Lattice,
    taus: &[f64],
    battery: &TestBattery,
    grid: GridSpec,
    radius: f64,
) -> Result<Thm44Report> {
    let gm = gaussian(m)?;
    let gm_sampled = gm.sample(grid);
    let sys_ref = GaborSystem::new(gm_sampled.clone(), *lattice, radius)?;
    check_truncation(&sys_ref, battery)?;
    let bounds_ref = estimate_bounds(&sys_ref, battery)?;
    let tf = TFGrid::symmetric(2.0, 0.25, 2.0, 0.25)?;
    let mut cases = Vec::new();
    for &tau in taus {
        let s = oscillator_flow(tau, m)?;
        let skip_quadrature = tau.sin().abs() < 1e-9;

        // (i) eigenfunction property, sampled and analytic paths
        let transported = apply_matrix_sampled(&s, &gm_sampled)?;
        let (_, eigen_residual_sampled) = phase_align(&transported, &gm_sampled)?;
        let ga = apply_matrix_gaussian(&s, &gm)?;
        let eigen_residual_analytic =
            (ga.q - gm.q).norm().max((ga.amplitude.norm() - gm.amplitude.norm()).abs());

        // (ii) ambiguity invariance against the closed form
        let amb = ambiguity_surface(&transported, &tf)?;
        let mut ambiguity_residual: f64 = 0.0;
        for (ix, &x) in tf.xs().iter().enumerate() {
            for (iw, &w) in tf.omegas().iter().enumerate() {
                let expect = ambiguity_gaussian_closed(m, x, w)?;
                ambiguity_residual = ambiguity_residual
                    .max((amb.value(ix, iw) - Complex64::new(expect, 0.0)).norm());
            }
        }

        // (iii) frame-bound invariance with the window left untouched
        let sys_def = GaborSystem::new(gm_sampled.clone(), lattice.deform(&s), radius)?;
        check_truncation(&sys_def, battery)?;
        let bounds_def = estimate_bounds(&sys_def, battery)?;
        let bound_discrepancy = ((bounds_ref.a_est - bounds_def.a_est).abs() / bounds_ref.a_est)
            .max((bounds_ref.b_est - bounds_def.b_est).abs() / bounds_ref.b_est);

        let pass = eigen_residual_sampled <= tol::EIGENFUNCTION_SAMPLED
            && eigen_residual_analytic <= tol::EIGENFUNCTION_ANALYTIC
            && ambiguity_residual <= tol::COVARIANCE
            && bound_discrepancy <= tol::BOUNDS_REL;
        cases.push(Thm44Case {
            tau,
            eigen_residual_sampled,
            eigen_residual_analytic,
            ambiguity_residual,
            bound_discrepancy,
            pass,
            quadrature_path_skipped: skip_quadrature,
        });
    }
    let pass = cases.iter().all(|c| c.pass);
    Ok(Thm44Report {
        m,
        cases,
        pass,
        notes: vec![
            ESTIMATE_SCOPE_NOTE.into(),
            "tau = k pi cases run through the pipeline path only (kernel integral undefined)"
                .into(),
        ],
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm47Report {
    pub lattice_invariant: bool,
    pub windows_differ: bool,
    pub window_alignment_residual: f64,
    pub bounds_first: FrameBoundsEstimate,
    pub bounds_second: FrameBoundsEstimate,
    pub discrepancy: f64,
    pub pass: bool,
    pub notes: Vec<String>,
}

/// Modular invariance: with B integer-symplectic, S Lambda_{I,delta} equals
/// S B Lambda_{I,delta}, and the windows S^ g and S^ B^ g generate systems
/// with the same bound estimates on that common lattice.
pub fn verify_thm47(
    window: &SampledSignal,
    delta: f64,
    b: &SymplecticMat,
    s: &SymplecticMat,
    battery: &TestBattery,
    radius: f64,
) -> Result<Thm47Report> {
    if !is_modular(b, tol::INTEGER_PROXIMITY) {
        return Err(Error::InvalidInput("basis change B is not integer-symplectic".into()));
    }
    if !(delta > 1.0) {
        return Err(Error::InvalidInput(format!("need density > 1, got {delta}")));
    }
    let lam = Lattice::square(delta)?;
    let deformed_lattice = lam.deform(s);
    let lattice_invariant =
        lattices_equal(&deformed_lattice, &lam.deform(b).deform(s), tol::INTEGER_PROXIMITY)?;

    let w1 = apply_matrix_sampled(s, window)?;
    let w2 = apply_matrix_sampled(s, &apply_matrix_sampled(b, window)?)?;
    let (_, align_resid) = phase_align(&w2, &w1)?;

    let sys1 = GaborSystem::new(w1, deformed_lattice, radius)?;
    let sys2 = GaborSystem::new(w2, deformed_lattice, radius)?;
    check_truncation(&sys1, battery)?;
    check_truncation(&sys2, battery)?;
    let bounds1 = estimate_bounds(&sys1, battery)?;
    let bounds2 = estimate_bounds(&sys2, battery)?;
    let discrepancy = ((bounds1.a_est - bounds2.a_est).abs() / bounds1.a_est)
        .max((bounds1.b_est - bounds2.b_est).abs() / bounds1.b_est);

    let windows_differ = align_resid > 0.1;
    let pass = lattice_invariant && discrepancy <= tol::BOUNDS_REL;
    Ok(Thm47Report {
        lattice_invariant,
        windows_differ,
        window_alignment_residual: align_resid,
        bounds_first: bounds1,
        bounds_second: bounds2,
        discrepancy,
        pass,
        notes: vec![
            ESTIMATE_SCOPE_NOTE.into(),
            if windows_differ {
                "the basis change genuinely deforms the window".into()
            } else {
                "the basis change fixes the window up to phase (degenerate case)".into()
            },
        ],
    })
}
