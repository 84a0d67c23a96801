//! Windows and the metaplectic generator operators.
//!
//! Two signal representations coexist and cross-validate each other:
//!
//! - [`SampledSignal`]: complex samples on a centered uniform grid, the
//!   numerical stand-in for L2(R). Off-grid arguments go through
//!   band-limited (trigonometric) interpolation.
//! - [`AnalyticGaussian`]: the exact family a e^{-pi q t^2}, Re q > 0,
//!   closed under every generator operator. Operator actions on it are
//!   exact arithmetic on (a, q), which makes it the reference path.
//!
//! The three generator operators follow the displayed integral/pointwise
//! formulas:
//!
//! ```text
//! chirp(P):       psi(t) -> e^{i pi P t^2} psi(t)
//! rescale(L, n):  psi(t) -> i^n sqrt(|L|) psi(L t),   n pi = arg(L) mod 2 pi
//! fourier_mod:    psi(t) -> i^{-1/2} integral psi(t') e^{-2 pi i t t'} dt'
//! ```
//!
//! Their symplectic projections under the crate's matrix conventions are
//! [[1,0],[P,1]] (= V_{-P}), M_L and J respectively; see `metaplectic`.

use crate::error::{Error, Result};
use crate::fft;
use num_complex::Complex64;
use std::f64::consts::PI;

/// Fraction of squared norm allowed outside the usable region before a
/// shift/dilation is considered truncating.
const MASS_TOL: f64 = 1e-12;

/// Centered uniform grid: N even samples at t_k = (k - N/2) dt.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    n: usize,
    dt: f64,
}

impl GridSpec {
    pub fn new(n: usize, dt: f64) -> Result<Self> {
        if n == 0 || n % 2 != 0 {
            return Err(Error::InvalidInput(format!("grid size must be even and > 0, got {n}")));
        }
        if !(dt > 0.0) || !dt.is_finite() {
            return Err(Error::InvalidInput(format!("grid step must be > 0, got {dt}")));
        }
        Ok(Self { n, dt })
    }

    /// Default desk grid: N = 1024, dt = 1/32 (span 32, bandwidth 32,
    /// self-dual). Gaussian tails at the edge are below 1e-100.
    pub fn default_desk() -> Self {
        Self { n: 1024, dt: 1.0 / 32.0 }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t(&self, k: usize) -> f64 {
        (k as f64 - self.n as f64 / 2.0) * self.dt
    }

    pub fn times(&self) -> Vec<f64> {
        (0..self.n).map(|k| self.t(k)).collect()
    }

    /// Time span N dt.
    pub fn span(&self) -> f64 {
        self.n as f64 * self.dt
    }

    /// Representable bandwidth 1/dt.
    pub fn bandwidth(&self) -> f64 {
        1.0 / self.dt
    }

    /// Frequency grid step 1/(N dt).
    pub fn freq_step(&self) -> f64 {
        1.0 / (self.n as f64 * self.dt)
    }

    pub fn omega(&self, j: usize) -> f64 {
        (j as f64 - self.n as f64 / 2.0) * self.freq_step()
    }

    /// Grid of the Fourier side: same N, step 1/(N dt).
    pub fn dual(&self) -> Self {
        Self { n: self.n, dt: self.freq_step() }
    }

    /// Whether the frequency grid coincides with the time grid (N dt^2 = 1).
    pub fn is_self_dual(&self) -> bool {
        (self.n as f64 * self.dt * self.dt - 1.0).abs() <= 1e-12
    }
}

/// Complex samples on a grid. `truncated` records that some operation moved
/// significant mass against the grid edge (a warning, not an error).
#[derive(Clone, Debug)]
pub struct SampledSignal {
    pub grid: GridSpec,
    pub samples: Vec<Complex64>,
    pub truncated: bool,
}

impl SampledSignal {
    pub fn new(grid: GridSpec, samples: Vec<Complex64>) -> Result<Self> {
        if samples.len() != grid.n() {
            return Err(Error::InvalidInput(format!(
                "sample count {} != grid size {}",
                samples.len(),
                grid.n()
            )));
        }
        if !samples.iter().all(|v| v.re.is_finite() && v.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite sample".into()));
        }
        Ok(Self { grid, samples, truncated: false })
    }

    pub fn from_fn(grid: GridSpec, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = (0..grid.n()).map(|k| f(grid.t(k))).collect();
        Self { grid, samples, truncated: false }
    }

    /// dt-weighted inner product <f, g> = dt sum f conj(g). Panics on grid
    /// mismatch; all callers operate within one grid family.
    pub fn inner(&self, other: &Self) -> Complex64 {
        assert_eq!(self.grid, other.grid, "inner product across different grids");
        let s: Complex64 =
            self.samples.iter().zip(&other.samples).map(|(a, b)| a * b.conj()).sum();
        s * self.grid.dt()
    }

    /// L2 norm sqrt(dt sum |f|^2).
    pub fn norm(&self) -> f64 {
        (self.samples.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.grid.dt()).sqrt()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            grid: self.grid,
            samples: self.samples.iter().map(|v| v * c).collect(),
            truncated: self.truncated,
        }
    }

    pub fn normalize(&self) -> Result<Self> {
        let n = self.norm();
        if n <= 0.0 {
            return Err(Error::InvalidInput("cannot normalize the zero signal".into()));
        }
        Ok(self.scale(Complex64::new(1.0 / n, 0.0)))
    }

    /// max_k |f_k - g_k|.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.grid, other.grid);
        self.samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// ||f - g|| (dt-weighted).
    pub fn dist(&self, other: &Self) -> f64 {
        assert_eq!(self.grid, other.grid);
        (self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            * self.grid.dt())
        .sqrt()
    }

    /// Fraction of squared norm at |t| > radius.
    pub fn mass_fraction_outside(&self, radius: f64) -> f64 {
        let total: f64 = self.samples.iter().map(|v| v.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let outside: f64 = self
            .samples
            .iter()
            .enumerate()
            .filter(|(k, _)| self.grid.t(*k).abs() > radius)
            .map(|(_, v)| v.norm_sqr())
            .sum();
        outside / total
    }

    /// Fraction of spectral energy at |omega| > radius.
    pub fn spectral_mass_outside(&self, radius: f64) -> f64 {
        let spec = fft::centered_dft(&self.samples, self.grid.dt());
        let total: f64 = spec.iter().map(|v| v.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let outside: f64 = spec
            .iter()
            .enumerate()
            .filter(|(j, _)| self.grid.omega(*j).abs() > radius)
            .map(|(_, v)| v.norm_sqr())
            .sum();
        outside / total
    }

    /// Smallest radius containing all but `fraction` of the squared norm.
    pub fn effective_radius(&self, fraction: f64) -> f64 {
        let total: f64 = self.samples.iter().map(|v| v.norm_sqr()).sum();
        if total == 0.0 {
            return 0.0;
        }
        let mut radii: Vec<(f64, f64)> = self
            .samples
            .iter()
            .enumerate()
            .map(|(k, v)| (self.grid.t(k).abs(), v.norm_sqr()))
            .collect();
        radii.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        let mut acc = 0.0;
        let target = total * (1.0 - fraction);
        for (r, m) in radii {
            acc += m;
            if acc >= target {
                return r;
            }
        }
        self.grid.span() / 2.0
    }

    /// Time-frequency shift (M_w T_x f)(t) = e^{2 pi i w t} f(t - x), with
    /// band-limited interpolation for off-grid x. Requires |x| <= span/4 so
    /// the atom stays well inside the grid; marks the result truncated if
    /// more than 1e-12 of the energy sits within |x| of the edge.
    pub fn tf_shift(&self, x: f64, omega: f64) -> Result<Self> {
        if !(x.is_finite() && omega.is_finite()) {
            return Err(Error::InvalidInput("non-finite shift".into()));
        }
        if x.abs() > self.grid.span() / 4.0 {
            return Err(Error::InvalidInput(format!(
                "time shift {x} exceeds span/4 = {}",
                self.grid.span() / 4.0
            )));
        }
        let mut truncated = self.truncated;
        if x != 0.0 && self.mass_fraction_outside(self.grid.span() / 2.0 - x.abs()) > MASS_TOL {
            truncated = true;
        }
        let shifted = if x == 0.0 {
            self.samples.clone()
        } else {
            fft::spectral_shift(&self.samples, self.grid.dt(), x)
        };
        let samples = shifted
            .into_iter()
            .enumerate()
            .map(|(k, v)| v * Complex64::from_polar(1.0, 2.0 * PI * omega * self.grid.t(k)))
            .collect();
        Ok(Self { grid: self.grid, samples, truncated })
    }

    /// chirp(P): multiply by e^{i pi P t^2}.
    pub fn chirp(&self, p: f64) -> Self {
        let samples = self
            .samples
            .iter()
            .enumerate()
            .map(|(k, v)| {
                let t = self.grid.t(k);
                v * Complex64::from_polar(1.0, PI * p * t * t)
            })
            .collect();
        Self { grid: self.grid, samples, truncated: self.truncated }
    }

    /// rescale(L, n): i^n sqrt(|L|) f(L t) by trigonometric interpolation.
    ///
    /// Refuses (resolution error) when the dilation would push significant
    /// spectral mass above Nyquist (|L| > 1) or significant time mass
    /// outside the grid (|L| < 1); the error carries a grid hint.
    pub fn rescale(&self, l: f64, n: u8) -> Result<Self> {
        if l == 0.0 || !l.is_finite() {
            return Err(Error::InvalidInput(format!("rescale needs L != 0, got {l}")));
        }
        if n % 2 != maslov_index(l)? % 2 {
            return Err(Error::InvalidInput(format!(
                "Maslov class {n} inconsistent with sign of L = {l}"
            )));
        }
        let la = l.abs();
        if la > 1.0 {
            let nyq = self.grid.bandwidth() / 2.0;
            if self.spectral_mass_outside(nyq / la) > MASS_TOL {
                let need_n = (self.grid.n() as f64 * la).ceil() as usize;
                return Err(Error::Resolution(format!(
                    "dilation by {l} exceeds Nyquist; need about (n = {}, dt = {:.6e})",
                    need_n.next_power_of_two(),
                    self.grid.dt() / la
                )));
            }
        } else if la < 1.0 {
            let edge = self.grid.span() / 2.0 * la;
            if self.mass_fraction_outside(edge) > MASS_TOL {
                let need_n = (self.grid.n() as f64 / la).ceil() as usize;
                return Err(Error::Resolution(format!(
                    "dilation by {l} pushes mass off-grid; need about (n = {}, dt = {:.6e})",
                    need_n.next_power_of_two(),
                    self.grid.dt()
                )));
            }
        }
        // The trig interpolant is periodic; arguments beyond the fundamental
        // domain would alias ghost copies into view. The true signal is below
        // tail tolerance out there (checked above), so those outputs are 0.
        let half_span = self.grid.span() / 2.0;
        let points: Vec<f64> = (0..self.grid.n())
            .map(|k| l * self.grid.t(k))
            .map(|t| if t.abs() <= half_span { t } else { f64::NAN })
            .collect();
        let inside: Vec<f64> = points.iter().copied().filter(|t| t.is_finite()).collect();
        let vals = fft::eval_trig_interp(&self.samples, self.grid.dt(), &inside);
        let amp = Complex64::i().powu(n as u32) * la.sqrt();
        let mut it = vals.into_iter();
        let samples = points
            .iter()
            .map(|t| {
                if t.is_finite() {
                    it.next().expect("one value per inside point") * amp
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .collect();
        Ok(Self { grid: self.grid, samples, truncated: self.truncated })
    }

    /// Modified Fourier transform: i^{-1/2} F f with kernel e^{-2 pi i t t'}.
    /// The result lives on the dual grid (same grid when self-dual).
    pub fn fourier_mod(&self) -> Self {
        let spec = fft::centered_dft(&self.samples, self.grid.dt());
        let phase = Complex64::from_polar(1.0, -PI / 4.0);
        Self {
            grid: self.grid.dual(),
            samples: spec.into_iter().map(|v| v * phase).collect(),
            truncated: self.truncated,
        }
    }

    /// Inverse of `fourier_mod`: i^{1/2} F^{-1}.
    pub fn fourier_mod_inverse(&self) -> Self {
        let dual = self.grid.dual();
        let time = fft::centered_idft(&self.samples, dual.dt());
        let phase = Complex64::from_polar(1.0, PI / 4.0);
        Self {
            grid: dual,
            samples: time.into_iter().map(|v| v * phase).collect(),
            truncated: self.truncated,
        }
    }
}

/// Exact Gaussian a e^{-pi q t^2}, Re q > 0.
#[derive(Clone, Copy, Debug)]
pub struct AnalyticGaussian {
    pub amplitude: Complex64,
    pub q: Complex64,
}

impl AnalyticGaussian {
    pub fn new(amplitude: Complex64, q: Complex64) -> Result<Self> {
        if !(q.re > 0.0) {
            return Err(Error::InvalidInput(format!("need Re q > 0, got {}", q.re)));
        }
        Ok(Self { amplitude, q })
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        self.amplitude * (-(self.q) * PI * t * t).exp()
    }

    /// ||psi||_2 = |a| / (2 Re q)^{1/4}.
    pub fn norm(&self) -> f64 {
        self.amplitude.norm() / (2.0 * self.q.re).powf(0.25)
    }

    pub fn sample(&self, grid: GridSpec) -> SampledSignal {
        SampledSignal::from_fn(grid, |t| self.eval(t))
    }

    /// chirp(P): q -> q - iP, amplitude unchanged (Re q preserved).
    pub fn chirp(&self, p: f64) -> Self {
        Self { amplitude: self.amplitude, q: self.q - Complex64::new(0.0, p) }
    }

    /// rescale(L, n): a -> i^n sqrt(|L|) a, q -> L^2 q.
    pub fn rescale(&self, l: f64, n: u8) -> Result<Self> {
        if l == 0.0 || !l.is_finite() {
            return Err(Error::InvalidInput(format!("rescale needs L != 0, got {l}")));
        }
        if n % 2 != maslov_index(l)? % 2 {
            return Err(Error::InvalidInput(format!(
                "Maslov class {n} inconsistent with sign of L = {l}"
            )));
        }
        Ok(Self {
            amplitude: self.amplitude * Complex64::i().powu(n as u32) * l.abs().sqrt(),
            q: self.q * l * l,
        })
    }

    /// Modified Fourier transform: a -> i^{-1/2} a q^{-1/2} (principal
    /// branch, well-defined on Re q > 0), q -> 1/q.
    pub fn fourier_mod(&self) -> Self {
        let phase = Complex64::from_polar(1.0, -PI / 4.0);
        Self { amplitude: self.amplitude * phase / self.q.sqrt(), q: self.q.inv() }
    }

    /// Closed-form ambiguity value; real for every Gaussian. With
    /// q = u + iv:
    ///
    /// ```text
    /// A psi(x, w) = |a|^2 (2u)^{-1/2} e^{-pi u x^2 / 2} e^{-pi (w + v x)^2 / (2u)}
    /// ```
    pub fn ambiguity(&self, x: f64, omega: f64) -> f64 {
        let u = self.q.re;
        let v = self.q.im;
        let a2 = self.amplitude.norm_sqr();
        a2 / (2.0 * u).sqrt()
            * (-PI * u * x * x / 2.0).exp()
            * (-PI * (omega + v * x).powi(2) / (2.0 * u)).exp()
    }
}

/// Unit-norm dilated Gaussian g_m = (2m)^{1/4} e^{-pi m t^2}.
pub fn gaussian(m: f64) -> Result<AnalyticGaussian> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::InvalidMass(m));
    }
    AnalyticGaussian::new(Complex64::new((2.0 * m).powf(0.25), 0.0), Complex64::new(m, 0.0))
}

/// Maslov representative in {0, 1}: the parity class of n with
/// n pi = arg(L) mod 2 pi.
pub fn maslov_index(l: f64) -> Result<u8> {
    if l == 0.0 || !l.is_finite() {
        return Err(Error::InvalidInput(format!("Maslov index needs L != 0, got {l}")));
    }
    Ok(if l > 0.0 { 0 } else { 1 })
}

/// Best unimodular constant aligning f to g: c = <f, g>/|<f, g>| (c = 1
/// when the inner product vanishes) and the relative residual
/// ||f - c g|| / ||g||.
pub fn phase_align(f: &SampledSignal, g: &SampledSignal) -> Result<(Complex64, f64)> {
    let gn = g.norm();
    if gn <= 0.0 {
        return Err(Error::InvalidInput("phase_align against the zero signal".into()));
    }
    let ip = f.inner(g);
    let c = if ip.norm() == 0.0 { Complex64::new(1.0, 0.0) } else { ip / ip.norm() };
    let resid = f.dist(&g.scale(c)) / gn;
    Ok((c, resid))
}

/// k-th Hermite function at width parameter m, unit norm, generated by the
/// stable three-term recurrence for the orthonormal family. h_0 at m = 1 is
/// the standard Gaussian; the family is mutually orthonormal and consists
/// of eigenfunctions of `fourier_mod` up to unimodular constants.
pub fn hermite(k: usize, m: f64, grid: GridSpec) -> Result<SampledSignal> {
    if k > 60 {
        return Err(Error::InvalidInput(format!(
            "Hermite order {k} > 60: recurrence accuracy not guaranteed at desk scale"
        )));
    }
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::InvalidMass(m));
    }
    let amp = (2.0 * PI).powf(0.25) * m.powf(0.25);
    let samples = (0..grid.n())
        .map(|idx| {
            let xi = (2.0 * PI).sqrt() * m.sqrt() * grid.t(idx);
            // Orthonormal recurrence phi_j = xi sqrt(2/j) phi_{j-1}
            //                                 - sqrt((j-1)/j) phi_{j-2}.
            let mut prev = 0.0_f64;
            let mut cur = std::f64::consts::FRAC_1_PI.powf(0.25) * (-xi * xi / 2.0).exp();
            for j in 1..=k {
                let jf = j as f64;
                let next = xi * (2.0 / jf).sqrt() * cur - ((jf - 1.0) / jf).sqrt() * prev;
                prev = cur;
                cur = next;
            }
            Complex64::new(amp * cur, 0.0)
        })
        .collect();
    SampledSignal::new(grid, samples)
}

/// The first k Hermite functions at width m (h_0 .. h_{k-1}).
pub fn hermite_battery(k: usize, m: f64, grid: GridSpec) -> Result<Vec<SampledSignal>> {
    (0..k).map(|j| hermite(j, m, grid)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid() -> GridSpec {
        GridSpec::default_desk()
    }

    #[test]
    fn grid_basics() {
        let g = grid();
        assert_eq!(g.n(), 1024);
        assert!((g.span() - 32.0).abs() < 1e-12);
        assert!((g.bandwidth() - 32.0).abs() < 1e-12);
        assert!(g.is_self_dual());
        assert_eq!(g.dual(), g);
        assert!(GridSpec::new(31, 0.1).is_err());
        assert!(GridSpec::new(32, -0.1).is_err());
    }

    #[test]
    fn gaussian_norms() {
        for m in [0.2, 1.0 / 3.0_f64.sqrt(), 1.0, 3.0_f64.sqrt(), 2.0, 5.0] {
            let g = gaussian(m).unwrap();
            assert!((g.norm() - 1.0).abs() <= 1e-14);
            let s = g.sample(grid());
            assert!((s.norm() - 1.0).abs() <= 1e-12, "m = {m}");
        }
        assert!(gaussian(0.0).is_err());
        assert!(gaussian(-1.0).is_err());
    }

    #[test]
    fn tf_shift_examples() {
        let f = gaussian(1.0).unwrap().sample(grid());
        let same = f.tf_shift(0.0, 0.0).unwrap();
        assert!(f.max_abs_diff(&same) <= 1e-14);

        // Unitarity.
        let shifted = f.tf_shift(1.3, -2.1).unwrap();
        assert!((shifted.norm() - f.norm()).abs() <= 1e-10);
        assert!(!shifted.truncated);

        // Commutation M_w T_x = e^{2 pi i w x} T_x M_w.
        let (x, w) = (0.7, 1.9);
        let lhs = f.tf_shift(x, 0.0).unwrap().tf_shift(0.0, w).unwrap();
        let rhs = f
            .tf_shift(0.0, w)
            .unwrap()
            .tf_shift(x, 0.0)
            .unwrap()
            .scale(Complex64::from_polar(1.0, 2.0 * PI * w * x));
        assert!(lhs.max_abs_diff(&rhs) <= 1e-10);
        // and both orderings match the fused operator
        let fused = f.tf_shift(x, w).unwrap();
        assert!(lhs.max_abs_diff(&fused) <= 1e-10);

        assert!(f.tf_shift(10.0, 0.0).is_err());
    }

    #[test]
    fn tf_shift_truncation_warning() {
        // A wide, off-centered signal pushed toward the edge must warn.
        let g = grid();
        let wide = SampledSignal::from_fn(g, |t| Complex64::new((-0.005 * (t - 8.0).powi(2)).exp(), 0.0));
        let shifted = wide.tf_shift(6.0, 0.0).unwrap();
        assert!(shifted.truncated);
    }

    #[test]
    fn chirp_paths_agree() {
        let g = gaussian(1.0).unwrap();
        for p in [-2.0, 0.0, 0.7, 3.0] {
            let analytic = g.chirp(p).sample(grid());
            let sampled = g.sample(grid()).chirp(p);
            assert!(analytic.max_abs_diff(&sampled) <= 1e-12);
            assert!((sampled.norm() - 1.0).abs() <= 1e-12);
        }
    }

    #[test]
    fn rescale_examples() {
        let g1 = gaussian(1.0).unwrap();
        // identity
        let same = g1.sample(grid()).rescale(1.0, 0).unwrap();
        assert!(same.max_abs_diff(&g1.sample(grid())) <= 1e-11);

        // rescale(sqrt m) g_1 = g_m exactly on the analytic path
        for m in [1.0 / 3.0_f64.sqrt(), 3.0_f64.sqrt(), 2.0] {
            let dilated = g1.rescale(m.sqrt(), 0).unwrap();
            let target = gaussian(m).unwrap();
            assert!((dilated.q - target.q).norm() <= 1e-14);
            assert!((dilated.amplitude.norm() - target.amplitude.norm()).abs() <= 1e-14);
        }

        // analytic vs sampled
        for (l, n) in [(0.7, 0u8), (1.4, 0), (-1.2, 1), (3.0_f64.powf(0.25), 0)] {
            let analytic = g1.rescale(l, n).unwrap().sample(grid());
            let sampled = g1.sample(grid()).rescale(l, n).unwrap();
            assert!(analytic.max_abs_diff(&sampled) <= 1e-9, "l = {l}");
        }

        // Maslov consistency enforced
        assert!(g1.sample(grid()).rescale(2.0, 1).is_err());
        assert!(g1.sample(grid()).rescale(-2.0, 0).is_err());
    }

    #[test]
    fn rescale_resolution_errors() {
        // Stretching a narrow Gaussian far off-grid must refuse with a hint.
        let narrow = gaussian(4.0).unwrap().sample(grid());
        assert!(narrow.rescale(0.05, 0).is_err());
        // Compressing it that hard pushes its spectrum beyond Nyquist.
        assert!(narrow.rescale(24.0, 0).is_err());
    }

    #[test]
    fn fourier_mod_examples() {
        let g1 = gaussian(1.0).unwrap();
        // J^ g_1 = e^{-i pi/4} g_1 (Fourier invariance).
        let hat = g1.sample(grid()).fourier_mod();
        let (c, resid) = phase_align(&hat, &g1.sample(grid())).unwrap();
        assert!(resid <= 1e-9);
        assert!((c - Complex64::from_polar(1.0, -PI / 4.0)).norm() <= 1e-9);

        // Analytic path agrees.
        let hat_a = g1.fourier_mod();
        assert!((hat_a.q - Complex64::new(1.0, 0.0)).norm() <= 1e-14);
        assert!(hat_a.sample(grid()).max_abs_diff(&hat) <= 1e-9);

        // J^ applied four times = -identity (two-fold cover showing up).
        let f = hermite(3, 1.0, grid()).unwrap();
        let four = f.fourier_mod().fourier_mod().fourier_mod().fourier_mod();
        let minus = f.scale(Complex64::new(-1.0, 0.0));
        assert!(four.max_abs_diff(&minus) <= 1e-9);

        // Inverse round trip.
        let back = f.fourier_mod().fourier_mod_inverse();
        assert!(back.max_abs_diff(&f) <= 1e-10);
    }

    #[test]
    fn analytic_sampled_consistency_random_family() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
        for _ in 0..25 {
            let q = Complex64::new(rng.gen_range(0.2..5.0), rng.gen_range(-5.0..5.0));
            let a = Complex64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(-PI..PI));
            let g = AnalyticGaussian::new(a, q).unwrap();
            let p = rng.gen_range(-2.0..2.0);
            assert!(g.chirp(p).sample(grid()).max_abs_diff(&g.sample(grid()).chirp(p)) <= 1e-9);
            let l = rng.gen_range(0.6..1.6);
            assert!(
                g.rescale(l, 0).unwrap().sample(grid()).max_abs_diff(
                    &g.sample(grid()).rescale(l, 0).unwrap()
                ) <= 1e-9
            );
            assert!(
                g.fourier_mod().sample(grid()).max_abs_diff(&g.sample(grid()).fourier_mod())
                    <= 1e-9
            );
        }
    }

    #[test]
    fn unitarity_on_battery() {
        let battery = hermite_battery(12, 1.0, grid()).unwrap();
        for f in &battery {
            assert!((f.chirp(1.3).norm() - f.norm()).abs() <= 1e-9);
            assert!((f.rescale(1.3, 0).unwrap().norm() - f.norm()).abs() <= 1e-9);
            assert!((f.fourier_mod().norm() - f.norm()).abs() <= 1e-9);
        }
    }

    #[test]
    fn maslov_examples() {
        assert_eq!(maslov_index(1.0).unwrap(), 0);
        assert_eq!(maslov_index(-2.0).unwrap(), 1);
        assert_eq!(maslov_index(3.0_f64.powf(0.25)).unwrap(), 0);
        assert!(maslov_index(0.0).is_err());
    }

    #[test]
    fn phase_align_examples() {
        let g = gaussian(1.0).unwrap().sample(grid());
        let rotated = g.scale(Complex64::i());
        let (c, r) = phase_align(&rotated, &g).unwrap();
        assert!((c - Complex64::i()).norm() <= 1e-12);
        assert!(r <= 1e-12);
        let (c, r) = phase_align(&g, &g).unwrap();
        assert!((c - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
        assert!(r <= 1e-12);
    }

    #[test]
    fn hermite_family() {
        let g = grid();
        let h0 = hermite(0, 1.0, g).unwrap();
        assert!(h0.max_abs_diff(&gaussian(1.0).unwrap().sample(g)) <= 1e-12);

        let battery = hermite_battery(41, 1.0, g).unwrap();
        for (i, hi) in battery.iter().enumerate() {
            for (j, hj) in battery.iter().enumerate() {
                let ip = hi.inner(hj);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!(
                    (ip - Complex64::new(expect, 0.0)).norm() <= 1e-10,
                    "Gram({i},{j}) = {ip}"
                );
            }
        }
        // Concentration: mass outside span/4 below 1e-12.
        for h in &battery {
            assert!(h.mass_fraction_outside(g.span() / 4.0) <= 1e-12);
        }
        // Eigenfunctions of the modified Fourier transform up to phase.
        for (k, h) in battery.iter().take(8).enumerate() {
            let (c, resid) = phase_align(&h.fourier_mod(), h).unwrap();
            assert!(resid <= 1e-9, "k = {k}, resid = {resid:.3e}");
            // F h_k = (-i)^k h_k, and fourier_mod carries i^{-1/2}.
            let expect = Complex64::from_polar(1.0, -PI / 4.0)
                * Complex64::new(0.0, -1.0).powu(k as u32);
            assert!((c - expect).norm() <= 1e-9);
        }
        assert!(hermite(61, 1.0, g).is_err());
    }
}
