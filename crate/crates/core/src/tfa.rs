//! Time-frequency representations and their interrelations.
//!
//! Conventions (kernel e^{-2 pi i w t} throughout):
//!
//! ```text
//! V_g f(x, w) = <f, M_w T_x g> = integral f(t) conj(g(t - x)) e^{-2 pi i w t} dt
//! A_g f(x, w) = integral f(t + x/2) conj(g(t - x/2)) e^{-2 pi i w t} dt
//! W f(x, w)   = integral f(x + t/2) conj(f(x - t/2)) e^{-2 pi i w t} dt
//! ```
//!
//! linked by A_g f = e^{pi i x w} V_g f and W f(z) = F(A f)(J z). Half-shift
//! arguments are produced by spectral interpolation, never by grid
//! snapping, so the closed-form Gaussian identities hold to 1e-8 on the
//! desk grid. The covariance principle A(S^ f)(z) = A f(S^{-1} z) is made
//! executable by `covariance_check`, with the reference side interpolated
//! bicubically from a 4x-refined FFT surface.

use crate::error::{Error, Result};
use crate::fft;
use crate::metaplectic::{apply_matrix_sampled, MetaplecticDescriptor};
use crate::signal::{gaussian, SampledSignal};
use crate::symplectic::SymplecticMat;
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Rectangular evaluation grid in the time-frequency plane, symmetric
/// about the origin and including it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TFGrid {
    x_half: usize,
    x_step: f64,
    w_half: usize,
    w_step: f64,
}

impl TFGrid {
    /// Grid x in [-xr, xr], w in [-wr, wr] at the given steps (ranges are
    /// rounded to whole steps).
    pub fn symmetric(xr: f64, x_step: f64, wr: f64, w_step: f64) -> Result<Self> {
        if !(x_step > 0.0 && w_step > 0.0 && xr >= 0.0 && wr >= 0.0) {
            return Err(Error::InvalidInput("TF grid needs positive steps and ranges".into()));
        }
        Ok(Self {
            x_half: (xr / x_step).round() as usize,
            x_step,
            w_half: (wr / w_step).round() as usize,
            w_step,
        })
    }

    pub fn xs(&self) -> Vec<f64> {
        (0..=2 * self.x_half)
            .map(|i| (i as f64 - self.x_half as f64) * self.x_step)
            .collect()
    }

    pub fn omegas(&self) -> Vec<f64> {
        (0..=2 * self.w_half)
            .map(|j| (j as f64 - self.w_half as f64) * self.w_step)
            .collect()
    }

    pub fn nx(&self) -> usize {
        2 * self.x_half + 1
    }

    pub fn nw(&self) -> usize {
        2 * self.w_half + 1
    }

    /// Extreme corners, for range computations under linear maps.
    pub fn corners(&self) -> [(f64, f64); 4] {
        let xr = self.x_half as f64 * self.x_step;
        let wr = self.w_half as f64 * self.w_step;
        [(xr, wr), (xr, -wr), (-xr, wr), (-xr, -wr)]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SurfaceKind {
    Stft,
    Ambiguity,
    Wigner,
}

/// Complex values over a TF grid, row-major in x.
#[derive(Clone, Debug)]
pub struct TFSurface {
    pub grid: TFGrid,
    pub kind: SurfaceKind,
    pub values: Vec<Complex64>,
}

impl TFSurface {
    pub fn value(&self, ix: usize, iw: usize) -> Complex64 {
        self.values[ix * self.grid.nw() + iw]
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }
}

fn product_row(
    f: &SampledSignal,
    g: &SampledSignal,
    x: f64,
    half_shift: bool,
) -> Result<Vec<Complex64>> {
    assert_eq!(f.grid, g.grid, "TF transforms need a common grid");
    let (fs, gs) = if half_shift {
        (f.tf_shift(-x / 2.0, 0.0)?, g.tf_shift(x / 2.0, 0.0)?)
    } else {
        (f.clone(), g.tf_shift(x, 0.0)?)
    };
    Ok(fs
        .samples
        .iter()
        .zip(&gs.samples)
        .map(|(a, b)| a * b.conj())
        .collect())
}

/// STFT at one point: V_g f(x, w).
pub fn stft_point(f: &SampledSignal, g: &SampledSignal, x: f64, w: f64) -> Result<Complex64> {
    let u = product_row(f, g, x, false)?;
    Ok(fft::dft_row(&u, f.grid.dt(), &[w])[0])
}

/// Cross-ambiguity at one point: A_g f(x, w).
pub fn cross_ambiguity_point(
    f: &SampledSignal,
    g: &SampledSignal,
    x: f64,
    w: f64,
) -> Result<Complex64> {
    let u = product_row(f, g, x, true)?;
    Ok(fft::dft_row(&u, f.grid.dt(), &[w])[0])
}

/// Ambiguity at one point: A f = A_f f.
pub fn ambiguity_point(f: &SampledSignal, x: f64, w: f64) -> Result<Complex64> {
    cross_ambiguity_point(f, f, x, w)
}

fn surface(
    f: &SampledSignal,
    g: &SampledSignal,
    grid: &TFGrid,
    kind: SurfaceKind,
) -> Result<TFSurface> {
    let omegas = grid.omegas();
    let dt = f.grid.dt();
    let rows: Result<Vec<Vec<Complex64>>> = grid
        .xs()
        .par_iter()
        .map(|&x| {
            let u = product_row(f, g, x, kind == SurfaceKind::Ambiguity)?;
            Ok(fft::dft_row(&u, dt, &omegas))
        })
        .collect();
    Ok(TFSurface { grid: *grid, kind, values: rows?.concat() })
}

/// STFT over a grid, one FFT-ready row per x.
pub fn stft_surface(f: &SampledSignal, g: &SampledSignal, grid: &TFGrid) -> Result<TFSurface> {
    surface(f, g, grid, SurfaceKind::Stft)
}

pub fn cross_ambiguity_surface(
    f: &SampledSignal,
    g: &SampledSignal,
    grid: &TFGrid,
) -> Result<TFSurface> {
    surface(f, g, grid, SurfaceKind::Ambiguity)
}

pub fn ambiguity_surface(f: &SampledSignal, grid: &TFGrid) -> Result<TFSurface> {
    surface(f, f, grid, SurfaceKind::Ambiguity)
}

/// Closed-form ambiguity of the unit Gaussian g_m:
/// A g_m(x, w) = e^{-(pi/2)(m x^2 + w^2 / m)}.
pub fn ambiguity_gaussian_closed(m: f64, x: f64, w: f64) -> Result<f64> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::InvalidMass(m));
    }
    Ok((-(PI / 2.0) * (m * x * x + w * w / m)).exp())
}

/// Wigner distribution over a grid. The half-sample arguments
/// f(x +- t/2) come from a 2x spectrally upsampled copy shifted by x.
pub fn wigner_surface(f: &SampledSignal, grid: &TFGrid) -> Result<TFSurface> {
    let n = f.grid.n();
    let dt = f.grid.dt();
    let fine = fft::upsample(&f.samples, dt, 2);
    let span4 = f.grid.span() / 4.0;
    let omegas = grid.omegas();
    let rows: Result<Vec<Vec<Complex64>>> = grid
        .xs()
        .par_iter()
        .map(|&x| {
            if x.abs() > span4 {
                return Err(Error::InvalidInput(format!(
                    "Wigner x = {x} exceeds span/4 = {span4}"
                )));
            }
            // samples of f(x + u) on the fine grid
            let shifted = fft::spectral_shift(&fine, dt / 2.0, -x);
            let v: Vec<Complex64> = (0..n)
                .map(|k| {
                    let a = shifted[k + n / 2];
                    let b = shifted[3 * n / 2 - k];
                    a * b.conj()
                })
                .collect();
            Ok(fft::dft_row(&v, dt, &omegas))
        })
        .collect();
    Ok(TFSurface { grid: *grid, kind: SurfaceKind::Wigner, values: rows?.concat() })
}

/// Fine uniform reference surface with bicubic (4x4 Lagrange) evaluation.
pub(crate) struct FineSurface {
    x0: f64,
    w0: f64,
    step: f64,
    nx: usize,
    nw: usize,
    values: Vec<Complex64>,
}

impl FineSurface {
    fn cubic_weights(s: f64) -> [f64; 4] {
        // Lagrange weights on nodes -1, 0, 1, 2 at offset s in [0, 1].
        [
            -s * (s - 1.0) * (s - 2.0) / 6.0,
            (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
            -(s + 1.0) * s * (s - 2.0) / 2.0,
            (s + 1.0) * s * (s - 1.0) / 6.0,
        ]
    }

    pub(crate) fn eval(&self, x: f64, w: f64) -> Result<Complex64> {
        let fx = (x - self.x0) / self.step;
        let fw = (w - self.w0) / self.step;
        let ix = fx.floor() as isize;
        let iw = fw.floor() as isize;
        if ix < 1 || ix + 2 >= self.nx as isize || iw < 1 || iw + 2 >= self.nw as isize {
            return Err(Error::Resolution(format!(
                "reference surface does not cover ({x:.3}, {w:.3})"
            )));
        }
        let wx = Self::cubic_weights(fx - ix as f64);
        let ww = Self::cubic_weights(fw - iw as f64);
        let mut acc = Complex64::new(0.0, 0.0);
        for a in 0..4 {
            let row = (ix - 1 + a as isize) as usize;
            let mut inner = Complex64::new(0.0, 0.0);
            for b in 0..4 {
                let col = (iw - 1 + b as isize) as usize;
                inner += self.values[row * self.nw + col] * ww[b];
            }
            acc += inner * wx[a];
        }
        Ok(acc)
    }
}

/// Ambiguity of f on a 4x-refined uniform grid covering
/// [-xr, xr] x [-wr, wr], built column-by-column with zero-padded FFTs.
pub(crate) fn ambiguity_reference(
    f: &SampledSignal,
    xr: f64,
    wr: f64,
) -> Result<FineSurface> {
    let grid = f.grid;
    let pad = 4usize;
    let step = grid.freq_step() / pad as f64;
    let wr_max = grid.bandwidth() / 2.0 - 2.0 * step;
    if wr >= wr_max {
        return Err(Error::Resolution(format!(
            "reference frequency range {wr:.2} exceeds representable {wr_max:.2}"
        )));
    }
    if xr >= grid.span() / 2.0 - 2.0 * step {
        return Err(Error::Resolution(format!("reference time range {xr:.2} exceeds grid")));
    }
    let m = (xr / step).ceil() as usize + 2;
    let mw = (wr / step).ceil() as usize + 2;
    let n = grid.n();
    let npad = n * pad;
    // index of omega = 0 in the padded spectrum
    let j0 = npad / 2;
    let nx = 2 * m + 1;
    let nw = 2 * mw + 1;
    let rows: Result<Vec<Vec<Complex64>>> = (0..nx)
        .into_par_iter()
        .map(|i| {
            let x = (i as f64 - m as f64) * step;
            let u = product_row(f, f, x, true)?;
            let mut padded = vec![Complex64::new(0.0, 0.0); npad];
            padded[(npad - n) / 2..(npad + n) / 2].copy_from_slice(&u);
            let spec = fft::centered_dft(&padded, grid.dt());
            Ok((0..nw).map(|j| spec[j0 + j - mw]).collect())
        })
        .collect();
    Ok(FineSurface {
        x0: -(m as f64) * step,
        w0: -(mw as f64) * step,
        step,
        nx,
        nw,
        values: rows?.concat(),
    })
}

/// Covariance principle as a number: max over the grid of
/// |A(S^ f)(z) - A f(S^{-1} z)|, the reference side interpolated from a
/// 4x-refined surface.
pub fn covariance_check(s: &SymplecticMat, f: &SampledSignal, grid: &TFGrid) -> Result<f64> {
    let transported = apply_matrix_sampled(s, f)?;
    let lhs = ambiguity_surface(&transported, grid)?;
    let sinv = s.inverse();
    let mut xr: f64 = 0.0;
    let mut wr: f64 = 0.0;
    for (cx, cw) in grid.corners() {
        let (u, v) = sinv.apply(cx, cw);
        xr = xr.max(u.abs());
        wr = wr.max(v.abs());
    }
    let reference = ambiguity_reference(f, xr + 0.5, wr + 0.5)?;
    let xs = grid.xs();
    let ws = grid.omegas();
    let mut max_dev: f64 = 0.0;
    for (ix, &x) in xs.iter().enumerate() {
        for (iw, &w) in ws.iter().enumerate() {
            let (u, v) = sinv.apply(x, w);
            let dev = (lhs.value(ix, iw) - reference.eval(u, v)?).norm();
            max_dev = max_dev.max(dev);
        }
    }
    Ok(max_dev)
}

/// Residual of the Wigner / ambiguity symplectic-Fourier relation
/// W f(z) = F(A f)(J z), checked on |x|, |w| <= compare_half with both
/// surfaces on the self-dual 256-point step-1/16 grid.
pub fn wigner_ambiguity_relation_residual(f: &SampledSignal, compare_half: f64) -> Result<f64> {
    let nside = 256usize;
    let h = 1.0 / 16.0;
    // raw centered grids (even count, endpoints at -8 .. 8 - h)
    let coords: Vec<f64> = (0..nside).map(|i| (i as f64 - nside as f64 / 2.0) * h).collect();
    let dt = f.grid.dt();

    // Ambiguity on the raw grid.
    let amb_rows: Result<Vec<Vec<Complex64>>> = coords
        .par_iter()
        .map(|&x| {
            let u = product_row(f, f, x, true)?;
            Ok(fft::dft_row(&u, dt, &coords))
        })
        .collect();
    let amb = amb_rows?;

    // 2D centered DFT: rows over w, then columns over x.
    let mut stage1: Vec<Vec<Complex64>> = amb
        .par_iter()
        .map(|row| fft::centered_dft(row, h))
        .collect();
    // transpose and transform again
    let mut sf = vec![vec![Complex64::new(0.0, 0.0); nside]; nside];
    for q in 0..nside {
        let col: Vec<Complex64> = stage1.iter().map(|row| row[q]).collect();
        let t = fft::centered_dft(&col, h);
        for (p, v) in t.into_iter().enumerate() {
            sf[p][q] = v;
        }
    }
    stage1.clear();

    // Wigner on the comparison sub-grid.
    let wgrid = TFGrid::symmetric(compare_half, h, compare_half, h)?;
    let wig = wigner_surface(f, &wgrid)?;

    let idx = |v: f64| -> usize { ((v / h).round() as isize + nside as isize / 2) as usize };
    let mut max_dev: f64 = 0.0;
    for (ix, &x) in wgrid.xs().iter().enumerate() {
        for (iw, &w) in wgrid.omegas().iter().enumerate() {
            // F(Af)(J z) with J z = (w, -x)
            let dev = (wig.value(ix, iw) - sf[idx(w)][idx(-x)]).norm();
            max_dev = max_dev.max(dev);
        }
    }
    Ok(max_dev)
}

/// Moyal-type mass check: dx dw sum of W f over [-8, 8)^2 vs ||f||^2.
pub fn wigner_mass_residual(f: &SampledSignal) -> Result<f64> {
    let h = 1.0 / 16.0;
    let half = 8.0 - h;
    let grid = TFGrid::symmetric(half, h, half, h)?;
    let w = wigner_surface(f, &grid)?;
    let mass: f64 = w.values.iter().map(|v| v.re).sum::<f64>() * h * h;
    Ok((mass - f.norm().powi(2)).abs())
}

/// The two worked ambiguity surfaces of the modular example: the images of
/// g_{sqrt 3} under the two quarter-turn metaplectic rotations, with their
/// closed-form targets e^{-(pi/2)(2/sqrt 3)(x^2 +- x w + w^2)}.
pub struct Example49Surfaces {
    pub plus: TFSurface,
    pub minus: TFSurface,
    pub max_resid_plus: f64,
    pub max_resid_minus: f64,
}

pub fn example49_surfaces(delta: f64, grid: GridChoice) -> Result<Example49Surfaces> {
    if !(delta > 1.0) {
        return Err(Error::InvalidInput(format!(
            "the worked example needs density > 1, got {delta}"
        )));
    }
    let sgrid = match grid {
        GridChoice::Default => crate::signal::GridSpec::default_desk(),
        GridChoice::Custom(g) => g,
    };
    let window = gaussian(3.0_f64.sqrt())?.sample(sgrid);
    let tf = TFGrid::symmetric(2.0, 1.0 / 16.0, 2.0, 1.0 / 16.0)?;
    let rot = SymplecticMat::rotation(-PI / 4.0);
    let desc = MetaplecticDescriptor::of_matrix(&rot)?;

    let make = |d: &MetaplecticDescriptor| -> Result<TFSurface> {
        let transported = crate::metaplectic::apply_descriptor_sampled(d, &window)?;
        ambiguity_surface(&transported, &tf)
    };
    let plus = make(&desc)?;
    let minus = make(&desc.inverse())?;

    let closed = |x: f64, w: f64, sign: f64| -> f64 {
        (-(PI / 2.0) * (2.0 / 3.0_f64.sqrt()) * (x * x + sign * x * w + w * w)).exp()
    };
    let mut rp: f64 = 0.0;
    let mut rm: f64 = 0.0;
    for (ix, &x) in tf.xs().iter().enumerate() {
        for (iw, &w) in tf.omegas().iter().enumerate() {
            rp = rp.max((plus.value(ix, iw) - Complex64::new(closed(x, w, 1.0), 0.0)).norm());
            rm = rm.max((minus.value(ix, iw) - Complex64::new(closed(x, w, -1.0), 0.0)).norm());
        }
    }
    Ok(Example49Surfaces { plus, minus, max_resid_plus: rp, max_resid_minus: rm })
}

/// Grid selector for the worked examples.
#[derive(Clone, Copy, Debug)]
pub enum GridChoice {
    Default,
    Custom(crate::signal::GridSpec),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signal::{hermite, GridSpec};
    use crate::symplectic::oscillator_flow;

    fn grid() -> GridSpec {
        GridSpec::default_desk()
    }

    #[test]
    fn stft_at_origin_is_energy() {
        let g = gaussian(1.0).unwrap().sample(grid());
        let v = stft_point(&g, &g, 0.0, 0.0).unwrap();
        assert!((v - Complex64::new(1.0, 0.0)).norm() <= 1e-12);
    }

    #[test]
    fn gaussian_stft_modulus() {
        let g = gaussian(1.0).unwrap().sample(grid());
        for (x, w) in [(0.5, 0.25), (1.0, -1.0), (-2.0, 0.75), (2.5, 2.5)] {
            let v = stft_point(&g, &g, x, w).unwrap();
            let expect = (-(PI / 2.0) * (x * x + w * w)).exp();
            assert!((v.norm() - expect).abs() <= 1e-9, "({x},{w})");
        }
    }

    #[test]
    fn ambiguity_closed_form_matches() {
        let tf = TFGrid::symmetric(3.0, 0.25, 3.0, 0.25).unwrap();
        for m in [1.0 / 3.0_f64.sqrt(), 1.0, 3.0_f64.sqrt()] {
            let f = gaussian(m).unwrap().sample(grid());
            let surf = ambiguity_surface(&f, &tf).unwrap();
            let mut max_err: f64 = 0.0;
            for (ix, &x) in tf.xs().iter().enumerate() {
                for (iw, &w) in tf.omegas().iter().enumerate() {
                    let expect = ambiguity_gaussian_closed(m, x, w).unwrap();
                    max_err =
                        max_err.max((surf.value(ix, iw) - Complex64::new(expect, 0.0)).norm());
                }
            }
            assert!(max_err <= 1e-8, "m = {m}: {max_err:.3e}");
        }
    }

    #[test]
    fn ambiguity_origin_and_symmetry() {
        let f = hermite(3, 1.0, grid()).unwrap();
        let at0 = ambiguity_point(&f, 0.0, 0.0).unwrap();
        assert!((at0.re - f.norm().powi(2)).abs() <= 1e-10);
        // A f(-x, -w) = conj(A f(x, w))
        for (x, w) in [(0.8, 0.4), (1.5, -0.6), (-0.3, 1.1)] {
            let a = ambiguity_point(&f, x, w).unwrap();
            let b = ambiguity_point(&f, -x, -w).unwrap();
            assert!((a - b.conj()).norm() <= 1e-10);
        }
    }

    #[test]
    fn cross_ambiguity_phase_relation() {
        let f = hermite(2, 1.0, grid()).unwrap();
        let g = gaussian(1.0).unwrap().sample(grid());
        let tf = TFGrid::symmetric(2.0, 0.4, 2.0, 0.4).unwrap();
        let amb = cross_ambiguity_surface(&f, &g, &tf).unwrap();
        let stft = stft_surface(&f, &g, &tf).unwrap();
        let mut max_err: f64 = 0.0;
        for (ix, &x) in tf.xs().iter().enumerate() {
            for (iw, &w) in tf.omegas().iter().enumerate() {
                let phase = Complex64::from_polar(1.0, PI * x * w);
                max_err = max_err.max((amb.value(ix, iw) - phase * stft.value(ix, iw)).norm());
            }
        }
        assert!(max_err <= 1e-9, "{max_err:.3e}");
        // orthogonal Hermites vanish at the origin
        let h0 = hermite(0, 1.0, grid()).unwrap();
        let h1 = hermite(1, 1.0, grid()).unwrap();
        assert!(cross_ambiguity_point(&h1, &h0, 0.0, 0.0).unwrap().norm() <= 1e-12);
        // cross with itself = plain ambiguity
        let a = cross_ambiguity_point(&f, &f, 0.7, -0.9).unwrap();
        let b = ambiguity_point(&f, 0.7, -0.9).unwrap();
        assert!((a - b).norm() <= 1e-14);
    }

    #[test]
    fn cauchy_schwarz_bound() {
        let f = hermite(5, 1.0, grid()).unwrap();
        let g = gaussian(2.0).unwrap().sample(grid());
        let tf = TFGrid::symmetric(3.0, 0.5, 3.0, 0.5).unwrap();
        let s = stft_surface(&f, &g, &tf).unwrap();
        assert!(s.max_abs() <= f.norm() * g.norm() + 1e-9);
    }

    #[test]
    fn wigner_gaussian_real_and_massive() {
        let f = gaussian(1.0).unwrap().sample(grid());
        let tf = TFGrid::symmetric(2.0, 0.25, 2.0, 0.25).unwrap();
        let w = wigner_surface(&f, &tf).unwrap();
        assert!(w.max_abs_imag() <= 1e-10);
        // closed form W g_1(x, w) = 2^... : value at origin is 2^{1/2} *
        // ... check just the mass identity instead.
        let resid = wigner_mass_residual(&f).unwrap();
        assert!(resid <= 1e-6, "{resid:.3e}");
    }

    #[test]
    fn wigner_is_symplectic_fourier_of_ambiguity() {
        let f = hermite(1, 1.0, grid()).unwrap();
        let resid = wigner_ambiguity_relation_residual(&f, 3.0).unwrap();
        assert!(resid <= 1e-7, "{resid:.3e}");
    }

    #[test]
    fn covariance_identity_for_identity() {
        let f = gaussian(1.0).unwrap().sample(grid());
        let tf = TFGrid::symmetric(2.0, 0.25, 2.0, 0.25).unwrap();
        let dev = covariance_check(&SymplecticMat::identity(), &f, &tf).unwrap();
        assert!(dev <= 1e-9, "{dev:.3e}");
    }

    #[test]
    fn covariance_for_flow_on_matched_gaussian() {
        // A(S^_{tau,m} g_m) = A g_m: the flow fixes the matched Gaussian.
        let m = 3.0_f64.sqrt();
        let f = gaussian(m).unwrap().sample(grid());
        let s = oscillator_flow(PI / 6.0, m).unwrap();
        let tf = TFGrid::symmetric(2.0, 0.25, 2.0, 0.25).unwrap();
        let dev = covariance_check(&s, &f, &tf).unwrap();
        assert!(dev <= 1e-6, "{dev:.3e}");
        // and the ambiguity really is unchanged
        let transported = apply_matrix_sampled(&s, &f).unwrap();
        let mut max_err: f64 = 0.0;
        for (ix, &x) in tf.xs().iter().enumerate() {
            for (iw, &w) in tf.omegas().iter().enumerate() {
                let expect = ambiguity_gaussian_closed(m, x, w).unwrap();
                let got = ambiguity_surface(&transported, &tf).unwrap().value(ix, iw);
                max_err = max_err.max((got - Complex64::new(expect, 0.0)).norm());
            }
        }
        assert!(max_err <= 1e-6);
    }

    #[test]
    fn covariance_pins_rescaling_convention() {
        // A(rescale(sqrt m) g_1)(z) = A g_1(M_{sqrt m}^{-1} z).
        let m = 2.0_f64;
        let f = gaussian(1.0).unwrap().sample(grid());
        let s = SymplecticMat::rescaling(m.sqrt()).unwrap();
        let tf = TFGrid::symmetric(1.5, 0.25, 1.5, 0.25).unwrap();
        let dev = covariance_check(&s, &f, &tf).unwrap();
        assert!(dev <= 1e-6, "{dev:.3e}");
    }

    #[test]
    fn example49_matches_closed_forms() {
        let out = example49_surfaces(2.0, GridChoice::Default).unwrap();
        assert!(out.max_resid_plus <= 1e-6, "{:.3e}", out.max_resid_plus);
        assert!(out.max_resid_minus <= 1e-6, "{:.3e}", out.max_resid_minus);
        // both surfaces have value 1 at the origin
        let c = out.plus.grid.nx() / 2;
        assert!((out.plus.value(c, c).re - 1.0).abs() <= 1e-9);
        assert!((out.minus.value(c, c).re - 1.0).abs() <= 1e-9);
    }
}
