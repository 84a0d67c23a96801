//! Centered discrete Fourier transforms and band-limited evaluation.
//!
//! All signals live on centered grids t_k = (k - N/2) dt with the induced
//! frequency grid w_j = (j - N/2) / (N dt). The forward transform
//! approximates F f(w) = integral f(t) e^{-2 pi i w t} dt:
//!
//! ```text
//! X_j = dt * sum_k x_k exp(-2 pi i (j - N/2)(k - N/2) / N)
//! ```
//!
//! which is an index-shifted standard DFT (fftshift / ifftshift sandwich).
//! Because the battery signals decay far below every working tolerance at
//! the grid edge, trigonometric (periodic band-limited) interpolation of
//! the samples is accurate to spectral precision and is used for all
//! off-grid evaluation: shifts, dilations and half-sample arguments.

use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

fn plan(n: usize, direction: FftDirection) -> Arc<dyn Fft<f64>> {
    static PLANS: OnceLock<Mutex<(FftPlanner<f64>, HashMap<(usize, bool), Arc<dyn Fft<f64>>>)>> =
        OnceLock::new();
    let cache = PLANS.get_or_init(|| Mutex::new((FftPlanner::new(), HashMap::new())));
    let mut guard = cache.lock().expect("fft planner poisoned");
    let key = (n, direction == FftDirection::Inverse);
    if let Some(f) = guard.1.get(&key) {
        return Arc::clone(f);
    }
    let f = guard.0.plan_fft(n, direction);
    guard.1.insert(key, Arc::clone(&f));
    f
}

/// Even-length fftshift (rotate by N/2); its own inverse.
fn shift_halves(x: &mut [Complex64]) {
    let n = x.len();
    debug_assert!(n % 2 == 0);
    x.rotate_left(n / 2);
}

/// Forward centered DFT scaled by dt (Riemann approximation of the Fourier
/// integral on the induced frequency grid).
pub fn centered_dft(x: &[Complex64], dt: f64) -> Vec<Complex64> {
    let mut buf = x.to_vec();
    shift_halves(&mut buf);
    plan(buf.len(), FftDirection::Forward).process(&mut buf);
    shift_halves(&mut buf);
    for v in &mut buf {
        *v *= dt;
    }
    buf
}

/// Inverse of `centered_dft`: x_k = (1/(N dt)) * sum_j X_j exp(+2 pi i ...).
pub fn centered_idft(spectrum: &[Complex64], dt: f64) -> Vec<Complex64> {
    let n = spectrum.len();
    let mut buf = spectrum.to_vec();
    shift_halves(&mut buf);
    plan(n, FftDirection::Inverse).process(&mut buf);
    shift_halves(&mut buf);
    let scale = 1.0 / (n as f64 * dt);
    for v in &mut buf {
        *v *= scale;
    }
    buf
}

/// Shifts samples by x (arbitrary real): returns the trig interpolant
/// evaluated at t_k - x, via a frequency-domain phase ramp.
pub fn spectral_shift(x_samples: &[Complex64], dt: f64, shift: f64) -> Vec<Complex64> {
    let n = x_samples.len();
    let mut spec = centered_dft(x_samples, dt);
    let freq_step = 1.0 / (n as f64 * dt);
    for (j, v) in spec.iter_mut().enumerate() {
        let w = (j as f64 - n as f64 / 2.0) * freq_step;
        *v *= Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * w * shift);
    }
    centered_idft(&spec, dt)
}

/// Spectrum zero-padding by an integer factor: same frequency step, wider
/// band; equivalently, the trig interpolant resampled at step dt / factor.
pub fn upsample(x_samples: &[Complex64], dt: f64, factor: usize) -> Vec<Complex64> {
    let n = x_samples.len();
    let m = n * factor;
    let spec = centered_dft(x_samples, dt);
    let mut padded = vec![Complex64::new(0.0, 0.0); m];
    padded[(m - n) / 2..(m + n) / 2].copy_from_slice(&spec);
    centered_idft(&padded, dt / factor as f64)
}

/// Evaluates the trig interpolant at arbitrary points. Cost O(N) per point;
/// the per-point geometric phase recurrence is re-synchronised every 256
/// terms to stop drift.
pub fn eval_trig_interp(x_samples: &[Complex64], dt: f64, points: &[f64]) -> Vec<Complex64> {
    let n = x_samples.len();
    let spec = centered_dft(x_samples, dt);
    let freq_step = 1.0 / (n as f64 * dt);
    let w0 = -(n as f64 / 2.0) * freq_step;
    points
        .iter()
        .map(|&t| {
            let step = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * freq_step * t);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut phase = Complex64::new(0.0, 0.0);
            for (j, &s) in spec.iter().enumerate() {
                if j % 256 == 0 {
                    phase = Complex64::from_polar(
                        1.0,
                        2.0 * std::f64::consts::PI * (w0 + j as f64 * freq_step) * t,
                    );
                }
                acc += s * phase;
                phase *= step;
            }
            acc * freq_step
        })
        .collect()
}

/// dt-weighted Fourier row: dt * sum_k u_k e^{-2 pi i w t_k} for each
/// requested w, with t_k = (k - N/2) dt. Same resynchronised recurrence.
pub fn dft_row(u: &[Complex64], dt: f64, omegas: &[f64]) -> Vec<Complex64> {
    let n = u.len();
    let t0 = -(n as f64 / 2.0) * dt;
    omegas
        .iter()
        .map(|&w| {
            let step = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * w * dt);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut phase = Complex64::new(0.0, 0.0);
            for (k, &v) in u.iter().enumerate() {
                if k % 256 == 0 {
                    phase = Complex64::from_polar(
                        1.0,
                        -2.0 * std::f64::consts::PI * w * (t0 + k as f64 * dt),
                    );
                }
                acc += v * phase;
                phase *= step;
            }
            acc * dt
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const N: usize = 1024;
    const DT: f64 = 1.0 / 32.0;

    fn gaussian_samples() -> Vec<Complex64> {
        (0..N)
            .map(|k| {
                let t = (k as f64 - N as f64 / 2.0) * DT;
                Complex64::new(std::f64::consts::SQRT_2.sqrt() * (-std::f64::consts::PI * t * t).exp(), 0.0)
            })
            .collect()
    }

    #[test]
    fn round_trip() {
        let x = gaussian_samples();
        let back = centered_idft(&centered_dft(&x, DT), DT);
        let err: f64 = x.iter().zip(&back).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-13);
    }

    #[test]
    fn gaussian_is_fourier_invariant() {
        // F g1 = g1 with the e^{-2 pi i w t} kernel.
        let x = gaussian_samples();
        let spec = centered_dft(&x, DT);
        let err: f64 = x.iter().zip(&spec).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-12, "err = {err:.3e}");
    }

    #[test]
    fn spectral_shift_matches_closed_form() {
        let x = gaussian_samples();
        let shifted = spectral_shift(&x, DT, 0.3);
        let err: f64 = (0..N)
            .map(|k| {
                let t = (k as f64 - N as f64 / 2.0) * DT;
                let expect = 2.0_f64.powf(0.25) * (-std::f64::consts::PI * (t - 0.3).powi(2)).exp();
                (shifted[k] - Complex64::new(expect, 0.0)).norm()
            })
            .fold(0.0, f64::max);
        assert!(err <= 1e-12, "err = {err:.3e}");
    }

    #[test]
    fn trig_interp_matches_closed_form() {
        let x = gaussian_samples();
        let pts: Vec<f64> = (0..50).map(|i| -3.0 + 0.123 * i as f64).collect();
        let vals = eval_trig_interp(&x, DT, &pts);
        let err: f64 = pts
            .iter()
            .zip(&vals)
            .map(|(&t, v)| {
                let expect = 2.0_f64.powf(0.25) * (-std::f64::consts::PI * t * t).exp();
                (v - Complex64::new(expect, 0.0)).norm()
            })
            .fold(0.0, f64::max);
        assert!(err <= 1e-12, "err = {err:.3e}");
    }

    #[test]
    fn upsample_hits_fine_grid() {
        let x = gaussian_samples();
        let fine = upsample(&x, DT, 4);
        let err: f64 = (0..4 * N)
            .map(|k| {
                let t = (k as f64 - (4 * N) as f64 / 2.0) * DT / 4.0;
                let expect = 2.0_f64.powf(0.25) * (-std::f64::consts::PI * t * t).exp();
                (fine[k] - Complex64::new(expect, 0.0)).norm()
            })
            .fold(0.0, f64::max);
        assert!(err <= 1e-12, "err = {err:.3e}");
    }

    #[test]
    fn dft_row_matches_centered_dft() {
        let x = gaussian_samples();
        let spec = centered_dft(&x, DT);
        let omegas: Vec<f64> = (0..N).map(|j| (j as f64 - N as f64 / 2.0) / (N as f64 * DT)).collect();
        let row = dft_row(&x, DT, &omegas);
        let err: f64 = spec.iter().zip(&row).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        assert!(err <= 1e-11, "err = {err:.3e}");
    }
}
