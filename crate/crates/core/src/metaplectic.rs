//! Quadratic Fourier transforms and the metaplectic correspondence.
//!
//! A [`MetaplecticDescriptor`] is a generating form W = (P, L, Q) plus a
//! Maslov class n (mod 4). It denotes the unitary operator
//!
//! ```text
//! S^_{W,n} psi(t) = i^{n - 1/2} sqrt(|L|) integral psi(t') e^{2 pi i W(t, t')} dt'
//! ```
//!
//! applied here in two independent ways: the generator pipeline
//! `chirp(P) . rescale(L, n) . fourier_mod . chirp(Q)` (exact on analytic
//! Gaussians, FFT-based on samples) and the direct discretised kernel
//! integral ([`metaplectic_quadrature`]), which serves as the oracle for
//! the pipeline. The natural projection sends the descriptor to the free
//! matrix of its form; products of descriptors cover all of Sp(2, R).
//!
//! Note the sign pairing: the operator factor `chirp(c)` (multiplication by
//! e^{i pi c t^2}) projects to [[1, 0], [c, 1]], which is the shear V_{-c}
//! in this crate's matrix convention. The generator-word lift below keeps
//! the bookkeeping straight, and the quadrature oracle plus the covariance
//! checks in `tfa` pin every sign.

use crate::error::{Error, Result};
use crate::fft;
use crate::signal::{maslov_index, AnalyticGaussian, SampledSignal};
use crate::symplectic::{
    generating_form, matrix_of_form, two_free_factorization, GeneratorFactor, GeneratorWord,
    QuadraticFormW, SymplecticMat,
};
use num_complex::Complex64;
use rayon::prelude::*;
use std::f64::consts::PI;

/// Generating form plus Maslov class mod 4. The two classes n and n + 2
/// label the two metaplectic lifts of the same free matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetaplecticDescriptor {
    pub form: QuadraticFormW,
    pub maslov: u8,
}

impl MetaplecticDescriptor {
    /// Requires n mod 2 to match the sign class of L.
    pub fn new(form: QuadraticFormW, maslov: u8) -> Result<Self> {
        if maslov > 3 {
            return Err(Error::InvalidInput(format!("Maslov class {maslov} not in 0..=3")));
        }
        if maslov % 2 != maslov_index(form.l)? {
            return Err(Error::InvalidInput(format!(
                "Maslov class {maslov} inconsistent with sign of L = {}",
                form.l
            )));
        }
        Ok(Self { form, maslov })
    }

    /// Descriptor of a free matrix with the canonical Maslov representative
    /// (0 for L > 0, 1 for L < 0).
    pub fn of_matrix(s: &SymplecticMat) -> Result<Self> {
        let form = generating_form(s)?;
        Self::new(form, maslov_index(form.l)?)
    }

    /// Natural projection to the free symplectic matrix of the form.
    pub fn projection(&self) -> SymplecticMat {
        matrix_of_form(&self.form).expect("descriptor forms have L != 0")
    }

    /// Inverse descriptor: W*(t, t') = -W(t', t), i.e. (P, L, Q) ->
    /// (-Q, -L, -P), with n* = 1 - n (mod 4). Projects to the matrix
    /// inverse, and the operator inverts the original exactly.
    pub fn inverse(&self) -> Self {
        let form = QuadraticFormW { p: -self.form.q, l: -self.form.l, q: -self.form.p };
        Self { form, maslov: (5 - self.maslov) % 4 }
    }

    /// The other lift of the same matrix: n + 2, operator negated.
    pub fn cover_partner(&self) -> Self {
        Self { form: self.form, maslov: (self.maslov + 2) % 4 }
    }
}

/// i^n for a Maslov class, exact.
fn i_pow(n: u8) -> Complex64 {
    Complex64::i().powu(n as u32)
}

/// Pipeline application to a sampled signal:
/// chirp(Q) first, then fourier_mod, rescale(L, n), chirp(P).
pub fn apply_descriptor_sampled(
    desc: &MetaplecticDescriptor,
    f: &SampledSignal,
) -> Result<SampledSignal> {
    let w = desc.form;
    Ok(f.chirp(w.q).fourier_mod().rescale(w.l, desc.maslov)?.chirp(w.p))
}

/// Pipeline application to an analytic Gaussian; exact arithmetic on (a, q).
pub fn apply_descriptor_gaussian(
    desc: &MetaplecticDescriptor,
    g: &AnalyticGaussian,
) -> Result<AnalyticGaussian> {
    let w = desc.form;
    Ok(g.chirp(w.q).fourier_mod().rescale(w.l, desc.maslov)?.chirp(w.p))
}

/// Direct discretisation of the kernel integral, the independent oracle for
/// the pipeline.
///
/// The input is upsampled fourfold (spectral zero-padding) before the
/// Riemann sum so the oscillatory kernel stays far below the working
/// Nyquist rate; the precondition check below refuses descriptors whose
/// kernel would alias anyway.
pub fn metaplectic_quadrature(
    desc: &MetaplecticDescriptor,
    f: &SampledSignal,
) -> Result<SampledSignal> {
    let w = desc.form;
    let grid = f.grid;
    let factor = 4usize;
    let dt_fine = grid.dt() / factor as f64;

    // Kernel adequacy: the integrand's instantaneous frequency in t' is
    // Q t' - L t plus the signal's own bandwidth; it must stay below the
    // fine Nyquist rate over the effective supports.
    let t_out = grid.span() / 2.0;
    let t_sig = f.effective_radius(1e-14);
    let b_sig = {
        let spec = fft::centered_dft(&f.samples, grid.dt());
        let total: f64 = spec.iter().map(|v| v.norm_sqr()).sum();
        let mut acc = 0.0;
        let mut radius = grid.bandwidth() / 2.0;
        let mut pairs: Vec<(f64, f64)> = spec
            .iter()
            .enumerate()
            .map(|(j, v)| (grid.omega(j).abs(), v.norm_sqr()))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite"));
        for (r, m) in pairs {
            acc += m;
            if acc >= total * (1.0 - 1e-14) {
                radius = r;
                break;
            }
        }
        radius
    };
    let max_freq = w.l.abs() * t_out + w.q.abs() * t_sig + b_sig;
    let nyq_fine = 0.5 / dt_fine;
    if max_freq > 0.9 * nyq_fine {
        return Err(Error::KernelUndersampled(format!(
            "kernel frequency reaches {max_freq:.1} vs fine Nyquist {nyq_fine:.1} \
             (|L| = {:.3}, |Q| = {:.3}, signal radius {t_sig:.1})",
            w.l.abs(),
            w.q.abs()
        )));
    }

    let fine = fft::upsample(&f.samples, grid.dt(), factor);
    let n_fine = fine.len();
    let t_fine0 = -(n_fine as f64 / 2.0) * dt_fine;
    // Pre-chirped integrand psi(t') e^{i pi Q t'^2}.
    let phi: Vec<Complex64> = fine
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let tp = t_fine0 + j as f64 * dt_fine;
            v * Complex64::from_polar(1.0, PI * w.q * tp * tp)
        })
        .collect();

    let prefactor = i_pow(desc.maslov) * Complex64::from_polar(1.0, -PI / 4.0) * w.l.abs().sqrt();
    let samples: Vec<Complex64> = (0..grid.n())
        .into_par_iter()
        .map(|k| {
            let t = grid.t(k);
            let step = Complex64::from_polar(1.0, -2.0 * PI * w.l * t * dt_fine);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut phase = Complex64::new(0.0, 0.0);
            for (j, &v) in phi.iter().enumerate() {
                if j % 256 == 0 {
                    let tp = t_fine0 + j as f64 * dt_fine;
                    phase = Complex64::from_polar(1.0, -2.0 * PI * w.l * t * tp);
                }
                acc += v * phase;
                phase *= step;
            }
            prefactor * Complex64::from_polar(1.0, PI * w.p * t * t) * acc * dt_fine
        })
        .collect();

    SampledSignal::new(grid, samples)
}

/// Operator lift of one generator-word factor. The shear factor V_p lifts
/// to multiplication by e^{-i pi p t^2}, i.e. `chirp(-p)`.
pub fn apply_factor_sampled(factor: &GeneratorFactor, f: &SampledSignal) -> Result<SampledSignal> {
    match *factor {
        GeneratorFactor::Chirp { p } => Ok(f.chirp(-p)),
        GeneratorFactor::Rescale { l, n } => f.rescale(l, n),
        GeneratorFactor::Fourier => Ok(f.fourier_mod()),
    }
}

/// Same lift on the analytic-Gaussian path.
pub fn apply_factor_gaussian(
    factor: &GeneratorFactor,
    g: &AnalyticGaussian,
) -> Result<AnalyticGaussian> {
    match *factor {
        GeneratorFactor::Chirp { p } => Ok(g.chirp(-p)),
        GeneratorFactor::Rescale { l, n } => g.rescale(l, n),
        GeneratorFactor::Fourier => Ok(g.fourier_mod()),
    }
}

/// Applies a generator word: factors are in matrix-product order, so the
/// last factor acts first.
pub fn apply_word_sampled(word: &GeneratorWord, f: &SampledSignal) -> Result<SampledSignal> {
    let mut out = f.clone();
    for factor in word.factors.iter().rev() {
        out = apply_factor_sampled(factor, &out)?;
    }
    Ok(out)
}

pub fn apply_word_gaussian(word: &GeneratorWord, g: &AnalyticGaussian) -> Result<AnalyticGaussian> {
    let mut out = *g;
    for factor in word.factors.iter().rev() {
        out = apply_factor_gaussian(factor, &out)?;
    }
    Ok(out)
}

/// Descriptor word for an arbitrary symplectic matrix: one descriptor when
/// free, two otherwise (via the two-free factorization). Matrix-product
/// order; the last descriptor acts first.
pub fn descriptor_word(s: &SymplecticMat) -> Result<Vec<MetaplecticDescriptor>> {
    if s.is_free() {
        Ok(vec![MetaplecticDescriptor::of_matrix(s)?])
    } else {
        let (f1, f2) = two_free_factorization(s);
        Ok(vec![MetaplecticDescriptor::of_matrix(&f1)?, MetaplecticDescriptor::of_matrix(&f2)?])
    }
}

/// Metaplectic transport of a sampled signal along any symplectic matrix:
/// one lift S^ with projection S (the other is its negative).
pub fn apply_matrix_sampled(s: &SymplecticMat, f: &SampledSignal) -> Result<SampledSignal> {
    let mut out = f.clone();
    for desc in descriptor_word(s)?.iter().rev() {
        out = apply_descriptor_sampled(desc, &out)?;
    }
    Ok(out)
}

pub fn apply_matrix_gaussian(s: &SymplecticMat, g: &AnalyticGaussian) -> Result<AnalyticGaussian> {
    let mut out = *g;
    for desc in descriptor_word(s)?.iter().rev() {
        out = apply_descriptor_gaussian(desc, &out)?;
    }
    Ok(out)
}

/// Natural projection of a descriptor word: the product of the factor
/// projections.
pub fn natural_projection(word: &[MetaplecticDescriptor]) -> SymplecticMat {
    word.iter().fold(SymplecticMat::identity(), |acc, d| acc * d.projection())
}
