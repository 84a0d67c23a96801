//! Hermitian eigenvalue helpers.
//!
//! A complex Hermitian matrix H = A + iB embeds as the real symmetric
//! matrix [[A, -B], [B, A]] whose spectrum equals that of H with doubled
//! multiplicities, so extreme eigenvalues carry over directly. nalgebra's
//! symmetric eigensolver does the rest.

use crate::error::{Error, Result};
use nalgebra::DMatrix;
use num_complex::Complex64;

/// Full real spectrum of a Hermitian matrix given in row-major order.
/// Checks Hermiticity to `herm_tol` first (a violation indicates an
/// assembly bug upstream, not data noise).
pub fn hermitian_eigenvalues(h: &[Complex64], k: usize, herm_tol: f64) -> Result<Vec<f64>> {
    if h.len() != k * k {
        return Err(Error::Eigen(format!("matrix length {} != {k}x{k}", h.len())));
    }
    let mut max_dev: f64 = 0.0;
    for i in 0..k {
        for j in 0..k {
            let dev = (h[i * k + j] - h[j * k + i].conj()).norm();
            max_dev = max_dev.max(dev);
        }
    }
    if max_dev > herm_tol {
        return Err(Error::Eigen(format!(
            "matrix not Hermitian: max |H - H*| = {max_dev:.3e} > {herm_tol:.1e}"
        )));
    }
    let n = 2 * k;
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 0..k {
        for j in 0..k {
            let v = h[i * k + j];
            m[(i, j)] = v.re;
            m[(i + k, j + k)] = v.re;
            m[(i, j + k)] = -v.im;
            m[(i + k, j)] = v.im;
        }
    }
    let eig = m.symmetric_eigen();
    let mut vals: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    vals.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    // Doubled multiplicities: keep every second value.
    Ok(vals.into_iter().step_by(2).collect())
}

/// Smallest and largest eigenvalue of a Hermitian matrix.
pub fn hermitian_extremes(h: &[Complex64], k: usize, herm_tol: f64) -> Result<(f64, f64)> {
    let vals = hermitian_eigenvalues(h, k, herm_tol)?;
    match (vals.first(), vals.last()) {
        (Some(&lo), Some(&hi)) => Ok((lo, hi)),
        _ => Err(Error::Eigen("empty matrix".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_spectrum() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let h = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
        ];
        let (lo, hi) = hermitian_extremes(&h, 2, 1e-12).unwrap();
        assert!((lo - 1.0).abs() <= 1e-12);
        assert!((hi - 3.0).abs() <= 1e-12);
    }

    #[test]
    fn rejects_non_hermitian() {
        let h = vec![
            Complex64::new(2.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(2.0, 0.0),
        ];
        assert!(hermitian_extremes(&h, 2, 1e-10).is_err());
    }
}
