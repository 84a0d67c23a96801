//! Text export formats: CSV and gnuplot matrix, 17 significant digits,
//! byte-deterministic at fixed inputs.

use crate::lattice::LatticePointSet;
use crate::signal::SampledSignal;
use crate::tfa::TFSurface;
use std::fmt::Write as _;

/// 17 significant digits; enough to reproduce any f64 exactly.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// `x,omega` header, one point per line.
pub fn lattice_csv(points: &LatticePointSet) -> String {
    let mut out = String::from("x,omega\n");
    for &(x, w) in &points.points {
        let _ = writeln!(out, "{},{}", fmt_f64(x), fmt_f64(w));
    }
    out
}

/// `t,re,im` header, one sample per line.
pub fn signal_csv(f: &SampledSignal) -> String {
    let mut out = String::from("t,re,im\n");
    for (k, v) in f.samples.iter().enumerate() {
        let _ = writeln!(out, "{},{},{}", fmt_f64(f.grid.t(k)), fmt_f64(v.re), fmt_f64(v.im));
    }
    out
}

/// `x,omega,re,im` header, row-major over the surface grid.
pub fn surface_csv(s: &TFSurface) -> String {
    let mut out = String::from("x,omega,re,im\n");
    let xs = s.grid.xs();
    let ws = s.grid.omegas();
    for (ix, &x) in xs.iter().enumerate() {
        for (iw, &w) in ws.iter().enumerate() {
            let v = s.value(ix, iw);
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt_f64(x),
                fmt_f64(w),
                fmt_f64(v.re),
                fmt_f64(v.im)
            );
        }
    }
    out
}

/// gnuplot nonuniform matrix format: first row is `ncols  x1 x2 ...`, each
/// following row is `omega  re(v(x1, omega)) ...` (real part only; gnuplot
/// matrices are scalar fields).
pub fn surface_matrix(s: &TFSurface) -> String {
    let xs = s.grid.xs();
    let ws = s.grid.omegas();
    let mut out = String::new();
    let _ = write!(out, "{}", xs.len());
    for &x in &xs {
        let _ = write!(out, " {}", fmt_f64(x));
    }
    out.push('\n');
    for (iw, &w) in ws.iter().enumerate() {
        let _ = write!(out, "{}", fmt_f64(w));
        for ix in 0..xs.len() {
            let _ = write!(out, " {}", fmt_f64(s.value(ix, iw).re));
        }
        out.push('\n');
    }
    out
}
