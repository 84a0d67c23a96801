//! Time-frequency lattices scale * G * Z^2.
//!
//! A lattice is stored as an invertible 2x2 generator (columns are the
//! basis vectors, units time x frequency) plus a positive scale factor.
//! Deformations multiply a symplectic matrix from the left, so the volume
//! never changes; equality is decided by a unimodular change of basis, not
//! by sampling points.

use crate::error::{Error, Result};
use crate::symplectic::{oscillator_flow, SymplecticMat};
use crate::tol;

/// Lattice scale * G * Z^2 with |det G| > 0, scale > 0.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lattice {
    /// Row-major generator; columns are the basis vectors.
    pub generator: [[f64; 2]; 2],
    pub scale: f64,
}

/// Truncated point set {lambda in Lambda : |lambda| <= radius} in a
/// deterministic order (lexicographic in the integer coordinates).
#[derive(Clone, Debug, PartialEq)]
pub struct LatticePointSet {
    pub points: Vec<(f64, f64)>,
    pub radius: f64,
}

impl LatticePointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

fn det2(m: &[[f64; 2]; 2]) -> f64 {
    m[0][0] * m[1][1] - m[0][1] * m[1][0]
}

fn mul2(a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]) -> [[f64; 2]; 2] {
    [
        [
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
        ],
        [
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        ],
    ]
}

fn inv2(m: &[[f64; 2]; 2]) -> Result<[[f64; 2]; 2]> {
    let det = det2(m);
    if det.abs() < 1e-300 || !det.is_finite() {
        return Err(Error::DegenerateLattice(det.abs()));
    }
    Ok([[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]])
}

impl Lattice {
    pub fn new(generator: [[f64; 2]; 2], scale: f64) -> Result<Self> {
        if !generator.iter().flatten().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("non-finite generator entry".into()));
        }
        if !(scale > 0.0) || !scale.is_finite() {
            return Err(Error::InvalidInput(format!("scale must be > 0, got {scale}")));
        }
        let det = det2(&generator);
        if det.abs() < 1e-12 {
            return Err(Error::DegenerateLattice(det.abs()));
        }
        Ok(Self { generator, scale })
    }

    /// Scaled integer lattice (1/sqrt(delta)) Z^2 of density delta.
    pub fn square(delta: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::InvalidInput(format!("density must be > 0, got {delta}")));
        }
        Self::new([[1.0, 0.0], [0.0, 1.0]], 1.0 / delta.sqrt())
    }

    /// 45-degree rotated integer lattice of density delta:
    /// (1/sqrt(delta)) S_{pi/4} Z^2.
    pub fn square45(delta: f64) -> Result<Self> {
        if !(delta > 0.0) {
            return Err(Error::InvalidInput(format!("density must be > 0, got {delta}")));
        }
        let s = SymplecticMat::rotation(std::f64::consts::FRAC_PI_4);
        Self::new(s.entries(), 1.0 / delta.sqrt())
    }

    /// vol = scale^2 |det G|.
    pub fn volume(&self) -> f64 {
        self.scale * self.scale * det2(&self.generator).abs()
    }

    /// 1 / vol.
    pub fn density(&self) -> f64 {
        1.0 / self.volume()
    }

    /// Gabor frames require vol < 1; callers treat a failure here as a
    /// warning, not an error.
    pub fn frame_volume_ok(&self) -> bool {
        self.volume() < 1.0
    }

    /// Effective generator scale * G.
    pub fn effective(&self) -> [[f64; 2]; 2] {
        [
            [self.scale * self.generator[0][0], self.scale * self.generator[0][1]],
            [self.scale * self.generator[1][0], self.scale * self.generator[1][1]],
        ]
    }

    /// Gram matrix (scale G)^T (scale G) of the basis vectors.
    pub fn gram(&self) -> [[f64; 2]; 2] {
        let e = self.effective();
        let col = |j: usize| (e[0][j], e[1][j]);
        let dot = |u: (f64, f64), v: (f64, f64)| u.0 * v.0 + u.1 * v.1;
        let (c0, c1) = (col(0), col(1));
        [[dot(c0, c0), dot(c0, c1)], [dot(c1, c0), dot(c1, c1)]]
    }

    /// Lattice point at integer coordinates (k1, k2).
    pub fn point(&self, k1: i64, k2: i64) -> (f64, f64) {
        let e = self.effective();
        let (k1, k2) = (k1 as f64, k2 as f64);
        (e[0][0] * k1 + e[0][1] * k2, e[1][0] * k1 + e[1][1] * k2)
    }

    /// All lattice points with Euclidean norm <= radius, lexicographic in
    /// (k1, k2). The integer scan box comes from the operator-norm bound
    /// |k| <= ||(scale G)^-1|| * radius (Frobenius upper bound).
    pub fn enumerate(&self, radius: f64) -> Result<LatticePointSet> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::InvalidInput(format!("radius must be > 0, got {radius}")));
        }
        let inv = inv2(&self.effective())?;
        let fro = inv.iter().flatten().map(|v| v * v).sum::<f64>().sqrt();
        let k_max = (radius * fro).ceil() as i64 + 1;
        let r2 = radius * radius;
        let mut points = Vec::new();
        for k1 in -k_max..=k_max {
            for k2 in -k_max..=k_max {
                let (x, w) = self.point(k1, k2);
                if x * x + w * w <= r2 {
                    points.push((x, w));
                }
            }
        }
        Ok(LatticePointSet { points, radius })
    }

    /// Left-multiplies the generator: Lambda -> S * Lambda. Volume is
    /// invariant because det S = 1.
    pub fn deform(&self, s: &SymplecticMat) -> Lattice {
        Lattice { generator: mul2(&s.entries(), &self.generator), scale: self.scale }
    }
}

/// Equality up to a unimodular change of basis: U = (s1 G1)^-1 (s2 G2) must
/// have integer entries and |det U| = 1 within tolerance.
pub fn lattices_equal(l1: &Lattice, l2: &Lattice, tolerance: f64) -> Result<bool> {
    let u = mul2(&inv2(&l1.effective())?, &l2.effective());
    let near_int = u.iter().flatten().all(|v| (v - v.round()).abs() <= tolerance);
    let det_ok = (det2(&u).abs() - 1.0).abs() <= tolerance;
    Ok(near_int && det_ok)
}

/// Hexagonal lattice of density delta: columns
/// sqrt(2/sqrt(3)) (cos 30, -s sin 30) and sqrt(2/sqrt(3)) (cos 30, s sin 30),
/// scale 1/sqrt(delta). At delta = 1 the Gram matrix is
/// (2/sqrt(3)) [[1, 1/2], [1/2, 1]] and the volume is 1.
///
/// delta <= 1 is accepted (the transforms are defined regardless); only the
/// frame property becomes hopeless, which `frame_volume_ok` reports.
pub fn hexagonal(delta: f64, sign: i8) -> Result<Lattice> {
    if !(delta > 0.0) || !delta.is_finite() {
        return Err(Error::InvalidInput(format!("density must be > 0, got {delta}")));
    }
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput(format!("sign must be +1 or -1, got {sign}")));
    }
    let c = (2.0 / 3.0_f64.sqrt()).sqrt();
    let s = sign as f64;
    let (cos30, sin30) = (3.0_f64.sqrt() / 2.0, 0.5);
    let generator = [[c * cos30, c * cos30], [-s * c * sin30, s * c * sin30]];
    Lattice::new(generator, 1.0 / delta.sqrt())
}

/// Outcome of the hexagonal-to-rotated-square identification.
#[derive(Clone, Debug)]
pub struct Example48Resolution {
    /// Exponent sign s in the matched dilation M_{3^{s/4}}.
    pub sign: i8,
    /// The deformed hexagonal lattice (equals the 45-degree rotated integer
    /// lattice of the same density).
    pub lattice: Lattice,
    /// Width parameter of the Gaussian window transported along the matched
    /// dilation: g_1 -> g_{3^{s/2}}.
    pub window_m: f64,
    /// Gram matrix produced by the unmatched sign, for diagnostics.
    pub unmatched_gram: [[f64; 2]; 2],
}

/// Determines which dilation sign maps the hexagonal lattice onto the
/// 45-degree rotated integer lattice of equal density.
///
/// Exactly one of M_{3^{1/4}}, M_{3^{-1/4}} works under the adopted M_l
/// convention; which one is decided by running the check, not by reading
/// it off. Returns a convention-violation error if neither or both match
/// (must not happen).
pub fn resolve_example48(delta: f64) -> Result<Example48Resolution> {
    if !(delta > 1.0) {
        return Err(Error::InvalidInput(format!("need density > 1, got {delta}")));
    }
    let hex = hexagonal(delta, 1)?;
    let target = Lattice::square45(delta)?;
    let mut matched: Option<(i8, Lattice)> = None;
    let mut unmatched_gram = [[0.0; 2]; 2];
    for sign in [1i8, -1i8] {
        let l = 3.0_f64.powf(sign as f64 / 4.0);
        let deformed = hex.deform(&SymplecticMat::rescaling(l)?);
        if lattices_equal(&deformed, &target, tol::INTEGER_PROXIMITY)? {
            if matched.is_some() {
                return Err(Error::Convention(
                    "both dilation signs match the rotated integer lattice".into(),
                ));
            }
            matched = Some((sign, deformed));
        } else {
            unmatched_gram = deformed.gram();
        }
    }
    match matched {
        Some((sign, lattice)) => Ok(Example48Resolution {
            sign,
            lattice,
            window_m: 3.0_f64.powf(sign as f64 / 2.0),
            unmatched_gram,
        }),
        None => Err(Error::Convention(
            "neither dilation sign maps the hexagonal lattice onto the rotated integer lattice"
                .into(),
        )),
    }
}

/// Sweep lattices S_{tau, m} Lambda for the worked hexagonal example.
pub fn flow_sweep(base: &Lattice, m: f64, taus: &[f64]) -> Result<Vec<(f64, Lattice)>> {
    taus.iter()
        .map(|&tau| Ok((tau, base.deform(&oscillator_flow(tau, m)?))))
        .collect()
}
