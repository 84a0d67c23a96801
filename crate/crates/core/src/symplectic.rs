//! 2x2 symplectic group algebra.
//!
//! For d = 1 the symplectic group Sp(2, R) is exactly SL(2, R), so
//! membership is `det = 1` and the whole calculus is closed-form. The
//! module provides membership and inversion, the generating quadratic form
//! of a free matrix and its inverse map, the four-factor free
//! factorization, the total two-free factorization, generator-word
//! decomposition, harmonic-oscillator flows (closed form and integrated),
//! and modular (integer) membership.
//!
//! Generator conventions, pinned by the property tests below and relied on
//! everywhere else in the crate:
//!
//! ```text
//! J   = [[0, 1], [-1, 0]]
//! V_p = [[1, 0], [-p, 1]]
//! M_l = [[1/l, 0], [0, l]]      (l != 0)
//! S_tau = flow(tau, 1) = [[cos tau, sin tau], [-sin tau, cos tau]]
//! ```
//!
//! Under these conventions every free S = [[a, b], [c, d]] (|b| > 0)
//! factors as `S = V_{-d/b} * M_{1/b} * J * V_{-a/b}` and carries the
//! generating form `W(x, x') = (d/b)/2 x^2 - (1/b) x x' + (a/b)/2 x'^2`.

use crate::error::{Error, Result};
use crate::tol;

/// A real 2x2 matrix [[a, b], [c, d]] with det = 1 (within construction
/// tolerance). Immutable; every operation returns a new value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymplecticMat {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl SymplecticMat {
    /// Validates finiteness and |det - 1| <= 1e-12.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        if ![a, b, c, d].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        let det = a * d - b * c;
        if (det - 1.0).abs() > tol::SYMPLECTIC_DET {
            return Err(Error::NotSymplectic((det - 1.0).abs()));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    /// Standard symplectic matrix J = [[0, 1], [-1, 0]].
    pub fn j() -> Self {
        Self { a: 0.0, b: 1.0, c: -1.0, d: 0.0 }
    }

    /// Shear generator V_p = [[1, 0], [-p, 1]].
    pub fn shear(p: f64) -> Self {
        Self { a: 1.0, b: 0.0, c: -p, d: 1.0 }
    }

    /// Rescaling generator M_l = [[1/l, 0], [0, l]], l != 0.
    pub fn rescaling(l: f64) -> Result<Self> {
        if l == 0.0 || !l.is_finite() {
            return Err(Error::InvalidInput(format!("M_l needs l != 0, got {l}")));
        }
        Ok(Self { a: 1.0 / l, b: 0.0, c: 0.0, d: l })
    }

    /// S_tau = [[cos tau, sin tau], [-sin tau, cos tau]] (rotation by -tau).
    pub fn rotation(tau: f64) -> Self {
        let (s, c) = tau.sin_cos();
        Self { a: c, b: s, c: -s, d: c }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    /// Inverse [[d, -b], [-c, a]] — the d = 1 case of the symplectic
    /// inversion formula.
    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self {
            a: self.a * rhs.a + self.b * rhs.c,
            b: self.a * rhs.b + self.b * rhs.d,
            c: self.c * rhs.a + self.d * rhs.c,
            d: self.c * rhs.b + self.d * rhs.d,
        }
    }

    /// Applies the matrix to a phase-space point (x, omega).
    pub fn apply(&self, x: f64, omega: f64) -> (f64, f64) {
        (self.a * x + self.b * omega, self.c * x + self.d * omega)
    }

    pub fn norm_inf(&self) -> f64 {
        self.a.abs().max(self.b.abs()).max(self.c.abs()).max(self.d.abs())
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }

    /// Scale-relative freeness threshold for the upper-right entry.
    pub fn free_threshold(&self) -> f64 {
        tol::FREE_EPS_FACTOR * self.norm_inf().max(1.0)
    }

    /// Free iff |b| clears the scale-relative threshold (B invertible).
    pub fn is_free(&self) -> bool {
        self.b.abs() > self.free_threshold()
    }

    pub fn entries(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }
}

impl std::ops::Mul for SymplecticMat {
    type Output = SymplecticMat;
    fn mul(self, rhs: SymplecticMat) -> SymplecticMat {
        SymplecticMat::mul(&self, &rhs)
    }
}

/// Membership test on a raw matrix: |det(M) - 1| <= tol.
pub fn is_symplectic(m: [[f64; 2]; 2], tolerance: f64) -> Result<bool> {
    if !m.iter().flatten().all(|v| v.is_finite()) {
        return Err(Error::InvalidInput("non-finite matrix entry".into()));
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    Ok((det - 1.0).abs() <= tolerance)
}

/// Symplectic inversion formula, Eq.-2.5 form.
pub fn sympl_inverse(s: &SymplecticMat) -> SymplecticMat {
    s.inverse()
}

/// Quadratic form W(x, x') = P/2 x^2 - L x x' + Q/2 x'^2 with L != 0.
///
/// Each free symplectic matrix carries exactly one such form; conversely
/// every such form determines a free matrix (`matrix_of_form`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadraticFormW {
    pub p: f64,
    pub l: f64,
    pub q: f64,
}

impl QuadraticFormW {
    pub fn new(p: f64, l: f64, q: f64) -> Result<Self> {
        if ![p, l, q].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidForm("non-finite coefficient".into()));
        }
        if l == 0.0 {
            return Err(Error::InvalidForm("L must be nonzero".into()));
        }
        Ok(Self { p, l, q })
    }

    pub fn eval(&self, x: f64, xp: f64) -> f64 {
        0.5 * self.p * x * x - self.l * x * xp + 0.5 * self.q * xp * xp
    }

    /// dW/dx at (x, x').
    pub fn grad_x(&self, x: f64, xp: f64) -> f64 {
        self.p * x - self.l * xp
    }

    /// dW/dx' at (x, x').
    pub fn grad_xp(&self, x: f64, xp: f64) -> f64 {
        -self.l * x + self.q * xp
    }
}

fn require_free(s: &SymplecticMat) -> Result<()> {
    if s.is_free() {
        Ok(())
    } else {
        Err(Error::NotFree { found: s.b.abs(), threshold: s.free_threshold() })
    }
}

/// Generating form of a free matrix: (P, L, Q) = (d/b, 1/b, a/b).
pub fn generating_form(s: &SymplecticMat) -> Result<QuadraticFormW> {
    require_free(s)?;
    QuadraticFormW::new(s.d / s.b, 1.0 / s.b, s.a / s.b)
}

/// Free matrix of a form: [[Q/L, 1/L], [PQ/L - L, P/L]]; inverse of
/// `generating_form`.
pub fn matrix_of_form(w: &QuadraticFormW) -> Result<SymplecticMat> {
    if w.l == 0.0 {
        return Err(Error::InvalidForm("L must be nonzero".into()));
    }
    // det = 1 exactly in real arithmetic; construct directly to avoid
    // rejecting forms whose rounding lands barely outside the membership
    // tolerance.
    Ok(SymplecticMat {
        a: w.q / w.l,
        b: 1.0 / w.l,
        c: w.p * w.q / w.l - w.l,
        d: w.p / w.l,
    })
}

/// Checks the generating relation: with (x, omega) = S(x', omega'),
/// omega must equal dW/dx and omega' must equal -dW/dx', both evaluated
/// analytically from the quadratic form.
pub fn verify_generating_relation(s: &SymplecticMat, xp: f64, wp: f64) -> Result<bool> {
    let form = generating_form(s)?;
    let (x, omega) = s.apply(xp, wp);
    let scale = 1.0_f64.max(x.abs()).max(xp.abs()).max(omega.abs()).max(wp.abs());
    let ok = (omega - form.grad_x(x, xp)).abs() <= 1e-10 * scale
        && (wp + form.grad_xp(x, xp)).abs() <= 1e-10 * scale;
    Ok(ok)
}

/// Free factorization parameters (P, L, Q) = (d/b, 1/b, a/b) such that
/// `S = V_{-P} * M_L * J * V_{-Q}`.
///
/// The parameters coincide with the generating form; the two routes are
/// kept distinct so either can check the other.
pub fn free_factorize(s: &SymplecticMat) -> Result<(f64, f64, f64)> {
    require_free(s)?;
    Ok((s.d / s.b, 1.0 / s.b, s.a / s.b))
}

/// Multiplies the `free_factorize` word back together.
pub fn free_factor_product(p: f64, l: f64, q: f64) -> Result<SymplecticMat> {
    let m_l = SymplecticMat::rescaling(l)?;
    Ok(SymplecticMat::shear(-p) * m_l * SymplecticMat::j() * SymplecticMat::shear(-q))
}

/// Splits any symplectic S into two free factors, S = F1 * F2.
///
/// Deterministic branch: P = 0 if |a| clears the freeness threshold,
/// else P = 1. Then F2 = (V_P J)^-1 = [[-P, -1], [1, 0]] and
/// F1 = S V_P J = [[-b, a - bP], [-d, c - dP]]; F1 is free because its
/// upper-right entry a - bP cannot vanish under the branch rule
/// ((a, b) != (0, 0) for det = 1).
pub fn two_free_factorization(s: &SymplecticMat) -> (SymplecticMat, SymplecticMat) {
    let p = if s.a.abs() > s.free_threshold() { 0.0 } else { 1.0 };
    let vj = SymplecticMat::shear(p) * SymplecticMat::j();
    let f2 = vj.inverse();
    let f1 = *s * vj;
    (f1, f2)
}

/// One factor of a generator word over {V_p, M_l, J}.
///
/// `Rescale` carries the Maslov integer n (class mod 4) that fixes the
/// phase branch of its metaplectic lift; the symplectic projection ignores
/// it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GeneratorFactor {
    Chirp { p: f64 },
    Rescale { l: f64, n: u8 },
    Fourier,
}

impl GeneratorFactor {
    /// Symplectic projection of the factor.
    pub fn matrix(&self) -> SymplecticMat {
        match *self {
            GeneratorFactor::Chirp { p } => SymplecticMat::shear(p),
            GeneratorFactor::Rescale { l, .. } => {
                SymplecticMat::rescaling(l).expect("word factors carry l != 0")
            }
            GeneratorFactor::Fourier => SymplecticMat::j(),
        }
    }
}

/// A word over the generators. Factors are listed in matrix-product order:
/// the product reads left to right, so the *last* factor acts first on a
/// phase-space point (and its operator lift acts first on a signal).
#[derive(Clone, Debug, PartialEq)]
pub struct GeneratorWord {
    pub factors: Vec<GeneratorFactor>,
}

impl GeneratorWord {
    pub fn new(factors: Vec<GeneratorFactor>) -> Self {
        Self { factors }
    }

    /// Multiplies the factor matrices; the projection of the word.
    pub fn project(&self) -> SymplecticMat {
        self.factors
            .iter()
            .fold(SymplecticMat::identity(), |acc, f| acc * f.matrix())
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Maslov representative in {0, 1} fixed by the sign of l (n pi = arg l
/// mod 2 pi).
fn canonical_maslov(l: f64) -> u8 {
    if l > 0.0 {
        0
    } else {
        1
    }
}

fn push_free_word(factors: &mut Vec<GeneratorFactor>, p: f64, l: f64, q: f64) {
    if p != 0.0 {
        factors.push(GeneratorFactor::Chirp { p: -p });
    }
    if l != 1.0 {
        factors.push(GeneratorFactor::Rescale { l, n: canonical_maslov(l) });
    }
    factors.push(GeneratorFactor::Fourier);
    if q != 0.0 {
        factors.push(GeneratorFactor::Chirp { p: -q });
    }
}

/// Decomposes any symplectic matrix into a generator word whose projection
/// reproduces it.
///
/// Free matrices map to their single four-factor word; everything else goes
/// through `two_free_factorization` first. Identity factors (V_0, M_1) are
/// dropped.
pub fn word_decompose(s: &SymplecticMat) -> GeneratorWord {
    let mut factors = Vec::new();
    if s.is_free() {
        let (p, l, q) = free_factorize(s).expect("checked free");
        push_free_word(&mut factors, p, l, q);
    } else {
        let (f1, f2) = two_free_factorization(s);
        let (p1, l1, q1) = free_factorize(&f1).expect("two-free factors are free");
        let (p2, l2, q2) = free_factorize(&f2).expect("two-free factors are free");
        push_free_word(&mut factors, p1, l1, q1);
        push_free_word(&mut factors, p2, l2, q2);
    }
    GeneratorWord::new(factors)
}

/// Closed-form harmonic oscillator flow at angle tau and mass m:
/// [[cos tau, sin(tau)/m], [-m sin tau, cos tau]].
pub fn oscillator_flow(tau: f64, m: f64) -> Result<SymplecticMat> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::InvalidMass(m));
    }
    if !tau.is_finite() {
        return Err(Error::InvalidInput("non-finite tau".into()));
    }
    let (s, c) = tau.sin_cos();
    Ok(SymplecticMat { a: c, b: s / m, c: -m * s, d: c })
}

/// Integrates Hamilton's equations for H = omega^2/(2m) + m Omega^2 x^2 / 2
/// over [0, tau] with the classical fourth-order one-step method, propagating
/// the fundamental 2x2 matrix.
///
/// Returns a raw matrix: the caller decides how close to symplectic it must
/// be. For Omega = 1 and steps >= 1000|tau| the result matches
/// `oscillator_flow` entrywise to 1e-8 (with huge margin).
pub fn oscillator_flow_numeric(tau: f64, m: f64, omega: f64, steps: usize) -> Result<[[f64; 2]; 2]> {
    if !(m > 0.0) || !m.is_finite() {
        return Err(Error::InvalidMass(m));
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidInput(format!("resonance must be > 0, got {omega}")));
    }
    if steps < 100 {
        return Err(Error::Integrator(format!(
            "steps = {steps} < 100: accuracy contract unachievable"
        )));
    }
    // lambda' = K lambda with K = [[0, 1/m], [-m Omega^2, 0]].
    let k01 = 1.0 / m;
    let k10 = -m * omega * omega;
    let deriv = |v: [f64; 4]| -> [f64; 4] {
        [k01 * v[1], k10 * v[0], k01 * v[3], k10 * v[2]]
    };
    // Columns of the fundamental matrix: (x, w) pairs in v[0..2] and v[2..4].
    let mut v = [1.0, 0.0, 0.0, 1.0];
    let h = tau / steps as f64;
    for _ in 0..steps {
        let k1 = deriv(v);
        let k2 = deriv(addmul(v, k1, 0.5 * h));
        let k3 = deriv(addmul(v, k2, 0.5 * h));
        let k4 = deriv(addmul(v, k3, h));
        for i in 0..4 {
            v[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
    }
    Ok([[v[0], v[2]], [v[1], v[3]]])
}

fn addmul(v: [f64; 4], k: [f64; 4], s: f64) -> [f64; 4] {
    [v[0] + s * k[0], v[1] + s * k[1], v[2] + s * k[2], v[3] + s * k[3]]
}

/// Modular membership: all entries within `tolerance` of integers and the
/// rounded matrix has determinant exactly 1.
pub fn is_modular(s: &SymplecticMat, tolerance: f64) -> bool {
    let near = |v: f64| (v - v.round()).abs() <= tolerance;
    if !(near(s.a) && near(s.b) && near(s.c) && near(s.d)) {
        return false;
    }
    let (a, b, c, d) =
        (s.a.round() as i64, s.b.round() as i64, s.c.round() as i64, s.d.round() as i64);
    a * d - b * c == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    /// Random free matrix through its generating form.
    fn random_free(rng: &mut ChaCha8Rng) -> SymplecticMat {
        let p = rng.gen_range(-3.0..3.0);
        let q = rng.gen_range(-3.0..3.0);
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let l = sign * rng.gen_range(0.3..3.0);
        matrix_of_form(&QuadraticFormW::new(p, l, q).unwrap()).unwrap()
    }

    /// Random product of five generators.
    fn random_word_matrix(rng: &mut ChaCha8Rng) -> SymplecticMat {
        let mut s = SymplecticMat::identity();
        for _ in 0..5 {
            let f = match rng.gen_range(0..3) {
                0 => SymplecticMat::shear(rng.gen_range(-1.5..1.5)),
                1 => {
                    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                    SymplecticMat::rescaling(sign * rng.gen_range(0.4..2.5)).unwrap()
                }
                _ => SymplecticMat::j(),
            };
            s = s * f;
        }
        s
    }

    #[test]
    fn membership_examples() {
        assert!(is_symplectic(SymplecticMat::j().entries(), 1e-12).unwrap());
        assert!(is_symplectic([[1.0, 1.0], [0.0, 1.0]], 1e-12).unwrap());
        assert!(!is_symplectic([[2.0, 0.0], [0.0, 1.0]], 1e-12).unwrap());
        assert!(is_symplectic([[f64::NAN, 0.0], [0.0, 1.0]], 1e-12).is_err());
    }

    #[test]
    fn inverse_examples() {
        let j = SymplecticMat::j();
        let minus_j = SymplecticMat { a: 0.0, b: -1.0, c: 1.0, d: 0.0 };
        assert_eq!(sympl_inverse(&j), minus_j);
        let u = SymplecticMat::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(sympl_inverse(&u), SymplecticMat::new(1.0, -1.0, 0.0, 1.0).unwrap());
        assert_eq!(sympl_inverse(&SymplecticMat::identity()), SymplecticMat::identity());
        let mut r = rng(11);
        for _ in 0..200 {
            let s = random_word_matrix(&mut r);
            let prod = s * s.inverse();
            assert!(prod.max_abs_diff(&SymplecticMat::identity()) <= 1e-12 * s.norm_inf().max(1.0));
        }
    }

    #[test]
    fn group_closure() {
        let mut r = rng(7);
        for _ in 0..1000 {
            let s1 = random_word_matrix(&mut r);
            let s2 = random_word_matrix(&mut r);
            let p = s1 * s2;
            let scale = s1.norm_inf() * s2.norm_inf();
            assert!((p.det() - 1.0).abs() <= 1e-12 * scale.max(1.0));
            assert!((s1.inverse().det() - 1.0).abs() <= 1e-12 * s1.norm_inf().max(1.0));
        }
    }

    #[test]
    fn generating_form_examples() {
        let j_form = generating_form(&SymplecticMat::j()).unwrap();
        assert_eq!((j_form.p, j_form.l, j_form.q), (0.0, 1.0, 0.0));

        let u = SymplecticMat::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let w = generating_form(&u).unwrap();
        assert_eq!((w.p, w.l, w.q), (1.0, 1.0, 1.0));
        assert!(matrix_of_form(&w).unwrap().max_abs_diff(&u) <= 1e-12);

        // Flow at tau = pi/2, mass m: [[0, 1/m], [-m, 0]] -> (0, m, 0).
        let m = 1.7;
        let s = oscillator_flow(std::f64::consts::FRAC_PI_2, m).unwrap();
        let w = generating_form(&s).unwrap();
        assert!((w.p.abs()).max(w.q.abs()) <= 1e-12);
        assert!((w.l - m).abs() <= 1e-12);

        assert!(generating_form(&SymplecticMat::shear(1.0)).is_err());
    }

    #[test]
    fn matrix_of_form_examples() {
        let j = matrix_of_form(&QuadraticFormW::new(0.0, 1.0, 0.0).unwrap()).unwrap();
        assert_eq!(j, SymplecticMat::j());
        let mut r = rng(23);
        for _ in 0..500 {
            let w = QuadraticFormW::new(
                r.gen_range(-4.0..4.0),
                if r.gen_bool(0.5) { 1.0 } else { -1.0 } * r.gen_range(0.1..4.0),
                r.gen_range(-4.0..4.0),
            )
            .unwrap();
            let s = matrix_of_form(&w).unwrap();
            assert!((s.det() - 1.0).abs() <= 1e-12 * s.norm_inf().max(1.0).powi(2));
        }
    }

    #[test]
    fn generating_round_trip() {
        let mut r = rng(31);
        for _ in 0..1000 {
            let s = random_free(&mut r);
            let w = generating_form(&s).unwrap();
            let back = matrix_of_form(&w).unwrap();
            assert!(back.max_abs_diff(&s) <= 1e-12 * s.norm_inf().max(1.0));
        }
    }

    #[test]
    fn generating_relation_examples() {
        assert!(verify_generating_relation(&SymplecticMat::j(), 1.0, 0.0).unwrap());
        let u = SymplecticMat::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(verify_generating_relation(&u, 0.3, -0.7).unwrap());
        let mut r = rng(41);
        for _ in 0..100 {
            let s = random_free(&mut r);
            let xp = r.gen_range(-5.0..5.0);
            let wp = r.gen_range(-5.0..5.0);
            assert!(verify_generating_relation(&s, xp, wp).unwrap());
        }
    }

    #[test]
    fn free_factorization_identity() {
        // J: parameters (0, 1, 0), product I * I * J * I = J.
        assert_eq!(free_factorize(&SymplecticMat::j()).unwrap(), (0.0, 1.0, 0.0));
        assert_eq!(free_factor_product(0.0, 1.0, 0.0).unwrap(), SymplecticMat::j());

        let u = SymplecticMat::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(free_factorize(&u).unwrap(), (1.0, 1.0, 1.0));
        let back = free_factor_product(1.0, 1.0, 1.0).unwrap();
        assert!(back.max_abs_diff(&u) <= 1e-12);

        let m = 2.5;
        let s = oscillator_flow(std::f64::consts::FRAC_PI_2, m).unwrap();
        let (p, l, q) = free_factorize(&s).unwrap();
        assert!((p.abs()).max(q.abs()) <= 1e-12 && (l - m).abs() <= 1e-12);

        let mut r = rng(53);
        for _ in 0..1000 {
            let s = random_free(&mut r);
            let (p, l, q) = free_factorize(&s).unwrap();
            let back = free_factor_product(p, l, q).unwrap();
            assert!(back.max_abs_diff(&s) <= 1e-11 * s.norm_inf().max(1.0));
        }
    }

    #[test]
    fn two_free_examples() {
        // V_1 is not free; branch P = 0 applies since a = 1.
        let v1 = SymplecticMat::shear(1.0);
        let (f1, f2) = two_free_factorization(&v1);
        assert!(f1.is_free() && f2.is_free());
        assert!((f1 * f2).max_abs_diff(&v1) <= 1e-12);

        // a = 0 forces the P = 1 branch.
        let s = SymplecticMat::new(0.0, 2.0, -0.5, 0.0).unwrap();
        let (f1, f2) = two_free_factorization(&s);
        assert!(f1.is_free() && f2.is_free());
        assert!((f1 * f2).max_abs_diff(&s) <= 1e-12);

        let j = SymplecticMat::j();
        let (f1, f2) = two_free_factorization(&j);
        assert!(f1.is_free() && f2.is_free());
        assert!((f1 * f2).max_abs_diff(&j) <= 1e-12);

        let mut r = rng(61);
        for _ in 0..1000 {
            let s = random_word_matrix(&mut r);
            let (f1, f2) = two_free_factorization(&s);
            assert!(f1.b.abs() > 1e-9 * s.norm_inf());
            assert!(f2.is_free());
            assert!((f1 * f2).max_abs_diff(&s) <= 1e-12 * s.norm_inf().max(1.0));
        }
    }

    #[test]
    fn word_decompose_examples() {
        let word = word_decompose(&SymplecticMat::j());
        assert_eq!(word.factors, vec![GeneratorFactor::Fourier]);

        let m2 = SymplecticMat::rescaling(2.0).unwrap();
        let word = word_decompose(&m2);
        assert!(word.project().max_abs_diff(&m2) <= 1e-11);

        let mut r = rng(71);
        for _ in 0..1000 {
            let s = random_word_matrix(&mut r);
            let word = word_decompose(&s);
            assert!(word.project().max_abs_diff(&s) <= 1e-11 * s.norm_inf().max(1.0));
        }
    }

    #[test]
    fn oscillator_flow_examples() {
        let id = oscillator_flow(0.0, 3.2).unwrap();
        assert!(id.max_abs_diff(&SymplecticMat::identity()) <= 1e-15);
        let j = oscillator_flow(std::f64::consts::FRAC_PI_2, 1.0).unwrap();
        assert!(j.max_abs_diff(&SymplecticMat::j()) <= 1e-15);
        assert!(oscillator_flow(1.0, 0.0).is_err());
        assert!(oscillator_flow(1.0, -2.0).is_err());
    }

    #[test]
    fn oscillator_flow_group_law() {
        let mut r = rng(83);
        for _ in 0..200 {
            let m = r.gen_range(0.3..3.0);
            let t1 = r.gen_range(-3.0..3.0);
            let t2 = r.gen_range(-3.0..3.0);
            let lhs = oscillator_flow(t1, m).unwrap() * oscillator_flow(t2, m).unwrap();
            let rhs = oscillator_flow(t1 + t2, m).unwrap();
            assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * lhs.norm_inf().max(1.0));
        }
    }

    #[test]
    fn flow_rescaling_commutation() {
        // S_{tau,m} M_{sqrt m} = M_{sqrt m} S_{tau,1} on a (tau, m) grid.
        for i in 0..25 {
            let tau = -3.0 + 0.25 * i as f64;
            for m in [0.25_f64, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0] {
                let m_sqrt = SymplecticMat::rescaling(m.sqrt()).unwrap();
                let lhs = oscillator_flow(tau, m).unwrap() * m_sqrt;
                let rhs = m_sqrt * oscillator_flow(tau, 1.0).unwrap();
                assert!(lhs.max_abs_diff(&rhs) <= 1e-12 * lhs.norm_inf().max(1.0));
            }
        }
    }

    #[test]
    fn flow_numeric_matches_closed_form() {
        let closed = oscillator_flow(1.0, 1.0).unwrap();
        let num = oscillator_flow_numeric(1.0, 1.0, 1.0, 2000).unwrap();
        let diff = closed.max_abs_diff(&SymplecticMat {
            a: num[0][0],
            b: num[0][1],
            c: num[1][0],
            d: num[1][1],
        });
        assert!(diff <= 1e-8, "diff = {diff:.3e}");

        let id = oscillator_flow_numeric(0.0, 0.7, 2.0, 500).unwrap();
        assert_eq!(id, [[1.0, 0.0], [0.0, 1.0]]);

        let m = oscillator_flow_numeric(1.0, 2.0, 3.0, 4000).unwrap();
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        assert!((det - 1.0).abs() <= 1e-8);

        assert!(oscillator_flow_numeric(1.0, 1.0, 1.0, 50).is_err());
    }

    #[test]
    fn modular_examples() {
        assert!(is_modular(&SymplecticMat::j(), 1e-9));
        assert!(is_modular(&SymplecticMat::new(1.0, 1.0, 0.0, 1.0).unwrap(), 1e-9));
        assert!(!is_modular(&SymplecticMat::new(1.0, 0.5, 0.0, 1.0).unwrap(), 1e-9));
    }

    #[test]
    fn word_projection_of_factors() {
        assert_eq!(GeneratorFactor::Chirp { p: 0.7 }.matrix(), SymplecticMat::shear(0.7));
        assert_eq!(
            GeneratorFactor::Rescale { l: 2.0, n: 0 }.matrix(),
            SymplecticMat::rescaling(2.0).unwrap()
        );
        assert_eq!(GeneratorFactor::Fourier.matrix(), SymplecticMat::j());
    }
}
