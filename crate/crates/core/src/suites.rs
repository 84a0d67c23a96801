//! Named verification suites.
//!
//! Each suite runs a fixed set of measured checks and returns one record
//! per check: what was measured, the pinned tolerance, pass/fail. The
//! acceptance test target and the CLI `verify` command both drive these;
//! the tolerances come from [`crate::tol`] and are never invented at the
//! call site.
//!
//! Deterministic throughout: seeded generators, fixed case order.

use crate::error::Result;
use crate::frame::{
    compare_invariance, dense_oracle, estimate_bounds, truncation_tail, verify_thm43,
    verify_thm44, verify_thm47, GaborSystem, TestBattery, DENSE_COMPRESSION_K,
};
use crate::lattice::{hexagonal, lattices_equal, resolve_example48, Lattice};
use crate::metaplectic::{
    apply_descriptor_gaussian, apply_descriptor_sampled, metaplectic_quadrature,
    MetaplecticDescriptor,
};
use crate::signal::{gaussian, hermite_battery, phase_align, GridSpec, SampledSignal};
use crate::symplectic::{
    free_factor_product, free_factorize, generating_form, matrix_of_form, oscillator_flow,
    oscillator_flow_numeric, two_free_factorization, word_decompose, QuadraticFormW,
    SymplecticMat,
};
use crate::tfa::{
    ambiguity_gaussian_closed, ambiguity_surface, covariance_check, cross_ambiguity_surface,
    example49_surfaces, stft_surface, wigner_ambiguity_relation_residual, GridChoice, TFGrid,
};
use crate::tol;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::PI;
use std::time::Instant;

/// One measured check: what was measured, against which tolerance.
/// For threshold-style checks (measured must EXCEED the tolerance, e.g.
/// the falsifiability control) `exceed` is set.
#[derive(Clone, Debug, Serialize)]
pub struct CaseRecord {
    pub name: String,
    pub measured: f64,
    pub tolerance: f64,
    pub exceed: bool,
    pub pass: bool,
}

impl CaseRecord {
    fn below(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self { name: name.into(), measured, tolerance, exceed: false, pass: measured <= tolerance }
    }

    fn above(name: impl Into<String>, measured: f64, tolerance: f64) -> Self {
        Self { name: name.into(), measured, tolerance, exceed: true, pass: measured > tolerance }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseRecord>,
    pub pass: bool,
    pub runtime_seconds: f64,
}

impl SuiteReport {
    fn collect(suite: &str, started: Instant, cases: Vec<CaseRecord>) -> Self {
        Self {
            suite: suite.into(),
            pass: cases.iter().all(|c| c.pass),
            cases,
            runtime_seconds: started.elapsed().as_secs_f64(),
        }
    }
}

/// Shared suite configuration. Transform-class tolerances relax to 1e-6 on
/// grids coarser than the default desk grid; algebraic and bound
/// tolerances never scale.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub grid: GridSpec,
    pub radius: f64,
    pub battery_k: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self { grid: GridSpec::default_desk(), radius: 8.0, battery_k: 40 }
    }
}

impl SuiteConfig {
    /// Transform-class tolerance, relaxed on coarse grids.
    pub fn transform(&self, pinned: f64) -> f64 {
        if self.grid.n() < 1024 {
            pinned.max(tol::TRANSFORM_RELAXED)
        } else {
            pinned
        }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_free(rng: &mut ChaCha8Rng) -> SymplecticMat {
    let p = rng.gen_range(-3.0..3.0);
    let q = rng.gen_range(-3.0..3.0);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let l = sign * rng.gen_range(0.3..3.0);
    matrix_of_form(&QuadraticFormW::new(p, l, q).expect("valid form")).expect("free")
}

fn random_symplectic(rng: &mut ChaCha8Rng) -> SymplecticMat {
    let mut s = SymplecticMat::identity();
    for _ in 0..5 {
        let f = match rng.gen_range(0..3) {
            0 => SymplecticMat::shear(rng.gen_range(-1.5..1.5)),
            1 => {
                let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
                SymplecticMat::rescaling(sign * rng.gen_range(0.4..2.5)).expect("l != 0")
            }
            _ => SymplecticMat::j(),
        };
        s = s * f;
    }
    s
}

/// Free matrices whose descriptors keep the quadrature kernel and the
/// dilation step representable on the desk grid.
fn random_tame_free(rng: &mut ChaCha8Rng) -> SymplecticMat {
    let p = rng.gen_range(-1.5..1.5);
    let q = rng.gen_range(-1.5..1.5);
    let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
    let l = sign * rng.gen_range(0.5..2.0);
    matrix_of_form(&QuadraticFormW::new(p, l, q).expect("valid form")).expect("free")
}

/// Symplectic algebra and oscillator flows (acceptance criteria 1 and 2).
pub fn symplectic_suite() -> Result<SuiteReport> {
    let started = Instant::now();
    let mut cases = Vec::new();
    let mut r = rng(101);

    // 1000 random free matrices: four-factor product reproduces the input.
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let s = random_free(&mut r);
        let (p, l, q) = free_factorize(&s)?;
        let back = free_factor_product(p, l, q)?;
        worst = worst.max(back.max_abs_diff(&s) / s.norm_inf().max(1.0));
    }
    cases.push(CaseRecord::below("free-factorization product residual (1000 random)", worst, tol::FACTORIZATION));

    // Generating-form round trip.
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let s = random_free(&mut r);
        let back = matrix_of_form(&generating_form(&s)?)?;
        worst = worst.max(back.max_abs_diff(&s) / s.norm_inf().max(1.0));
    }
    cases.push(CaseRecord::below("generating-form round trip residual (1000 random)", worst, tol::ALGEBRAIC));

    // Two-free factorization: total, both factors free, exact product.
    let mut worst: f64 = 0.0;
    let mut freeness_ok = true;
    for _ in 0..1000 {
        let s = random_symplectic(&mut r);
        let (f1, f2) = two_free_factorization(&s);
        freeness_ok &= f1.is_free() && f2.is_free();
        worst = worst.max((f1 * f2).max_abs_diff(&s) / s.norm_inf().max(1.0));
    }
    cases.push(CaseRecord::below("two-free factorization product residual (1000 random)", worst, tol::ALGEBRAIC));
    cases.push(CaseRecord::below(
        "two-free factorization freeness failures",
        if freeness_ok { 0.0 } else { 1.0 },
        0.5,
    ));

    // Generator words for arbitrary matrices.
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let s = random_symplectic(&mut r);
        let word = word_decompose(&s);
        worst = worst.max(word.project().max_abs_diff(&s) / s.norm_inf().max(1.0));
    }
    cases.push(CaseRecord::below("generator-word projection residual (1000 random)", worst, tol::FACTORIZATION));

    // Numeric flow vs closed form on a 25-point tau grid.
    let mut worst: f64 = 0.0;
    for i in 0..25 {
        let tau = -PI + 2.0 * PI * i as f64 / 24.0;
        let closed = oscillator_flow(tau, 1.0)?;
        let num = oscillator_flow_numeric(tau, 1.0, 1.0, 2000)?;
        let diff = (closed.a - num[0][0])
            .abs()
            .max((closed.b - num[0][1]).abs())
            .max((closed.c - num[1][0]).abs())
            .max((closed.d - num[1][1]).abs());
        worst = worst.max(diff);
    }
    cases.push(CaseRecord::below("oscillator flow: integrator vs closed form", worst, tol::FLOW_NUMERIC));

    // Commutation S_{tau,m} M_{sqrt m} = M_{sqrt m} S_tau on a grid.
    let mut worst: f64 = 0.0;
    for i in 0..25 {
        let tau = -3.0 + 0.25 * i as f64;
        for m in [0.25_f64, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0] {
            let msqrt = SymplecticMat::rescaling(m.sqrt())?;
            let lhs = oscillator_flow(tau, m)? * msqrt;
            let rhs = msqrt * oscillator_flow(tau, 1.0)?;
            worst = worst.max(lhs.max_abs_diff(&rhs) / lhs.norm_inf().max(1.0));
        }
    }
    cases.push(CaseRecord::below("flow/rescaling commutation identity", worst, tol::ALGEBRAIC));

    // Flow group law.
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let m = r.gen_range(0.3..3.0);
        let (t1, t2) = (r.gen_range(-3.0..3.0), r.gen_range(-3.0..3.0));
        let lhs = oscillator_flow(t1, m)? * oscillator_flow(t2, m)?;
        worst = worst.max(lhs.max_abs_diff(&oscillator_flow(t1 + t2, m)?));
    }
    cases.push(CaseRecord::below("flow group law", worst, tol::ALGEBRAIC));

    Ok(SuiteReport::collect("symplectic", started, cases))
}

/// Metaplectic operators (acceptance criteria 3 and 4).
pub fn metaplectic_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut cases = Vec::new();
    let mut r = rng(211);
    let grid = cfg.grid;
    let battery = hermite_battery(cfg.battery_k, 1.0, grid)?;

    // Ten free matrices: pipeline vs quadrature, unitarity, inverse round
    // trip, cover sign — all over the battery.
    let mut pipeline_vs_quad: f64 = 0.0;
    let mut unitarity: f64 = 0.0;
    let mut inverse_rt: f64 = 0.0;
    let mut cover: f64 = 0.0;
    for _ in 0..10 {
        let s = random_tame_free(&mut r);
        let desc = MetaplecticDescriptor::of_matrix(&s)?;
        let inv = desc.inverse();
        let partner = desc.cover_partner();
        for f in &battery {
            let pipe = apply_descriptor_sampled(&desc, f)?;
            let quad = metaplectic_quadrature(&desc, f)?;
            pipeline_vs_quad = pipeline_vs_quad.max(pipe.max_abs_diff(&quad));
            unitarity = unitarity.max((pipe.norm() - f.norm()).abs());
            let back = apply_descriptor_sampled(&inv, &pipe)?;
            let (_, resid) = phase_align(&back, f)?;
            inverse_rt = inverse_rt.max(resid);
            let neg = apply_descriptor_sampled(&partner, f)?;
            cover = cover.max(neg.max_abs_diff(&pipe.scale(Complex64::new(-1.0, 0.0))));
        }
    }
    cases.push(CaseRecord::below(
        "pipeline vs quadrature over battery (10 free matrices)",
        pipeline_vs_quad,
        cfg.transform(tol::PIPELINE_VS_QUADRATURE),
    ));
    cases.push(CaseRecord::below("unitarity over battery", unitarity, cfg.transform(tol::UNITARITY)));
    cases.push(CaseRecord::below(
        "inverse round trip (phase-aligned)",
        inverse_rt,
        cfg.transform(tol::INVERSE_ROUNDTRIP),
    ));
    cases.push(CaseRecord::below("cover sign n vs n+2 exact negation", cover, tol::ALGEBRAIC));

    // Gaussian eigenfunction property over the tau x m grid.
    let taus = [-PI / 4.0, -PI / 6.0, -PI / 12.0, PI / 12.0, PI / 6.0, PI / 4.0, 1.0];
    let ms = [1.0 / 3.0_f64.sqrt(), 1.0, 3.0_f64.sqrt(), 2.0];
    let mut sampled_resid: f64 = 0.0;
    let mut analytic_resid: f64 = 0.0;
    for &tau in &taus {
        for &m in &ms {
            let s = oscillator_flow(tau, m)?;
            let desc = MetaplecticDescriptor::of_matrix(&s)?;
            let gm = gaussian(m)?;
            let gms = gm.sample(grid);
            let out = apply_descriptor_sampled(&desc, &gms)?;
            let (_, resid) = phase_align(&out, &gms)?;
            sampled_resid = sampled_resid.max(resid);
            let ga = apply_descriptor_gaussian(&desc, &gm)?;
            analytic_resid = analytic_resid
                .max((ga.q - gm.q).norm())
                .max((ga.amplitude.norm() - gm.amplitude.norm()).abs());
        }
    }
    cases.push(CaseRecord::below(
        "flow eigenfunction residual, sampled path (tau x m grid)",
        sampled_resid,
        cfg.transform(tol::EIGENFUNCTION_SAMPLED),
    ));
    cases.push(CaseRecord::below(
        "flow eigenfunction residual, analytic path (tau x m grid)",
        analytic_resid,
        tol::EIGENFUNCTION_ANALYTIC,
    ));

    Ok(SuiteReport::collect("metaplectic", started, cases))
}

/// Time-frequency identities and the two worked examples (criteria 5-7).
pub fn tfa_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut cases = Vec::new();
    let grid = cfg.grid;
    let mut r = rng(307);

    // Closed-form Gaussian ambiguity on [-3, 3]^2.
    let tf3 = TFGrid::symmetric(3.0, 0.25, 3.0, 0.25)?;
    let mut worst: f64 = 0.0;
    for m in [1.0 / 3.0_f64.sqrt(), 1.0, 3.0_f64.sqrt()] {
        let f = gaussian(m)?.sample(grid);
        let surf = ambiguity_surface(&f, &tf3)?;
        for (ix, &x) in tf3.xs().iter().enumerate() {
            for (iw, &w) in tf3.omegas().iter().enumerate() {
                let expect = ambiguity_gaussian_closed(m, x, w)?;
                worst = worst.max((surf.value(ix, iw) - Complex64::new(expect, 0.0)).norm());
            }
        }
    }
    cases.push(CaseRecord::below(
        "Gaussian ambiguity vs closed form on [-3,3]^2",
        worst,
        cfg.transform(tol::AMBIGUITY_CLOSED_FORM),
    ));

    // Phase relation between cross-ambiguity and STFT on battery pairs.
    let battery = hermite_battery(6, 1.0, grid)?;
    let tf2 = TFGrid::symmetric(2.0, 0.4, 2.0, 0.4)?;
    let mut worst: f64 = 0.0;
    for f in battery.iter().take(3) {
        for g in battery.iter().skip(3).take(3) {
            let amb = cross_ambiguity_surface(f, g, &tf2)?;
            let st = stft_surface(f, g, &tf2)?;
            for (ix, &x) in tf2.xs().iter().enumerate() {
                for (iw, &w) in tf2.omegas().iter().enumerate() {
                    let phase = Complex64::from_polar(1.0, PI * x * w);
                    worst =
                        worst.max((amb.value(ix, iw) - phase * st.value(ix, iw)).norm());
                }
            }
        }
    }
    cases.push(CaseRecord::below(
        "cross-ambiguity = e^{pi i x w} STFT on battery pairs",
        worst,
        cfg.transform(tol::AMBIGUITY_STFT_PHASE),
    ));

    // Wigner as the symplectic Fourier transform of the ambiguity.
    let mut worst: f64 = 0.0;
    for k in [0usize, 1, 3] {
        let f = crate::signal::hermite(k, 1.0, grid)?;
        worst = worst.max(wigner_ambiguity_relation_residual(&f, 3.0)?);
    }
    cases.push(CaseRecord::below(
        "Wigner = symplectic Fourier of ambiguity",
        worst,
        cfg.transform(tol::WIGNER_SYMPLECTIC_FT),
    ));

    // Covariance principle for 20 random words on battery signals.
    let tfg = TFGrid::symmetric(2.0, 0.25, 2.0, 0.25)?;
    let mut worst: f64 = 0.0;
    let mut produced = 0;
    while produced < 20 {
        let s = random_tame_free(&mut r) * random_tame_free(&mut r);
        if s.norm_inf() > 4.0 {
            continue;
        }
        produced += 1;
        let f = &battery[produced % 4];
        worst = worst.max(covariance_check(&s, f, &tfg)?);
    }
    cases.push(CaseRecord::below(
        "covariance A(S^f)(z) = Af(S^{-1}z), 20 random words",
        worst,
        cfg.transform(tol::COVARIANCE),
    ));

    // Worked example: quarter-turn images of g_{sqrt 3}.
    let ex49 = example49_surfaces(2.0, GridChoice::Custom(grid))?;
    cases.push(CaseRecord::below(
        "rotated-Gaussian ambiguity surface, + cross term",
        ex49.max_resid_plus,
        cfg.transform(tol::EXAMPLE_SURFACE),
    ));
    cases.push(CaseRecord::below(
        "rotated-Gaussian ambiguity surface, - cross term",
        ex49.max_resid_minus,
        cfg.transform(tol::EXAMPLE_SURFACE),
    ));

    // Worked example: hexagonal-to-rotated-square identification and the
    // paired-window ambiguity target.
    let res = resolve_example48(2.0)?;
    let matched = if lattices_equal(&res.lattice, &Lattice::square45(2.0)?, 1e-9)? {
        0.0
    } else {
        1.0
    };
    cases.push(CaseRecord::below("hexagonal dilation matches rotated square lattice", matched, 0.5));
    // The unmatched sign must NOT give a square Gram (diagonal).
    let off_diag = res.unmatched_gram[0][1].abs();
    cases.push(CaseRecord::above("unmatched dilation sign stays non-square (Gram off-diagonal)", off_diag, 0.1));
    let paired = gaussian(res.window_m)?.sample(grid);
    let surf = ambiguity_surface(&paired, &tf3)?;
    let mut worst: f64 = 0.0;
    for (ix, &x) in tf3.xs().iter().enumerate() {
        for (iw, &w) in tf3.omegas().iter().enumerate() {
            let expect = ambiguity_gaussian_closed(res.window_m, x, w)?;
            worst = worst.max((surf.value(ix, iw) - Complex64::new(expect, 0.0)).norm());
        }
    }
    cases.push(CaseRecord::below(
        "paired window ambiguity target e^{-(pi/2)(sqrt3 x^2 + w^2/sqrt3)}",
        worst,
        cfg.transform(tol::EXAMPLE_SURFACE),
    ));

    Ok(SuiteReport::collect("tfa", started, cases))
}

/// The lattices of the invariance matrix, with their generators as
/// symplectic matrices (all have det 1).
fn matrix_lattices(delta: f64) -> Result<Vec<(&'static str, Lattice, SymplecticMat)>> {
    Ok(vec![
        ("square", Lattice::square(delta)?, SymplecticMat::identity()),
        ("hex", hexagonal(delta, 1)?, {
            let g = hexagonal(1.0, 1)?.generator;
            SymplecticMat::new(g[0][0], g[0][1], g[1][0], g[1][1])?
        }),
        ("square45", Lattice::square45(delta)?, SymplecticMat::rotation(PI / 4.0)),
    ])
}

/// Frame-bound invariance, falsifiability control, estimator soundness
/// (criteria 8-10).
pub fn frames_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let started = Instant::now();
    let mut cases = Vec::new();
    let grid = cfg.grid;
    let battery = TestBattery::hermite(cfg.battery_k, 1.0, grid)?;
    let windows = [1.0 / 3.0_f64.sqrt(), 1.0, 3.0_f64.sqrt()];
    let deltas = [1.5, 2.0, 4.0];

    // Invariance matrix: windows x lattices x densities x deformations.
    let mut worst_rotation: f64 = 0.0;
    let mut worst_flow: f64 = 0.0;
    let mut worst_shear: f64 = 0.0;
    let mut worst_modular: f64 = 0.0;
    let modular_b = SymplecticMat::new(1.0, 1.0, 0.0, 1.0)?;
    for &m in &windows {
        let gm = gaussian(m)?.sample(grid);
        for &delta in &deltas {
            for (_, lattice, generator) in matrix_lattices(delta)? {
                // rotation with metaplectic compensation
                let rep = verify_thm43(&gm, &lattice, &SymplecticMat::rotation(PI / 5.0), &battery, cfg.radius)?;
                worst_rotation = worst_rotation.max(rep.discrepancy);
                // matched elliptic flow, window untouched (Figure-1 angle)
                let s = oscillator_flow(PI / 12.0, m)?;
                let sys1 = GaborSystem::new(gm.clone(), lattice, cfg.radius)?;
                let sys2 = GaborSystem::new(gm.clone(), lattice.deform(&s), cfg.radius)?;
                worst_flow = worst_flow.max(compare_invariance(&sys1, &sys2, &battery)?);
                // shear with compensation
                let rep = verify_thm43(&gm, &lattice, &SymplecticMat::shear(1.0), &battery, cfg.radius)?;
                worst_shear = worst_shear.max(rep.discrepancy);
                // modular basis change on the same lattice
                let rep = verify_thm47(&gm, delta, &modular_b, &generator, &battery, cfg.radius)?;
                if !rep.lattice_invariant {
                    worst_modular = f64::INFINITY;
                }
                worst_modular = worst_modular.max(rep.discrepancy);
            }
        }
    }
    cases.push(CaseRecord::below("invariance: rotation + transported window (27 pairings)", worst_rotation, tol::BOUNDS_REL));
    cases.push(CaseRecord::below("invariance: matched elliptic flow, window kept (27 pairings)", worst_flow, tol::BOUNDS_REL));
    cases.push(CaseRecord::below("invariance: shear + chirped window (27 pairings)", worst_shear, tol::BOUNDS_REL));
    cases.push(CaseRecord::below("invariance: modular basis change (27 pairings)", worst_modular, tol::BOUNDS_REL));

    // Falsifiability control: non-integer uncompensated shear must move
    // the bounds; the integer shear (modular) must not.
    let g1 = gaussian(1.0)?.sample(grid);
    let lam = Lattice::square(2.0)?;
    let sys1 = GaborSystem::new(g1.clone(), lam, cfg.radius)?;
    let sys_sheared =
        GaborSystem::new(g1.clone(), lam.deform(&SymplecticMat::shear(0.5)), cfg.radius)?;
    let control = compare_invariance(&sys1, &sys_sheared, &battery)?;
    cases.push(CaseRecord::above("control: uncompensated shear detected", control, tol::CONTROL_MIN_DISCREPANCY));
    let sys_modular =
        GaborSystem::new(g1.clone(), lam.deform(&SymplecticMat::shear(1.0)), cfg.radius)?;
    let modular_null = compare_invariance(&sys1, &sys_modular, &battery)?;
    cases.push(CaseRecord::below("control: integer shear is a basis change (no effect)", modular_null, 1e-10));

    // Estimator soundness on the shipped systems.
    let shipped: Vec<(&str, SampledSignal, Lattice)> = vec![
        ("g1 square d=2", g1.clone(), Lattice::square(2.0)?),
        ("g_sqrt3 square45 d=2", gaussian(3.0_f64.sqrt())?.sample(grid), Lattice::square45(2.0)?),
        ("g1 hex d=2", g1.clone(), hexagonal(2.0, 1)?),
    ];
    let oracle_battery = TestBattery::hermite(DENSE_COMPRESSION_K, 1.0, grid)?;
    let mut worst_agreement: f64 = 0.0;
    let mut worst_psd: f64 = 0.0;
    for (_, w, lat) in &shipped {
        let sys = GaborSystem::new(w.clone(), *lat, cfg.radius)?;
        let eb = estimate_bounds(&sys, &oracle_battery)?;
        let (ed, min_eig) = dense_oracle(&sys)?;
        worst_agreement = worst_agreement
            .max((eb.a_est - ed.a_est).abs() / ed.a_est)
            .max((eb.b_est - ed.b_est).abs() / ed.b_est);
        worst_psd = worst_psd.max(-min_eig);
    }
    cases.push(CaseRecord::below("battery vs dense-route agreement (shipped systems)", worst_agreement, tol::ESTIMATOR_AGREEMENT));
    cases.push(CaseRecord::below("frame operator positive semidefinite", worst_psd, tol::PSD_FLOOR));

    // Upper-bound stability under widening the truncation radius.
    let sys_r6 = GaborSystem::new(g1.clone(), lam, cfg.radius - 2.0)?;
    let sys_r8 = GaborSystem::new(g1.clone(), lam, cfg.radius)?;
    let e6 = estimate_bounds(&sys_r6, &battery)?;
    let e8 = estimate_bounds(&sys_r8, &battery)?;
    cases.push(CaseRecord::below(
        "B_est stability under R -> R + 2 (relative)",
        (e8.b_est - e6.b_est).abs() / e8.b_est,
        tol::BESSEL_STABILITY,
    ));

    // Truncation-tail adequacy at the default radius.
    let tail = truncation_tail(&sys_r8, &battery)?;
    cases.push(CaseRecord::below("battery truncation tail over (R, R+2]", tail, 1e-10));

    Ok(SuiteReport::collect("frames", started, cases))
}

/// Thm-4.4 sweep of the worked hexagonal example (Figure-1 panels):
/// m = 1/sqrt(3) on the 45-degree rotated integer lattice.
pub fn example48_sweep(cfg: &SuiteConfig, delta: f64) -> Result<crate::frame::Thm44Report> {
    let battery = TestBattery::hermite(cfg.battery_k, 1.0, cfg.grid)?;
    let lattice = Lattice::square45(delta)?;
    verify_thm44(
        1.0 / 3.0_f64.sqrt(),
        &lattice,
        &[PI / 12.0, 0.0, -PI / 12.0, -PI / 6.0],
        &battery,
        cfg.grid,
        cfg.radius,
    )
}

/// Runs the named suite ("symplectic", "metaplectic", "tfa", "frames").
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    match name {
        "symplectic" => symplectic_suite(),
        "metaplectic" => metaplectic_suite(cfg),
        "tfa" => tfa_suite(cfg),
        "frames" => frames_suite(cfg),
        other => Err(crate::error::Error::InvalidInput(format!("unknown suite '{other}'"))),
    }
}

/// All suites in canonical order.
pub const SUITE_NAMES: [&str; 4] = ["symplectic", "metaplectic", "tfa", "frames"];
