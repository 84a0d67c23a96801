use gfsi_core::frame::*;
use gfsi_core::lattice::{hexagonal, lattices_equal, Lattice};
use gfsi_core::metaplectic::apply_matrix_sampled;
use gfsi_core::signal::*;
use gfsi_core::symplectic::SymplecticMat;
use std::f64::consts::PI;

fn main() {
    let grid = GridSpec::default_desk();
    let battery = TestBattery::hermite(40, 1.0, grid).unwrap();
    let b = SymplecticMat::new(1.0, 1.0, 0.0, 1.0).unwrap();
    let hexgen = {
        let g = hexagonal(1.0, 1).unwrap().generator;
        SymplecticMat::new(g[0][0], g[0][1], g[1][0], g[1][1]).unwrap()
    };
    for &m in &[1.0 / 3.0_f64.sqrt(), 1.0, 3.0_f64.sqrt()] {
        let gm = gaussian(m).unwrap().sample(grid);
        for &delta in &[1.5, 2.0, 4.0] {
            for (name, sgen) in [
                ("square", SymplecticMat::identity()),
                ("hex", hexgen),
                ("square45", SymplecticMat::rotation(PI / 4.0)),
            ] {
                let lam = Lattice::square(delta).unwrap().deform(&sgen);
                // conjugated modular deformation: window stays g_m on sys1
                let conj = sgen * b * sgen.inverse();
                let w2 = apply_matrix_sampled(&conj, &gm).unwrap();
                assert!(lattices_equal(&lam, &lam.deform(&conj), 1e-9).unwrap());
                let sys1 = GaborSystem::new(gm.clone(), lam, 8.0).unwrap();
                let sys2 = GaborSystem::new(w2, lam, 8.0).unwrap();
                let t1 = truncation_tail(&sys1, &battery).unwrap();
                let t2 = truncation_tail(&sys2, &battery).unwrap();
                let d = compare_invariance(&sys1, &sys2, &battery).unwrap();
                let flag = if t1.max(t2) > 1e-10 || d > 1e-2 { " <-- PROBLEM" } else { "" };
                println!("m={m:.3} {name:8} d={delta}: tails {t1:.2e}/{t2:.2e} discrepancy {d:.3e}{flag}");
            }
        }
    }
}
