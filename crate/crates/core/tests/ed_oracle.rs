use xy_quench::oracle::{ed_build, ed_two_site_rdm, EdState};
use xy_quench::{correlators_nn, ModelParams, MomentumGrid};

fn antiperiodic(gamma: f64, n: usize, h0: f64, h1: f64) -> ModelParams {
    ModelParams::new(gamma, n, h0, h1)
        .unwrap()
        .with_grid(MomentumGrid::Antiperiodic)
}

// On the antiperiodic grid the momentum sums are the exact finite-chain
// answer, so they must reproduce brute-force diagonalisation to round-off.
#[test]
fn antiperiodic_sums_match_exact_diagonalisation() {
    let cases = [
        (1.0, 0.7, 1.0),
        (1.0, 1.3, 1.0),
        (0.5, 0.7, 1.0),
        (0.5, 0.2, 1.6),
        (0.8, 2.5, 0.3),
    ];
    let mut worst = 0.0f64;
    for n in [4, 6, 8, 10, 12] {
        for &(g, h0, h1) in &cases {
            let p = antiperiodic(g, n, h0, h1);
            let ed = ed_build(&p).unwrap();
            for t in [0.0, 0.35, 1.0, 2.5, 7.0] {
                let a = correlators_nn(&p, t).unwrap();
                let e = ed.correlators(t).unwrap();
                for (x, y) in [(a.mz, e.mz), (a.sxx, e.sxx), (a.syy, e.syy), (a.szz, e.szz)] {
                    worst = worst.max((x - y).abs());
                }
            }
        }
    }
    assert!(worst < 1e-10, "worst deviation {worst:.3e}");
}

#[test]
fn rdm_is_a_physical_x_state() {
    let p = ModelParams::new(1.0, 10, 0.7, 1.0).unwrap();
    let ed = ed_build(&p).unwrap();
    for t in [0.0, 0.5, 2.0, 5.0] {
        let x = ed_two_site_rdm(&ed, t).unwrap();
        let e = ed.correlators(t).unwrap();
        assert_eq!(x.mz(), e.mz);
        assert!(x.eigenvalues().iter().all(|&l| l >= -1e-12));
    }
}

#[test]
fn cyclic_grid_approaches_exact_result() {
    let mut previous = f64::INFINITY;
    for n in [8, 10, 12] {
        let p = ModelParams::new(1.0, n, 0.7, 1.0).unwrap();
        let ed = ed_build(&p).unwrap();
        let a = correlators_nn(&p, 0.0).unwrap();
        let e = ed.correlators(0.0).unwrap();
        let dev = (a.mz - e.mz).abs();
        assert!(dev < previous, "n = {n}: {dev} vs {previous}");
        previous = dev;
    }
}

#[test]
fn two_site_chain_and_size_limit() {
    let ed = EdState::from_couplings(2, 1.0, 1.0, 0.0, 0.0).unwrap();
    assert!((ed.correlators(0.0).unwrap().sxx - 1.0).abs() < 1e-12);
    let too_big = ModelParams::new(1.0, 16, 0.7, 1.0).unwrap();
    assert!(ed_build(&too_big).is_err());
}
