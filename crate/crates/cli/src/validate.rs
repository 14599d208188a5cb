//! Cross-checks of the closed forms against the brute-force oracles.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use xy_quench::measures::{c_l1, c_re, mrq};
use xy_quench::oracle::{ed_build, mrq_pauli, random_xstate, sqc_ensemble};
use xy_quench::sweeps::{time_points, time_series};
use xy_quench::{correlators_nn, Measure, ModelParams, MomentumGrid};

use crate::args::ValidateArgs;
use crate::config::{ConfigFile, List};
use crate::CliError;

struct Suite {
    name: &'static str,
    pass: bool,
    worst: f64,
    detail: String,
}

fn oracle_equivalence(seed: u64, states: usize) -> Result<Suite, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut d_l1, mut d_re, mut d_mrq) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..states {
        let x = random_xstate(&mut rng);
        let rho = x.density_matrix();
        let (l1, re) = sqc_ensemble(&rho)?;
        d_l1 = d_l1.max((l1 - c_l1(&x)).abs());
        d_re = d_re.max((re - c_re(&x)).abs());
        d_mrq = d_mrq.max((mrq_pauli(&rho) - mrq(&x)).abs());
    }
    Ok(Suite {
        name: "oracle-equivalence",
        pass: d_l1 <= 1e-10 && d_re <= 1e-10 && d_mrq <= 1e-12,
        worst: d_l1.max(d_re).max(d_mrq),
        detail: format!(
            "{states} X-states (seed {seed}): c_l1 {d_l1:.2e}, c_re {d_re:.2e} (tol 1e-10), mrq {d_mrq:.2e} (tol 1e-12)"
        ),
    })
}

fn correlator_gap(p: &ModelParams) -> Result<f64, CliError> {
    let ed = ed_build(p)?;
    let mut worst = 0.0f64;
    for k in 0..=10 {
        let t = 0.5 * k as f64;
        let a = correlators_nn(p, t)?;
        let e = ed.correlators(t)?;
        for d in [a.mz - e.mz, a.sxx - e.sxx, a.syy - e.syy, a.szz - e.szz] {
            worst = worst.max(d.abs());
        }
    }
    Ok(worst)
}

fn ed_exactness(sizes: &[usize]) -> Result<Suite, CliError> {
    let mut worst = 0.0f64;
    for &n in sizes {
        for (g, h0, h1) in [(1.0, 0.7, 1.0), (0.5, 1.3, 1.0), (0.8, 0.2, 1.7)] {
            let p = ModelParams::new(g, n, h0, h1)?.with_grid(MomentumGrid::Antiperiodic);
            worst = worst.max(correlator_gap(&p)?);
        }
    }
    Ok(Suite {
        name: "ed-exactness",
        pass: worst <= 1e-10,
        worst,
        detail: format!("antiperiodic grid vs ED, n = {sizes:?}: max |Δ| {worst:.2e} (tol 1e-10)"),
    })
}

fn ed_convergence(sizes: &[usize]) -> Result<Suite, CliError> {
    let mut gaps = Vec::with_capacity(sizes.len());
    for &n in sizes {
        gaps.push(correlator_gap(&ModelParams::new(1.0, n, 0.7, 1.0)?)?);
    }
    let bounded = sizes.iter().zip(&gaps).all(|(&n, &g)| g <= 4.0 / n as f64);
    let decreasing = gaps.windows(2).all(|w| w[1] < w[0]);
    let listing: Vec<String> = sizes
        .iter()
        .zip(&gaps)
        .map(|(n, g)| format!("n={n}: {g:.3} (bound {:.3})", 4.0 / *n as f64))
        .collect();
    Ok(Suite {
        name: "ed-convergence",
        pass: bounded && decreasing,
        worst: gaps.iter().copied().fold(0.0, f64::max),
        detail: format!(
            "cyclic grid vs ED, γ=1, 0.7→1.0, t ≤ 5: {}; strictly decreasing: {decreasing}",
            listing.join(", ")
        ),
    })
}

fn stationarity() -> Result<Suite, CliError> {
    let times = time_points(0.0, 50.0, 0.5)?;
    let mut worst = 0.0f64;
    for (g, h) in [(1.0, 0.7), (0.5, 1.3), (1.0, 1.0)] {
        let rows = time_series(&ModelParams::new(g, 100, h, h)?, &times)?;
        for r in &rows {
            for m in Measure::ALL {
                worst = worst.max((r.get(m) - rows[0].get(m)).abs());
            }
        }
    }
    Ok(Suite {
        name: "stationarity",
        pass: worst <= 1e-12,
        worst,
        detail: format!("h0 = h1, t ∈ [0, 50]: max drift {worst:.2e} (tol 1e-12)"),
    })
}

// Strong field: the state is fully polarised up to O(1/h) transverse
// corrections. Zero field, γ = 1: the ferromagnet has ⟨σxσx⟩ = 1.
fn limits() -> Result<Suite, CliError> {
    let strong = correlators_nn(&ModelParams::new(1.0, 100, 20.0, 20.0)?, 0.0)?;
    let zero = correlators_nn(&ModelParams::new(1.0, 100, 0.0, 0.0)?, 0.0)?;
    let mz = (strong.mz - 1.0).abs();
    let szz = (strong.szz - 1.0).abs();
    let sxx = (zero.sxx - 1.0).abs();
    Ok(Suite {
        name: "limits",
        pass: mz <= 1e-3 && szz <= 1e-3 && sxx <= 1e-12,
        worst: mz.max(szz).max(sxx),
        detail: format!(
            "h=20: |mz−1| {mz:.2e}, |szz−1| {szz:.2e} (tol 1e-3); h=0: |sxx−1| {sxx:.2e} (tol 1e-12)"
        ),
    })
}

pub fn run(a: ValidateArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    let seed = cfg.or(a.seed, "seed", 1)?;
    let states = cfg.or(a.states, "states", 500)?;
    let sizes = cfg.or(a.ed_sizes, "ed-sizes", List(vec![8, 10, 12]))?.0;
    if sizes.is_empty() {
        return Err(CliError::Usage(
            "--ed-sizes must list at least one size".into(),
        ));
    }

    let suites = [
        oracle_equivalence(seed, states)?,
        ed_exactness(&sizes)?,
        ed_convergence(&sizes)?,
        stationarity()?,
        limits()?,
    ];
    for s in &suites {
        println!(
            "[{}] {}: {}",
            if s.pass { "PASS" } else { "FAIL" },
            s.name,
            s.detail
        );
    }
    let failed: Vec<String> = suites
        .iter()
        .filter(|s| !s.pass)
        .map(|s| format!("{} (worst {:.3e})", s.name, s.worst))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failure(format!(
            "failed suites: {}",
            failed.join(", ")
        )))
    }
}
