//! Acceptance suite: one [PASS]/[FAIL] line per criterion, non-zero exit if
//! any criterion fails. Run with `cargo test -p xy-quench --test acceptance`.

use std::fmt::Write as _;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use xy_quench::measures::{c_l1, c_re, mrq};
use xy_quench::oracle::{ed_build, mrq_pauli, random_xstate, sqc_ensemble};
use xy_quench::sweeps::{
    argmax_field, revival_scan, steepest_field, sweep_grid, time_averages, time_points,
    time_series, DetectionConfig, RevivalScan, SweepSpec,
};
use xy_quench::{correlators_nn, Measure, MeasureRecord, ModelParams};

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
}

const SIZES: [usize; 5] = [100, 200, 300, 400, 500];

fn scan(h0: f64) -> RevivalScan {
    let base = ModelParams::new(1.0, 100, h0, 1.0).unwrap();
    revival_scan(&base, &SIZES, 0.05, &DetectionConfig::default(), 1).unwrap()
}

fn revival_slopes(below: &RevivalScan, elapsed: f64) -> Outcome {
    let mut pass = true;
    let mut detail = String::new();
    for m in Measure::ALL {
        let fit = below.fit(m).unwrap();
        let (lo, hi) = if m == Measure::Mrq {
            (0.243, 0.259)
        } else {
            (0.245, 0.261)
        };
        let ok = (lo..=hi).contains(&fit.slope) && fit.r_squared >= 0.999;
        pass &= ok;
        write!(
            detail,
            "{m} slope {:.4} R² {:.6}; ",
            fit.slope, fit.r_squared
        )
        .unwrap();
    }
    write!(detail, "scan took {elapsed:.1}s on one worker").unwrap();
    Outcome {
        name: "revival slope (0.7 → 1.0, N = 100..500)",
        pass,
        detail,
    }
}

fn universality(below: &RevivalScan, above: &RevivalScan) -> Outcome {
    let mut pass = true;
    let mut detail = String::new();
    for m in Measure::ALL {
        let a = below.fit(m).unwrap().slope;
        let b = above.fit(m).unwrap().slope;
        let rel = (b - a).abs() / a.abs();
        pass &= rel <= 0.02;
        write!(detail, "{m} {a:.4} vs {b:.4} ({:.2}%); ", 100.0 * rel).unwrap();
    }
    Outcome {
        name: "universality (1.3 → 1.0 vs 0.7 → 1.0 within 2%)",
        pass,
        detail,
    }
}

fn critical_spec(gamma: f64, h0: f64) -> SweepSpec {
    SweepSpec {
        base: ModelParams::new(gamma, 100, h0, 1.0).unwrap(),
        t_min: 0.0,
        t_max: 30.0,
        dt: 0.1,
        h1_min: 0.0,
        h1_max: 2.0,
        h1_steps: 41,
        measures: Measure::ALL.to_vec(),
    }
}

fn critical_signature() -> Outcome {
    let mut pass = true;
    let mut detail = String::new();
    for gamma in [1.0, 0.5] {
        let below = sweep_grid(&critical_spec(gamma, 0.7), 0).unwrap();
        for m in [Measure::CRe, Measure::Mrq] {
            let peak = argmax_field(&time_averages(&below, m)).unwrap();
            pass &= (peak - 1.0).abs() <= 0.1 + 1e-9;
            write!(detail, "γ={gamma} h0=0.7 {m} peak at {peak:.2}; ").unwrap();
        }
        let above = sweep_grid(&critical_spec(gamma, 1.3), 0).unwrap();
        for m in Measure::ALL {
            let steep = steepest_field(&time_averages(&above, m)).unwrap();
            pass &= (steep - 1.0).abs() <= 0.1 + 1e-9;
            write!(detail, "γ={gamma} h0=1.3 {m} steepest at {steep:.2}; ").unwrap();
        }
    }
    Outcome {
        name: "critical-point signature (γ = 1, 0.5)",
        pass,
        detail,
    }
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240601);
    let (mut d_l1, mut d_re, mut d_mrq) = (0.0f64, 0.0f64, 0.0f64);
    let count = 500;
    for _ in 0..count {
        let x = random_xstate(&mut rng);
        let rho = x.density_matrix();
        let (l1, re) = sqc_ensemble(&rho).unwrap();
        d_l1 = d_l1.max((l1 - c_l1(&x)).abs());
        d_re = d_re.max((re - c_re(&x)).abs());
        d_mrq = d_mrq.max((mrq_pauli(&rho) - mrq(&x)).abs());
    }
    Outcome {
        name: "oracle equivalence (random X-states)",
        pass: d_l1 <= 1e-10 && d_re <= 1e-10 && d_mrq <= 1e-12,
        detail: format!(
            "{count} states; max |Δ| c_l1 {d_l1:.2e}, c_re {d_re:.2e}, mrq {d_mrq:.2e}"
        ),
    }
}

fn ed_convergence() -> Outcome {
    let names = ["mz", "sxx", "syy", "szz"];
    let sizes = [8usize, 10, 12];
    let mut worst = [[0.0f64; 4]; 3];
    for (i, &n) in sizes.iter().enumerate() {
        let p = ModelParams::new(1.0, n, 0.7, 1.0).unwrap();
        let ed = ed_build(&p).unwrap();
        for k in 0..=10 {
            let t = 0.5 * k as f64;
            let a = correlators_nn(&p, t).unwrap();
            let e = ed.correlators(t).unwrap();
            let d = [a.mz - e.mz, a.sxx - e.sxx, a.syy - e.syy, a.szz - e.szz];
            for c in 0..4 {
                worst[i][c] = worst[i][c].max(d[c].abs());
            }
        }
    }
    let mut pass = true;
    let mut detail = String::new();
    for c in 0..4 {
        let bounded = sizes
            .iter()
            .zip(&worst)
            .all(|(&n, w)| w[c] <= 4.0 / n as f64);
        let decreasing = worst.windows(2).all(|w| w[1][c] < w[0][c]);
        pass &= bounded && decreasing;
        write!(
            detail,
            "{} {:.3}/{:.3}/{:.3} (bound {}, decreasing {}); ",
            names[c], worst[0][c], worst[1][c], worst[2][c], bounded, decreasing
        )
        .unwrap();
    }
    write!(detail, "bounds 4/n = 0.500/0.400/0.333").unwrap();
    Outcome {
        name: "ED convergence (n = 8, 10, 12)",
        pass,
        detail,
    }
}

fn stationarity_and_limits() -> Outcome {
    let mut pass = true;
    let mut detail = String::new();

    let times = time_points(0.0, 50.0, 0.1).unwrap();
    let mut drift = 0.0f64;
    for (gamma, h) in [(1.0, 0.7), (0.5, 1.3), (1.0, 1.0)] {
        let rows = time_series(&ModelParams::new(gamma, 100, h, h).unwrap(), &times).unwrap();
        for r in &rows {
            for m in Measure::ALL {
                drift = drift.max((r.get(m) - rows[0].get(m)).abs());
            }
        }
    }
    pass &= drift <= 1e-12;
    write!(detail, "no-quench drift {drift:.1e}; ").unwrap();

    let p = ModelParams::new(1.0, 100, 20.0, 20.0).unwrap();
    let c = correlators_nn(&p, 0.0).unwrap();
    let r = MeasureRecord::from_correlators(&c, 20.0).unwrap();
    let checks = [
        ("mz", c.mz, 1.0, 1e-3),
        ("mrq", r.mrq, 4.0, 1e-2),
        ("c_l1", r.c_l1, 2.0, 1e-2),
        ("c_re", r.c_re, 2.0, 1e-2),
    ];
    for (name, value, target, tol) in checks {
        let ok = (value - target).abs() <= tol;
        pass &= ok;
        write!(
            detail,
            "h=20 {name} {value:.5} ({}); ",
            if ok { "ok" } else { "out of tolerance" }
        )
        .unwrap();
    }
    Outcome {
        name: "stationarity and strong-field limits",
        pass,
        detail,
    }
}

fn sweep_bytes(records: &[MeasureRecord]) -> Vec<u8> {
    let mut out = Vec::with_capacity(records.len() * 40);
    for r in records {
        for v in [r.t, r.h1, r.c_l1, r.c_re, r.mrq] {
            out.extend_from_slice(&v.to_bits().to_le_bytes());
        }
    }
    out
}

fn determinism() -> Outcome {
    let spec = critical_spec(0.5, 1.3);
    let outputs: Vec<Vec<u8>> = [1, 4, 8]
        .iter()
        .map(|&w| sweep_bytes(&sweep_grid(&spec, w).unwrap()))
        .collect();
    let pass = outputs.windows(2).all(|w| w[0] == w[1]);
    Outcome {
        name: "determinism (workers 1, 4, 8)",
        pass,
        detail: format!(
            "{} records, {} bytes each run",
            outputs[0].len() / 40,
            outputs[0].len()
        ),
    }
}

fn main() {
    let start = Instant::now();
    let below = scan(0.7);
    let elapsed = start.elapsed().as_secs_f64();
    let above = scan(1.3);

    let outcomes = [
        revival_slopes(&below, elapsed),
        universality(&below, &above),
        critical_signature(),
        oracle_equivalence(),
        ed_convergence(),
        stationarity_and_limits(),
        determinism(),
    ];

    let mut failed = 0;
    for o in &outcomes {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        println!("[{tag}] {}: {}", o.name, o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {} passed, {} failed ({:.1}s)",
        outcomes.len() - failed,
        failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
