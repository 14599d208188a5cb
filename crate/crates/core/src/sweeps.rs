//! Parameter grids, time series, first-revival detection and the linear
//! scaling fit t_r(N) = τ_r N.
//!
//! Grid points are independent; work is split across a rayon pool and the
//! results are reassembled in grid order, so output never depends on the
//! worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::correlators::QuenchCorrelators;
use crate::error::{Error, Result};
use crate::measures::{Measure, MeasureRecord};
use crate::model::ModelParams;
use crate::sum::Neumaier;

/// `count` evenly spaced values from `min` to `max` inclusive.
pub fn linspace(min: f64, max: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![min],
        _ => {
            let step = (max - min) / (count - 1) as f64;
            (0..count)
                .map(|i| {
                    if i + 1 == count {
                        max
                    } else {
                        min + i as f64 * step
                    }
                })
                .collect()
        }
    }
}

/// t_min, t_min + dt, … up to t_max (inclusive when it lies on the grid).
pub fn time_points(t_min: f64, t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidSweep(format!(
            "dt must be positive, got {dt}"
        )));
    }
    if !(t_min >= 0.0 && t_max > t_min && t_max.is_finite()) {
        return Err(Error::InvalidSweep(format!(
            "need 0 ≤ t_min < t_max, got t_min = {t_min}, t_max = {t_max}"
        )));
    }
    let count = ((t_max - t_min) / dt + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|i| t_min + i as f64 * dt).collect())
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidSweep(format!("cannot start worker pool: {e}")))
}

/// A (t × h1) heatmap request.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    /// h1 is overridden at every grid point.
    pub base: ModelParams,
    pub t_min: f64,
    pub t_max: f64,
    pub dt: f64,
    pub h1_min: f64,
    pub h1_max: f64,
    pub h1_steps: usize,
    pub measures: Vec<Measure>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        self.base.validate()?;
        time_points(self.t_min, self.t_max, self.dt)?;
        if self.h1_steps == 0 {
            return Err(Error::InvalidSweep("h1_steps must be at least 1".into()));
        }
        if !(self.h1_min.is_finite() && self.h1_max.is_finite()) {
            return Err(Error::InvalidSweep("h1 range must be finite".into()));
        }
        if self.h1_steps > 1 && self.h1_max <= self.h1_min {
            return Err(Error::InvalidSweep(format!(
                "h1_max ({}) must exceed h1_min ({})",
                self.h1_max, self.h1_min
            )));
        }
        if self.measures.is_empty() {
            return Err(Error::InvalidSweep("no measures selected".into()));
        }
        Ok(())
    }

    pub fn times(&self) -> Result<Vec<f64>> {
        time_points(self.t_min, self.t_max, self.dt)
    }

    pub fn fields(&self) -> Vec<f64> {
        linspace(self.h1_min, self.h1_max, self.h1_steps)
    }
}

/// One record per grid point, h1 outer and t inner.
pub fn sweep_grid(spec: &SweepSpec, workers: usize) -> Result<Vec<MeasureRecord>> {
    spec.validate()?;
    let times = spec.times()?;
    let fields = spec.fields();
    let rows = pool(workers)?.install(|| {
        fields
            .par_iter()
            .map(|&h1| time_series(&spec.base.with_h1(h1), &times))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(rows.into_iter().flatten().collect())
}

/// Measures along a list of times for a single quench.
pub fn time_series(params: &ModelParams, times: &[f64]) -> Result<Vec<MeasureRecord>> {
    let wrap = |t: f64, e: Error| Error::GridPoint {
        h1: params.h1,
        t,
        source: Box::new(e),
    };
    let q = QuenchCorrelators::new(params)
        .map_err(|e| wrap(times.first().copied().unwrap_or(0.0), e))?;
    times
        .iter()
        .map(|&t| {
            q.at(t)
                .and_then(|c| MeasureRecord::from_correlators(&c, params.h1))
                .map_err(|e| wrap(t, e))
        })
        .collect()
}

/// Window fractions of N used by [`detect_first_revival`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DetectionConfig {
    pub calibration: (f64, f64),
    pub search: (f64, f64),
}

impl Default for DetectionConfig {
    fn default() -> Self {
        Self {
            calibration: (0.05, 0.15),
            search: (0.15, 0.4),
        }
    }
}

impl DetectionConfig {
    pub fn validate(&self) -> Result<()> {
        let (c0, c1) = self.calibration;
        let (s0, s1) = self.search;
        if !(c0 >= 0.0 && c1 > c0 && s0 >= 0.0 && s1 > s0) {
            return Err(Error::InvalidSweep(format!(
                "detection windows must be non-empty and non-negative: {self:?}"
            )));
        }
        Ok(())
    }
}

/// Maximum allowed time step of a series fed to revival detection.
pub const MAX_DETECTION_DT: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Revival {
    pub time: f64,
    pub baseline: f64,
    pub deviation: f64,
}

/// First strong departure from the post-transient plateau: the time in the
/// search window furthest from the calibration-window mean.
pub fn detect_first_revival(
    times: &[f64],
    values: &[f64],
    n: usize,
    cfg: &DetectionConfig,
) -> Result<Revival> {
    cfg.validate()?;
    if times.len() != values.len() {
        return Err(Error::Series(format!(
            "{} times but {} values",
            times.len(),
            values.len()
        )));
    }
    if times.len() < 3 {
        return Err(Error::Series("fewer than three samples".into()));
    }
    let dt = times[1] - times[0];
    if !(dt > 0.0 && dt <= MAX_DETECTION_DT + 1e-12) {
        return Err(Error::Series(format!(
            "time step {dt} outside (0, {MAX_DETECTION_DT}]"
        )));
    }
    if times
        .windows(2)
        .any(|w| ((w[1] - w[0]) - dt).abs() > 1e-9 * (1.0 + w[1].abs()))
    {
        return Err(Error::Series("time grid is not uniform".into()));
    }
    let nf = n as f64;
    let inside = |t: f64, (a, b): (f64, f64)| t >= a * nf - 1e-9 && t <= b * nf + 1e-9;
    let end = cfg.search.1.max(cfg.calibration.1) * nf;
    if times[0] > cfg.calibration.0.min(cfg.search.0) * nf + 1e-9
        || times[times.len() - 1] < end - 0.5 * dt
    {
        return Err(Error::Series(format!(
            "series covers [{}, {}] but detection needs up to t = {end}",
            times[0],
            times[times.len() - 1]
        )));
    }

    let mut acc = Neumaier::new();
    let mut count = 0usize;
    for (&t, &v) in times.iter().zip(values) {
        if inside(t, cfg.calibration) {
            acc.add(v);
            count += 1;
        }
    }
    if count == 0 {
        return Err(Error::Series("calibration window holds no samples".into()));
    }
    let baseline = acc.total() / count as f64;

    let mut best: Option<(f64, f64)> = None;
    for (&t, &v) in times.iter().zip(values) {
        if !inside(t, cfg.search) {
            continue;
        }
        let d = (v - baseline).abs();
        if best.is_none_or(|(_, bd)| d > bd) {
            best = Some((t, d));
        }
    }
    let (time, deviation) =
        best.ok_or_else(|| Error::Series("search window holds no samples".into()))?;
    if deviation < 1e-9 {
        return Err(Error::NoRevival {
            max_deviation: deviation,
        });
    }
    Ok(Revival {
        time,
        baseline,
        deviation,
    })
}

/// Ordinary least-squares line through (N, t_r) points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RevivalFit {
    pub points: Vec<(f64, f64)>,
    pub slope: f64,
    pub intercept: f64,
    pub r_squared: f64,
}

pub fn fit_linear(points: &[(f64, f64)]) -> Result<RevivalFit> {
    if points.len() < 3 {
        return Err(Error::Fit(format!(
            "need at least 3 points, got {}",
            points.len()
        )));
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Fit("abscissas must be distinct".into()));
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).collect::<Neumaier>().total() / n;
    let my = points.iter().map(|p| p.1).collect::<Neumaier>().total() / n;
    let sxx = points
        .iter()
        .map(|p| (p.0 - mx).powi(2))
        .collect::<Neumaier>()
        .total();
    let sxy = points
        .iter()
        .map(|p| (p.0 - mx) * (p.1 - my))
        .collect::<Neumaier>()
        .total();
    let syy = points
        .iter()
        .map(|p| (p.1 - my).powi(2))
        .collect::<Neumaier>()
        .total();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .collect::<Neumaier>()
        .total();
    let r_squared = if syy > 0.0 {
        (1.0 - ss_res / syy).clamp(0.0, 1.0)
    } else {
        1.0
    };
    Ok(RevivalFit {
        points: points.to_vec(),
        slope,
        intercept,
        r_squared,
    })
}

/// First-revival times of every measure for a set of chain sizes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RevivalScan {
    pub sizes: Vec<usize>,
    /// `times[i][k]` is t_r for `sizes[i]` and `Measure::ALL[k]`.
    pub times: Vec<[f64; 3]>,
}

impl RevivalScan {
    pub fn points(&self, m: Measure) -> Vec<(f64, f64)> {
        let k = Measure::ALL.iter().position(|&x| x == m).unwrap();
        self.sizes
            .iter()
            .zip(&self.times)
            .map(|(&n, t)| (n as f64, t[k]))
            .collect()
    }

    pub fn fit(&self, m: Measure) -> Result<RevivalFit> {
        fit_linear(&self.points(m))
    }
}

/// Series over [0, 0.4 N] (or the end of the detection windows) for each
/// size, followed by revival detection on each measure.
pub fn revival_scan(
    base: &ModelParams,
    sizes: &[usize],
    dt: f64,
    cfg: &DetectionConfig,
    workers: usize,
) -> Result<RevivalScan> {
    cfg.validate()?;
    if sizes.is_empty() {
        return Err(Error::InvalidSweep("no chain sizes given".into()));
    }
    let end_frac = cfg.search.1.max(cfg.calibration.1);
    let per_size = |n: usize| -> Result<[f64; 3]> {
        let params = base.with_n(n);
        params.validate()?;
        let t_max = end_frac * n as f64;
        let steps = (t_max / dt - 1e-9).ceil() as usize;
        let times: Vec<f64> = (0..=steps).map(|i| i as f64 * dt).collect();
        let records = time_series(&params, &times)?;
        let mut out = [0.0; 3];
        for (k, m) in Measure::ALL.iter().enumerate() {
            let values: Vec<f64> = records.iter().map(|r| r.get(*m)).collect();
            out[k] = detect_first_revival(&times, &values, n, cfg)
                .map_err(|e| Error::RevivalAt {
                    n,
                    measure: m.name(),
                    source: Box::new(e),
                })?
                .time;
        }
        Ok(out)
    };
    let times = pool(workers)?.install(|| {
        sizes
            .par_iter()
            .map(|&n| per_size(n))
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(RevivalScan {
        sizes: sizes.to_vec(),
        times,
    })
}

/// Mean of `m` over time for each h1 row of a sweep (rows must be contiguous).
pub fn time_averages(records: &[MeasureRecord], m: Measure) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, Neumaier, usize)> = Vec::new();
    for r in records {
        match out.last_mut() {
            Some((h1, acc, count)) if *h1 == r.h1 => {
                acc.add(r.get(m));
                *count += 1;
            }
            _ => {
                let mut acc = Neumaier::new();
                acc.add(r.get(m));
                out.push((r.h1, acc, 1));
            }
        }
    }
    out.into_iter()
        .map(|(h1, acc, count)| (h1, acc.total() / count as f64))
        .collect()
}

/// h1 at which the profile is largest (first occurrence).
pub fn argmax_field(profile: &[(f64, f64)]) -> Option<f64> {
    profile
        .iter()
        .fold(None, |best: Option<(f64, f64)>, &(h, v)| match best {
            Some((_, bv)) if bv >= v => best,
            _ => Some((h, v)),
        })
        .map(|(h, _)| h)
}

/// h1 of the steepest central-difference slope |Δv/Δh1| at interior points.
pub fn steepest_field(profile: &[(f64, f64)]) -> Option<f64> {
    profile
        .windows(3)
        .map(|w| (w[1].0, ((w[2].1 - w[0].1) / (w[2].0 - w[0].0)).abs()))
        .fold(None, |best: Option<(f64, f64)>, (h, s)| match best {
            Some((_, bs)) if bs >= s => best,
            _ => Some((h, s)),
        })
        .map(|(h, _)| h)
}
