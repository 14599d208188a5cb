use xy_quench::sweeps::{
    revival_scan, sweep_grid, time_points, time_series, DetectionConfig, SweepSpec,
};
use xy_quench::{Measure, MeasureRecord, ModelParams, MomentumGrid};

use crate::args::{ModelArgs, OutputArgs, RevivalArgs, SeriesArgs, SweepArgs};
use crate::config::{ConfigFile, List, Range, Window};
use crate::output::{emit, Format, Table};
use crate::CliError;

const DEFAULT_H1_RANGE: &str = "0:2:41";
const DEFAULT_T_RANGE: &str = "0:30:0.1";

fn default_range(s: &str) -> Range {
    s.parse().expect("built-in range is valid")
}

pub(crate) fn resolve_model(m: &ModelArgs, cfg: &ConfigFile) -> Result<ModelParams, CliError> {
    let d = ModelParams::default();
    let p = ModelParams {
        j: cfg.or(m.j, "j", d.j)?,
        gamma: cfg.or(m.gamma, "gamma", d.gamma)?,
        n: cfg.or(m.n, "n", d.n)?,
        h0: cfg.or(m.h0, "h0", d.h0)?,
        h1: cfg.or(m.h1, "h1", d.h1)?,
        grid: cfg.or(m.grid, "grid", MomentumGrid::default())?,
    };
    p.validate()?;
    Ok(p)
}

struct Sink {
    path: Option<std::path::PathBuf>,
    format: Format,
    threads: usize,
}

fn resolve_sink(o: &OutputArgs, cfg: &ConfigFile) -> Result<Sink, CliError> {
    Ok(Sink {
        path: cfg.pick(o.output.clone(), "output")?,
        format: cfg.or(o.format, "format", Format::Csv)?,
        threads: cfg.or(o.threads, "threads", 0)?,
    })
}

fn resolve_measures(
    flag: Option<List<Measure>>,
    cfg: &ConfigFile,
) -> Result<Vec<Measure>, CliError> {
    let chosen = cfg
        .pick(flag, "measures")?
        .map(|l| l.0)
        .unwrap_or_else(|| Measure::ALL.to_vec());
    if chosen.is_empty() {
        return Err(CliError::Usage("no measures selected".into()));
    }
    Ok(Measure::ALL
        .into_iter()
        .filter(|m| chosen.contains(m))
        .collect())
}

fn time_grid(r: &Range) -> Result<(f64, f64, f64), CliError> {
    let dt = r.step().map_err(CliError::Usage)?;
    let (t_max, _) = r.endpoints();
    Ok((r.min, t_max, dt))
}

fn model_meta(table: &mut Table, command: &str, p: &ModelParams) {
    table
        .meta(
            "generator",
            format!("xyquench {}", env!("CARGO_PKG_VERSION")),
        )
        .meta("command", command)
        .meta("j", p.j)
        .meta("gamma", p.gamma)
        .meta("n", p.n)
        .meta("h0", p.h0)
        .meta("grid", p.grid.name());
}

fn detection_meta(table: &mut Table, d: &DetectionConfig) {
    table
        .meta(
            "detection_calibration",
            format!("{}:{}", d.calibration.0, d.calibration.1),
        )
        .meta("detection_search", format!("{}:{}", d.search.0, d.search.1));
}

fn measure_table(records: &[MeasureRecord], measures: &[Measure]) -> Table {
    let mut table = Table::new(
        ["t", "h1"]
            .into_iter()
            .map(String::from)
            .chain(measures.iter().map(|m| m.name().to_string())),
    );
    table.rows = records
        .iter()
        .map(|r| {
            let mut row = vec![r.t, r.h1];
            row.extend(measures.iter().map(|&m| r.get(m)));
            row
        })
        .collect();
    table
}

fn measures_meta(measures: &[Measure]) -> String {
    measures
        .iter()
        .map(|m| m.name())
        .collect::<Vec<_>>()
        .join(",")
}

pub fn sweep(a: SweepArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    let base = resolve_model(&a.model, cfg)?;
    let sink = resolve_sink(&a.out, cfg)?;
    let measures = resolve_measures(a.measures, cfg)?;
    let h1r = cfg.or(a.h1_range, "h1-range", default_range(DEFAULT_H1_RANGE))?;
    let tr = cfg.or(a.t_range, "t-range", default_range(DEFAULT_T_RANGE))?;
    let (t_min, t_max, dt) = time_grid(&tr)?;
    let (h1_max, h1_steps) = h1r.endpoints();
    let spec = SweepSpec {
        base,
        t_min,
        t_max,
        dt,
        h1_min: h1r.min,
        h1_max,
        h1_steps,
        measures: measures.clone(),
    };
    let records = sweep_grid(&spec, sink.threads)?;

    let mut table = measure_table(&records, &measures);
    model_meta(&mut table, "sweep", &base);
    table
        .meta("h1_range", h1r.to_string())
        .meta("h1_min", spec.h1_min)
        .meta("h1_max", spec.h1_max)
        .meta("h1_steps", spec.h1_steps)
        .meta("t_range", tr.to_string())
        .meta("t_min", t_min)
        .meta("t_max", t_max)
        .meta("dt", dt)
        .meta("t_steps", spec.times()?.len())
        .meta("measures", measures_meta(&measures))
        .meta("records", records.len())
        .meta("format", sink.format.name());
    detection_meta(&mut table, &DetectionConfig::default());
    emit(&table.render(sink.format), sink.path.as_deref())
}

pub fn series(a: SeriesArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    let params = resolve_model(&a.model, cfg)?;
    let sink = resolve_sink(&a.out, cfg)?;
    let measures = resolve_measures(a.measures, cfg)?;
    let tr = cfg.or(a.t_range, "t-range", default_range(DEFAULT_T_RANGE))?;
    let (t_min, t_max, dt) = time_grid(&tr)?;
    let times = time_points(t_min, t_max, dt)?;
    let records = time_series(&params, &times)?;

    let mut table = measure_table(&records, &measures);
    model_meta(&mut table, "series", &params);
    table
        .meta("h1", params.h1)
        .meta("t_range", tr.to_string())
        .meta("t_min", t_min)
        .meta("t_max", t_max)
        .meta("dt", dt)
        .meta("measures", measures_meta(&measures))
        .meta("records", records.len())
        .meta("format", sink.format.name());
    detection_meta(&mut table, &DetectionConfig::default());
    emit(&table.render(sink.format), sink.path.as_deref())
}

pub fn revival(a: RevivalArgs, cfg: &ConfigFile) -> Result<(), CliError> {
    let base = resolve_model(&a.model, cfg)?;
    let sink = resolve_sink(&a.out, cfg)?;
    let sizes = cfg
        .pick(a.sizes, "sizes")?
        .map(|l| l.0)
        .ok_or_else(|| CliError::Usage("--sizes is required (at least 3 chain sizes)".into()))?;
    if sizes.len() < 3 {
        return Err(CliError::Usage(format!(
            "the scaling fit needs at least 3 sizes, got {}",
            sizes.len()
        )));
    }
    let dt = cfg.or(a.dt, "dt", 0.05)?;
    let d = DetectionConfig::default();
    let Window(c0, c1) = cfg.or(
        a.calibration,
        "calibration",
        Window(d.calibration.0, d.calibration.1),
    )?;
    let Window(s0, s1) = cfg.or(a.search, "search", Window(d.search.0, d.search.1))?;
    let detection = DetectionConfig {
        calibration: (c0, c1),
        search: (s0, s1),
    };

    let scan = revival_scan(&base, &sizes, dt, &detection, sink.threads)?;
    let fits = Measure::ALL
        .iter()
        .map(|&m| scan.fit(m).map(|f| (m, f)))
        .collect::<Result<Vec<_>, _>>()?;

    let mut table = Table::new(["N", "c_l1", "c_re", "mrq"]);
    table.integer_columns.push("N".into());
    table.rows = scan
        .sizes
        .iter()
        .zip(&scan.times)
        .map(|(&n, t)| vec![n as f64, t[0], t[1], t[2]])
        .collect();
    table
        .meta(
            "generator",
            format!("xyquench {}", env!("CARGO_PKG_VERSION")),
        )
        .meta("command", "revival")
        .meta("j", base.j)
        .meta("gamma", base.gamma)
        .meta("h0", base.h0)
        .meta("h1", base.h1)
        .meta("grid", base.grid.name())
        .meta(
            "sizes",
            sizes
                .iter()
                .map(|n| n.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )
        .meta("dt", dt)
        .meta("format", sink.format.name());
    detection_meta(&mut table, &detection);
    for (m, f) in &fits {
        table
            .meta(&format!("fit_{}_slope", m.name()), f.slope)
            .meta(&format!("fit_{}_intercept", m.name()), f.intercept)
            .meta(&format!("fit_{}_r_squared", m.name()), f.r_squared);
    }

    let report: String = fits
        .iter()
        .map(|(m, f)| {
            format!(
                "{:<5} slope = {:.6}  intercept = {:.4}  R² = {:.6}\n",
                m.name(),
                f.slope,
                f.intercept,
                f.r_squared
            )
        })
        .collect();
    emit(&table.render(sink.format), sink.path.as_deref())?;
    if sink.path.is_some() {
        print!("{report}");
    } else {
        eprint!("{report}");
    }
    Ok(())
}
