//! `key = value` config files, value parsing, and flag/file resolution.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

const KEYS: &[&str] = &[
    "gamma",
    "j",
    "n",
    "h0",
    "h1",
    "grid",
    "output",
    "format",
    "threads",
    "h1-range",
    "t-range",
    "measures",
    "sizes",
    "dt",
    "calibration",
    "search",
    "seed",
    "states",
    "ed-sizes",
];

#[derive(Debug, Default, Clone)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Usage(m) => CliError::Usage(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CliError::Usage(format!("line {}: expected `key = value`", lineno + 1))
            })?;
            let key = key.trim().replace('_', "-");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Usage(format!(
                    "line {}: unknown key '{key}'",
                    lineno + 1
                )));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    /// The flag value if given, else the parsed config value, else `None`.
    pub fn pick<T>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        if flag.is_some() {
            return Ok(flag);
        }
        match self.values.get(key) {
            None => Ok(None),
            Some(v) => v
                .parse()
                .map(Some)
                .map_err(|e| CliError::Usage(format!("config key '{key}' = '{v}': {e}"))),
        }
    }

    pub fn or<T>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError>
    where
        T: FromStr,
        T::Err: fmt::Display,
    {
        Ok(self.pick(flag, key)?.unwrap_or(default))
    }
}

/// Third field of a range: an integer is a point count, a decimal a step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Spacing {
    Count(usize),
    Step(f64),
}

/// `min:max:count-or-step`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub spacing: Spacing,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        let [min, max, third] = parts[..] else {
            return Err(format!("expected min:max:count-or-step, got '{s}'"));
        };
        let num = |x: &str| {
            x.parse::<f64>()
                .map_err(|_| format!("'{x}' is not a number"))
        };
        let (min, max) = (num(min)?, num(max)?);
        let spacing = if third.chars().all(|c| c.is_ascii_digit()) {
            Spacing::Count(third.parse().map_err(|_| format!("bad count '{third}'"))?)
        } else {
            Spacing::Step(num(third)?)
        };
        match spacing {
            Spacing::Count(0) => return Err("count must be at least 1".into()),
            Spacing::Step(d) if !(d > 0.0 && d.is_finite()) => {
                return Err(format!("step must be positive, got {d}"))
            }
            _ => {}
        }
        if !(min.is_finite() && max.is_finite() && max >= min) {
            return Err(format!("need finite min ≤ max, got {min}:{max}"));
        }
        Ok(Range { min, max, spacing })
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.spacing {
            Spacing::Count(c) => write!(f, "{}:{}:{c}", self.min, self.max),
            Spacing::Step(d) => write!(f, "{}:{}:{d:?}", self.min, self.max),
        }
    }
}

impl Range {
    /// Number of grid points; a step grid stops at the last point ≤ max.
    pub fn count(&self) -> usize {
        match self.spacing {
            Spacing::Count(c) => c,
            Spacing::Step(d) => ((self.max - self.min) / d + 1e-9).floor() as usize + 1,
        }
    }

    /// (max actually reached, point count).
    pub fn endpoints(&self) -> (f64, usize) {
        let c = self.count();
        match self.spacing {
            Spacing::Count(_) => (self.max, c),
            Spacing::Step(d) => (self.min + (c - 1) as f64 * d, c),
        }
    }

    /// Spacing between consecutive points.
    pub fn step(&self) -> Result<f64, String> {
        match self.spacing {
            Spacing::Step(d) => Ok(d),
            Spacing::Count(c) if c >= 2 => Ok((self.max - self.min) / (c - 1) as f64),
            Spacing::Count(_) => Err("a time range needs at least two points".into()),
        }
    }
}

/// `lo:hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Window(pub f64, pub f64);

impl FromStr for Window {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| format!("expected lo:hi, got '{s}'"))?;
        let num = |x: &str| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| format!("'{x}' is not a number"))
        };
        Ok(Window(num(a)?, num(b)?))
    }
}

/// Comma-separated list.
#[derive(Debug, Clone, PartialEq)]
pub struct List<T>(pub Vec<T>);

impl<T: FromStr> FromStr for List<T>
where
    T::Err: fmt::Display,
{
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<T>().map_err(|e| format!("'{x}': {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(List)
    }
}
