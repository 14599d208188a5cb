use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("unsupported site offset {0}")]
    InvalidOffset(i32),

    #[error("state is not positive: eigenvalue {eigenvalue:.3e}")]
    NotPositive { eigenvalue: f64 },

    #[error("not a density matrix: {0}")]
    NotDensityMatrix(String),

    #[error("binary entropy argument {0} outside [0, 1]")]
    EntropyDomain(f64),

    #[error("exact diagonalisation supports 2..=14 sites (even), got {0}")]
    EdSize(usize),

    #[error("at grid point (h1 = {h1}, t = {t}): {source}")]
    GridPoint {
        h1: f64,
        t: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("invalid sweep specification: {0}")]
    InvalidSweep(String),

    #[error("series unsuitable for revival detection: {0}")]
    Series(String),

    #[error("no revival found (max deviation {max_deviation:.3e})")]
    NoRevival { max_deviation: f64 },

    #[error("N = {n}, {measure}: {source}")]
    RevivalAt {
        n: usize,
        measure: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("linear fit: {0}")]
    Fit(String),
}
