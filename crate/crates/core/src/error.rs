use thiserror::Error;

/// Errors raised by series evaluation, transforms and identity checks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid base q = {0}: require 0 < q < 1")]
    InvalidBase(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("divergent series: {0}")]
    DivergentSeries(String),

    #[error("lower parameter {param} coincides with the pole q^-{index}")]
    LowerParamPole { param: String, index: u32 },

    #[error(
        "series did not converge within {max_terms} terms (last term magnitude {last_term:e})"
    )]
    NoConvergence { max_terms: usize, last_term: f64 },

    #[error("pole of the q-Gamma function at x = {0}")]
    Pole(f64),

    #[error("window of {max_points} lattice points cannot meet tail tolerance {tol:e} (tail estimate {tail:e})")]
    WindowTooSmall {
        max_points: usize,
        tol: f64,
        tail: f64,
    },

    #[error("inadmissible parameters: {0}")]
    InadmissibleBranch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
