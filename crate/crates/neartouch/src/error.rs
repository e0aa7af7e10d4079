use crate::solver::Solution;
use num_complex::Complex64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Capability(String),
    #[error("singular point: {0}")]
    Singularity(String),
    #[error("point coincides with the center of disk {0}")]
    CenterInversion(usize),
    #[error("|x1| = {x1} is outside the gap (limit {limit})")]
    OutOfGap { x1: f64, limit: f64 },
    #[error("argument {z} is outside the asymptotic range")]
    OutOfAsymptoticRange { z: f64 },
    #[error("accuracy target {tol:e} not met (estimate {estimate:e})")]
    Accuracy {
        best: Complex64,
        estimate: f64,
        tol: f64,
    },
    #[error("solver stopped at residual {residual:e} above target {target:e}")]
    NotConverged {
        residual: f64,
        target: f64,
        best: Box<Solution>,
    },
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
