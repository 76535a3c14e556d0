use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet mismatch: level {0} vs level {1}")]
    AlphabetMismatch(u32, u32),
    #[error("point {0} is not {1}-torsion")]
    NotTorsion(String, u32),
    #[error("Im tau must be positive (got {0})")]
    UpperHalfPlane(f64),
    #[error("theta series did not converge within {0} terms")]
    NoConvergence(usize),
    #[error("evaluation at a puncture (distance {0:.3e})")]
    Puncture(f64),
    #[error("series has a pole term but no routing rule was given")]
    PoleNotRouted,
    #[error("weight {0} is not supported here (need even weight >= 4)")]
    BadWeight(i64),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("quadrature did not reach tolerance {0:.1e} (estimate {1:.3e})")]
    Quadrature(f64, f64),
    #[error("path violates puncture clearance: distance {0:.3e} < {1:.3e}")]
    Clearance(f64, f64),
    #[error("n_max = {0} is too small for length {1}")]
    Truncation(usize, usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
