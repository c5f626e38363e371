use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("physical gate error rate {0} outside (0, 0.01)")]
    GateErrorRate(f64),

    #[error("invalid logical circuit profile: {0}")]
    Profile(String),

    #[error("difficulty must be at least 1, got {0}")]
    Difficulty(f64),

    #[error("clock speed must be positive, got {0} Hz")]
    ClockSpeed(f64),

    #[error("time overhead c_tau must be positive, got {0}")]
    TimeOverhead(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("probability {0} outside [0, 1]")]
    Probability(f64),

    #[error("invalid target: {0}")]
    Target(String),

    #[error("year {year} outside the supported range: {reason}")]
    Year { year: f64, reason: String },

    #[error("fit needs at least two points with distinct years and positive values")]
    Fit,

    #[error("unknown {kind} `{value}`")]
    Unknown { kind: &'static str, value: String },

    #[error("malformed input: {0}")]
    Parse(String),
}
