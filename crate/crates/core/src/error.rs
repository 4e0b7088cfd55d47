use thiserror::Error;

/// Every failure the library can report.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degradedness violated: n1={n1} must be strictly below n2={n2}")]
    NonDegraded { n1: f64, n2: f64 },

    #[error("{field} must be positive, got {value}")]
    NonPositive { field: &'static str, value: f64 },

    #[error("{field} must be non-negative, got {value}")]
    Negative { field: &'static str, value: f64 },

    #[error("{field} must be finite, got {value}")]
    NonFinite { field: &'static str, value: f64 },

    #[error("{field}={value} is outside [{lo}, {hi}]{}", reason.map(|r| format!(" ({r})")).unwrap_or_default())]
    OutOfRange {
        field: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
        reason: Option<&'static str>,
    },

    #[error("C(x) requires x >= 0, got {0}")]
    NegativeArgument(f64),

    #[error("unknown variable label `{0}`")]
    UnknownLabel(String),

    #[error("label `{0}` appears in both sides of the mutual information")]
    OverlappingSets(String),

    #[error("covariance is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("covariance is not positive semidefinite (smallest eigenvalue {min_eigenvalue})")]
    NotPsd { min_eigenvalue: f64 },

    #[error("singular submatrix over {labels:?}: deterministic dependence makes the information infinite")]
    SingularSubmatrix { labels: Vec<String> },

    #[error("state power q must be positive for the partial state cancellation construction")]
    ZeroStatePower,

    #[error("sample size {got} is below the minimum of {min}")]
    TooFewSamples { got: usize, min: usize },

    #[error("{what} is not normalized (sum {sum})")]
    NotNormalized { what: String, sum: f64 },

    #[error("invalid discrete channel: {0}")]
    InvalidSpec(String),

    #[error("enumeration needs {candidates} candidates, above the cap of {cap}")]
    TooLarge { candidates: u128, cap: u128 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
