use thiserror::Error;

/// Errors raised across the optimizer, benchmarks and harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("decision variable {index} = {value} lies outside [{low}, {high}]")]
    Domain {
        index: usize,
        value: f64,
        low: f64,
        high: f64,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("degenerate range on objective {axis}: lower bound {low} is not below upper bound {high}")]
    DegenerateRange { axis: usize, low: f64, high: f64 },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("assignment infeasible: {rows} rows cannot be matched into {cols} columns")]
    Infeasible { rows: usize, cols: usize },

    #[error("evaluation budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("too many objectives ({m}) for exact hypervolume; use the Monte Carlo estimator")]
    UseMonteCarlo { m: usize },

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for errors caused by the caller's configuration rather than the environment.
    pub fn is_config(&self) -> bool {
        !matches!(self, Error::Io(_) | Error::Csv(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
