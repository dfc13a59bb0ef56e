use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("q must be at least 3, got {0}")]
    InvalidQ(usize),

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("point ({a}, {b}) is not in the Farey triangle")]
    OutsideTriangle { a: String, b: String },

    #[error("seed is inconsistent: {0}")]
    InconsistentSeed(String),

    #[error("vector {0} is not an element of the orbit")]
    NotInOrbit(String),

    #[error("strip is unbounded: {0}")]
    UnboundedStrip(String),

    #[error("empty sweep: {0}")]
    EmptySweep(String),

    #[error("quadrature did not converge: estimate {value} with error {error} after {intervals} subintervals")]
    NoConvergence { value: f64, error: f64, intervals: usize },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
