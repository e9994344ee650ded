use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("simplex dimension {k} exceeds ambient dimension {d}")]
    Dimension { k: usize, d: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("zero-volume {k}-face raised to negative power {alpha}")]
    DegenerateFace { k: usize, alpha: f64 },

    #[error("inadmissible sequence, clause {clause}: {detail}")]
    Admissibility { clause: &'static str, detail: String },

    #[error("moment table has no entry for {0}")]
    TableMiss(String),

    #[error("estimate undefined: {0}")]
    UndefinedEstimate(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("diagnostic failed: {0}")]
    Diagnostic(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("config field `{field}`: {message}")]
    Config { field: &'static str, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
