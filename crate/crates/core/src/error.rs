use thiserror::Error;

use crate::expr::ExprError;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Expr(#[from] ExprError),

    #[error("metric is not positive definite at {point:?}: {detail}")]
    NotPositiveDefinite { point: Vec<f64>, detail: String },

    #[error("metric is singular at {point:?}")]
    Singular { point: Vec<f64> },

    #[error("{what}: expected dimension {expected}, got {got}")]
    Dimension { what: String, expected: usize, got: usize },

    #[error("metric entry ({i},{j}) differs from its mirror ({j},{i})")]
    AsymmetricMetric { i: usize, j: usize },

    #[error("coordinate lists differ: {0}")]
    ChartMismatch(String),

    #[error("warping function must be positive, got {value} at base point {point:?}")]
    WarpNotPositive { point: Vec<f64>, value: f64 },

    #[error("warping function references non-base coordinate `{0}`")]
    WarpOffBase(String),

    #[error("coordinate name `{0}` is used by both base and fiber")]
    NameCollision(String),

    #[error("field for the {side} references a coordinate outside it: `{name}`")]
    WrongFactor { side: &'static str, name: String },

    #[error("placement violated: {0}")]
    Placement(String),

    #[error("φ is not block-preserving: component ({row},{col}) is {value} at {point:?}")]
    PhiNotBlockPreserving { row: usize, col: usize, value: f64, point: Vec<f64> },

    #[error("preset `{preset}`: {detail}")]
    Preset { preset: &'static str, detail: String },

    #[error("unknown check selector `{0}`")]
    UnknownCheck(String),

    #[error("check `{check}` does not apply here: {reason}")]
    NotApplicable { check: String, reason: String },

    #[error("sample point {point:?} rejected: {reason}")]
    InvalidSample { point: Vec<f64>, reason: String },

    #[error("invalid sampling box: {0}")]
    InvalidBox(String),

    #[error("manifest field `{field}`: {msg}")]
    Manifest { field: String, msg: String },

    #[error("manifest is not valid TOML: {0}")]
    ManifestSyntax(String),

    #[error("report is not valid JSON: {0}")]
    Report(String),

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },

    #[error("{context}: {source}")]
    Context { context: String, source: Box<Error> },
}

impl Error {
    pub(crate) fn context(self, context: impl Into<String>) -> Error {
        Error::Context { context: context.into(), source: Box::new(self) }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
