use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the search pipeline, the generators and the
/// command-line layer.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("window {window} exceeds series length {length}")]
    WindowTooLarge { window: usize, length: usize },

    #[error("window lengths must be positive")]
    ZeroWindow,

    #[error("non-finite value at time step {step}, dimension {dim}")]
    NonFiniteValue { step: usize, dim: usize },

    #[error("series must have at least one time step and one dimension")]
    EmptySeries,

    #[error("series too short: length {length}, need at least {min}")]
    SeriesTooShort { length: usize, min: usize },

    #[error("upper bound requires omega_u >= omega_w, got ({omega_u}, {omega_w})")]
    WindowOrderViolated { omega_u: usize, omega_w: usize },

    #[error("index ({row}, {col}) out of range for {rows}x{cols} grid")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("band of radius {radius} disconnects ({omega_u}, {omega_w}) window")]
    BandInfeasible {
        omega_u: usize,
        omega_w: usize,
        radius: usize,
    },

    #[error("band radius must be at least 1")]
    InvalidRadius,

    #[error("path enumeration limited to windows <= {limit}, got ({omega_u}, {omega_w})")]
    InstanceTooLarge {
        omega_u: usize,
        omega_w: usize,
        limit: usize,
    },

    #[error("no candidate pairs to evaluate")]
    EmptyCandidates,

    #[error("k must be at least 1")]
    InvalidK,

    #[error("gamma {0} outside [0, 1]")]
    InvalidGamma(f64),

    #[error("invalid simulation spec: {0}")]
    InvalidSpec(String),

    #[error("interval [{start}, {end}] out of bounds")]
    IntervalOutOfBounds { start: usize, end: usize },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("ragged rows: line {line} has {found} columns, expected {expected}")]
    RaggedRows {
        line: usize,
        expected: usize,
        found: usize,
    },

    #[error("empty file: {0}")]
    EmptyFile(PathBuf),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable machine-readable name of the variant, used in CLI error JSON.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::WindowTooLarge { .. } => "WindowTooLarge",
            Error::ZeroWindow => "ZeroWindow",
            Error::NonFiniteValue { .. } => "NonFiniteValue",
            Error::EmptySeries => "EmptySeries",
            Error::SeriesTooShort { .. } => "SeriesTooShort",
            Error::WindowOrderViolated { .. } => "WindowOrderViolated",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::BandInfeasible { .. } => "BandInfeasible",
            Error::InvalidRadius => "InvalidRadius",
            Error::InstanceTooLarge { .. } => "InstanceTooLarge",
            Error::EmptyCandidates => "EmptyCandidates",
            Error::InvalidK => "InvalidK",
            Error::InvalidGamma(_) => "InvalidGamma",
            Error::InvalidSpec(_) => "InvalidSpec",
            Error::IntervalOutOfBounds { .. } => "IntervalOutOfBounds",
            Error::Parse { .. } => "ParseError",
            Error::RaggedRows { .. } => "RaggedRows",
            Error::EmptyFile(_) => "EmptyFile",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Io { .. } => "Io",
            Error::Json(_) => "Json",
            Error::Csv(_) => "Csv",
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
