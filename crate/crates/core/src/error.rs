use std::path::PathBuf;

/// Errors raised by the solvers, generators and I/O helpers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("matrix must be square, found {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not symmetric: a[{i},{j}] != a[{j},{i}]")]
    NotSymmetric { i: usize, j: usize },

    #[error("non-finite entry at ({row}, {col})")]
    NonFinite { row: usize, col: usize },

    #[error("entry at ({row}, {col}) overflows the target precision")]
    PrecisionOverflow { row: usize, col: usize },

    #[error("PivotAlreadyOrthogonal: columns {i} and {j} are already orthogonal")]
    PivotAlreadyOrthogonal { i: usize, j: usize },

    #[error("RankDeficient: column {column} has negligible norm {norm:e}")]
    RankDeficient { column: usize, norm: f64 },

    #[error("NoConvergence: off-norm {off_norm:e} above target {target:e} after {sweeps} sweeps")]
    NoConvergence {
        sweeps: usize,
        off_norm: f64,
        target: f64,
    },

    #[error("DegenerateInput: {0}")]
    DegenerateInput(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short variant name, used by the CLI when reporting solver failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotSymmetric { .. } => "NotSymmetric",
            Error::NonFinite { .. } => "NonFinite",
            Error::PrecisionOverflow { .. } => "PrecisionOverflow",
            Error::PivotAlreadyOrthogonal { .. } => "PivotAlreadyOrthogonal",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::Parse(_) => "Parse",
            Error::Io { .. } => "Io",
        }
    }

    /// True for numerical failures of a solve, as opposed to bad input or I/O.
    pub fn is_solver_failure(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::RankDeficient { .. }
                | Error::PrecisionOverflow { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
