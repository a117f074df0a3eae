use thiserror::Error;

/// Errors raised by state construction, validation and the bound computations.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {dim} exceeds the configured limit {limit}")]
    DimensionLimit { dim: usize, limit: usize },

    #[error("invalid partition: {0}")]
    InvalidContext(String),

    #[error("not Hermitian: max |M - M^dagger| entry = {deviation:e}")]
    NotHermitian { deviation: f64 },

    #[error("trace is {trace} (|trace - 1| = {deviation:e})")]
    InvalidTrace { trace: f64, deviation: f64 },

    #[error("negative eigenvalue {min_eigenvalue:e}")]
    NegativeEigenvalue { min_eigenvalue: f64 },

    #[error("invalid subset mask {bits:#b} for {n_parties} parties")]
    InvalidSubset { bits: u64, n_parties: usize },

    #[error("{what} index {index} out of range (limit {limit})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        limit: usize,
    },

    #[error("position {0} assigned more than once")]
    DuplicatePosition(usize),

    #[error("operator string has no assigned positions")]
    EmptyAssignment,

    #[error("correlation tensor entry has imaginary residue {residue:e}")]
    ImaginaryResidue { residue: f64 },

    #[error("state is not pure (purity {purity})")]
    NotPure { purity: f64 },

    #[error("pure-state radicand {radicand:e} is negative beyond tolerance")]
    NegativeRadicand { radicand: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no crossing: {0}")]
    NoCrossing(String),

    #[error("linear algebra failure: {0}")]
    Numerical(String),
}

impl Error {
    /// Stable machine-readable name of the violated condition.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::NotSquare { .. } => "not-square",
            Error::DimensionLimit { .. } => "dimension-limit",
            Error::InvalidContext(_) => "invalid-context",
            Error::NotHermitian { .. } => "not-hermitian",
            Error::InvalidTrace { .. } => "invalid-trace",
            Error::NegativeEigenvalue { .. } => "negative-eigenvalue",
            Error::InvalidSubset { .. } => "invalid-subset",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::DuplicatePosition(_) => "duplicate-position",
            Error::EmptyAssignment => "empty-assignment",
            Error::ImaginaryResidue { .. } => "imaginary-residue",
            Error::NotPure { .. } => "not-pure",
            Error::NegativeRadicand { .. } => "negative-radicand",
            Error::InvalidParameter(_) => "invalid-parameter",
            Error::NoCrossing(_) => "no-crossing",
            Error::Numerical(_) => "numerical",
        }
    }

    /// Size of the violation, when the error carries one.
    pub fn magnitude(&self) -> Option<f64> {
        match *self {
            Error::NotHermitian { deviation } => Some(deviation),
            Error::InvalidTrace { deviation, .. } => Some(deviation),
            Error::NegativeEigenvalue { min_eigenvalue } => Some(min_eigenvalue),
            Error::ImaginaryResidue { residue } => Some(residue),
            Error::NotPure { purity } => Some(purity),
            Error::NegativeRadicand { radicand } => Some(radicand),
            _ => None,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
