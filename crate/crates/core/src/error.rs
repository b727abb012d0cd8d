use thiserror::Error;

/// Errors produced by germlab computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GermError {
    #[error("ring dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("variable index {index} out of range for {n} variables")]
    VariableOutOfRange { index: usize, n: usize },

    #[error("zero polynomial has no leading term")]
    ZeroPolynomial,

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown variable `{name}` at line {line}, column {column}")]
    UnknownVariable {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("corpus line {line}: {message}")]
    Corpus { line: usize, message: String },

    #[error("singularity at the origin is not isolated")]
    NotIsolated,

    #[error("germ is smooth at the origin")]
    Smooth,

    /// `axis` is the 0-based index of a variable with no pure power.
    #[error("support is not convenient: no pure power of variable {}", axis + 1)]
    NotConvenient { axis: usize },

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),

    #[error("generic section failed: {0}")]
    SectionFailed(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl GermError {
    /// Input and usage errors map to CLI exit code 2.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, GermError::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, GermError>;
