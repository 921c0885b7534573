use thiserror::Error;

/// Errors raised by the algebra kernel.
///
/// `ResourceLimit` is kept apart from the mathematical errors so that drivers
/// can report partial results instead of failing outright.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("ring has {0} variables; at most {max} are supported", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
    #[error("polynomials or ideals live in different rings")]
    RingMismatch,
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("`{0}` is not the homogenizing variable of this ring")]
    NotHomogenizing(String),
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("polynomial is not univariate")]
    NotUnivariate,
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    MinorOutOfRange { k: usize, rows: usize, cols: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl AlgebraError {
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, AlgebraError::ResourceLimit(_))
    }
}

pub type Result<T> = std::result::Result<T, AlgebraError>;
