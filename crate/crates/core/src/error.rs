use thiserror::Error;

/// Malformed scalar token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid scalar `{0}`")]
pub struct ParseScalarError(pub String);

/// Errors raised by the algebraic layer. Basis indices are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("d_out * d_in is nonzero")]
    ComposeNonzero,
    #[error("matrix is not Hermitian")]
    NotHermitian,
    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },
    #[error("antisymmetry fails: c[{0}][{1}][{2}] != -c[{1}][{0}][{2}]")]
    AntisymmetryViolation(usize, usize, usize),
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    JacobiViolation(usize, usize, usize),
    #[error("structure constants must have length dim^3 = {0}")]
    MalformedConstants(usize),
    #[error("complex structure needs even dimension, got {0}")]
    OddDimension(usize),
    #[error("J does not square to -1")]
    NotComplexStructure,
    #[error("complex structure is not integrable")]
    NotIntegrable,
    #[error("Lie algebra is not nilpotent")]
    NotNilpotent,
    #[error("theta is not closed")]
    ThetaNotClosed,
    #[error("theta is zero")]
    ThetaZero,
    #[error("form has non-real coefficients")]
    NotReal,
    #[error("forms live in different bases")]
    BasisModeMismatch,
    #[error("expected a form of degree {expected}, got {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("form is not of bidegree ({p},{q})")]
    WrongBidegree { p: usize, q: usize },
    #[error("metric is not symmetric")]
    MetricNotSymmetric,
    #[error("metric is not positive definite")]
    MetricNotPositive,
    #[error("metric is not compatible with J")]
    IncompatibleMetric,
    #[error("2-form is degenerate")]
    Degenerate,
    #[error("form is not d_theta-closed")]
    NotClosed,
    #[error("no solution: {0}")]
    NoSolution(&'static str),
    #[error("covector is zero")]
    ZeroCovector,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("missing input: {0}")]
    Missing(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
