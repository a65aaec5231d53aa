use thiserror::Error;

/// Errors raised by the geometric and feasibility routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("frame mismatch: {0}")]
    FrameMismatch(&'static str),

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("J is not a complex structure: |J^2 + Id| = {residual:e}")]
    NotAlmostComplex { residual: f64 },

    #[error("J is not integrable: Nijenhuis residual {residual:e}")]
    NotIntegrable { residual: f64 },

    #[error("metric is not symmetric: residual {residual:e}")]
    NotSymmetric { residual: f64 },

    #[error("metric is not positive definite: minimum eigenvalue {min_eigenvalue:e}")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("metric is not J-compatible: |J^T g J - g| = {residual:e}")]
    Incompatible { residual: f64 },

    #[error("matrix is singular")]
    Singular,

    #[error("quotient by the center is degenerate: the algebra is abelian")]
    DegenerateQuotient,

    #[error("center is not J-invariant")]
    CenterNotInvariant,

    #[error("vector is not central: |ad_X| = {residual:e}")]
    NotCentral { residual: f64 },

    #[error("form is not closed: |d form| = {residual:e}")]
    NotClosed { residual: f64 },

    #[error("form does not tame J: minimum eigenvalue {min_eigenvalue:e}")]
    NotTaming { min_eigenvalue: f64 },

    #[error("form has non-real coefficients: max imaginary part {residual:e}")]
    ComplexValued { residual: f64 },

    #[error("algebra is not nilpotent")]
    NotNilpotent,

    #[error("quaternionic relations fail: residual {residual:e}")]
    QuaternionRelation { residual: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown catalogue entry `{0}`")]
    UnknownCatalogue(String),

    #[error("document error at {location}: {message}")]
    Document { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
