use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An exact operation would exceed the configured hard degree limit.
    #[error("degree {degree} exceeds the hard limit {limit}")]
    DegreeOverflow { degree: usize, limit: usize },

    #[error("dilation parameter has modulus {modulus} > 1")]
    DilationOutsideDisc { modulus: f64 },

    #[error("{0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("tabulated weight: {0}")]
    InsufficientGrid(String),

    /// Adaptive quadrature did not reach its tolerance.
    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("operation requires a weight of kind {expected}, got {found}")]
    WrongWeightKind { expected: &'static str, found: String },

    #[error("weight is not upper doubling on the test grid (witness r = {witness_r}, ratio {ratio:e})")]
    NotUpperDoubling { witness_r: f64, ratio: f64 },

    /// Word rewriting produced more intermediate terms than allowed.
    #[error("term count exceeded the limit {limit}")]
    TermExplosion { limit: usize },

    #[error("operator shape violation: {0}")]
    Shape(String),

    #[error("basis element {index} has zero leading coefficient")]
    SingularBasis { index: usize },

    #[error("division by zero: n + j = 0")]
    DivisionByZero,

    #[error("test family member {index} has zero norm")]
    ZeroNormWitness { index: usize },

    #[error("every member of the test family is degenerate")]
    DegenerateFamily,

    #[error("empty test family")]
    EmptyFamily,

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Degree and term guards are internal limits, not numerical failures.
    pub fn is_guard(&self) -> bool {
        matches!(self, Error::DegreeOverflow { .. } | Error::TermExplosion { .. })
    }
}
