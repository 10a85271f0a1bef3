//! Crate-wide error type.

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("cannot invert zero")]
    ZeroInverse,
    #[error("element is not invertible: gcd with the modulus is non-constant (reducible modulus?)")]
    NotInvertible,
    #[error("matrix entries carry different number field specs")]
    MixedField,
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("system is not a solved (reduced row echelon) form")]
    InconsistentSystem,
    #[error("lambda lies in mu_3: the cubic is singular")]
    SingularCurve,
    #[error("the coefficient field is too small: {0}")]
    FieldTooSmall(String),
    #[error("tangent line is identically zero")]
    DegenerateLine,
    #[error("generator {index} does not preserve the form")]
    NotAnAutomorphism { index: usize },
    #[error("group closure exceeded the budget of {budget} elements")]
    ClosureBudgetExceeded { budget: usize },
    #[error("plane system has rank A = {rank_a}, rank B = {rank_b}: not a plane in a smooth hypersurface")]
    IllegalRank { rank_a: usize, rank_b: usize },
    #[error("linear system does not cut out a plane (rank {0}, expected 3)")]
    PlaneSystemRank(usize),
    #[error("restriction along a flex tangent is not a perfect power")]
    FlexExtractionFailed,
    #[error("the two forms are not equal as polynomials")]
    FormsNotEqual,
    #[error("automorphism order required when the forms are equivalent")]
    MissingAutOrder,
    #[error("bordered kernel has rank {0}, expected 1")]
    KernelRankUnexpected(usize),
    #[error("kernel vector cannot be normalized to an integral vector with last coordinate 1")]
    NonIntegralKernel,
    #[error("index triple is not one of the four admissible index sets")]
    IndexNotInK,
    #[error("matrix sizes do not match")]
    SizeMismatch,
    #[error("binary form is not positive definite (a <= 0 or discriminant >= 0)")]
    NotPositiveDefinite,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("json error: {0}")]
    Json(String),
}
