use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("index {index} out of range for {bound} variables")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("field model mismatch: {0}")]
    ModelMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("entry ({row}, {col}) has negative valuation and does not lie in the valuation ring")]
    NegativeValuation { row: usize, col: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("determinant seminorm degenerate: basis vector {0} lies in the kernel")]
    DegenerateDeterminant(usize),
    #[error("substitution {0} is zero")]
    ZeroSubstitution(usize),
    #[error("exponent matrix has zero determinant: not a chart")]
    DegenerateChart,
    #[error("polytope is empty")]
    EmptyPolytope,
    #[error("polytope is unbounded")]
    UnboundedPolytope,
    #[error("tropical polynomial has no terms")]
    EmptyTropPoly,
    #[error("base field must be discretely valued")]
    NotDiscretelyValued,
}

pub type Result<T> = std::result::Result<T, Error>;
