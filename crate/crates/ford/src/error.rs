use thiserror::Error;

/// Crate-wide error type. Every fallible operation reports the exact
/// precondition it refused; nothing is rounded away silently.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not one of the nine class-number-one discriminants")]
    BadDiscriminant(i64),
    #[error("mixed discriminants: D={0} vs D={1}")]
    DiscriminantMismatch(u32, u32),
    #[error("Z[σ] is not norm-Euclidean for D={0}")]
    NotEuclidean(u32),
    #[error("unsupported discriminant D={0} for this operation")]
    UnsupportedDiscriminant(u32),
    #[error("both ring elements are zero")]
    BothZero,
    #[error("division by zero")]
    DivisionByZero,
    #[error("pair is not coprime")]
    NotCoprime,
    #[error("spheres are not mutually tangent")]
    NotTangent,
    #[error("matrix determinant has norm {0}, need a unit")]
    NotUnimodular(String),
    #[error("quadruple {0:?} violates its quadric equation")]
    OffQuadric([i64; 4]),
    #[error("triple sum s+t (or a+b+c) must be positive, got {0}")]
    NonPositiveSum(i64),
    #[error("{0} is not a perfect square")]
    NotASquare(String),
    #[error("coordinates are not integral: {0}")]
    NotIntegral(String),
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("rank is zero; no parents exist")]
    RankZero,
    #[error("iteration cap {0} exceeded; raise the cap to continue")]
    CapExceeded(u64),
    #[error("arithmetic overflow in {0}")]
    Overflow(&'static str),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
