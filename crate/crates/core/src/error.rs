use thiserror::Error;

/// Crate-wide error type.
///
/// Display output always starts with the error name so callers (and the
/// command-line front end) can match on it textually.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ZeroPolynomial: root isolation requires a nonzero polynomial")]
    ZeroPolynomial,
    #[error("UnboundedPiece: non-constant polynomial piece on an infinite interval")]
    UnboundedPiece,
    #[error("UnboundedAtInfinity: operation requires constant tails")]
    UnboundedAtInfinity,
    #[error("DegenerateAffine: affine substitution requires a nonzero slope")]
    DegenerateAffine,
    #[error("NotVanishingAtNegInf: primitive must vanish at -inf")]
    NotVanishingAtNegInf,
    #[error("NotLeftContinuous: value at {at} differs from the left limit")]
    NotLeftContinuous { at: String },
    #[error("NotInIBVn: {0}")]
    NotInIBVn(String),
    #[error("OrderMismatch: expected order {expected}, got {got}")]
    OrderMismatch { expected: u32, got: u32 },
    #[error("LambdaMismatch: multiplier normalisation {multiplier} differs from requested {requested}")]
    LambdaMismatch { multiplier: String, requested: String },
    #[error("OrderTooHigh: interval integrals exist only at order 1, got order {0}")]
    OrderTooHigh(u32),
    #[error("NotSmoothEnough: {0}")]
    NotSmoothEnough(String),
    #[error("NotCompactSupport: test function must vanish on both tails")]
    NotCompactSupport,
    #[error("DegreeTooHigh: moment degree {k} exceeds order - 2 = {max}")]
    DegreeTooHigh { k: i64, max: i64 },
    #[error("NotInTargetSpace: {0}")]
    NotInTargetSpace(String),
    #[error("NotMonotone: multiplier kernel is not monotone")]
    NotMonotone,
    #[error("NotContinuousPrimitive: operation requires a continuous primitive")]
    NotContinuousPrimitive,
    #[error("NotNonnegative: operand is not nonnegative in the lattice order")]
    NotNonnegative,
    #[error("ExponentTooSmall: bump exponents must be at least n - 1")]
    ExponentTooSmall,
    #[error("NoConvergence: adaptive quadrature did not reach the requested tolerance")]
    NoConvergence,
    #[error("Parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
