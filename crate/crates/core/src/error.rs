use std::fmt;

use serde::{Deserialize, Serialize};

/// Why a parameter triple was refused.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "code")]
pub enum RejectReason {
    /// `r` must exceed 2.
    RTooSmall { r: i64 },
    /// `m` must be at least 2.
    MTooSmall { m: i64 },
    /// `lambda` must be at least 1.
    LambdaTooSmall { lambda: i64 },
    /// `gcd(m, r * lambda)` is not 1.
    NotCoprime { gcd: i64 },
    /// The characteristic is not a prime number.
    CharacteristicNotPrime { p: i64 },
    /// The characteristic divides `m`.
    CharacteristicDividesM { p: i64 },
    /// A parameter exceeds [`crate::curve::MAX_PARAM`].
    OutOfRange,
}

impl fmt::Display for RejectReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectReason::RTooSmall { r } => write!(f, "r too small: r = {r}, need r > 2"),
            RejectReason::MTooSmall { m } => write!(f, "m too small: m = {m}, need m >= 2"),
            RejectReason::LambdaTooSmall { lambda } => {
                write!(f, "lambda too small: lambda = {lambda}, need lambda >= 1")
            }
            RejectReason::NotCoprime { gcd } => {
                write!(f, "parameters not coprime: gcd(m, r*lambda) = {gcd}")
            }
            RejectReason::CharacteristicNotPrime { p } => {
                write!(f, "characteristic {p} is not prime")
            }
            RejectReason::CharacteristicDividesM { p } => {
                write!(f, "characteristic {p} divides m")
            }
            RejectReason::OutOfRange => write!(f, "parameter out of supported range"),
        }
    }
}

/// All violated invariants of a rejected parameter triple, in a fixed order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RejectedParams {
    pub reasons: Vec<RejectReason>,
}

impl RejectedParams {
    pub fn has(&self, pred: impl Fn(&RejectReason) -> bool) -> bool {
        self.reasons.iter().any(pred)
    }
}

impl fmt::Display for RejectedParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, reason) in self.reasons.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{reason}")?;
        }
        Ok(())
    }
}

impl std::error::Error for RejectedParams {}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("rejected parameters: {0}")]
    RejectedParams(#[from] RejectedParams),

    #[error("invalid place tuple: {0}")]
    InvalidTuple(String),

    #[error("invalid tuple length {len}: expected {expected}")]
    InvalidTupleLength { len: usize, expected: String },

    #[error("vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("{0} is not a generating-set element for this tuple")]
    NotAGammaElement(String),

    #[error("{0} is not a member of the Weierstrass semigroup")]
    NotAMember(String),

    #[error("divisor has {got} finite coefficients, expected {expected}")]
    UnsupportedSupport { expected: usize, got: usize },

    #[error("vector {0} must be strictly positive")]
    NotStrictlyPositive(String),

    #[error("coordinate index {index} out of range for length {len}")]
    CoordinateOutOfRange { index: usize, len: usize },

    #[error("{0} needs at least one input")]
    EmptyInput(&'static str),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
