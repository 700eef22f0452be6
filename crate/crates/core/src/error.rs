use thiserror::Error;

use crate::quat::AlgebraParams;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime >= 3")]
    InvalidPrime(u64),

    #[error("no admissible q below the search cap {cap} for p = {p}")]
    SearchExhausted { p: u64, cap: u64 },

    #[error("invalid algebra parameters (p={p}, q={q}, a={a}): {reason}")]
    InvalidParams {
        p: u64,
        q: u64,
        a: u64,
        reason: ParamsViolation,
    },

    /// The rational coordinates in the order basis are reported as strings.
    #[error("element is not in the maximal order; order coordinates are {coords:?}")]
    NotInOrder { coords: [String; 4] },

    #[error("operands belong to different algebras: {0:?} vs {1:?}")]
    MismatchedParams(AlgebraParams, AlgebraParams),

    #[error("pullback produced a non-integral diagonal entry {0}")]
    NonIntegralDiagonal(String),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamsViolation {
    PNotPrime,
    QNotPrime,
    QNotThreeModEight,
    QEqualsP,
    LegendreNotMinusOne,
    AOutOfRange,
    ANotSquareRoot,
}

impl std::fmt::Display for ParamsViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let msg = match self {
            ParamsViolation::PNotPrime => "p must be a prime >= 3",
            ParamsViolation::QNotPrime => "q must be prime",
            ParamsViolation::QNotThreeModEight => "q must be 3 mod 8",
            ParamsViolation::QEqualsP => "q must differ from p",
            ParamsViolation::LegendreNotMinusOne => "(-q | p) must be -1",
            ParamsViolation::AOutOfRange => "a must lie in [0, q)",
            ParamsViolation::ANotSquareRoot => "a^2 must be -p mod q",
        };
        f.write_str(msg)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
