use thiserror::Error;

/// Errors raised by ring, series, symbol and audit operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid ring descriptor: {0}")]
    InvalidRing(String),
    #[error("operands belong to different coefficient rings")]
    MixedRings,
    #[error("division by a non-unit")]
    NonUnitDivisor,
    #[error("factors are not coprime modulo p")]
    NotCoprime,
    #[error("bad reduction: {0}")]
    BadReduction(String),
    #[error("not a unit: no coefficient in the window is a ring unit")]
    NotAUnit,
    #[error("guaranteed window is empty")]
    WindowUnderflow,
    #[error("substitution parameter must have winding number 1, got {0}")]
    BadParameter(i64),
    #[error("symbol is only defined for arguments without a p-power prefactor")]
    NonzeroPrefactor,
    #[error("all coefficients are divisible by p")]
    AllCoeffsNonUnit,
    #[error("not a distinguished polynomial: {0}")]
    NotDistinguished(String),
    #[error("reducible over Q_p: {0}")]
    Reducible(String),
    #[error("point is not incident to the curve")]
    NotIncident,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
