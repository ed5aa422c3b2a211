use thiserror::Error;

/// Errors raised by the numerical routines.
///
/// Messages carry the offending inputs so a CLI user can see which argument
/// was rejected without a backtrace.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{what} must be positive and finite, got {value}")]
    NotPositive { what: &'static str, value: f64 },

    #[error("{what} must be finite, got {value}")]
    NotFinite { what: &'static str, value: f64 },

    #[error("magnitude overflow computing {base}^{exponent}")]
    Overflow { base: f64, exponent: f64 },

    #[error("magnitude underflow computing {base}^{exponent}")]
    Underflow { base: f64, exponent: f64 },

    #[error("invalid tolerance {0}")]
    InvalidTolerance(f64),

    #[error("tolerance {requested:e} not attainable in binary64 (best residual {achieved:e})")]
    ToleranceNotMet { requested: f64, achieved: f64 },

    #[error("depth exceeded: {depth} > {max}")]
    DepthExceeded { depth: u32, max: u32 },

    #[error("x not interior: {x} outside ({b}, {c})")]
    NotInterior { x: f64, b: f64, c: f64 },

    #[error("offset too small for binary64 cancellation: |h| = {0:e} < 2^-40")]
    OffsetTooSmall(f64),

    #[error("enclosure requires a > 1, got {0}")]
    EnclosureBase(f64),

    #[error("level {level} outside {min}..={max}")]
    LevelOutOfRange { level: u32, min: u32, max: u32 },

    #[error("n must be positive")]
    ZeroCount,

    #[error("base nonpositive; increase n (x = {x}, n = {n})")]
    NonPositiveBase { x: String, n: u64 },

    #[error("k out of range: k = {k} > n = {n}")]
    IndexOutOfRange { k: u64, n: u64 },

    #[error("argument out of range: {0}")]
    ArgumentOutOfRange(f64),

    #[error("logarithm of zero sine")]
    ZeroSine,

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn ensure_finite(what: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NotFinite { what, value })
    }
}

pub(crate) fn ensure_tolerance(tol: f64) -> Result<f64> {
    if tol > 0.0 && tol.is_finite() {
        Ok(tol)
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}
