//! Fixed comparison anchors.
//!
//! Neither constant is computed here. They are the values every error column
//! is measured against.

/// Reference value of e used for error columns (16 significant digits).
#[allow(clippy::approx_constant)]
pub const E_REF: f64 = 2.718281828459045;

/// π as a configuration constant, 21 significant digits.
#[allow(clippy::excessive_precision, clippy::approx_constant)]
pub const PI_CONF: f64 = 3.14159265358979323846;

/// Napier's whole sine.
pub const NAPIER_WHOLE_SINE: u64 = 10_000_000;
