//! The natural logarithm as the inverse of the series exponential, the
//! reciprocal-slope relation between the two curves, the integral of `1/t`,
//! and Napier's and Briggs's table entries.

use serde::Serialize;

use crate::consts::NAPIER_WHOLE_SINE;
use crate::dd::Dd;
use crate::error::{ensure_finite, ensure_tolerance, Error, Result};
use crate::powcore::PosReal;
use crate::series::exp_unchecked;

/// Bisection bracket for the logarithm, `[−745, 710]`.
pub const LOG_BRACKET: (f64, f64) = (-745.0, 710.0);
/// Residual target used by [`ln`].
pub const DEFAULT_LOG_TOL: f64 = 1e-15;
/// Largest relative residual a returned [`LogValue`] may carry.
pub const MAX_RESIDUAL: f64 = 1e-12;
const BISECTION_CAP: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LogValue {
    pub argument: PosReal,
    pub value: f64,
    /// `|exp(value) − argument| / argument`.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NapierEntry {
    pub scaled_sine: u64,
    pub napier_log: f64,
    pub rounded: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReflectionSlopes {
    pub exp_slope: f64,
    pub log_slope: f64,
    pub product: f64,
}

/// `ln y` by bisection on the increasing map `v ↦ exp(v)`, stopping once the
/// relative residual is within `tol` or the bracket has collapsed to adjacent
/// floats.
pub fn nat_log(y: PosReal, tol: f64) -> Result<LogValue> {
    ensure_tolerance(tol)?;
    let yv = y.get();
    if yv < f64::MIN_POSITIVE {
        return Err(Error::ArgumentOutOfRange(yv));
    }
    if yv == 1.0 {
        return Ok(LogValue { argument: y, value: 0.0, residual: 0.0 });
    }
    let residual = |v: f64| (exp_unchecked(v) - yv).abs() / yv;
    let (mut lo, mut hi) = LOG_BRACKET;
    for _ in 0..BISECTION_CAP {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let e = exp_unchecked(mid);
        let r = (e - yv).abs() / yv;
        if r <= tol {
            return Ok(LogValue { argument: y, value: mid, residual: r });
        }
        if e < yv {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (rl, rh) = (residual(lo), residual(hi));
    let (value, r) = if rl <= rh { (lo, rl) } else { (hi, rh) };
    if r > MAX_RESIDUAL.max(tol) {
        return Err(Error::ToleranceNotMet { requested: tol, achieved: r });
    }
    Ok(LogValue { argument: y, value, residual: r })
}

/// `ln y` at [`DEFAULT_LOG_TOL`].
pub fn ln(y: f64) -> Result<f64> {
    nat_log(PosReal::named("logarithm argument", y)?, DEFAULT_LOG_TOL).map(|l| l.value)
}

/// Slopes of `e^x` at `(ln a, a)` and of `ln x` at the reflected point
/// `(a, ln a)`, each from a centered difference quotient with step `h`.
///
/// Centered quotients are used because the forward bias of the logarithm's
/// quotient, about `h/(2a)`, would swamp the product for small `a`.
pub fn reflection_slope_check(a: PosReal, h: f64) -> Result<ReflectionSlopes> {
    ensure_finite("h", h)?;
    let h = h.abs();
    if h < crate::slopes::OFFSET_GUARD {
        return Err(Error::OffsetTooSmall(h));
    }
    let av = a.get();
    if av - h <= 0.0 {
        return Err(Error::Invalid(format!("step h = {h} reaches past zero from a = {av}")));
    }
    let la = ln(av)?;
    let exp_slope = (exp_unchecked(la + h) - exp_unchecked(la - h)) / (2.0 * h);
    let log_slope = (ln(av + h)? - ln(av - h)?) / (2.0 * h);
    Ok(ReflectionSlopes { exp_slope, log_slope, product: exp_slope * log_slope })
}

/// `∫_1^x dt/t` by the composite midpoint rule, negated when `x < 1`.
pub fn quadrature_log(x: PosReal, panels: u64) -> Result<f64> {
    if panels == 0 {
        return Err(Error::Invalid("panels must be at least 1".into()));
    }
    let xv = x.get();
    if xv == 1.0 {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if xv > 1.0 { (1.0, xv, 1.0) } else { (xv, 1.0, -1.0) };
    let width = (hi - lo) / panels as f64;
    let sum = (0..panels).fold(Dd::ZERO, |acc, i| {
        acc + Dd::from_f64(1.0 / (lo + (i as f64 + 0.5) * width))
    });
    Ok(sign * sum.to_f64() * width)
}

/// Napier's logarithm `−L·ln(y/L)` of a sine `y` scaled to the whole sine
/// `L = 10,000,000`.
pub fn napier_log(scaled_sine: u64) -> Result<NapierEntry> {
    if scaled_sine == 0 {
        return Err(Error::ZeroSine);
    }
    if scaled_sine > NAPIER_WHOLE_SINE {
        return Err(Error::Invalid(format!(
            "scaled sine {scaled_sine} exceeds the whole sine {NAPIER_WHOLE_SINE}"
        )));
    }
    let whole = NAPIER_WHOLE_SINE as f64;
    let value = -whole * ln(scaled_sine as f64 / whole)?;
    // -0.0 at the whole sine reads badly in tables.
    let value = if value == 0.0 { 0.0 } else { value };
    Ok(NapierEntry { scaled_sine, napier_log: value, rounded: value.round() as i64 })
}

/// Common logarithm as `ln x / ln 10`.
pub fn briggs_log10(x: PosReal) -> Result<f64> {
    Ok(ln(x.get())? / ln(10.0)?)
}
