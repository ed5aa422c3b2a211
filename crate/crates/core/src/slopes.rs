//! Difference quotients of `a^x` and what they say about `e`.
//!
//! The tangent slope of `y = a^x` at its y-intercept is read off a secant
//! through `(0, 1)` and `(h, a^h)`. Stretching the curve horizontally by that
//! slope makes the tangent slope 1, and the stretched base `a^(1/slope)` is an
//! estimate of `e`.

use serde::Serialize;

use crate::error::{ensure_finite, Error, Result};
use crate::powcore::{power, Enclosure, PosReal, RootLadder, MAX_DEPTH};

/// Smallest admissible `|h|`. Below it the subtraction `a^h − 1` loses most
/// of its significant digits.
pub const OFFSET_GUARD: f64 = 9.094947017729282e-13; // 2^-40

/// Levels accepted by [`slope_enclosure`].
pub const MIN_LEVEL: u32 = 5;
pub const MAX_LEVEL: u32 = 40;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum QuotientKind {
    /// `(a^h − 1)/h`, the secant through `(0, 1)` and `(h, a^h)`.
    #[default]
    Forward,
    /// `(a^h − a^−h)/(2h)`.
    Centered,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DifferenceQuotient {
    pub base: PosReal,
    pub offset: f64,
    pub value: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SlopeEnclosure {
    pub base: PosReal,
    pub level: u32,
    pub interval: Enclosure,
}

fn check_offset(h: f64) -> Result<f64> {
    ensure_finite("offset h", h)?;
    if h.abs() < OFFSET_GUARD {
        Err(Error::OffsetTooSmall(h.abs()))
    } else {
        Ok(h)
    }
}

pub fn difference_quotient(a: PosReal, h: f64, kind: QuotientKind) -> Result<DifferenceQuotient> {
    let h = check_offset(h)?;
    let value = match kind {
        QuotientKind::Forward => (power(a, h)? - 1.0) / h,
        QuotientKind::Centered => (power(a, h)? - power(a, -h)?) / (2.0 * h),
    };
    Ok(DifferenceQuotient { base: a, offset: h, value })
}

/// Forward quotient `(a^h − 1)/h`.
pub fn diff_quotient(a: PosReal, h: f64) -> Result<f64> {
    difference_quotient(a, h, QuotientKind::Forward).map(|q| q.value)
}

/// Certified bracket on the tangent slope of `a^x` at `x = 0` (that is,
/// `ln a`) from the one-sided quotients at `h = ∓2^−level`.
///
/// The quotient is increasing in `h`, so every negative-offset quotient sits
/// below the slope and every positive-offset one above it. Each level's
/// bracket is computed from outward-rounded power enclosures and intersected
/// with the coarser levels, which keeps the sequence nested even where
/// roundoff, rather than curvature, dominates the width.
pub fn slope_enclosure(a: PosReal, level: u32) -> Result<SlopeEnclosure> {
    if a.get() <= 1.0 {
        return Err(Error::EnclosureBase(a.get()));
    }
    if !(MIN_LEVEL..=MAX_LEVEL).contains(&level) {
        return Err(Error::LevelOutOfRange { level, min: MIN_LEVEL, max: MAX_LEVEL });
    }
    let ladder = RootLadder::new(a, MAX_DEPTH)?;
    let mut interval: Option<Enclosure> = None;
    for j in MIN_LEVEL..=level {
        let eta = 2f64.powi(-(j as i32));
        let below = ladder.enclose(-eta, MAX_DEPTH)?;
        let above = ladder.enclose(eta, MAX_DEPTH)?;
        // (a^−η − 1)/(−η) is smallest when a^−η is largest.
        let raw = Enclosure::new((1.0 - below.hi()) / eta, (above.hi() - 1.0) / eta)?;
        interval = Some(match interval {
            None => raw,
            Some(prev) => prev.intersect(&raw).ok_or_else(|| {
                Error::Invalid(format!("slope brackets for a = {} failed to overlap", a.get()))
            })?,
        });
    }
    Ok(SlopeEnclosure { base: a, level, interval: interval.expect("at least one level") })
}

/// `a^(1/slope)`: the base whose curve is `a^x` stretched by `slope`.
pub fn stretch_estimate_from_slope(a: PosReal, slope: f64) -> Result<f64> {
    if !(slope > 0.0 && slope.is_finite()) {
        return Err(Error::NotPositive { what: "slope", value: slope });
    }
    power(a, 1.0 / slope)
}

/// Estimate of `e` from the measured intercept slope of `a^x`.
pub fn estimate_e_by_stretch(a: PosReal, h: f64) -> Result<f64> {
    if a.get() <= 1.0 {
        return Err(Error::Invalid(format!("stretch estimate requires a > 1, got {}", a.get())));
    }
    stretch_estimate_from_slope(a, diff_quotient(a, h)?)
}

/// Secant slope of `a^x` at `x` with step `h`, evaluated through the
/// factorization `a^x · (a^h − 1)/h`.
pub fn tangent_slope_at(a: PosReal, x: f64, h: f64) -> Result<f64> {
    Ok(power(a, x)? * diff_quotient(a, h)?)
}

/// The same secant slope evaluated directly as `(a^(x+h) − a^x)/h`.
pub fn secant_slope_at(a: PosReal, x: f64, h: f64) -> Result<f64> {
    let h = check_offset(h)?;
    Ok((power(a, x + h)? - power(a, x)?) / h)
}
