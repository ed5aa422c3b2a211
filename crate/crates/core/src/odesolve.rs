//! Euler's method for `y' = y`, `y(0) = 1`, on the uniform grid
//! `x_k = k·x/n`. Each step multiplies by `1 + x/n`, so the endpoint is
//! `(1 + x/n)^n`; the exact variant shows this with rational arithmetic.

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::dd::Dd;
use crate::error::{ensure_finite, Error, Result};
use crate::exact;
use crate::limits::step_base;
use crate::report::ser17_points;

/// Above this many steps, use [`euler_final`] instead of storing the path.
pub const PATH_MAX_STEPS: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EulerPath {
    pub x_target: f64,
    pub n: u64,
    /// `(x_k, y_k)` for `k = 0..=n`.
    #[serde(serialize_with = "ser17_points")]
    pub points: Vec<(f64, f64)>,
}

impl EulerPath {
    pub fn final_value(&self) -> f64 {
        self.points.last().expect("paths have n + 1 points").1
    }
}

/// Full Euler path. The recurrence runs in double-binary64 so the stored
/// `y_k` are the correctly rounded values of the exact recurrence.
pub fn euler_path(x: f64, n: u64) -> Result<EulerPath> {
    let base = step_base(x, n)?;
    if n > PATH_MAX_STEPS {
        return Err(Error::Invalid(format!("n = {n} exceeds {PATH_MAX_STEPS} stored steps")));
    }
    let nf = n as f64;
    let mut points = Vec::with_capacity(n as usize + 1);
    let mut y = Dd::ONE;
    points.push((0.0, 1.0));
    for k in 1..=n {
        y = y * base;
        let xk = if k == n { x } else { k as f64 * x / nf };
        points.push((xk, y.to_f64()));
    }
    Ok(EulerPath { x_target: x, n, points })
}

/// Endpoint `y_n` only, in constant memory.
pub fn euler_final(x: f64, n: u64) -> Result<f64> {
    let base = step_base(x, n)?;
    Ok((0..n).fold(Dd::ONE, |y, _| y * base).to_f64())
}

/// Exact path `y_0 = 1, y_{k+1} = (1 + x/n)·y_k` over the rationals.
pub fn euler_path_exact(x: &BigRational, n: u64) -> Result<Vec<BigRational>> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    let base = BigRational::one() + x / exact::integer(n);
    if !base.is_positive() {
        return Err(Error::NonPositiveBase { x: x.to_string(), n });
    }
    let (p, q) = (base.numer(), base.denom());
    let mut path = Vec::with_capacity(n as usize + 1);
    path.push(BigRational::one());
    for _ in 0..n {
        let y = path.last().expect("non-empty");
        // p/q is reduced, so products of its powers stay reduced.
        path.push(BigRational::new_raw(y.numer() * p, y.denom() * q));
    }
    Ok(path)
}

/// Sensitivity of the Euler endpoint to the initial value: integrates from
/// `y(0) = 1` and from `y(0) = 1 + delta` on the same grid and returns
/// `(difference at x)/delta`, or 0 when `delta = 0`.
pub fn solution_divergence(delta: f64, x: f64, n: u64) -> Result<f64> {
    ensure_finite("delta", delta)?;
    if delta < 0.0 {
        return Err(Error::Invalid(format!("delta must be non-negative, got {delta}")));
    }
    let base = step_base(x, n)?;
    if delta == 0.0 {
        return Ok(0.0);
    }
    let (mut y1, mut y2) = (Dd::ONE, Dd::ONE + Dd::from_f64(delta));
    for _ in 0..n {
        y1 = y1 * base;
        y2 = y2 * base;
    }
    Ok((y2 - y1).to_f64() / delta)
}
