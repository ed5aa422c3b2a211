//! Factorial series for `e` and `e^x`, the binomial bridge from
//! `(1 + 1/n)^n` to `Σ 1/k!` with a computable truncation certificate, and
//! the sine/cosine/complex-exponential series.
//!
//! Terms are always produced by the running multiply-divide recurrence, never
//! from factorial values, so nothing overflows before it underflows.

use serde::Serialize;

use crate::consts::PI_CONF;
use crate::dd::Dd;
use crate::error::{ensure_finite, ensure_tolerance, Error, Result};
use crate::report::{ConvergenceRecord, Param};

/// Largest `m` for which `1/m!` is a normal binary64.
pub const MAX_TERMS: u64 = 170;
/// `|x|` limit for [`taylor_exp`].
pub const EXP_ARG_LIMIT: f64 = 700.0;
/// `|x|` limit for the trigonometric series (no argument reduction).
pub const TRIG_ARG_LIMIT: f64 = 30.0;
/// Largest `n` accepted by [`series_error_certificate`].
pub const CERTIFICATE_MAX_N: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SeriesState {
    pub partial_sum: f64,
    /// Terms summed, counting the constant term.
    pub terms_used: u64,
    pub last_term: f64,
    /// Bound on the truncated tail `|Σ_{k > terms_used−1} …|`.
    pub tail_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BinomialTermGrid {
    pub n: u64,
    /// `a(n, k)` for `k = 0..=n`.
    pub terms: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ComplexValue {
    pub re: f64,
    pub im: f64,
}

impl ComplexValue {
    pub fn modulus(&self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// `S_m = Σ_{k=0}^m 1/k!`.
pub fn factorial_partial_sum(m: u64) -> Result<f64> {
    if m > MAX_TERMS {
        return Err(Error::Invalid(format!("m = {m} exceeds {MAX_TERMS}")));
    }
    let mut terms = Vec::with_capacity(m as usize + 1);
    let mut t = 1.0;
    terms.push(t);
    for k in 1..=m {
        t /= k as f64;
        terms.push(t);
    }
    // Smallest first.
    Ok(terms.iter().rev().fold(Dd::ZERO, |acc, &t| acc + Dd::from_f64(t)).to_f64())
}

/// Upper bound on `Σ_{k>m} 1/k!`: `(1/(m+1)!)·(m+2)/(m+1)`.
///
/// Each term after `1/(m+1)!` is at most `1/(m+2)` times its predecessor,
/// so the tail is dominated by a geometric series with that ratio.
pub fn tail_bound(m: u64) -> f64 {
    let mut t = 1.0f64;
    for k in 1..=m + 1 {
        t /= k as f64;
        if t == 0.0 {
            return f64::from_bits(1);
        }
    }
    let mf = m as f64;
    // Rounded up to absorb the handful of roundings above.
    t * ((mf + 2.0) / (mf + 1.0)) * (1.0 + 8.0 * f64::EPSILON)
}

/// `a(n, k) = (1/k!)·Π_{j<k} (n−j)/n`, the k-th term of the binomial
/// expansion of `(1 + 1/n)^n`.
pub fn binomial_term(n: u64, k: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    if k > n {
        return Err(Error::IndexOutOfRange { k, n });
    }
    let nf = n as f64;
    let mut t = 1.0;
    for j in 0..k {
        t = t * ((nf - j as f64) / nf) / (j + 1) as f64;
    }
    Ok(t)
}

/// All of `a(n, 0..=n)` in one pass.
pub fn binomial_grid(n: u64) -> Result<BinomialTermGrid> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    let nf = n as f64;
    let mut terms = Vec::with_capacity(n as usize + 1);
    let mut t = 1.0;
    terms.push(t);
    for j in 0..n {
        t = t * ((nf - j as f64) / nf) / (j + 1) as f64;
        terms.push(t);
    }
    Ok(BinomialTermGrid { n, terms })
}

/// Bound on `|S − (1 + 1/n)^n|` where `S = Σ 1/k!`:
///
/// `Σ_{k=0}^m |1/k! − a(n,k)| + Σ_{k>m} 1/k!`, with the tail replaced by
/// [`tail_bound`] and a final allowance for the rounding of the sum itself.
pub fn series_error_certificate(n: u64, m: u64) -> Result<f64> {
    if n == 0 || m == 0 {
        return Err(Error::Invalid(format!("certificate needs 1 ≤ m ≤ n, got n = {n}, m = {m}")));
    }
    if m > n {
        return Err(Error::IndexOutOfRange { k: m, n });
    }
    if n > CERTIFICATE_MAX_N {
        return Err(Error::Invalid(format!("n = {n} exceeds {CERTIFICATE_MAX_N}")));
    }
    let m = m.min(MAX_TERMS);
    let nf = n as f64;
    let (mut fact, mut a) = (1.0f64, 1.0f64);
    let mut head = Dd::ZERO;
    for k in 1..=m {
        let j = (k - 1) as f64;
        fact /= k as f64;
        a = a * ((nf - j) / nf) / k as f64;
        head = head + Dd::from_f64((fact - a).abs());
    }
    let rounding = 12.0 * (m as f64 + 2.0) * f64::EPSILON;
    Ok(head.to_f64() + tail_bound(m) + rounding)
}

/// Sums the series for `e^{|x|}` until the term falls below
/// `tol·max(1, |sum|)` once `k ≥ |x|`.
fn exp_positive(x: f64, tol: f64) -> SeriesState {
    debug_assert!(x >= 0.0);
    let mut sum = Dd::ONE;
    let mut term = 1.0f64;
    let mut k = 0u64;
    loop {
        k += 1;
        term *= x / k as f64;
        sum = sum + Dd::from_f64(term);
        let s = sum.to_f64();
        if (k as f64 >= x && term < tol * s.max(1.0)) || !s.is_finite() {
            break;
        }
    }
    // Ratio of consecutive terms from here on is at most x/(k+1) < 1.
    let q = x / (k + 1) as f64;
    let total = sum.to_f64();
    SeriesState {
        partial_sum: if total.is_nan() { f64::INFINITY } else { total },
        terms_used: k + 1,
        last_term: term,
        tail_bound: term * q / (1.0 - q),
    }
}

/// `e^x` from its Taylor series.
///
/// Negative arguments are summed as `1/e^{|x|}`, which avoids cancellation
/// between alternating terms; the tail bound is carried through the
/// reciprocal.
pub fn taylor_exp(x: f64, tol: f64) -> Result<SeriesState> {
    ensure_tolerance(tol)?;
    ensure_finite("x", x)?;
    if x.abs() > EXP_ARG_LIMIT {
        return Err(Error::ArgumentOutOfRange(x));
    }
    Ok(exp_signed(x, tol))
}

fn exp_signed(x: f64, tol: f64) -> SeriesState {
    if x >= 0.0 {
        return exp_positive(x, tol);
    }
    let pos = exp_positive(-x, tol);
    let s = pos.partial_sum;
    let sign = if pos.terms_used & 1 == 0 { -1.0 } else { 1.0 };
    SeriesState {
        partial_sum: 1.0 / s,
        terms_used: pos.terms_used,
        last_term: sign * pos.last_term,
        tail_bound: pos.tail_bound / (s * s),
    }
}

/// Series exponential without range checks; overflows to `inf` and
/// underflows to `0` like any binary64 function.
pub(crate) fn exp_unchecked(x: f64) -> f64 {
    exp_signed(x, 1e-16).partial_sum
}

fn trig_check(x: f64, tol: f64) -> Result<()> {
    ensure_tolerance(tol)?;
    ensure_finite("x", x)?;
    if x.abs() > TRIG_ARG_LIMIT {
        return Err(Error::ArgumentOutOfRange(x));
    }
    Ok(())
}

/// Sums `Σ_k (−1)^k x^{2k+offset}/(2k+offset)!` in double-binary64.
fn alternating(x: f64, tol: f64, offset: u32) -> Dd {
    let x2 = Dd::from_f64(x) * Dd::from_f64(x);
    let mut term = if offset == 0 { Dd::ONE } else { Dd::from_f64(x) };
    let mut sum = term;
    let mut k = offset as u64;
    loop {
        let step = ((k + 1) * (k + 2)) as f64;
        term = -(term * x2).div_f64(step);
        k += 2;
        sum = sum + term;
        if k as f64 >= x.abs() && term.hi().abs() < tol * 0.5 {
            break;
        }
    }
    sum
}

/// `sin x` from its Taylor series.
pub fn taylor_sin(x: f64, tol: f64) -> Result<f64> {
    trig_check(x, tol)?;
    Ok(alternating(x, tol, 1).to_f64())
}

/// `cos x` from its Taylor series.
pub fn taylor_cos(x: f64, tol: f64) -> Result<f64> {
    trig_check(x, tol)?;
    Ok(alternating(x, tol, 0).to_f64())
}

/// `e^{iθ}` by summing `(iθ)^k/k!` and splitting the even-index terms into
/// the real part and the odd-index terms into the imaginary part.
pub fn complex_exp(theta: f64, tol: f64) -> Result<ComplexValue> {
    trig_check(theta, tol)?;
    let t = Dd::from_f64(theta);
    let (mut re, mut im) = (Dd::ONE, Dd::ZERO);
    // term holds |θ|^k/k! with its sign from i^k folded in below.
    let mut term = Dd::ONE;
    let mut k = 0u64;
    loop {
        k += 1;
        term = (term * t).div_f64(k as f64);
        match k % 4 {
            0 => re = re + term,
            1 => im = im + term,
            2 => re = re - term,
            _ => im = im - term,
        }
        if k as f64 >= theta.abs() && term.hi().abs() < tol * 0.5 {
            break;
        }
    }
    Ok(ComplexValue { re: re.to_f64(), im: im.to_f64() })
}

/// Rows `(h = 2^−k, sin(h)/h)` for each level; error is `value − 1` and the
/// bound is the first omitted term `h²/6`.
pub fn sinc_limit_table(levels: impl IntoIterator<Item = u32>) -> Result<Vec<ConvergenceRecord>> {
    levels
        .into_iter()
        .map(|k| {
            if k > 30 {
                return Err(Error::LevelOutOfRange { level: k, min: 0, max: 30 });
            }
            let h = 2f64.powi(-(k as i32));
            let value = taylor_sin(h, 1e-300)? / h;
            Ok(ConvergenceRecord::new(Param::Step(h), value, 1.0, Some(h * h / 6.0 + 2.0 * f64::EPSILON)))
        })
        .collect()
}

/// `π` and `π/2` from the configuration constant, for the identity checks.
pub fn half_pi() -> f64 {
    PI_CONF / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::{E_REF, PI_CONF};

    #[test]
    fn factorial_partial_sums() {
        assert_eq!(factorial_partial_sum(0).unwrap(), 1.0);
        assert!((factorial_partial_sum(5).unwrap() - 163.0 / 60.0).abs() < 1e-15);
        assert!((factorial_partial_sum(17).unwrap() - E_REF).abs() <= 1e-15);
        assert!(factorial_partial_sum(171).is_err());
    }

    #[test]
    fn tail_bounds() {
        assert!((tail_bound(0) - 2.0).abs() < 1e-14);
        let b5 = tail_bound(5);
        assert!((b5 - 7.0 / 4320.0).abs() < 1e-17 && b5 >= 1.6152e-3);
        assert!(tail_bound(17) <= 2.1e-16);
        assert!(tail_bound(400) > 0.0);
    }

    #[test]
    fn binomial_terms() {
        assert_eq!(binomial_term(7, 0).unwrap(), 1.0);
        assert_eq!(binomial_term(7, 1).unwrap(), 1.0);
        assert_eq!(binomial_term(4, 2).unwrap(), 0.375);
        assert_eq!(binomial_term(4, 5), Err(Error::IndexOutOfRange { k: 5, n: 4 }));
        let grid = binomial_grid(4).unwrap();
        assert_eq!(grid.terms[2], 0.375);
        assert_eq!(grid.terms.len(), 5);
    }

    #[test]
    fn certificate_small_cases() {
        assert!((series_error_certificate(1, 1).unwrap() - tail_bound(1)).abs() < 1e-13);
        assert!(series_error_certificate(3, 4).is_err());
        let c = series_error_certificate(100, 5).unwrap();
        assert!(c >= (E_REF - 2.7048138294215285).abs());
    }

    #[test]
    fn taylor_exp_examples() {
        assert_eq!(taylor_exp(0.0, 1e-15).unwrap().partial_sum, 1.0);
        assert!((taylor_exp(1.0, 1e-15).unwrap().partial_sum - E_REF).abs() <= 4.5e-16);
        assert!((taylor_exp(-1.0, 1e-15).unwrap().partial_sum - 1.0 / E_REF).abs() <= 1e-15);
        assert!(taylor_exp(1.0, 0.0).is_err());
        assert!(taylor_exp(701.0, 1e-15).is_err());
    }

    #[test]
    fn taylor_exp_tail_bound_covers_truncation() {
        let s = taylor_exp(3.0, 1e-6).unwrap();
        let exact = 20.085536923187668;
        assert!((exact - s.partial_sum).abs() <= s.tail_bound + 1e-14);
    }

    #[test]
    fn trig_examples() {
        assert_eq!(taylor_sin(0.0, 1e-16).unwrap(), 0.0);
        assert_eq!(taylor_cos(0.0, 1e-16).unwrap(), 1.0);
        assert!((taylor_sin(half_pi(), 1e-16).unwrap() - 1.0).abs() < 1e-12);
        assert!((taylor_cos(PI_CONF, 1e-16).unwrap() + 1.0).abs() < 1e-12);
        assert!(taylor_sin(31.0, 1e-16).is_err());
    }

    #[test]
    fn euler_identity() {
        let z = complex_exp(PI_CONF, 1e-16).unwrap();
        assert!((z.re + 1.0).hypot(z.im) <= 1e-12);
        let q = complex_exp(half_pi(), 1e-16).unwrap();
        assert!(q.re.abs() < 1e-12 && (q.im - 1.0).abs() < 1e-12);
        assert_eq!(complex_exp(0.0, 1e-16).unwrap(), ComplexValue { re: 1.0, im: 0.0 });
    }

    #[test]
    fn sinc_table() {
        let rows = sinc_limit_table(0..=20).unwrap();
        assert!((rows[0].value - 0.8414709848078965).abs() < 1e-15);
        let last = rows.last().unwrap();
        assert!((last.value - (1.0 - 2f64.powi(-40) / 6.0)).abs() < 1e-16);
        assert!(rows.windows(2).all(|w| w[0].value <= w[1].value));
        assert!(sinc_limit_table([31]).is_err());
        assert!(rows.iter().all(|r| r.bound_holds()));
    }
}
