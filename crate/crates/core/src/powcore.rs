//! Powers, roots and the general exponential `a^x`, built only from
//! multiplication, bisection and dyadic exponents.
//!
//! `a^x` for real `x` is approached through the dyadic exponents
//! `p/2^k ≤ x ≤ (p+1)/2^k`: the integer part comes from repeated
//! multiplication and each binary digit of the fraction multiplies in one
//! member of the square-root ladder `a^(1/2), a^(1/4), …`. The two ends of the
//! bracket give a certified [`Enclosure`] of `a^x`.

use num_bigint::BigInt;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{ensure_finite, ensure_tolerance, Error, Result};

/// Dyadic depth used when a caller does not ask for one.
pub const DEFAULT_DEPTH: u32 = 40;
/// Deepest supported dyadic level.
pub const MAX_DEPTH: u32 = 60;
/// Upper limit on bisection steps in [`nth_root`].
pub const BISECTION_CAP: usize = 200;

/// Residual tolerance for the square roots of the ladder. Eight units of
/// roundoff is the smallest window every binary64 input can meet.
const SQRT_TOL: f64 = 8.0 * f64::EPSILON;

/// A strictly positive, finite real.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct PosReal(f64);

impl PosReal {
    pub fn new(value: f64) -> Result<Self> {
        if value > 0.0 && value.is_finite() {
            Ok(PosReal(value))
        } else {
            Err(Error::NotPositive { what: "value", value })
        }
    }

    pub(crate) fn named(what: &'static str, value: f64) -> Result<Self> {
        PosReal::new(value).map_err(|_| Error::NotPositive { what, value })
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for PosReal {
    type Error = Error;
    fn try_from(v: f64) -> Result<Self> {
        PosReal::new(v)
    }
}

/// A certified interval `[lo, hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Enclosure {
    lo: f64,
    hi: f64,
}

impl Enclosure {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::Invalid(format!("enclosure bounds must be finite: [{lo}, {hi}]")));
        }
        if lo > hi || !(hi - lo).is_finite() {
            return Err(Error::Invalid(format!("enclosure bounds out of order: [{lo}, {hi}]")));
        }
        Ok(Enclosure { lo, hi })
    }

    pub fn point(v: f64) -> Self {
        Enclosure { lo: v, hi: v }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        self.lo + 0.5 * (self.hi - self.lo)
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// `self ⊆ other`, allowing each edge to stick out by `ulps` units in the
    /// last place.
    pub fn within(&self, other: &Enclosure, ulps: u32) -> bool {
        let slack = |v: f64| ulps as f64 * ulp(v);
        self.lo >= other.lo - slack(other.lo) && self.hi <= other.hi + slack(other.hi)
    }

    /// Intersection of two enclosures of the same quantity.
    pub fn intersect(&self, other: &Enclosure) -> Option<Enclosure> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Enclosure { lo, hi })
    }
}

pub(crate) fn ulp(v: f64) -> f64 {
    let a = v.abs();
    if a == 0.0 {
        return f64::from_bits(1);
    }
    let next = f64::from_bits(a.to_bits() + 1);
    next - a
}

/// An exponent `numerator / 2^depth` in canonical form (odd numerator or
/// depth zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicExponent {
    numerator: BigInt,
    depth: u32,
}

impl DyadicExponent {
    pub fn new(numerator: impl Into<BigInt>, depth: u32) -> Result<Self> {
        if depth > MAX_DEPTH {
            return Err(Error::DepthExceeded { depth, max: MAX_DEPTH });
        }
        let mut numerator = numerator.into();
        let mut depth = depth;
        while depth > 0 && !numerator.is_zero() && (&numerator % 2u32).is_zero() {
            numerator /= 2u32;
            depth -= 1;
        }
        if numerator.is_zero() {
            depth = 0;
        }
        Ok(DyadicExponent { numerator, depth })
    }

    /// The largest dyadic `p / 2^depth` not exceeding `x`.
    pub fn floor_of(x: f64, depth: u32) -> Result<Self> {
        ensure_finite("exponent", x)?;
        if depth > MAX_DEPTH {
            return Err(Error::DepthExceeded { depth, max: MAX_DEPTH });
        }
        let scaled = (x * 2f64.powi(depth as i32)).floor();
        let p = BigInt::from_f64(scaled).expect("finite float is an integer after floor");
        DyadicExponent::new(p, depth)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn to_f64(&self) -> f64 {
        self.numerator.to_f64().unwrap_or(f64::NAN) / 2f64.powi(self.depth as i32)
    }
}

/// Binary exponentiation with no range checks.
pub(crate) fn powi_raw(x: f64, mut n: u64) -> f64 {
    let mut base = x;
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= base;
        }
        n >>= 1;
        if n > 0 {
            base *= base;
        }
    }
    acc
}

/// `x^n` for a positive integer `n`.
pub fn int_pow(x: PosReal, n: u64) -> Result<PosReal> {
    if n == 0 {
        return Err(Error::Invalid("exponent n must be at least 1".into()));
    }
    let v = powi_raw(x.get(), n);
    if v.is_infinite() {
        Err(Error::Overflow { base: x.get(), exponent: n as f64 })
    } else if v == 0.0 {
        Err(Error::Underflow { base: x.get(), exponent: n as f64 })
    } else {
        Ok(PosReal(v))
    }
}

/// Positive `n`-th root of `y` by bisection on `r ↦ r^n`.
///
/// The bracket starts as `[min(1, y), max(1, y)]` and is halved in the ordered
/// lattice of binary64 values, so it collapses to two neighbouring floats in
/// at most 64 steps for any input. The better neighbour is returned once it
/// satisfies `|r^n − y| ≤ tol·max(1, y)`.
pub fn nth_root(y: PosReal, n: u32, tol: f64) -> Result<PosReal> {
    ensure_tolerance(tol)?;
    if n == 0 {
        return Err(Error::Invalid("root index n must be at least 1".into()));
    }
    let y = y.get();
    let residual = |r: f64| (powi_raw(r, n as u64) - y).abs();
    let allowed = tol * y.max(1.0);
    if n == 1 || y == 1.0 {
        return Ok(PosReal(y));
    }
    let (mut lo, mut hi) = (y.min(1.0).to_bits(), y.max(1.0).to_bits());
    for _ in 0..BISECTION_CAP {
        if hi - lo <= 1 {
            break;
        }
        let mid = lo + (hi - lo) / 2;
        if powi_raw(f64::from_bits(mid), n as u64) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let (lo, hi) = (f64::from_bits(lo), f64::from_bits(hi));
    let best = if residual(lo) <= residual(hi) { lo } else { hi };
    let achieved = residual(best);
    if achieved <= allowed {
        Ok(PosReal(best))
    } else {
        Err(Error::ToleranceNotMet { requested: tol, achieved: achieved / y.max(1.0) })
    }
}

/// Square-root ladder `r_0 = a, r_i = √r_{i−1}` for one base `a > 1`.
#[derive(Clone, Debug)]
pub(crate) struct RootLadder {
    base: f64,
    roots: Vec<f64>,
}

impl RootLadder {
    pub(crate) fn new(a: PosReal, depth: u32) -> Result<Self> {
        let mut roots = Vec::with_capacity(depth as usize + 1);
        roots.push(a.get());
        for _ in 0..depth {
            let prev = *roots.last().expect("ladder starts non-empty");
            roots.push(nth_root(PosReal(prev), 2, SQRT_TOL)?.get());
        }
        Ok(RootLadder { base: a.get(), roots })
    }

    fn depth(&self) -> u32 {
        (self.roots.len() - 1) as u32
    }

    /// Enclosure of `base^x` at dyadic `depth`; requires `base > 1`.
    ///
    /// Level 0 brackets `x` between consecutive integers, and every further
    /// binary digit halves the bracket. Each level is widened outward by a
    /// relative slack covering the rounding of the products and roots, and
    /// the running intersection keeps the sequence nested.
    pub(crate) fn enclose(&self, x: f64, depth: u32) -> Result<Enclosure> {
        debug_assert!(depth <= self.depth());
        let a = self.base;
        let whole = x.floor();
        let frac = x - whole;
        let m = whole
            .to_i64()
            .filter(|m| m.unsigned_abs() < 1 << 52)
            .ok_or(Error::Overflow { base: a, exponent: x })?;
        let int_part = if m >= 0 {
            powi_raw(a, m as u64)
        } else {
            1.0 / powi_raw(a, m.unsigned_abs())
        };
        if int_part.is_infinite() {
            return Err(Error::Overflow { base: a, exponent: x });
        }
        if int_part == 0.0 {
            return Err(Error::Underflow { base: a, exponent: x });
        }
        let frac_bits = (frac * 2f64.powi(depth as i32)).floor() as u64;
        let slack = (2.0 * m.unsigned_abs() as f64 + 4.0 * MAX_DEPTH as f64 + 16.0) * f64::EPSILON;
        let (down, up) = (1.0 - slack, 1.0 + slack);

        let mut point = int_part;
        let mut lo = point * down;
        let mut hi = point * a * up;
        for level in 1..=depth {
            let r = self.roots[level as usize];
            if (frac_bits >> (depth - level)) & 1 == 1 {
                point *= r;
            }
            lo = lo.max(point * down);
            hi = hi.min(point * r * up);
        }
        if hi.is_infinite() {
            return Err(Error::Overflow { base: a, exponent: x });
        }
        Enclosure::new(lo, hi)
    }
}

/// Certified enclosure of `a^x` at the given dyadic depth.
///
/// For `0 < a < 1` the result is the reciprocal of the enclosure of
/// `(1/a)^x`; `a = 1` gives the point `[1, 1]`.
pub fn exp_base(a: PosReal, x: f64, depth: u32) -> Result<Enclosure> {
    ensure_finite("exponent", x)?;
    if depth > MAX_DEPTH {
        return Err(Error::DepthExceeded { depth, max: MAX_DEPTH });
    }
    let av = a.get();
    if av == 1.0 {
        return Ok(Enclosure::point(1.0));
    }
    if av < 1.0 {
        let inv = PosReal::new(1.0 / av)?;
        let e = RootLadder::new(inv, depth)?.enclose(x, depth)?;
        // 1/a carries one rounding, which the power magnifies |x|-fold.
        let extra = (x.abs() + 2.0) * f64::EPSILON;
        return Enclosure::new((1.0 / e.hi()) * (1.0 - extra), (1.0 / e.lo()) * (1.0 + extra));
    }
    RootLadder::new(a, depth)?.enclose(x, depth)
}

/// Best point value of `a^x`: the midpoint of the deepest enclosure.
pub fn power(a: PosReal, x: f64) -> Result<f64> {
    exp_base(a, x, MAX_DEPTH).map(|e| e.midpoint())
}

/// Height of the chord through `(b, a^b)` and `(c, a^c)` above the curve at
/// `x`, for `b < x < c`.
pub fn chord_gap(a: PosReal, b: f64, c: f64, x: f64) -> Result<f64> {
    if a.get() <= 1.0 {
        return Err(Error::Invalid(format!("chord gap requires a > 1, got {}", a.get())));
    }
    ensure_finite("b", b)?;
    ensure_finite("c", c)?;
    ensure_finite("x", x)?;
    if !(b < x && x < c) {
        return Err(Error::NotInterior { x, b, c });
    }
    let ladder = RootLadder::new(a, MAX_DEPTH)?;
    let at = |t: f64| ladder.enclose(t, MAX_DEPTH).map(|e| e.midpoint());
    let (fb, fc, fx) = (at(b)?, at(c)?, at(x)?);
    let t = (x - b) / (c - b);
    Ok((1.0 - t) * fb + t * fc - fx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr(v: f64) -> PosReal {
        PosReal::new(v).unwrap()
    }

    #[test]
    fn pos_real_rejects_zero_nan_and_infinity() {
        assert!(PosReal::new(0.0).is_err());
        assert!(PosReal::new(-1.0).is_err());
        assert!(PosReal::new(f64::NAN).is_err());
        assert!(PosReal::new(f64::INFINITY).is_err());
    }

    #[test]
    fn int_pow_examples() {
        assert_eq!(int_pow(pr(2.0), 3).unwrap().get(), 8.0);
        assert_eq!(int_pow(pr(1.5), 2).unwrap().get(), 2.25);
    }

    #[test]
    fn int_pow_overflow_names_inputs() {
        let err = int_pow(pr(10.0), 400).unwrap_err();
        assert_eq!(err, Error::Overflow { base: 10.0, exponent: 400.0 });
        assert!(err.to_string().contains("magnitude overflow"));
        assert!(int_pow(pr(2.0), 0).is_err());
    }

    #[test]
    fn nth_root_examples() {
        assert_eq!(nth_root(pr(8.0), 3, 1e-12).unwrap().get(), 2.0);
        let r = nth_root(pr(2.0), 2, 1e-12).unwrap().get();
        assert!((r * r - 2.0).abs() <= 1e-12);
        let r = nth_root(pr(59049.0), 11, 1e-12).unwrap().get();
        assert!((r - 2.715).abs() < 5e-4, "{r}");
    }

    #[test]
    fn nth_root_rejects_bad_tolerance() {
        assert_eq!(nth_root(pr(2.0), 2, 0.0), Err(Error::InvalidTolerance(0.0)));
        assert!(nth_root(pr(2.0), 2, -1.0).is_err());
        assert!(nth_root(pr(2.0), 2, f64::NAN).is_err());
    }

    #[test]
    fn nth_root_below_one() {
        let r = nth_root(pr(0.25), 2, 1e-12).unwrap().get();
        assert_eq!(r, 0.5);
    }

    #[test]
    fn dyadic_exponent_is_canonical() {
        let d = DyadicExponent::new(12, 5).unwrap();
        assert_eq!((d.numerator().clone(), d.depth()), (BigInt::from(3), 3));
        let z = DyadicExponent::new(0, 9).unwrap();
        assert_eq!(z.depth(), 0);
        assert!(DyadicExponent::new(1, 61).is_err());
        let f = DyadicExponent::floor_of(-0.3, 4).unwrap();
        assert_eq!(f.to_f64(), -5.0 / 16.0);
    }

    #[test]
    fn exp_base_encloses_sqrt2_from_eight() {
        let e = exp_base(pr(8.0), 1.0 / 6.0, 40).unwrap();
        assert!(e.contains(std::f64::consts::SQRT_2), "{e:?}");
        assert!(e.width() < 1e-11);
    }

    #[test]
    fn exp_base_at_zero_is_one_dyadic_step() {
        let e = exp_base(pr(5.0), 0.0, 20).unwrap();
        assert!(e.contains(1.0));
        let step = 5f64.powf(2f64.powi(-20)) - 1.0;
        assert!(e.width() <= step * 1.01);
    }

    #[test]
    fn exp_base_three_to_ten_elevenths() {
        let e = exp_base(pr(3.0), 10.0 / 11.0, 40).unwrap();
        assert!(e.contains(2.7148547265657914));
        assert!((e.midpoint() - 2.715).abs() < 5e-4);
    }

    #[test]
    fn exp_base_base_below_one_and_equal_one() {
        let e = exp_base(pr(0.5), 3.0, 40).unwrap();
        assert!(e.contains(0.125));
        assert_eq!(exp_base(pr(1.0), 123.4, 40).unwrap(), Enclosure::point(1.0));
    }

    #[test]
    fn exp_base_depth_limit() {
        assert_eq!(
            exp_base(pr(2.0), 0.5, 61),
            Err(Error::DepthExceeded { depth: 61, max: MAX_DEPTH })
        );
    }

    #[test]
    fn exp_base_negative_exponent() {
        let e = exp_base(pr(2.0), -1.5, 50).unwrap();
        assert!(e.contains(1.0 / (2.0 * std::f64::consts::SQRT_2)));
    }

    #[test]
    fn exp_base_overflow() {
        assert!(matches!(exp_base(pr(10.0), 400.0, 40), Err(Error::Overflow { .. })));
    }

    #[test]
    fn chord_gap_examples() {
        assert!((chord_gap(pr(4.0), 0.0, 1.0, 0.5).unwrap() - 0.5).abs() < 1e-12);
        let e = crate::consts::E_REF;
        let g = chord_gap(pr(e), -1.0, 1.0, 0.0).unwrap();
        assert!((g - ((1.0 / e + e) / 2.0 - 1.0)).abs() < 1e-12);
        let near = chord_gap(pr(3.0), 0.0, 1.0, 1e-9).unwrap();
        assert!(near > 0.0 && near < 1e-8);
    }

    #[test]
    fn chord_gap_rejects_exterior_point() {
        assert_eq!(
            chord_gap(pr(3.0), 0.0, 1.0, 1.0),
            Err(Error::NotInterior { x: 1.0, b: 0.0, c: 1.0 })
        );
    }

    #[test]
    fn enclosure_within_and_intersect() {
        let a = Enclosure::new(1.0, 2.0).unwrap();
        let b = Enclosure::new(1.5, 3.0).unwrap();
        assert_eq!(a.intersect(&b), Some(Enclosure::new(1.5, 2.0).unwrap()));
        assert!(Enclosure::new(1.0, 2.0).unwrap().within(&a, 0));
        assert!(!b.within(&a, 1));
        assert!(Enclosure::new(2.0, 1.0).is_err());
    }
}
