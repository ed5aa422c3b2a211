//! Compound-interest limits `(1 + x/n)^n`, their exact rational oracle, the
//! rewriting of the power as an exponential of a secant slope of `ln`, the
//! table showing why `1 + 1/n ≈ 1` cannot be raised to the n-th power, and
//! the classic failure of limit interchange.
//!
//! Binary64 powers here run in double-binary64 arithmetic, so the base
//! `1 + x/n` is carried with ~106 bits and the result is within an ulp or two
//! of the exact rational even for `n` in the billions.

use serde::Serialize;

use crate::dd::Dd;
use crate::error::{ensure_finite, Error, Result};
use crate::exact::{self, BigRational};
use crate::loginv::ln;
use num_traits::{One, Signed};

/// Largest `n` accepted by [`compound`].
pub const COMPOUND_MAX_N: u64 = 1_000_000_000;
/// Largest `n` for which the exact oracle is evaluated by default.
pub const EXACT_MAX_N: u64 = 10_000;

/// `1 + x/n` carried in double-binary64.
pub(crate) fn step_base(x: f64, n: u64) -> Result<Dd> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    ensure_finite("x", x)?;
    let base = Dd::ONE + Dd::ratio(x, n as f64);
    if base.hi() <= 0.0 {
        return Err(Error::NonPositiveBase { x: x.to_string(), n });
    }
    Ok(base)
}

/// `(1 + 1/n)^n`.
pub fn compound(n: u64) -> Result<f64> {
    if n > COMPOUND_MAX_N {
        return Err(Error::Invalid(format!("n = {n} exceeds {COMPOUND_MAX_N}")));
    }
    Ok(step_base(1.0, n)?.powu(n).to_f64())
}

/// `(1 + x/n)^n`.
pub fn compound_x(x: f64, n: u64) -> Result<f64> {
    Ok(step_base(x, n)?.powu(n).to_f64())
}

/// `(1 + 1/n + 1/(n²))^n`, the pitfall table's supplementary column: a base
/// perturbed by an `o(1/n)` term.
pub fn supplementary_compound(n: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    let nf = n as f64;
    let q = Dd::ratio(1.0, nf);
    Ok((Dd::ONE + q + q.div_f64(nf)).powu(n).to_f64())
}

/// `(1 + x/n)^n` exactly.
pub fn compound_exact(x: &BigRational, n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    let base = BigRational::one() + x / exact::integer(n);
    if !base.is_positive() {
        return Err(Error::NonPositiveBase { x: x.to_string(), n });
    }
    Ok(exact::pow(&base, n))
}

/// `(1 + 1/n + 1/n²)^n` exactly.
pub fn supplementary_exact(n: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::ZeroCount);
    }
    let nn = exact::integer(n);
    let base = BigRational::one() + nn.recip() + (&nn * &nn).recip();
    Ok(exact::pow(&base, n))
}

/// Both sides of `n·ln(1 + x/n) = x·(ln(1 + x/n) − ln 1)/((1 + x/n) − 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExponentBridge {
    /// `n·ln(1 + x/n)`.
    pub lhs: f64,
    /// `x` times the secant slope of `ln` between 1 and `1 + x/n`.
    pub rhs: f64,
}

/// Evaluates both sides of the bridge.
///
/// The base `u = 1 + x/n` is rounded to binary64 once and both sides use that
/// `u`. The increment `u − 1` is exact, and the multiplier `x` in the
/// right-hand side is taken as `n·(u − 1)`, the exponent the rounded base
/// actually realizes; with that the two sides agree to rounding.
pub fn exponent_bridge(x: f64, n: u64) -> Result<ExponentBridge> {
    step_base(x, n)?;
    let nf = n as f64;
    let u = 1.0 + x / nf;
    if u <= 0.0 {
        return Err(Error::NonPositiveBase { x: x.to_string(), n });
    }
    let step = u - 1.0;
    if step == 0.0 {
        if x == 0.0 {
            return Ok(ExponentBridge { lhs: 0.0, rhs: 0.0 });
        }
        return Err(Error::Invalid(format!("x/n = {} is below binary64 resolution at 1", x / nf)));
    }
    let ln_u = ln(u)?;
    let ln_1 = ln(1.0)?;
    let secant = (ln_u - ln_1) / step;
    Ok(ExponentBridge { lhs: nf * ln_u, rhs: (nf * step) * secant })
}

/// Entries `(1 + c/n)^n` for every `(c, n)` plus the supplementary column.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PitfallTable {
    pub c_values: Vec<f64>,
    pub n_values: Vec<u64>,
    /// `rows[i][j] = (1 + c_i/n_j)^{n_j}`.
    pub rows: Vec<Vec<f64>>,
    /// `(1 + 1/n_j + 1/n_j²)^{n_j}`.
    pub supplementary: Vec<f64>,
}

pub fn pitfall_table(c_values: &[f64], n_values: &[u64]) -> Result<PitfallTable> {
    let rows = c_values
        .iter()
        .map(|&c| n_values.iter().map(|&n| compound_x(c, n)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let supplementary = n_values.iter().map(|&n| supplementary_compound(n)).collect::<Result<_>>()?;
    Ok(PitfallTable { c_values: c_values.to_vec(), n_values: n_values.to_vec(), rows, supplementary })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Interchange {
    /// `lim_n Σ_k a(n,k)`.
    pub row_limit: f64,
    /// `Σ_k lim_n a(n,k)`.
    pub column_limit: f64,
}

/// `a(n,k) = 1` if `k = n`, else 0: every row sums to 1 but every column
/// tends to 0.
pub fn interchange_counterexample(n_max: u64) -> Result<Interchange> {
    if n_max == 0 {
        return Err(Error::ZeroCount);
    }
    let a = |n: u64, k: u64| if k == n { 1.0 } else { 0.0 };
    let row_sums: Vec<f64> = (1..=n_max).map(|n| (0..=n).map(|k| a(n, k)).sum()).collect();
    // Each row sum is 1, so the row limit is the constant value.
    let row_limit = *row_sums.last().expect("n_max ≥ 1");
    debug_assert!(row_sums.iter().all(|&s| s == 1.0));
    // For fixed k the sequence a(n, k) is 0 for every n > k.
    let column_limit: f64 = (0..=n_max).map(|k| a(n_max + 1, k)).sum();
    debug_assert!(row_limit != column_limit);
    Ok(Interchange { row_limit, column_limit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::consts::E_REF;
    use crate::exact::{decimal_expansion, ratio, to_f64};

    #[test]
    fn compound_examples() {
        assert_eq!(compound(1).unwrap(), 2.0);
        assert!((compound(100).unwrap() - 2.7048138294215285).abs() < 1e-12);
        let big = compound(1_000_000).unwrap();
        assert!((big - 2.7182804693193769).abs() < 1e-12 && (big - E_REF).abs() < 2e-6);
        assert_eq!(compound(0), Err(Error::ZeroCount));
        assert!(compound(COMPOUND_MAX_N + 1).is_err());
    }

    #[test]
    fn compound_x_examples() {
        assert_eq!(compound_x(0.0, 17).unwrap(), 1.0);
        assert!((compound_x(-1.0, 10).unwrap() - 0.3486784401).abs() < 1e-15);
        for n in [1, 7, 100, 12345] {
            assert_eq!(compound_x(1.0, n).unwrap(), compound(n).unwrap());
        }
        let err = compound_x(-3.0, 2).unwrap_err();
        assert!(err.to_string().starts_with("base nonpositive; increase n"));
    }

    #[test]
    fn compound_exact_examples() {
        let one = ratio(1, 1);
        assert_eq!(compound_exact(&one, 1).unwrap(), ratio(2, 1));
        assert_eq!(compound_exact(&one, 4).unwrap(), ratio(625, 256));
        let c100 = compound_exact(&one, 100).unwrap();
        assert!(decimal_expansion(&c100, 9).starts_with("2.704813829"));
        assert!(compound_exact(&ratio(-2, 1), 2).is_err());
    }

    #[test]
    fn compound_matches_exact_closely() {
        for n in [3u64, 10, 63, 1000] {
            let exact = to_f64(&compound_exact(&ratio(1, 1), n).unwrap());
            let got = compound(n).unwrap();
            assert!((got - exact).abs() <= 2.0 * crate::powcore::ulp(exact), "n = {n}");
        }
    }

    #[test]
    fn bridge_examples() {
        let b = exponent_bridge(1.0, 1_000_000).unwrap();
        assert!((b.lhs - 0.9999995).abs() < 1e-8 && (b.rhs - b.lhs).abs() <= 1e-12 * b.lhs);
        let z = exponent_bridge(0.0, 5).unwrap();
        assert_eq!((z.lhs, z.rhs), (0.0, 0.0));
        let b2 = exponent_bridge(2.0, 1_000_000).unwrap();
        assert!((b2.lhs - 1.999998).abs() < 1e-7 && (b2.rhs - b2.lhs).abs() <= 1e-12 * b2.lhs);
    }

    #[test]
    fn pitfall_rows() {
        let t = pitfall_table(&[0.0, 1.0, 2.0], &[10, 10_000, 1_000_000]).unwrap();
        assert!(t.rows[0].iter().all(|&v| v == 1.0));
        assert!((t.rows[1][2] - E_REF).abs() < 2e-6);
        assert!((t.rows[2][2] - 7.389049).abs() < 1e-5);
        assert_eq!(t.supplementary.len(), 3);
    }

    #[test]
    fn interchange_pair() {
        let i = interchange_counterexample(25).unwrap();
        assert_eq!((i.row_limit, i.column_limit), (1.0, 0.0));
        assert!(interchange_counterexample(0).is_err());
    }
}
