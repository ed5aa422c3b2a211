//! Exact rational oracles.
//!
//! Everything here works on [`BigRational`] with no rounding, so the results
//! can referee the binary64 routines elsewhere in the crate.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};

pub use num_rational::BigRational;

/// `p / q` as a reduced rational.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn integer(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Raises a reduced rational to a power without re-normalizing; a reduced
/// fraction stays reduced under powers.
pub fn pow(base: &BigRational, n: u64) -> BigRational {
    let e = u32::try_from(n).expect("exponent fits in u32");
    BigRational::new_raw(base.numer().pow(e), base.denom().pow(e))
}

/// `Σ_{k=0}^m 1/k!` exactly.
pub fn factorial_partial_sum(m: u64) -> BigRational {
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    for k in 0..=m {
        if k > 0 {
            fact *= k;
        }
        sum += BigRational::new(BigInt::one(), fact.clone());
    }
    sum
}

/// `1/k!` exactly.
pub fn inverse_factorial(k: u64) -> BigRational {
    let mut fact = BigInt::one();
    for j in 2..=k {
        fact *= j;
    }
    BigRational::new(BigInt::one(), fact)
}

/// The binomial bridge term `(1/k!)·Π_{j<k} (n−j)/n` exactly.
pub fn binomial_term(n: u64, k: u64) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= n - j;
        den *= n * (j + 1);
    }
    BigRational::new(num, den)
}

/// Decimal expansion truncated toward zero after `frac_digits` places.
pub fn decimal_expansion(r: &BigRational, frac_digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(frac_digits as u32);
    let scaled = (r.numer().abs() * scale) / r.denom();
    let mut digits = scaled.to_string();
    if digits.len() <= frac_digits {
        digits = format!("{}{}", "0".repeat(frac_digits + 1 - digits.len()), digits);
    }
    let split = digits.len() - frac_digits;
    let sign = if r.is_negative() { "-" } else { "" };
    if frac_digits == 0 {
        format!("{sign}{digits}")
    } else {
        format!("{sign}{}.{}", &digits[..split], &digits[split..])
    }
}

/// Nearest binary64 to `r`, via a 40-significant-digit decimal rendering.
pub fn to_f64(r: &BigRational) -> f64 {
    const SIG: usize = 40;
    if r.is_zero() {
        return 0.0;
    }
    let num = r.numer().abs();
    let den = r.denom().clone();
    // Initial guess for floor(log10 |r|) from the bit lengths, then correct.
    let bits = num.bits() as i64 - den.bits() as i64;
    let mut exp10 = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let ten = BigInt::from(10u32);
    let digits = loop {
        let shift = SIG as i64 - 1 - exp10;
        let q = if shift >= 0 {
            (&num * ten.clone().pow(shift as u32)).div_floor(&den)
        } else {
            num.div_floor(&(&den * ten.clone().pow((-shift) as u32)))
        };
        let s = q.to_string();
        match s.len().cmp(&SIG) {
            std::cmp::Ordering::Greater => exp10 += 1,
            std::cmp::Ordering::Less => exp10 -= 1,
            std::cmp::Ordering::Equal => break s,
        }
    };
    let sign = if r.numer().sign() == Sign::Minus { "-" } else { "" };
    format!("{sign}{}.{}e{exp10}", &digits[..1], &digits[1..])
        .parse()
        .expect("well-formed decimal")
}
