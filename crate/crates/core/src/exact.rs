//! Exact integer and rational arithmetic shared by every other module.
//!
//! Integers are [`num_bigint::BigInt`] and rationals are [`num_rational::BigRational`],
//! which keeps every value in canonical form (positive denominator, reduced by the
//! gcd) after each operation. Nothing in this crate ever touches floating point.
//!
//! Convention: `0^0 = 1` everywhere, including [`int_pow`] and [`rat_pow`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

pub type ExactInt = BigInt;
pub type ExactRat = BigRational;

pub fn int(v: i64) -> ExactInt {
    ExactInt::from(v)
}

/// `num / den` in canonical form. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> ExactRat {
    ExactRat::new(num.into(), den.into())
}

pub fn to_rat(v: &ExactInt) -> ExactRat {
    ExactRat::from_integer(v.clone())
}

/// Binomial coefficient `C(n, k)`.
///
/// Returns zero when `k < 0` or `k > n`, so rectangular double sums can run over
/// the full index box. Negative `n` is a domain error.
pub fn binomial(n: impl Into<ExactInt>, k: impl Into<ExactInt>) -> Result<ExactInt> {
    let n = n.into();
    let k = k.into();
    if n.is_negative() {
        return Err(domain(format!("binomial({n}, {k}): n must be nonnegative")));
    }
    if k.is_negative() || k > n {
        return Ok(ExactInt::zero());
    }
    let k = std::cmp::min(k.clone(), &n - &k);
    let steps = k
        .to_u64()
        .ok_or_else(|| domain(format!("binomial: k={k} too large to evaluate")))?;
    let mut acc = ExactInt::one();
    let base = &n - &k;
    for i in 1..=steps {
        // acc * (base + i) is always divisible by i at this point.
        acc = acc * (&base + i) / i;
    }
    Ok(acc)
}

/// `C(n, k)` for machine-sized arguments; same conventions as [`binomial`].
pub fn binom(n: u64, k: i64) -> ExactInt {
    binomial(n, k).expect("nonnegative n")
}

pub fn int_pow(x: &ExactInt, n: u32) -> ExactInt {
    Pow::pow(x, n)
}

/// Rational power with a signed exponent. A zero base with a negative exponent
/// is an error.
pub fn rat_pow(x: &ExactRat, n: i64) -> Result<ExactRat> {
    if n < 0 && x.is_zero() {
        return Err(Error::ZeroToNegativePower(n));
    }
    let e = n.unsigned_abs();
    let e = u32::try_from(e).map_err(|_| domain(format!("exponent {n} out of range")))?;
    let numer = Pow::pow(x.numer(), e);
    let denom = Pow::pow(x.denom(), e);
    Ok(if n >= 0 {
        ExactRat::new(numer, denom)
    } else {
        ExactRat::new(denom, numer)
    })
}

/// `x^n` for an integer base and signed exponent, as an exact rational.
pub fn int_pow_signed(x: &ExactInt, n: i64) -> Result<ExactRat> {
    rat_pow(&to_rat(x), n)
}

pub fn factorial(n: u32) -> ExactInt {
    (1..=n).fold(ExactInt::one(), |acc, i| acc * i)
}

/// Renders `value` with `digits` fractional digits, truncated toward zero.
///
/// The digits shown are always a prefix of the exact decimal expansion.
pub fn truncated_decimal(value: &ExactRat, digits: usize) -> String {
    let negative = value.is_negative();
    let abs = value.abs();
    let scale = Pow::pow(ExactInt::from(10u32), digits);
    let scaled = (abs.numer() * &scale).div_floor(abs.denom());
    let (whole, frac) = scaled.div_rem(&scale);
    let mut out = String::new();
    if negative && !scaled.is_zero() {
        out.push('-');
    }
    out.push_str(&whole.to_string());
    if digits > 0 {
        let frac = frac.to_string();
        out.push('.');
        out.push_str(&"0".repeat(digits - frac.len()));
        out.push_str(&frac);
    }
    out
}

/// Serde adapters that write exact numbers as decimal strings.
pub mod serde_exact {
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    use super::{ExactInt, ExactRat};

    pub fn int<S: Serializer>(v: &ExactInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn rat<S: Serializer>(v: &ExactRat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn int_vec<S: Serializer>(v: &[ExactInt], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn rat_vec<S: Serializer>(v: &[ExactRat], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn opt_int<S: Serializer>(v: &Option<ExactInt>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => s.serialize_str(&v.to_string()),
            None => s.serialize_none(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(4, 2).unwrap(), int(6));
        assert_eq!(binomial(10, 3).unwrap(), int(120));
        for n in 0..20 {
            assert_eq!(binomial(n, 0).unwrap(), int(1));
        }
    }

    #[test]
    fn binomial_outside_triangle_is_zero() {
        assert_eq!(binomial(5, -1).unwrap(), int(0));
        assert_eq!(binomial(5, 6).unwrap(), int(0));
        assert_eq!(binomial(0, 0).unwrap(), int(1));
    }

    #[test]
    fn binomial_negative_n_is_domain_error() {
        assert!(matches!(binomial(-1, 0), Err(Error::Domain(_))));
    }

    #[test]
    fn binomial_matches_factorial_formula() {
        for n in 0..30u32 {
            for k in 0..=n {
                let oracle = factorial(n) / (factorial(k) * factorial(n - k));
                assert_eq!(binomial(n, k).unwrap(), oracle, "C({n},{k})");
            }
        }
    }

    #[test]
    fn powers() {
        assert_eq!(int_pow(&int(3), 3), int(27));
        assert_eq!(int_pow(&int(10), 3), int(1000));
        assert_eq!(int_pow(&int(0), 0), int(1));
        assert_eq!(int_pow(&int(-7), 0), int(1));
    }

    #[test]
    fn rational_powers() {
        assert_eq!(rat_pow(&rat(2, 1), -1).unwrap(), rat(1, 2));
        assert_eq!(rat_pow(&rat(3, 2), 2).unwrap(), rat(9, 4));
        assert_eq!(rat_pow(&rat(5, 1), -3).unwrap(), rat(1, 125));
        assert_eq!(rat_pow(&rat(-2, 3), -3).unwrap(), rat(-27, 8));
        assert_eq!(rat_pow(&rat(0, 1), 0).unwrap(), rat(1, 1));
        assert_eq!(
            rat_pow(&rat(0, 1), -2),
            Err(Error::ZeroToNegativePower(-2))
        );
    }

    #[test]
    fn decimal_truncation() {
        assert_eq!(truncated_decimal(&rat(2, 3), 4), "0.6666");
        assert_eq!(truncated_decimal(&rat(-2, 3), 4), "-0.6666");
        assert_eq!(truncated_decimal(&rat(65, 24), 6), "2.708333");
        assert_eq!(truncated_decimal(&rat(1, 100), 1), "0.0");
        assert_eq!(truncated_decimal(&rat(-1, 100), 1), "0.0");
        assert_eq!(truncated_decimal(&rat(7, 1), 0), "7");
        assert_eq!(truncated_decimal(&rat(1, 20), 3), "0.050");
    }
}
