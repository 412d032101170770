//! Exact arithmetic building blocks: big rationals, fraction-free elimination
//! over the rationals, and sparse elimination modulo word-sized primes.
//!
//! Rank questions that are too large for exact elimination are answered
//! modulo a prime. A full-rank certificate modulo `p` is a full-rank
//! certificate over the rationals, and a nullity computed modulo `p` is
//! promoted to an exact one only after rational reconstruction of the kernel
//! and an exact residual check (see [`certify`]).

pub mod certify;
pub mod dense;
pub mod modular;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use num_bigint::BigInt as Integer;

/// Exact rational number, always stored in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid rational literal `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Integer-valued rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics on `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"-p"` or `"p/q"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let bad = || ParseRationalError::Invalid(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(s.to_string()));
    }
    Ok(Rational::new(num, den))
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

/// Least common multiple of the denominators.
pub fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    let mut acc = BigInt::one();
    for v in values {
        acc = num_integer::Integer::lcm(&acc, v.denom());
    }
    acc
}

/// Scales a rational vector to integers with gcd 1, keeping signs. Returns
/// an all-zero vector unchanged.
pub fn primitive_integer_vector(values: &[Rational]) -> Vec<BigInt> {
    let den = common_denominator(values);
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    let g = ints
        .iter()
        .fold(BigInt::zero(), |g, v| num_integer::Integer::gcd(&g, v));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

/// Nearest double to `q`, computed from a rounded quotient so that huge
/// numerators and denominators do not overflow.
pub fn to_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if let (Some(n), Some(d)) = (q.numer().to_f64(), q.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both parts down to a manageable size.
    let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(900);
    let n = q.numer().abs() >> shift;
    let d = q.denom() >> shift;
    let v = n.to_f64().unwrap_or(f64::INFINITY) / d.to_f64().unwrap_or(f64::INFINITY);
    if q.is_negative() {
        -v
    } else {
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("-6/4").unwrap(), frac(-3, 2));
        assert_eq!(parse_rational(" 5/-10 ").unwrap(), frac(-1, 2));
        assert!(matches!(
            parse_rational("1/0"),
            Err(ParseRationalError::ZeroDenominator(_))
        ));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1.5").is_err());
    }

    #[test]
    fn format_round_trips() {
        for q in [int(0), int(-7), frac(22, 7), frac(-1, 3)] {
            assert_eq!(parse_rational(&format_rational(&q)).unwrap(), q);
        }
        assert_eq!(format_rational(&frac(4, 2)), "2");
    }

    #[test]
    fn primitive_vector() {
        let v = primitive_integer_vector(&[frac(8, 9), int(1)]);
        assert_eq!(v, vec![BigInt::from(8), BigInt::from(9)]);
        let v = primitive_integer_vector(&[frac(-1, 2), int(0), frac(3, 4)]);
        assert_eq!(v, vec![BigInt::from(-2), BigInt::from(0), BigInt::from(3)]);
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&frac(1, 4)), 0.25);
        let huge = Rational::new(BigInt::from(3) << 2000, BigInt::from(2) << 2000);
        assert!((to_f64(&huge) - 1.5).abs() < 1e-12);
    }
}
