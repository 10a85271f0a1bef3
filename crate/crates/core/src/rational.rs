//! Arbitrary-precision rational scalars and their decimal-string encoding.
//!
//! `BigRational` already keeps gcd(|num|, den) = 1 with den > 0, which is
//! exactly the normal form required everywhere in this crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Renders a rational as `"p"` when it is an integer and `"p/q"` otherwise.
pub fn rational_to_string(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `"p"` or `"p/q"` with optional sign and surrounding whitespace.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("not an integer: {t:?}")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(parse_int(s)?)),
        Some((num, den)) => {
            let d = parse_int(den)?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            Ok(Rational::new(parse_int(num)?, d))
        }
    }
}

/// The cube root of a rational, if it is a perfect cube.
pub fn rational_cbrt(x: &Rational) -> Option<Rational> {
    if x.is_zero() {
        return Some(Rational::zero());
    }
    let num_root = int_cbrt(x.numer())?;
    let den_root = int_cbrt(x.denom())?;
    Some(Rational::new(num_root, den_root))
}

fn int_cbrt(x: &BigInt) -> Option<BigInt> {
    let root = num_integer::Roots::cbrt(x);
    if &(&root * &root * &root) == x {
        Some(root)
    } else {
        None
    }
}

/// gcd of the absolute values, zero-tolerant.
pub fn big_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::gcd(a, b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn string_round_trip() {
        for s in ["-6", "1/3", "0", "884736/343"] {
            let x = parse_rational(s).unwrap();
            assert_eq!(rational_to_string(&x), s);
        }
        // non-canonical input normalizes
        assert_eq!(rational_to_string(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(rational_to_string(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn cbrt_detection() {
        assert_eq!(rational_cbrt(&rat_frac(8, 27)), Some(rat_frac(2, 3)));
        assert_eq!(rational_cbrt(&rat(-27)), Some(rat(-3)));
        assert_eq!(rational_cbrt(&rat_frac(26, 7)), None);
        assert_eq!(rational_cbrt(&rat(1)), Some(rat(1)));
    }
}
