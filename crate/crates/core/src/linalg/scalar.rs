use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Exact coefficient type. `BigRational` keeps itself in lowest terms with a
/// positive denominator, so every stored value is canonical.
pub type Rational = BigRational;

/// Coefficient ring of a module or complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Q,
    Z,
}

impl Ring {
    /// Whether `value` is an element of this ring.
    pub fn contains(self, value: &Rational) -> bool {
        match self {
            Ring::Q => true,
            Ring::Z => value.is_integer(),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Q => f.write_str("Q"),
            Ring::Z => f.write_str("Z"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Q" | "q" => Ok(Ring::Q),
            "Z" | "z" => Ok(Ring::Z),
            other => Err(Error::Parse(format!(
                "unknown ring `{other}` (expected Q or Z)"
            ))),
        }
    }
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// `(-1)^k` as a rational.
pub fn sign(k: usize) -> Rational {
    if k.is_multiple_of(2) {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`. Decimal points are rejected so that no
/// coefficient ever passes through floating point.
pub fn parse_scalar(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("invalid scalar `{s}` (expected \"p/q\")"));
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

pub fn format_scalar(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Lossless conversion of an integral rational.
pub fn to_integer(q: &Rational) -> Option<BigInt> {
    if q.is_integer() {
        Some(q.numer().clone())
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_scalar("3/6").unwrap(), frac(1, 2));
        assert_eq!(parse_scalar("-4").unwrap(), int(-4));
        assert_eq!(parse_scalar(" 2/-4 ").unwrap(), frac(-1, 2));
        assert!(parse_scalar("0.5").is_err());
        assert!(parse_scalar("1/0").is_err());
        assert_eq!(format_scalar(&frac(6, -4)), "-3/2");
        assert_eq!(format_scalar(&int(7)), "7");
    }

    #[test]
    fn canonical_denominators() {
        let q = frac(10, -4);
        assert!(q.denom() > &BigInt::zero());
        assert_eq!(q.numer(), &BigInt::from(-5));
        assert!(!Ring::Z.contains(&q));
        assert!(Ring::Z.contains(&frac(8, 4)));
    }
}
