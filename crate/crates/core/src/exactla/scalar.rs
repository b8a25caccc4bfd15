//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Every computation in this crate is carried out over the rationals.
pub type Scalar = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse {input:?} as a rational (expected \"p\" or \"p/q\")")]
pub struct ParseScalarError {
    pub input: String,
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

/// `n/d`; panics on a zero denominator.
pub fn frac(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

/// Parses `"p"` or `"p/q"`, surrounding whitespace allowed.
pub fn parse_scalar(s: &str) -> Result<Scalar, ParseScalarError> {
    let err = || ParseScalarError { input: s.to_string() };
    let t = s.trim();
    match t.split_once('/') {
        None => t.parse::<BigInt>().map(Scalar::from_integer).map_err(|_| err()),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Scalar::new(p, q))
        }
    }
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise, sign on the numerator.
pub fn fmt_scalar(x: &Scalar) -> String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "1", "-3", "2/3", "-7/4", "10/5"] {
            let x = parse_scalar(s).unwrap();
            assert_eq!(parse_scalar(&fmt_scalar(&x)).unwrap(), x);
        }
        assert_eq!(fmt_scalar(&parse_scalar("10/5").unwrap()), "2");
        assert_eq!(fmt_scalar(&parse_scalar("3/-6").unwrap()), "-1/2");
        assert_eq!(parse_scalar(" 1 / 2 ").unwrap(), frac(1, 2));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "x", "1/0", "1/2/3", "0.5"] {
            assert!(parse_scalar(s).is_err(), "{s}");
        }
    }
}
