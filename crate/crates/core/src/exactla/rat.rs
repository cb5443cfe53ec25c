use alloc::string::{String, ToString};
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `n / d`. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

pub fn to_integer(r: &Rat) -> Option<BigInt> {
    is_integer(r).then(|| r.numer().clone())
}

/// Parses `p`, `-p`, or `p/q`. Zero denominators are rejected.
pub fn parse_rat(s: &str) -> Result<Rat> {
    let t = s.trim();
    Rat::from_str(t).map_err(|_| Error::InvalidParameters(alloc::format!("cannot parse rational `{t}`")))
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn fmt_rat(r: &Rat) -> String {
    r.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rat("3").unwrap(), rat(3));
        assert_eq!(parse_rat(" -2/4 ").unwrap(), ratio(-1, 2));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn canonical_text() {
        assert_eq!(fmt_rat(&ratio(6, -4)), "-3/2");
        assert_eq!(fmt_rat(&rat(98)), "98");
    }
}
