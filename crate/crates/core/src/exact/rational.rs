use num::bigint::BigInt;
use num::BigRational;
use std::str::FromStr;

/// Exact rational scalar, always kept in lowest terms with a positive
/// denominator.
///
/// Text form is `"p/q"`, or `"p"` when `q = 1`; the sign lives on the
/// numerator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct RationalParseError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d`, reduced. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"`, `"p/q"` or `"-p/q"`. Whitespace around the literal is ignored.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let s = s.trim();
    let err = || RationalParseError(s.to_string());
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rational::from_integer).map_err(|_| err()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q == BigInt::from(0) {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
    }
}
