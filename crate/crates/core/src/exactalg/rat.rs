//! Arbitrary-precision rationals.
//!
//! `Rat` is `num_rational::BigRational`, which already keeps the reduced
//! form `gcd(|p|, q) = 1`, `q > 0`. This module only adds the textual
//! `"p/q"` form used by reports and the CLI.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;

use super::ArithError;

pub type Rat = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

pub fn rat_int(p: i64) -> Rat {
    Rat::from_integer(BigInt::from(p))
}

/// Renders `p/q`, or just `p` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p`, `p/q` or `-p/q` (whitespace around the slash is tolerated).
pub fn parse_rat(s: &str) -> Result<Rat, ArithError> {
    let s = s.trim();
    let bad = || ArithError::Parse(s.to_string());
    match s.split_once('/') {
        None => BigInt::from_str(s).map(Rat::from_integer).map_err(|_| bad()),
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            Ok(Rat::new(p, q))
        }
    }
}

pub mod serde_rat {
    //! Serde adapter storing a `Rat` as its `"p/q"` string.
    use super::*;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        for (p, q) in [(0, 1), (3, 2), (-7, 4), (10, 5)] {
            let r = rat(p, q);
            assert_eq!(parse_rat(&rat_to_string(&r)).unwrap(), r);
        }
        assert_eq!(rat_to_string(&rat(10, 5)), "2");
        assert_eq!(rat_to_string(&rat(-3, 6)), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
