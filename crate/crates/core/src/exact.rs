//! Exact rational helpers shared by the matrix and constant computations.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::str::FromStr;

pub type Rational = BigRational;

/// Error returned when a string is not of the form `p`, `-p`, or `p/q`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("not an exact rational: {0:?}")]
pub struct ParseRationalError(pub String);

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let err = || ParseRationalError(s.to_string());
    let t = s.trim();
    match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
            if q.is_zero() {
                return Err(err());
            }
            Ok(Rational::new(p, q))
        }
        None => BigInt::from_str(t).map(Rational::from_integer).map_err(|_| err()),
    }
}

/// Canonical `p/q` text; integers print without a denominator.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn to_f64(r: &Rational) -> f64 {
    // Ratio<BigInt>::to_f64 handles huge numerators and denominators without overflow.
    num_traits::ToPrimitive::to_f64(r).unwrap_or(f64::NAN)
}

/// Rational approximation of a finite float, exact for dyadic values.
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn max_abs_row_sum(rows: &[Vec<Rational>]) -> Rational {
    rows.iter()
        .map(|row| row.iter().fold(Rational::zero(), |acc, x| acc + x.abs()))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// Serde adapter storing a rational as its `p/q` string.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(pub Rational);

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Text(String),
            Int(i64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Text(s) => parse_rational(&s)
                .map(ExactRational)
                .map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(ExactRational(int(n))),
        }
    }
}

impl From<Rational> for ExactRational {
    fn from(r: Rational) -> Self {
        ExactRational(r)
    }
}
