//! Exact rational helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

pub type Rational = BigRational;

pub fn int(v: impl Into<BigInt>) -> Rational {
    Rational::from_integer(v.into())
}

pub fn frac(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

/// Exact conversion of a finite float (every finite `f64` is a dyadic rational).
pub fn from_f64(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// `p/q` in lowest terms, or just `p` for integers.
pub fn display(r: &Rational) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_nonnegative(r: &Rational) -> bool {
    !(r < &Rational::zero())
}

/// Serializes a rational as `{"exact": "p/q", "approx": f64}`.
pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    Exact::from(r).serialize(s)
}

pub fn serialize_opt<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
    r.as_ref().map(Exact::from).serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Exact {
    pub exact: String,
    pub approx: f64,
}

impl From<&Rational> for Exact {
    fn from(r: &Rational) -> Self {
        Exact { exact: display(r), approx: to_f64(r) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_reduces() {
        assert_eq!(display(&frac(6, 4)), "3/2");
        assert_eq!(display(&frac(10, 5)), "2");
        assert_eq!(display(&frac(-1, 3)), "-1/3");
    }

    #[test]
    fn float_conversion_is_exact() {
        assert_eq!(from_f64(0.25).unwrap(), frac(1, 4));
        assert!(from_f64(f64::NAN).is_none());
    }
}
