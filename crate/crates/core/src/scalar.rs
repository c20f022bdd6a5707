//! Exact rational scalars.
//!
//! Everything in this crate is computed over `Q`, a thin wrapper around
//! [`num_rational::BigRational`]. The wrapper exists so that rationals can be
//! serialized as `"p/q"` strings (never floats) and used as map keys.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

/// Arbitrary-precision rational number.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Q(pub BigRational);

impl Q {
    pub fn zero() -> Self {
        Q(BigRational::zero())
    }

    pub fn one() -> Self {
        Q(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Q(BigRational::from_integer(BigInt::from(n)))
    }

    /// `n/d`, panics on `d == 0`.
    pub fn frac(n: i64, d: i64) -> Self {
        assert!(d != 0, "zero denominator");
        Q(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    /// The integer value, if this rational is an integer that fits in `i64`.
    pub fn as_int(&self) -> Option<i64> {
        if !self.0.is_integer() {
            return None;
        }
        let n = self.0.to_integer();
        i64::try_from(&n).ok()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Q(self.0.recip())
    }

    /// (-1)^self when self is an integer; None for non-integer exponents.
    pub fn pow_sign(&self) -> Option<i8> {
        if !self.0.is_integer() {
            return None;
        }
        let n = self.0.to_integer();
        Some(if (n % 2u8).is_zero() { 1 } else { -1 })
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Q {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|e| format!("bad numerator {s:?}: {e}"))?;
        let d: BigInt = d.parse().map_err(|e| format!("bad denominator {s:?}: {e}"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(Q(BigRational::new(n, d)))
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Self {
        Q::from_int(n)
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Q {
            type Output = Q;
            fn $method(self, rhs: Q) -> Q {
                Q((self.0).$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a Q> for &'a Q {
            type Output = Q;
            fn $method(self, rhs: &'a Q) -> Q {
                Q((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $trait<&'a Q> for Q {
            type Output = Q;
            fn $method(self, rhs: &'a Q) -> Q {
                Q((self.0).$method(&rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);

impl Div for Q {
    type Output = Q;
    fn div(self, rhs: Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        Q(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a Q> for &'a Q {
    type Output = Q;
    fn div(self, rhs: &'a Q) -> Q {
        assert!(!rhs.is_zero(), "division by zero");
        Q(&self.0 / &rhs.0)
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-self.0)
    }
}

impl<'a> Neg for &'a Q {
    type Output = Q;
    fn neg(self) -> Q {
        Q(-&self.0)
    }
}

impl AddAssign for Q {
    fn add_assign(&mut self, rhs: Q) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Q {
    fn sub_assign(&mut self, rhs: Q) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Q {
    fn mul_assign(&mut self, rhs: Q) {
        self.0 *= rhs.0;
    }
}

impl Sum for Q {
    fn sum<I: Iterator<Item = Q>>(iter: I) -> Q {
        iter.fold(Q::zero(), |a, b| a + b)
    }
}

/// Shorthand for integer rationals in tests and tables.
pub fn q(n: i64) -> Q {
    Q::from_int(n)
}

/// Shorthand for `n/d`.
pub fn qq(n: i64, d: i64) -> Q {
    Q::frac(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_roundtrip() {
        for s in ["0", "7", "-3", "2/3", "-11/4"] {
            let x: Q = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        // non-reduced input normalizes
        let x: Q = "4/6".parse().unwrap();
        assert_eq!(x, qq(2, 3));
    }

    #[test]
    fn pow_sign_integer_only() {
        assert_eq!(q(4).pow_sign(), Some(1));
        assert_eq!(q(-3).pow_sign(), Some(-1));
        assert_eq!(qq(1, 3).pow_sign(), None);
    }

    #[test]
    fn serde_as_string() {
        let x = qq(-5, 9);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, "\"-5/9\"");
        let y: Q = serde_json::from_str(&s).unwrap();
        assert_eq!(x, y);
    }
}
