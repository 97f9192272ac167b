//! Arbitrary-precision rationals and the extended distance value.
//!
//! `Rat` is a thin wrapper around `BigRational` that fixes the canonical form
//! (reduced fraction, positive denominator), the `p/q` string format used by
//! every serialized artifact, and string-based serde. `Dist` adjoins `inf`,
//! ordered above every rational, so directed distances stay totally ordered.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rat(BigRational);

impl Rat {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rat(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn int(n: i64) -> Self {
        Rat(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Self {
        assert!(!denom.is_zero(), "zero denominator");
        Rat(BigRational::new(numer, denom))
    }

    pub fn zero() -> Self {
        Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Rat(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn abs(&self) -> Self {
        Rat(self.0.abs())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        Rat(self.0.recip())
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// Exact floor as a big integer.
    pub fn floor_int(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn half(&self) -> Self {
        Rat(&self.0 / BigRational::from_integer(BigInt::from(2)))
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[derive(Debug, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRatError(pub String);

impl FromStr for Rat {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseRatError(s.to_string());
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let numer = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let denom = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if denom.is_zero() {
            return Err(bad());
        }
        Ok(Rat(BigRational::new(numer, denom)))
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rat {
    fn from(n: i64) -> Self {
        Rat::int(n)
    }
}

macro_rules! forward_binop {
    ($Op:ident $op:ident, $OpAssign:ident $op_assign:ident) => {
        impl $Op for Rat {
            type Output = Rat;
            fn $op(self, rhs: Rat) -> Rat {
                Rat((self.0).$op(rhs.0))
            }
        }

        impl $Op<&Rat> for Rat {
            type Output = Rat;
            fn $op(self, rhs: &Rat) -> Rat {
                Rat((self.0).$op(&rhs.0))
            }
        }

        impl $Op<Rat> for &Rat {
            type Output = Rat;
            fn $op(self, rhs: Rat) -> Rat {
                Rat((&self.0).$op(rhs.0))
            }
        }

        impl $Op<&Rat> for &Rat {
            type Output = Rat;
            fn $op(self, rhs: &Rat) -> Rat {
                Rat((&self.0).$op(&rhs.0))
            }
        }

        impl $OpAssign<Rat> for Rat {
            fn $op_assign(&mut self, rhs: Rat) {
                let lhs = std::mem::take(&mut self.0);
                self.0 = lhs.$op(rhs.0);
            }
        }

        impl $OpAssign<&Rat> for Rat {
            fn $op_assign(&mut self, rhs: &Rat) {
                let lhs = std::mem::take(&mut self.0);
                self.0 = lhs.$op(&rhs.0);
            }
        }
    };
}

forward_binop!(Add add, AddAssign add_assign);
forward_binop!(Sub sub, SubAssign sub_assign);
forward_binop!(Mul mul, MulAssign mul_assign);

impl Div for Rat {
    type Output = Rat;
    fn div(self, rhs: Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(self.0 / rhs.0)
    }
}

impl Div<&Rat> for &Rat {
    type Output = Rat;
    fn div(self, rhs: &Rat) -> Rat {
        assert!(!rhs.is_zero(), "division by zero");
        Rat(&self.0 / &rhs.0)
    }
}

impl DivAssign<&Rat> for Rat {
    fn div_assign(&mut self, rhs: &Rat) {
        assert!(!rhs.is_zero(), "division by zero");
        let lhs = std::mem::take(&mut self.0);
        self.0 = lhs / &rhs.0;
    }
}

impl Neg for Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-self.0)
    }
}

impl Neg for &Rat {
    type Output = Rat;
    fn neg(self) -> Rat {
        Rat(-&self.0)
    }
}

impl Mul<i64> for &Rat {
    type Output = Rat;
    fn mul(self, rhs: i64) -> Rat {
        Rat(&self.0 * BigRational::from_integer(BigInt::from(rhs)))
    }
}

/// A distance value that may be infinite. `Inf` compares above every
/// rational, so minima over ray-facet hits stay total.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Dist {
    Fin(Rat),
    Inf(InfMarker),
}

/// Serialization marker so `Dist::Inf` reads and writes as the string "inf".
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct InfMarker;

impl Serialize for InfMarker {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str("inf")
    }
}

impl<'de> Deserialize<'de> for InfMarker {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        if s == "inf" {
            Ok(InfMarker)
        } else {
            Err(serde::de::Error::custom("expected \"inf\""))
        }
    }
}

impl Dist {
    pub const INF: Dist = Dist::Inf(InfMarker);

    pub fn fin(r: Rat) -> Self {
        Dist::Fin(r)
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Dist::Fin(_))
    }

    pub fn as_finite(&self) -> Option<&Rat> {
        match self {
            Dist::Fin(r) => Some(r),
            Dist::Inf(_) => None,
        }
    }

    pub fn half(&self) -> Dist {
        match self {
            Dist::Fin(r) => Dist::Fin(r.half()),
            Dist::Inf(_) => Dist::INF,
        }
    }

    pub fn add_rat(&self, r: &Rat) -> Dist {
        match self {
            Dist::Fin(v) => Dist::Fin(v + r),
            Dist::Inf(_) => Dist::INF,
        }
    }

    /// Strict comparison `lhs < self` where `lhs` is finite.
    pub fn exceeds(&self, lhs: &Rat) -> bool {
        match self {
            Dist::Fin(v) => lhs < v,
            Dist::Inf(_) => true,
        }
    }
}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Dist::Fin(a), Dist::Fin(b)) => a.cmp(b),
            (Dist::Fin(_), Dist::Inf(_)) => Ordering::Less,
            (Dist::Inf(_), Dist::Fin(_)) => Ordering::Greater,
            (Dist::Inf(_), Dist::Inf(_)) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Dist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dist::Fin(r) => write!(f, "{}", r),
            Dist::Inf(_) => write!(f, "inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_and_parse() {
        let r = Rat::new(-6, -9);
        assert_eq!(r, Rat::new(2, 3));
        assert_eq!(r.to_string(), "2/3");
        assert_eq!("7".parse::<Rat>().unwrap(), Rat::int(7));
        assert_eq!("-4/6".parse::<Rat>().unwrap(), Rat::new(-2, 3));
        assert!("1/0".parse::<Rat>().is_err());
    }

    #[test]
    fn dist_order_puts_inf_on_top() {
        let d = Dist::fin(Rat::new(100000, 1));
        assert!(d < Dist::INF);
        assert!(Dist::INF.exceeds(&Rat::int(1 << 40)));
        assert!(!Dist::fin(Rat::int(2)).exceeds(&Rat::int(2)));
    }

    #[test]
    fn serde_strings() {
        let r: Rat = serde_json::from_str("\"-5/8\"").unwrap();
        assert_eq!(r, Rat::new(-5, 8));
        assert_eq!(serde_json::to_string(&r).unwrap(), "\"-5/8\"");
        let d: Dist = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(d, Dist::INF);
        let d: Dist = serde_json::from_str("\"3/2\"").unwrap();
        assert_eq!(d, Dist::fin(Rat::new(3, 2)));
    }
}
