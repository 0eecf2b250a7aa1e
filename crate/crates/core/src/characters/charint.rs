//! Arbitrary-precision signed integers with an inline `i64` fast path.
//!
//! Character values and Kronecker sums outgrow `i64` (dimensions of S_36
//! irreducibles already do), but the overwhelming majority of intermediate
//! values are small. `CharInt` keeps small values unboxed and promotes to a
//! heap `BigInt` only when checked arithmetic overflows. The representation
//! is canonical: a value fitting `i64` is always stored as `Small`, so
//! derived equality and hashing agree across arithmetic paths.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Visitor;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(Box<BigInt>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharInt(Repr);

impl CharInt {
    pub const ZERO: CharInt = CharInt(Repr::Small(0));
    pub const ONE: CharInt = CharInt(Repr::Small(1));

    fn from_big(value: BigInt) -> Self {
        match value.to_i64() {
            Some(v) => CharInt(Repr::Small(v)),
            None => CharInt(Repr::Big(Box::new(value))),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(v) => Some(*v),
            Repr::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_positive(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v > 0,
            Repr::Big(b) => b.is_positive(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(v) => v.signum() as i32,
            Repr::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> CharInt {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn checked_neg_inline(&self) -> CharInt {
        -self
    }

    /// Exact division; `None` when `rhs` is zero or does not divide `self`.
    pub fn div_exact(&self, rhs: &CharInt) -> Option<CharInt> {
        if rhs.is_zero() {
            return None;
        }
        match (&self.0, &rhs.0) {
            (Repr::Small(a), Repr::Small(b)) => {
                if a % b == 0 {
                    Some(CharInt::from(a / b))
                } else {
                    None
                }
            }
            _ => {
                let a = self.to_bigint();
                let b = rhs.to_bigint();
                let (q, r) = num_integer::Integer::div_rem(&a, &b);
                if r.is_zero() {
                    Some(CharInt::from_big(q))
                } else {
                    None
                }
            }
        }
    }

    pub fn factorial(n: u64) -> CharInt {
        let mut acc = CharInt::ONE;
        for k in 2..=n {
            acc = &acc * &CharInt::from(k as i64);
        }
        acc
    }

    pub fn pow(&self, exp: u32) -> CharInt {
        let mut acc = CharInt::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl Default for CharInt {
    fn default() -> Self {
        CharInt::ZERO
    }
}

impl From<i64> for CharInt {
    fn from(v: i64) -> Self {
        CharInt(Repr::Small(v))
    }
}

impl From<i32> for CharInt {
    fn from(v: i32) -> Self {
        CharInt(Repr::Small(v as i64))
    }
}

impl From<u32> for CharInt {
    fn from(v: u32) -> Self {
        CharInt(Repr::Small(v as i64))
    }
}

impl From<BigInt> for CharInt {
    fn from(v: BigInt) -> Self {
        CharInt::from_big(v)
    }
}

impl PartialOrd for CharInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CharInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            // A canonical Big value lies outside the i64 range, so its sign
            // settles the comparison with any Small.
            (Repr::Big(a), Repr::Small(_)) => {
                if a.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            }
            (Repr::Small(_), Repr::Big(b)) => {
                if b.is_negative() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (Repr::Big(a), Repr::Big(b)) => a.cmp(b),
        }
    }
}

impl std::ops::Add for &CharInt {
    type Output = CharInt;
    fn add(self, rhs: &CharInt) -> CharInt {
        match (&self.0, &rhs.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_add(*b) {
                Some(v) => CharInt(Repr::Small(v)),
                None => CharInt::from_big(BigInt::from(*a) + BigInt::from(*b)),
            },
            _ => CharInt::from_big(self.to_bigint() + rhs.to_bigint()),
        }
    }
}

impl std::ops::Sub for &CharInt {
    type Output = CharInt;
    fn sub(self, rhs: &CharInt) -> CharInt {
        match (&self.0, &rhs.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_sub(*b) {
                Some(v) => CharInt(Repr::Small(v)),
                None => CharInt::from_big(BigInt::from(*a) - BigInt::from(*b)),
            },
            _ => CharInt::from_big(self.to_bigint() - rhs.to_bigint()),
        }
    }
}

impl std::ops::Mul for &CharInt {
    type Output = CharInt;
    fn mul(self, rhs: &CharInt) -> CharInt {
        match (&self.0, &rhs.0) {
            (Repr::Small(a), Repr::Small(b)) => match a.checked_mul(*b) {
                Some(v) => CharInt(Repr::Small(v)),
                None => CharInt::from_big(BigInt::from(*a) * BigInt::from(*b)),
            },
            _ => CharInt::from_big(self.to_bigint() * rhs.to_bigint()),
        }
    }
}

impl std::ops::Neg for &CharInt {
    type Output = CharInt;
    fn neg(self) -> CharInt {
        match &self.0 {
            Repr::Small(a) => match a.checked_neg() {
                Some(v) => CharInt(Repr::Small(v)),
                None => CharInt::from_big(-BigInt::from(*a)),
            },
            Repr::Big(b) => CharInt::from_big(-(**b).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl std::ops::$trait for CharInt {
            type Output = CharInt;
            fn $method(self, rhs: CharInt) -> CharInt {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&CharInt> for CharInt {
            type Output = CharInt;
            fn $method(self, rhs: &CharInt) -> CharInt {
                std::ops::$trait::$method(&self, rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl std::ops::Neg for CharInt {
    type Output = CharInt;
    fn neg(self) -> CharInt {
        -&self
    }
}

impl std::ops::AddAssign<&CharInt> for CharInt {
    fn add_assign(&mut self, rhs: &CharInt) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for CharInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid integer literal: {0:?}")]
pub struct ParseCharIntError(String);

impl FromStr for CharInt {
    type Err = ParseCharIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Ok(v) = s.parse::<i64>() {
            return Ok(CharInt::from(v));
        }
        s.parse::<BigInt>()
            .map(CharInt::from_big)
            .map_err(|_| ParseCharIntError(s.to_string()))
    }
}

impl Serialize for CharInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

struct CharIntVisitor;

impl Visitor<'_> for CharIntVisitor {
    type Value = CharInt;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an integer or a decimal string")
    }

    fn visit_str<E: serde::de::Error>(self, v: &str) -> Result<CharInt, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: serde::de::Error>(self, v: i64) -> Result<CharInt, E> {
        Ok(CharInt::from(v))
    }

    fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<CharInt, E> {
        Ok(CharInt::from_big(BigInt::from(v)))
    }
}

impl<'de> Deserialize<'de> for CharInt {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(CharIntVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic_stays_small() {
        let a = CharInt::from(40);
        let b = CharInt::from(2);
        assert_eq!((&a * &b).to_i64(), Some(80));
        assert_eq!((&a + &b).to_i64(), Some(42));
        assert_eq!((&a - &b).to_i64(), Some(38));
    }

    #[test]
    fn overflow_promotes_and_demotes_canonically() {
        let max = CharInt::from(i64::MAX);
        let one = CharInt::ONE;
        let big = &max + &one;
        assert_eq!(big.to_i64(), None);
        let back = &big - &one;
        assert_eq!(back.to_i64(), Some(i64::MAX));
        // equality must not depend on the arithmetic route
        assert_eq!(back, max);
    }

    #[test]
    fn exact_division() {
        let f10 = CharInt::factorial(10);
        assert_eq!(f10.to_i64(), Some(3_628_800));
        assert_eq!(
            f10.div_exact(&CharInt::from(10)).unwrap(),
            CharInt::factorial(9)
        );
        assert_eq!(f10.div_exact(&CharInt::from(7 * 11)), None);
        let f40 = CharInt::factorial(40);
        assert!(f40.to_i64().is_none());
        assert_eq!(f40.div_exact(&CharInt::factorial(39)).unwrap().to_i64(), Some(40));
    }

    #[test]
    fn ordering_across_reprs() {
        let big_pos = &CharInt::from(i64::MAX) * &CharInt::from(3);
        let big_neg = -&big_pos;
        assert!(big_pos > CharInt::from(i64::MAX));
        assert!(big_neg < CharInt::from(i64::MIN));
        assert!(CharInt::ZERO < big_pos);
    }

    #[test]
    fn display_and_parse_round_trip() {
        for v in [CharInt::from(-17), CharInt::factorial(30), -&CharInt::factorial(25)] {
            let s = v.to_string();
            assert_eq!(s.parse::<CharInt>().unwrap(), v);
        }
    }
}
