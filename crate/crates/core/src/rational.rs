//! Arbitrary-precision rationals in canonical (coprime, positive denominator) form.
//!
//! [`Rational`] is the substrate of every approximation and certificate in the
//! crate. Values serialize as `"p/q"` strings so that files never carry
//! rounded decimals.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserialize, Deserializer};
use serde::ser::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer in rational literal {0:?}")]
    InvalidInteger(String),
    #[error("zero denominator in rational literal {0:?}")]
    ZeroDenominator(String),
}

/// An exact rational number kept in lowest terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numer / denom` in canonical form.
    ///
    /// Panics when `denom` is zero.
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        let denom = denom.into();
        assert!(!denom.is_zero(), "rational with zero denominator");
        Rational(BigRational::new(numer.into(), denom))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// The dyadic `2^{-k}`.
    pub fn pow2_neg(k: u32) -> Self {
        Rational(BigRational::new(BigInt::one(), BigInt::one() << k))
    }

    /// The dyadic `2^{k}`.
    pub fn pow2(k: u32) -> Self {
        Rational::from_integer(BigInt::one() << k)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn floor(&self) -> BigInt {
        self.0.floor().to_integer()
    }

    pub fn ceil(&self) -> BigInt {
        self.0.ceil().to_integer()
    }

    pub fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    pub fn midpoint(a: &Self, b: &Self) -> Self {
        (a + b) / Rational::from_integer(2)
    }

    /// `true` when `0 ≤ self ≤ 1`.
    pub fn in_unit_interval(&self) -> bool {
        !self.is_negative() && self.0 <= BigRational::one()
    }

    pub fn mul_pow2(&self, k: u32) -> Self {
        Rational(BigRational::new(self.numer() << k, self.denom().clone()))
    }

    pub fn div_pow2(&self, k: u32) -> Self {
        Rational(BigRational::new(self.numer().clone(), self.denom() << k))
    }

    /// Least `m ≤ cap` with `self ≥ 2^{-m}`, if any.
    pub fn least_pow2_exponent_below(&self, cap: u32) -> Option<u32> {
        if !self.is_positive() {
            return None;
        }
        // self ≥ 2^{-m}  ⇔  numer·2^m ≥ denom
        let numer = self.numer();
        let denom = self.denom();
        if numer >= denom {
            return Some(0);
        }
        let guess = (denom.bits() - numer.bits()) as u32;
        let start = guess.saturating_sub(1);
        (start..=cap.max(start)).find(|&m| (numer << m) >= *denom).filter(|&m| m <= cap)
    }

    /// Largest power of two `2^{-e}` not exceeding `self`, returned as `e`.
    ///
    /// Panics unless `self > 0`.
    pub fn floor_pow2_exponent(&self) -> u32 {
        assert!(self.is_positive(), "floor_pow2_exponent of a non-positive rational");
        // smallest e with self·2^e ≥ 1
        let numer = self.numer();
        let denom = self.denom();
        if numer >= denom {
            return 0;
        }
        let guess = (denom.bits() - numer.bits()) as u32;
        let mut e = guess.saturating_sub(1);
        while (numer << e) < *denom {
            e += 1;
        }
        e
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Fixed-point decimal rendering with `digits` fractional digits, for human output only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (self.numer() * &scale).div_floor(self.denom());
        let negative = scaled.is_negative();
        let mag = scaled.abs().to_string();
        let padded = if mag.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - mag.len()), mag)
        } else {
            mag
        };
        let (int_part, frac_part) = padded.split_at(padded.len() - digits);
        let sign = if negative { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRationalError::Empty);
        }
        let parse = |part: &str| {
            BigInt::from_str(part.trim()).map_err(|_| ParseRationalError::InvalidInteger(s.to_string()))
        };
        match s.split_once('/') {
            Some((p, q)) => {
                let numer = parse(p)?;
                let denom = parse(q)?;
                if denom.is_zero() {
                    return Err(ParseRationalError::ZeroDenominator(s.to_string()));
                }
                Ok(Rational::new(numer, denom))
            }
            None => Ok(Rational::from_integer(parse(s)?)),
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Rational::from_str(&s).map_err(de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0.$method(rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0.$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl PartialEq<i64> for Rational {
    fn eq(&self, other: &i64) -> bool {
        self.0 == BigRational::from_integer(BigInt::from(*other))
    }
}

impl PartialOrd<i64> for Rational {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.0.partial_cmp(&BigRational::from_integer(BigInt::from(*other)))
    }
}

/// Shorthand for `Rational::new(p, q)` with machine integers.
pub fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}
