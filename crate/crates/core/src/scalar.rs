//! Exact scalars over ℤ, ℚ and prime fields.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// The ground ring a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring, ParseError> {
        if p < 2 || !is_prime(p) || p > u32::MAX as u64 {
            return Err(ParseError::InvalidRing(format!("f{p}")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integers)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Ring::PrimeField(p) => p,
            _ => 0,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(BigInt::from(v)),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            Ring::PrimeField(p) => Scalar::Mod {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(self, v: &BigInt) -> Scalar {
        match self {
            Ring::Integers => Scalar::Int(v.clone()),
            Ring::Rationals => Scalar::Rat(BigRational::from_integer(v.clone())),
            Ring::PrimeField(p) => {
                let r = v.mod_floor(&BigInt::from(p));
                Scalar::Mod {
                    value: r.to_u64().expect("reduced residue fits"),
                    modulus: p,
                }
            }
        }
    }

    /// Sign `(-1)^e`.
    pub fn sign(self, exponent: usize) -> Scalar {
        if exponent % 2 == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    /// Maps an integer scalar into this ring (reduction mod p, inclusion into ℚ).
    pub fn convert(self, s: &Scalar) -> Option<Scalar> {
        match s {
            Scalar::Int(v) => Some(self.from_bigint(v)),
            Scalar::Mod { value, modulus } if self == Ring::PrimeField(*modulus) => {
                Some(Scalar::Mod {
                    value: *value,
                    modulus: *modulus,
                })
            }
            Scalar::Rat(r) if self == Ring::Rationals => Some(Scalar::Rat(r.clone())),
            _ => None,
        }
    }

    pub fn tag(self) -> String {
        match self {
            Ring::Integers => "z".to_string(),
            Ring::Rationals => "q".to_string(),
            Ring::PrimeField(p) => format!("f{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "z" | "zz" | "integers" => Ok(Ring::Integers),
            "q" | "qq" | "rationals" => Ok(Ring::Rationals),
            other => {
                let digits = other
                    .strip_prefix('f')
                    .or_else(|| other.strip_prefix("gf"))
                    .ok_or_else(|| ParseError::InvalidRing(s.to_string()))?;
                let p: u64 = digits
                    .parse()
                    .map_err(|_| ParseError::InvalidRing(s.to_string()))?;
                Ring::prime_field(p)
            }
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.tag())
    }
}

impl Serialize for Ring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.tag())
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact ring element. Prime-field values are reduced into `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Int(BigInt),
    Rat(BigRational),
    Mod { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn ring(&self) -> Ring {
        match self {
            Scalar::Int(_) => Ring::Integers,
            Scalar::Rat(_) => Ring::Rationals,
            Scalar::Mod { modulus, .. } => Ring::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_zero(),
            Scalar::Rat(v) => v.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Int(v) => v.is_one(),
            Scalar::Rat(v) => v.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    /// True when the element is invertible in its ring.
    pub fn is_unit(&self) -> bool {
        match self {
            Scalar::Int(v) => v.abs().is_one(),
            _ => !self.is_zero(),
        }
    }

    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Int(v) => {
                if v.abs().is_one() {
                    Some(Scalar::Int(v.clone()))
                } else {
                    None
                }
            }
            Scalar::Rat(v) => {
                if v.is_zero() {
                    None
                } else {
                    Some(Scalar::Rat(v.recip()))
                }
            }
            Scalar::Mod { value, modulus } => {
                if *value == 0 {
                    None
                } else {
                    Some(Scalar::Mod {
                        value: mod_pow(*value, modulus - 2, *modulus),
                        modulus: *modulus,
                    })
                }
            }
        }
    }

    /// Exact quotient; `None` when `rhs` does not divide `self`.
    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => {
                if b.is_zero() {
                    return None;
                }
                let (q, r) = a.div_rem(b);
                r.is_zero().then_some(Scalar::Int(q))
            }
            _ => rhs.inverse().map(|inv| self * &inv),
        }
    }

    /// The integer value, when this is an element of ℤ.
    pub fn as_bigint(&self) -> Option<&BigInt> {
        match self {
            Scalar::Int(v) => Some(v),
            _ => None,
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Int(v) => v.to_i64(),
            Scalar::Rat(v) if v.is_integer() => v.to_integer().to_i64(),
            Scalar::Rat(_) => None,
            Scalar::Mod { value, .. } => Some(*value as i64),
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.ring(),
            other.ring(),
            "scalar arithmetic across different rings"
        );
    }
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % m as u128) as u64;
        }
        base = ((base as u128 * base as u128) % m as u128) as u64;
        exp >>= 1;
    }
    acc
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a + b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.check_same(rhs);
        match (self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => Scalar::Int(a * b),
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Mod { value: a, modulus }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Int(a) => Scalar::Int(-a),
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { value, modulus } => Scalar::Mod {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Int(a), Scalar::Int(b)) => *a += b,
            (Scalar::Rat(a), Scalar::Rat(b)) => *a += b,
            (Scalar::Mod { value, modulus }, Scalar::Mod { value: b, modulus: m2 }) => {
                assert_eq!(modulus, m2, "scalar arithmetic across different rings");
                *value = (*value + b) % *modulus;
            }
            _ => panic!("scalar arithmetic across different rings"),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self += &(-rhs);
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Int(v) => write!(f, "{v}"),
            Scalar::Rat(v) => {
                if v.is_integer() {
                    write!(f, "{}", v.numer())
                } else {
                    write!(f, "{}/{}", v.numer(), v.denom())
                }
            }
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Scalars serialize as JSON integers when they fit, otherwise as strings.
impl Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let integral = match self {
            Scalar::Rat(v) => v.is_integer(),
            _ => true,
        };
        match self.to_i64() {
            Some(v) if integral => serializer.serialize_i64(v),
            _ => serializer.serialize_str(&self.to_string()),
        }
    }
}

/// Parses `"3"`, `"-7"` or `"3/4"` into the given ring.
pub fn parse_scalar(ring: Ring, text: &str) -> Result<Scalar, ParseError> {
    let bad = || ParseError::InvalidScalar(text.to_string());
    if let Some((n, d)) = text.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        let n = ring.from_bigint(&n);
        let d = ring.from_bigint(&d);
        n.checked_div(&d).ok_or_else(bad)
    } else {
        let v: BigInt = text.trim().parse().map_err(|_| bad())?;
        Ok(ring.from_bigint(&v))
    }
}

/// Reads a scalar from a JSON number or string.
pub fn scalar_from_json(ring: Ring, value: &serde_json::Value) -> Result<Scalar, ParseError> {
    match value {
        serde_json::Value::Number(n) => match n.as_i64() {
            Some(v) => Ok(ring.from_i64(v)),
            None => Err(ParseError::InvalidScalar(n.to_string())),
        },
        serde_json::Value::String(s) => parse_scalar(ring, s),
        other => Err(ParseError::InvalidScalar(other.to_string())),
    }
}
