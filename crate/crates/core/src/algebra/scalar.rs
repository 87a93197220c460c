use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficient field of a polynomial ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CoeffField {
    Rational,
    Prime(u64),
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl CoeffField {
    /// Prime fields up to `2^31` keep products inside `u64`.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) && p < (1 << 31) {
            Ok(CoeffField::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(self, v: i64) -> Scalar {
        match self {
            CoeffField::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            CoeffField::Prime(p) => Scalar::fp(v.rem_euclid(p as i64) as u64, p),
        }
    }

    /// Image of a rational; fails when `p` divides the denominator.
    pub fn from_rational(self, r: &BigRational) -> Result<Scalar> {
        match self {
            CoeffField::Rational => Ok(Scalar::Rational(r.clone())),
            CoeffField::Prime(p) => {
                let pb = BigInt::from(p);
                let num = r.numer().mod_floor(&pb).to_u64().unwrap();
                let den = r.denom().mod_floor(&pb).to_u64().unwrap();
                if den == 0 {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::fp(num, p).mul(&Scalar::fp(den, p).inv()?))
            }
        }
    }

    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let r = parse_rational(s)?;
        self.from_rational(&r)
    }
}

impl fmt::Display for CoeffField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoeffField::Rational => write!(f, "Q"),
            CoeffField::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for CoeffField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(CoeffField::Rational);
        }
        let p = s
            .strip_prefix("Fp:")
            .and_then(|p| p.trim().parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown coefficient field {s:?}")))?;
        CoeffField::prime(p)
    }
}

impl Serialize for CoeffField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CoeffField {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad number {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// An exact coefficient: a reduced rational or a residue modulo a prime.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Fp { value: u64, modulus: u64 },
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl Scalar {
    fn fp(value: u64, modulus: u64) -> Scalar {
        Scalar::Fp { value, modulus }
    }

    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn field(&self) -> CoeffField {
        match self {
            Scalar::Rational(_) => CoeffField::Rational,
            Scalar::Fp { modulus, .. } => CoeffField::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Fp { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Fp { value, .. } => *value == 1,
        }
    }

    /// `true` for a negative rational; residues are never negative.
    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    fn mismatch(a: &Scalar, b: &Scalar) -> ! {
        panic!("coefficient fields differ: {} vs {}", a.field(), b.field())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) if p == q => {
                Scalar::fp((a + b) % p, *p)
            }
            _ => Self::mismatch(self, other),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Fp { value: a, modulus: p }, Scalar::Fp { value: b, modulus: q }) if p == q => {
                Scalar::fp(a * b % p, *p)
            }
            _ => Self::mismatch(self, other),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Fp { value, modulus } => Scalar::fp((modulus - value) % modulus, *modulus),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Fp { value, modulus } => Scalar::fp(mod_pow(*value, modulus - 2, *modulus), *modulus),
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut r = self.field().one();
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Fp { .. } => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Fp { value, .. } => Some(*value),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Scalar::Fp { value, .. } => write!(f, "{value}"),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(_) => write!(f, "{self}"),
            Scalar::Fp { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_reduced() {
        let a = Scalar::rational(2, 4);
        assert_eq!(a.to_string(), "1/2");
        assert_eq!(a.add(&Scalar::rational(1, 2)), CoeffField::Rational.one());
        assert_eq!(Scalar::rational(3, -6).to_string(), "-1/2");
        assert!(CoeffField::Rational.zero().inv().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = CoeffField::prime(7).unwrap();
        let three = f.from_int(3);
        assert_eq!(three.mul(&three.inv().unwrap()), f.one());
        assert_eq!(f.from_int(-1).as_residue(), Some(6));
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.from_int(4));
        assert!(f.parse_scalar("1/7").is_err());
        assert!(CoeffField::prime(9).is_err());
    }

    #[test]
    fn field_names_round_trip() {
        for f in [CoeffField::Rational, CoeffField::Prime(13)] {
            assert_eq!(f.to_string().parse::<CoeffField>().unwrap(), f);
        }
        assert!("Fp:x".parse::<CoeffField>().is_err());
    }
}
