//! Exact rationals with a p-adic valuation.
//!
//! The valuation ring is the localisation of the integers at a prime `p`,
//! with uniformiser `p`. A [`Scalar`] is any rational number; it lies in the
//! valuation ring exactly when its valuation is non-negative.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A rational prime, checked by trial division.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d * d <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn as_bigint(self) -> BigInt {
        BigInt::from(self.0)
    }

    /// `p^e` as a scalar; negative exponents give `p^{-|e|}`.
    pub fn power(self, e: i64) -> Scalar {
        let base = BigInt::from(self.0).pow(e.unsigned_abs() as u32);
        if e >= 0 {
            Scalar::from(base)
        } else {
            Scalar(BigRational::new(BigInt::one(), base))
        }
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Valuation of a scalar: a finite integer, or infinity for zero.
///
/// The derived order puts every finite value below `Infinity`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinity)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinity => write!(f, "inf"),
        }
    }
}

/// An exact rational number in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Self {
        Scalar(BigRational::new(numer.into(), denom.into()))
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
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

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        Scalar(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Scalar(self.0.recip()))
        }
    }

    pub fn pow(&self, e: i32) -> Self {
        Scalar(num_traits::Pow::pow(&self.0, e))
    }

    pub fn to_i64(&self) -> Option<i64> {
        if self.is_integer() {
            self.0.numer().to_i64()
        } else {
            None
        }
    }

    /// `ν_p(numerator) − ν_p(denominator)`, infinite for zero.
    pub fn val(&self, p: Prime) -> Valuation {
        if self.is_zero() {
            return Valuation::Infinity;
        }
        Valuation::Finite(int_val(self.numer(), p) as i64 - int_val(self.denom(), p) as i64)
    }

    /// Membership in the valuation ring.
    pub fn is_integral(&self, p: Prime) -> bool {
        int_val(self.denom(), p) == 0
    }

    /// Integral with valuation zero.
    pub fn is_unit(&self, p: Prime) -> bool {
        self.val(p) == Valuation::Finite(0)
    }

    /// Splits a nonzero scalar as `p^e · u` with `u` a unit; returns `(e, u)`.
    pub fn split_unit(&self, p: Prime) -> Option<(i64, Scalar)> {
        let e = self.val(p).finite()?;
        Some((e, self * &p.power(-e)))
    }

    /// Image in the residue field `F_p`. `None` when not integral.
    pub fn residue(&self, p: Prime) -> Option<u64> {
        if !self.is_integral(p) {
            return None;
        }
        let pb = p.as_bigint();
        let num = self.numer().mod_floor(&pb);
        let den = self.denom().mod_floor(&pb);
        let inv = mod_inverse(&den, &pb)?;
        ((num * inv).mod_floor(&pb)).to_u64()
    }
}

/// Exponent of `p` in a nonzero integer.
pub(crate) fn int_val(n: &BigInt, p: Prime) -> u64 {
    if n.is_zero() {
        return u64::MAX;
    }
    let pb = p.as_bigint();
    let mut n = n.abs();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

pub(crate) fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar(BigRational::from_integer(n))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("invalid scalar {s:?}"));
        match s.split_once('/') {
            None => Ok(Scalar::from(s.parse::<BigInt>().map_err(|_| bad())?)),
            Some((a, b)) => {
                let a: BigInt = a.trim().parse().map_err(|_| bad())?;
                let b: BigInt = b.trim().parse().map_err(|_| bad())?;
                if b.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::new(a, b))
            }
        }
    }
}

impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(serde::Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(deserializer)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(Scalar::from(n)),
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar((&self.0).$method(&rhs.0))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0.$method(rhs.0))
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0.$method(&rhs.0))
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar((&self.0).$method(rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 *= &rhs.0;
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Scalar> for Scalar {
    fn sum<I: Iterator<Item = &'a Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

/// A class in `K/O`, represented by the unique rational `r` with
/// `0 <= r < 1`, a `p`-power denominator, and `x − r` integral.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ResidueClass(Scalar);

impl ResidueClass {
    pub fn zero() -> Self {
        ResidueClass(Scalar::zero())
    }

    pub fn representative(&self) -> &Scalar {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn add(&self, other: &ResidueClass, p: Prime) -> ResidueClass {
        residue_mod_ring(&(&self.0 + &other.0), p)
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// Reduces `x` into `K/O`.
pub fn residue_mod_ring(x: &Scalar, p: Prime) -> ResidueClass {
    let k = int_val(x.denom(), p);
    if k == 0 {
        return ResidueClass::zero();
    }
    let pb = p.as_bigint();
    let pk = pb.pow(k as u32);
    let cofactor = x.denom() / &pk;
    let inv = mod_inverse(&cofactor.mod_floor(&pk), &pk).expect("cofactor is prime to p");
    let c = (x.numer() * inv).mod_floor(&pk);
    ResidueClass(Scalar::new(c, pk))
}

/// Free-function form of [`Scalar::val`].
pub fn val(x: &Scalar, p: Prime) -> Valuation {
    x.val(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Scalar {
        s.parse().unwrap()
    }

    #[test]
    fn primes() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(97).is_ok());
        assert!(Prime::new(1).is_err());
        assert!(Prime::new(91).is_err());
    }

    #[test]
    fn valuations() {
        let p3 = Prime::new(3).unwrap();
        assert_eq!(q("6").val(p3), Valuation::Finite(1));
        assert_eq!(q("1/6").val(p3), Valuation::Finite(-1));
        assert_eq!(q("0").val(p3), Valuation::Infinity);
        assert!(Valuation::Finite(1_000_000) < Valuation::Infinity);
    }

    #[test]
    fn residues() {
        let p2 = Prime::new(2).unwrap();
        let p3 = Prime::new(3).unwrap();
        assert_eq!(residue_mod_ring(&q("1/6"), p3).representative(), &q("2/3"));
        assert!(residue_mod_ring(&q("5"), p2).is_zero());
        assert_eq!(residue_mod_ring(&q("-1/4"), p2).representative(), &q("3/4"));
        // unit denominators vanish
        assert!(residue_mod_ring(&q("7/5"), p3).is_zero());
    }

    #[test]
    fn residue_field_images() {
        let p3 = Prime::new(3).unwrap();
        assert_eq!(q("1/2").residue(p3), Some(2));
        assert_eq!(q("-1").residue(p3), Some(2));
        assert_eq!(q("1/3").residue(p3), None);
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(q("4/6").to_string(), "2/3");
        assert_eq!(q("-8/4").to_string(), "-2");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("x".parse::<Scalar>().is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn scalar() -> impl Strategy<Value = Scalar> {
            (-500i64..500, 1i64..200).prop_map(|(a, b)| Scalar::new(a, b))
        }

        proptest! {
            #[test]
            fn valuation_is_multiplicative(x in scalar(), y in scalar(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
                let p = Prime::new(p).unwrap();
                let prod = (&x * &y).val(p);
                match (x.val(p), y.val(p)) {
                    (Valuation::Finite(a), Valuation::Finite(b)) => prop_assert_eq!(prod, Valuation::Finite(a + b)),
                    _ => prop_assert_eq!(prod, Valuation::Infinity),
                }
                prop_assert!((&x + &y).val(p) >= x.val(p).min(y.val(p)));
            }

            #[test]
            fn residue_is_additive(x in scalar(), y in scalar(), p in prop::sample::select(vec![2u64, 3, 5])) {
                let p = Prime::new(p).unwrap();
                let rx = residue_mod_ring(&x, p);
                let ry = residue_mod_ring(&y, p);
                prop_assert_eq!(rx.add(&ry, p), residue_mod_ring(&(&x + &y), p));
                prop_assert_eq!(rx.is_zero(), x.is_integral(p));
                let r = rx.representative();
                prop_assert!(r >= &Scalar::zero() && r < &Scalar::one());
                prop_assert!((&x - r).is_integral(p));
            }
        }
    }
}
