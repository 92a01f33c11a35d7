//! Exact scalars: big rationals, optionally extended by a single square root.
//!
//! A [`Scalar`] is `a + b*sqrt(d)` with rational `a`, `b` and a square-free
//! radicand `d >= 2`. Purely rational values are stored with `b = 0` and
//! `d = 0`, so they combine freely with values from any quadratic field.
//! Combining two irrational values with different radicands is a field
//! mismatch; the arithmetic operators panic on it, and every container
//! ([`Matrix`](super::Matrix), [`Algebra`](crate::algebra::Algebra)) checks
//! field consistency up front so the panic is unreachable from validated input.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The field a value, matrix or algebra lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    /// `Q(sqrt d)` with `d` square-free and at least 2.
    Quadratic(u64),
}

impl Field {
    pub fn quadratic(d: u64) -> Result<Field> {
        if d < 2 || !is_square_free(d) {
            return Err(Error::InvalidParams(format!(
                "radicand {d} must be square-free and >= 2"
            )));
        }
        Ok(Field::Quadratic(d))
    }

    /// The radicand, or 0 for the rationals.
    pub fn radicand(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Quadratic(d) => d,
        }
    }

    /// Smallest field containing both, if one exists.
    pub fn join(self, other: Field) -> Result<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Ok(f),
            (Field::Quadratic(a), Field::Quadratic(b)) if a == b => Ok(self),
            (Field::Quadratic(a), Field::Quadratic(b)) => {
                Err(Error::FieldMismatch { left: a, right: b })
            }
        }
    }

    pub fn contains(self, x: &Scalar) -> bool {
        x.d == 0 || x.d == self.radicand()
    }
}

/// Join the fields of a collection of scalars.
pub fn common_field<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Result<Field> {
    values
        .into_iter()
        .try_fold(Field::Rational, |f, x| f.join(x.field()))
}

pub fn is_square_free(d: u64) -> bool {
    if d == 0 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Writes `n = k^2 * d` with `d` square-free.
fn square_free_decomposition(n: &BigUint) -> (BigUint, BigUint) {
    let mut rest = n.clone();
    let mut k = BigUint::one();
    let mut d = BigUint::one();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut count = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            count += 1;
        }
        for _ in 0..count / 2 {
            k *= &p;
        }
        if count % 2 == 1 {
            d *= &p;
        }
        p += 1u32;
    }
    d *= rest;
    (k, d)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    a: BigRational,
    b: BigRational,
    d: u64,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::from_rational(BigRational::zero())
    }

    pub fn one() -> Scalar {
        Scalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_bigint(n: BigInt) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(n))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn ratio(num: i64, den: i64) -> Scalar {
        Scalar::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(a: BigRational) -> Scalar {
        Scalar {
            a,
            b: BigRational::zero(),
            d: 0,
        }
    }

    /// `a + b*sqrt(d)`.
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Result<Scalar> {
        Field::quadratic(d)?;
        Ok(Scalar { a, b, d }.normalized())
    }

    /// `sqrt(q)` for a non-negative rational `q`, rationalised as `(k/den) sqrt(d)`.
    pub fn sqrt_of_rational(q: &BigRational) -> Result<Scalar> {
        if q.is_negative() {
            return Err(Error::InvalidParams(format!(
                "square root of negative value {q}"
            )));
        }
        if q.is_zero() {
            return Ok(Scalar::zero());
        }
        // sqrt(p/r) = sqrt(p*r)/r
        let p = q.numer().magnitude();
        let r = q.denom().magnitude();
        let (k, d) = square_free_decomposition(&(p * r));
        let coeff = BigRational::new(BigInt::from(k), BigInt::from(r.clone()));
        if d.is_one() {
            return Ok(Scalar::from_rational(coeff));
        }
        let d = d
            .to_u64()
            .ok_or_else(|| Error::Unsupported("radicand exceeds u64".into()))?;
        Scalar::quadratic(BigRational::zero(), coeff, d)
    }

    fn normalized(mut self) -> Scalar {
        if self.b.is_zero() {
            self.d = 0;
        }
        self
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    /// 0 when the value is rational.
    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn field(&self) -> Field {
        if self.d == 0 {
            Field::Rational
        } else {
            Field::Quadratic(self.d)
        }
    }

    pub fn is_rational(&self) -> bool {
        self.d == 0
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn conjugate(&self) -> Scalar {
        Scalar {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d,
        }
    }

    /// `a^2 - d b^2`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(self.d))
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        if self.is_rational() {
            return Some(Scalar::from_rational(self.a.recip()));
        }
        let n = self.norm();
        Some(
            Scalar {
                a: &self.a / &n,
                b: -(&self.b / &n),
                d: self.d,
            }
            .normalized(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Integer power; negative exponents invert (panics on zero).
    pub fn powi(&self, e: i64) -> Scalar {
        let p = self.pow(e.unsigned_abs() as u32);
        if e < 0 {
            p.inverse().expect("negative power of zero")
        } else {
            p
        }
    }

    fn radicand_with(&self, other: &Scalar) -> u64 {
        match (self.d, other.d) {
            (0, d) | (d, 0) => d,
            (x, y) if x == y => x,
            (x, y) => panic!("{}", Error::FieldMismatch { left: x, right: y }),
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl From<BigInt> for Scalar {
    fn from(n: BigInt) -> Self {
        Scalar::from_bigint(n)
    }
}

/// Canonical rational string: `p/q`, or `p` when `q = 1`.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Scalar> {
        parse_rational(s).map(Scalar::from_rational)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "{}", format_rational(&self.a))
        } else {
            write!(
                f,
                "{}+{}*sqrt({})",
                format_rational(&self.a),
                format_rational(&self.b),
                self.d
            )
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a,
            b: -self.b,
            d: self.d,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.radicand_with(rhs);
        Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
            d,
        }
        .normalized()
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let d = self.radicand_with(rhs);
        Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            d,
        }
        .normalized()
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.d == 0 && rhs.d == 0 {
            return Scalar::from_rational(&self.a * &rhs.a);
        }
        let d = self.radicand_with(rhs);
        let dd = BigRational::from_integer(BigInt::from(d));
        Scalar {
            a: &self.a * &rhs.a + &self.b * &rhs.b * dd,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
            d,
        }
        .normalized()
    }
}

impl Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        if self.d == 0 && rhs.d == 0 {
            return Scalar::from_rational(&self.a / &rhs.a);
        }
        let inv = rhs.inverse().expect("division by zero");
        self * &inv
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn parse_and_format() {
        let x: Scalar = "6/-4".parse().unwrap();
        assert_eq!(x.to_string(), "-3/2");
        assert_eq!("7".parse::<Scalar>().unwrap().to_string(), "7");
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert_eq!(Scalar::zero().to_string(), "0");
    }

    #[test]
    fn sqrt_rationalises() {
        // sqrt(2/6) = sqrt(3)/3
        let r = Scalar::sqrt_of_rational(&q(2, 6)).unwrap();
        assert_eq!(r.radicand(), 3);
        assert_eq!(r.surd_part(), &q(1, 3));
        assert!(r.rational_part().is_zero());
        assert_eq!(&r * &r, Scalar::ratio(1, 3));
        // sqrt(2/8) = 1/2
        assert_eq!(
            Scalar::sqrt_of_rational(&q(2, 8)).unwrap(),
            Scalar::ratio(1, 2)
        );
        assert!(Scalar::sqrt_of_rational(&q(-1, 2)).is_err());
    }

    #[test]
    fn inverse_in_extension() {
        let x = Scalar::quadratic(q(1, 1), q(2, 1), 5).unwrap();
        let y = x.inverse().unwrap();
        assert!((&x * &y).is_one());
        assert!(Scalar::zero().inverse().is_none());
    }

    #[test]
    fn square_free_radicands() {
        assert!(Field::quadratic(3).is_ok());
        assert!(Field::quadratic(12).is_err());
        assert!(Field::quadratic(1).is_err());
        assert_eq!(
            Field::Quadratic(2).join(Field::Quadratic(3)),
            Err(Error::FieldMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_radicands_panics() {
        let x = Scalar::quadratic(q(0, 1), q(1, 1), 2).unwrap();
        let y = Scalar::quadratic(q(0, 1), q(1, 1), 3).unwrap();
        let _ = x + y;
    }

    #[test]
    fn zero_surd_is_rational() {
        let x = Scalar::quadratic(q(3, 1), q(1, 1), 7).unwrap();
        let y = Scalar::quadratic(q(0, 1), q(1, 1), 7).unwrap();
        let z = &x - &y;
        assert!(z.is_rational());
        assert_eq!(z, Scalar::from_int(3));
    }
}
