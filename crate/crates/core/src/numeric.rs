//! Exact arithmetic in the quadratic field Q(sqrt2).
//!
//! Every value is `a + b*sqrt2` with `a`, `b` reduced big rationals. Since
//! sqrt2 is irrational the pair `(a, b)` is unique, so structural equality is
//! real-number equality and the ordering below is decidable with a single
//! comparison of `a^2` against `2*b^2`.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Arbitrary-precision rational, always reduced with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumericError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid number literal {literal:?}: {reason}")]
    Parse { literal: String, reason: &'static str },
}

/// An element `a + b*sqrt2` of Q(sqrt2).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QNum {
    a: Rational,
    b: Rational,
}

impl QNum {
    pub fn new(a: Rational, b: Rational) -> Self {
        QNum { a, b }
    }

    pub fn from_rational(a: Rational) -> Self {
        QNum { a, b: Rational::zero() }
    }

    pub fn from_integer<T: Into<BigInt>>(n: T) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// The rational `numer / denom`.
    ///
    /// Panics if `denom` is zero; intended for literals in code.
    pub fn frac(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "QNum::frac with zero denominator");
        Self::from_rational(Rational::new(numer.into(), denom.into()))
    }

    pub fn sqrt2() -> Self {
        QNum {
            a: Rational::zero(),
            b: Rational::one(),
        }
    }

    /// `2^exp`, exact for any integer exponent.
    pub fn pow2(exp: i64) -> Self {
        let magnitude = BigInt::one() << exp.unsigned_abs();
        if exp >= 0 {
            Self::from_integer(magnitude)
        } else {
            Self::from_rational(Rational::new(BigInt::one(), magnitude))
        }
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Coefficient `b` of sqrt2.
    pub fn sqrt2_part(&self) -> &Rational {
        &self.b
    }

    pub fn conjugate(&self) -> Self {
        QNum {
            a: self.a.clone(),
            b: -&self.b,
        }
    }

    /// Field norm `a^2 - 2*b^2`; zero only for the zero element.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(2.into()) * &self.b * &self.b
    }

    /// Sign of the real number `a + b*sqrt2` as -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: the larger magnitude wins. a^2 == 2 b^2 cannot
        // happen for nonzero rationals.
        let a_sq = &self.a * &self.a;
        let two_b_sq = Rational::from_integer(2.into()) * &self.b * &self.b;
        if a_sq > two_b_sq {
            sa
        } else {
            -sa
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True for rationals whose reduced denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        self.is_rational() && is_power_of_two(self.a.denom())
    }

    pub fn is_integer(&self) -> bool {
        self.is_rational() && self.a.is_integer()
    }

    pub fn checked_div(&self, rhs: &QNum) -> Result<QNum, NumericError> {
        Ok(self * &rhs.recip()?)
    }

    pub fn recip(&self) -> Result<QNum, NumericError> {
        if self.is_zero() {
            return Err(NumericError::DivisionByZero);
        }
        let norm = self.norm();
        Ok(QNum {
            a: &self.a / &norm,
            b: -&self.b / &norm,
        })
    }

    pub fn pow(&self, mut exp: u32) -> QNum {
        let mut base = self.clone();
        let mut acc = QNum::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The unique integer `n` with `n <= self < n + 1`.
    pub fn floor(&self) -> BigInt {
        // Integer estimate within a couple of units of the answer: floor(a)
        // plus +/- isqrt(floor(2 b^2)), then exact sign corrections.
        let two_b_sq = Rational::from_integer(2.into()) * &self.b * &self.b;
        let root = two_b_sq.floor().to_integer().sqrt();
        let irrational = if self.b.is_negative() { -root - 1 } else { root };
        let mut n = self.a.floor().to_integer() + irrational;
        while (self - &QNum::from_integer(n.clone())).is_negative() {
            n -= 1;
        }
        while !(self - &QNum::from_integer(&n + 1)).is_negative() {
            n += 1;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    /// Nearest `f64`; for display and cross-checks only.
    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }

    /// Decimal expansion truncated toward zero to `precision` fractional
    /// digits, computed from an exact floor of the scaled value.
    pub fn approximate(&self, precision: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), precision);
        let scaled = &self.abs() * &QNum::from_integer(scale.clone());
        let digits = scaled.floor();
        let int_part = &digits / &scale;
        let frac_part = &digits % &scale;
        let sign = if self.is_negative() { "-" } else { "" };
        if precision == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part:0>precision$}")
        }
    }
}

fn rational_sign(r: &Rational) -> i8 {
    match r.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

fn is_power_of_two(n: &BigInt) -> bool {
    let mag = n.magnitude();
    match mag.trailing_zeros() {
        Some(tz) => (mag >> tz).is_one(),
        None => false,
    }
}

impl Zero for QNum {
    fn zero() -> Self {
        QNum::from_rational(Rational::zero())
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for QNum {
    fn one() -> Self {
        QNum::from_rational(Rational::one())
    }
}

impl PartialOrd for QNum {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QNum {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.is_rational() && other.is_rational() {
            return self.a.cmp(&other.a);
        }
        (self - other).signum().cmp(&0)
    }
}

impl From<i64> for QNum {
    fn from(n: i64) -> Self {
        QNum::from_integer(n)
    }
}

impl From<BigInt> for QNum {
    fn from(n: BigInt) -> Self {
        QNum::from_integer(n)
    }
}

impl From<Rational> for QNum {
    fn from(r: Rational) -> Self {
        QNum::from_rational(r)
    }
}

impl<'a> Add<&'a QNum> for &'a QNum {
    type Output = QNum;
    fn add(self, rhs: &QNum) -> QNum {
        QNum {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl<'a> Sub<&'a QNum> for &'a QNum {
    type Output = QNum;
    fn sub(self, rhs: &QNum) -> QNum {
        QNum {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl<'a> Mul<&'a QNum> for &'a QNum {
    type Output = QNum;
    fn mul(self, rhs: &QNum) -> QNum {
        // (a + b r)(c + d r) = (ac + 2bd) + (ad + bc) r,  r = sqrt2
        let two = Rational::from_integer(2.into());
        QNum {
            a: &self.a * &rhs.a + two * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

/// Panics on a zero divisor, like `BigRational`; use [`QNum::checked_div`]
/// when the divisor is not known to be nonzero.
impl<'a> Div<&'a QNum> for &'a QNum {
    type Output = QNum;
    fn div(self, rhs: &QNum) -> QNum {
        self.checked_div(rhs).expect("QNum division by zero")
    }
}

impl Neg for &QNum {
    type Output = QNum;
    fn neg(self) -> QNum {
        QNum {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl Neg for QNum {
    type Output = QNum;
    fn neg(self) -> QNum {
        QNum { a: -self.a, b: -self.b }
    }
}

macro_rules! forward_owned_binop {
    ($($imp:ident $method:ident),*) => {$(
        impl $imp<QNum> for QNum {
            type Output = QNum;
            fn $method(self, rhs: QNum) -> QNum {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $imp<&'a QNum> for QNum {
            type Output = QNum;
            fn $method(self, rhs: &QNum) -> QNum {
                (&self).$method(rhs)
            }
        }
        impl<'a> $imp<QNum> for &'a QNum {
            type Output = QNum;
            fn $method(self, rhs: QNum) -> QNum {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&QNum> for QNum {
    fn add_assign(&mut self, rhs: &QNum) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl AddAssign for QNum {
    fn add_assign(&mut self, rhs: QNum) {
        *self += &rhs;
    }
}

impl SubAssign<&QNum> for QNum {
    fn sub_assign(&mut self, rhs: &QNum) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl SubAssign for QNum {
    fn sub_assign(&mut self, rhs: QNum) {
        *self -= &rhs;
    }
}

impl MulAssign<&QNum> for QNum {
    fn mul_assign(&mut self, rhs: &QNum) {
        *self = &*self * rhs;
    }
}

impl Sum for QNum {
    fn sum<I: Iterator<Item = QNum>>(iter: I) -> QNum {
        iter.fold(QNum::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl<'a> Sum<&'a QNum> for QNum {
    fn sum<I: Iterator<Item = &'a QNum>>(iter: I) -> QNum {
        iter.fold(QNum::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Literal form: `p/q`, `p/q+r/s*sqrt2` or `p/q-r/s*sqrt2`, with integer
/// shorthand for unit denominators.
impl fmt::Display for QNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.a)?;
        if !self.b.is_zero() {
            f.write_str(if self.b.is_negative() { "-" } else { "+" })?;
            write_rational(f, &self.b.abs())?;
            f.write_str("*sqrt2")?;
        }
        Ok(())
    }
}

impl fmt::Debug for QNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QNum({self})")
    }
}

fn parse_rational(literal: &str, s: &str) -> Result<Rational, NumericError> {
    let err = |reason| NumericError::Parse {
        literal: literal.to_string(),
        reason,
    };
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (body, None),
    };
    let digits = |t: &str| !t.is_empty() && t.bytes().all(|c| c.is_ascii_digit());
    if !digits(num) {
        return Err(err("expected an integer numerator"));
    }
    let mut numer: BigInt = num.parse().map_err(|_| err("bad numerator"))?;
    if neg {
        numer = -numer;
    }
    let denom: BigInt = match den {
        Some(d) if digits(d) => d.parse().map_err(|_| err("bad denominator"))?,
        Some(_) => return Err(err("expected an integer denominator")),
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(err("zero denominator"));
    }
    Ok(Rational::new(numer, denom))
}

impl FromStr for QNum {
    type Err = NumericError;

    fn from_str(literal: &str) -> Result<Self, Self::Err> {
        let s: String = literal.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(NumericError::Parse {
                literal: literal.to_string(),
                reason: "empty literal",
            });
        }
        let Some(head) = s.strip_suffix("sqrt2") else {
            return Ok(QNum::from_rational(parse_rational(literal, &s)?));
        };
        // `head` is everything before `sqrt2`: "[a](+|-)b*", "b*", or a bare
        // sign / rational part when the coefficient is an implicit 1.
        let (head, coeff_explicit) = match head.strip_suffix('*') {
            Some(h) => (h, true),
            None => (head, false),
        };
        let split = head
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .last()
            .map(|(i, _)| i);
        let (rational, sign, coeff) = match split {
            Some(i) => (&head[..i], &head[i..i + 1], &head[i + 1..]),
            None if head.starts_with('+') || head.starts_with('-') => ("", &head[..1], &head[1..]),
            None => ("", "+", head),
        };
        if coeff_explicit == coeff.is_empty() {
            return Err(NumericError::Parse {
                literal: literal.to_string(),
                reason: "malformed sqrt2 coefficient",
            });
        }
        let a = if rational.is_empty() {
            Rational::zero()
        } else {
            parse_rational(literal, rational)?
        };
        let mut b = if coeff.is_empty() {
            Rational::one()
        } else {
            if coeff.starts_with('-') {
                return Err(NumericError::Parse {
                    literal: literal.to_string(),
                    reason: "doubled sign before sqrt2 coefficient",
                });
            }
            parse_rational(literal, coeff)?
        };
        if sign == "-" {
            b = -b;
        }
        Ok(QNum { a, b })
    }
}

impl Serialize for QNum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for QNum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Renders a rational with the same literal conventions as [`QNum`].
pub fn rational_literal(r: &Rational) -> String {
    QNum::from_rational(r.clone()).to_string()
}

pub fn parse_rational_literal(s: &str) -> Result<Rational, NumericError> {
    let q: QNum = s.parse()?;
    if !q.is_rational() {
        return Err(NumericError::Parse {
            literal: s.to_string(),
            reason: "expected a rational",
        });
    }
    Ok(q.a)
}
