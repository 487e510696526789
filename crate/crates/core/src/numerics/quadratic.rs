use std::cmp::Ordering;
use std::fmt;

use malachite::Float;

use super::{float_sqrt, NumericsError, Rational};

/// Exact real number `a + b·√d` with rational `a`, `b` and radicand `d ≥ 0`.
///
/// Normal form: when `d` is the square of a rational, or `b = 0`, the value
/// is folded into `a` and stored with `b = d = 0`. Binary operations require
/// the same radicand unless one side is purely rational.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadraticReal {
    a: Rational,
    b: Rational,
    d: Rational,
}

/// Sign of `u + b·√d` for `d ≥ 0`, decided by squaring.
fn sign_of(u: &Rational, b: &Rational, d: &Rational) -> Ordering {
    let su = u.signum();
    let sb = if d.is_zero() { Ordering::Equal } else { b.signum() };
    if sb == Ordering::Equal {
        return su;
    }
    if su == Ordering::Equal || su == sb {
        return sb;
    }
    // Opposite signs: the larger magnitude wins.
    match (u * u).cmp(&(b * b * d)) {
        Ordering::Greater => su,
        Ordering::Less => sb,
        Ordering::Equal => Ordering::Equal,
    }
}

impl QuadraticReal {
    pub fn new(a: Rational, b: Rational, d: Rational) -> Result<Self, NumericsError> {
        if d.is_negative() {
            return Err(NumericsError::NegativeRadicand(d.to_string()));
        }
        Ok(Self::normalized(a, b, d))
    }

    fn normalized(a: Rational, b: Rational, d: Rational) -> Self {
        if b.is_zero() || d.is_zero() {
            return QuadraticReal { a, b: Rational::zero(), d: Rational::zero() };
        }
        match d.checked_sqrt() {
            Some(root) => QuadraticReal { a: a + b * root, b: Rational::zero(), d: Rational::zero() },
            None => QuadraticReal { a, b, d },
        }
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadraticReal { a, b: Rational::zero(), d: Rational::zero() }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn d(&self) -> &Rational {
        &self.d
    }

    /// The value as a rational, when the irrational part vanished.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.b.is_zero().then_some(&self.a)
    }

    pub fn conjugate(&self) -> Self {
        QuadraticReal { a: self.a.clone(), b: -&self.b, d: self.d.clone() }
    }

    fn common_radicand(&self, other: &Self) -> Result<Rational, NumericsError> {
        if self.b.is_zero() {
            Ok(other.d.clone())
        } else if other.b.is_zero() || self.d == other.d {
            Ok(self.d.clone())
        } else {
            Err(NumericsError::MixedRadicand(self.d.to_string(), other.d.to_string()))
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, NumericsError> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(&self.a + &other.a, &self.b + &other.b, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, NumericsError> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, NumericsError> {
        let d = self.common_radicand(other)?;
        let a = &self.a * &other.a + &self.b * &other.b * &d;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(Self::normalized(a, b, d))
    }

    /// Division through the conjugate of the divisor.
    pub fn checked_div(&self, other: &Self) -> Result<Self, NumericsError> {
        let d = self.common_radicand(other)?;
        let norm = &other.a * &other.a - &other.b * &other.b * &d;
        if norm.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        let num = self.checked_mul(&other.conjugate())?;
        Ok(Self::normalized(num.a.checked_div(&norm)?, num.b.checked_div(&norm)?, d))
    }

    pub fn neg(&self) -> Self {
        QuadraticReal { a: -&self.a, b: -&self.b, d: self.d.clone() }
    }

    pub fn scale(&self, k: &Rational) -> Self {
        Self::normalized(&self.a * k, &self.b * k, self.d.clone())
    }

    pub fn add_rational(&self, k: &Rational) -> Self {
        QuadraticReal { a: &self.a + k, b: self.b.clone(), d: self.d.clone() }
    }

    pub fn signum(&self) -> Ordering {
        sign_of(&self.a, &self.b, &self.d)
    }

    pub fn abs(&self) -> Self {
        if self.signum() == Ordering::Less {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Exact three-way comparison of `self` against a rational.
    pub fn cmp_rational(&self, r: &Rational) -> Ordering {
        sign_of(&(&self.a - r), &self.b, &self.d)
    }

    /// Exact comparison of two quadratic reals sharing a radicand.
    pub fn checked_cmp(&self, other: &Self) -> Result<Ordering, NumericsError> {
        Ok(self.checked_sub(other)?.signum())
    }

    pub fn to_float(&self, prec: u64) -> Float {
        let a = self.a.to_float(prec);
        if self.b.is_zero() {
            return a;
        }
        let root = float_sqrt(&self.d.to_float(prec + 8), prec + 8);
        let b = self.b.to_float(prec + 8);
        let sum = &a + &(&b * &root);
        Float::from_float_prec(sum, prec).0
    }

    pub fn to_f64(&self) -> f64 {
        super::float_to_f64(&self.to_float(64))
    }
}

/// Exact comparison `q` versus `r`.
pub fn quad_compare(q: &QuadraticReal, r: &Rational) -> Ordering {
    q.cmp_rational(r)
}

impl From<Rational> for QuadraticReal {
    fn from(a: Rational) -> Self {
        QuadraticReal::from_rational(a)
    }
}

impl fmt::Display for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} + {}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

impl fmt::Debug for QuadraticReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
