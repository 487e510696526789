use std::cmp::Ordering;
use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite::base::num::arithmetic::traits::{Abs, CheckedSqrt, Pow, Sign};
use malachite::base::num::basic::traits::{One, Zero};
use malachite::base::num::conversion::traits::RoundingFrom;
use malachite::base::num::logic::traits::SignificantBits;
use malachite::base::rounding_modes::RoundingMode;
use malachite::{Float, Integer, Natural};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::NumericsError;

/// Exact rational number, always held in canonical form (positive
/// denominator, numerator and denominator coprime).
///
/// Equality of canonical forms is the identity test used throughout the
/// crate. Textual form is `p/q`, or `p` when the denominator is one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Rational(malachite::Rational);

impl Rational {
    pub fn zero() -> Self {
        Rational(malachite::Rational::ZERO)
    }

    pub fn one() -> Self {
        Rational(malachite::Rational::ONE)
    }

    /// `num / den`. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "rational with zero denominator");
        Rational(malachite::Rational::from_signeds(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(malachite::Rational::from(n))
    }

    /// Builds `num / den` from arbitrary-precision integers.
    pub fn from_integers(num: Integer, den: Integer) -> Result<Self, NumericsError> {
        if den == 0 {
            return Err(NumericsError::DivisionByZero);
        }
        Ok(Rational(malachite::Rational::from_integers(num, den)))
    }

    pub fn from_malachite(value: malachite::Rational) -> Self {
        Rational(value)
    }

    pub fn as_malachite(&self) -> &malachite::Rational {
        &self.0
    }

    /// Signed numerator of the canonical form.
    pub fn numerator(&self) -> Integer {
        Integer::from_sign_and_abs_ref(self.0 >= 0u32, self.0.numerator_ref())
    }

    /// Positive denominator of the canonical form.
    pub fn denominator(&self) -> &Natural {
        self.0.denominator_ref()
    }

    pub fn numerator_abs(&self) -> &Natural {
        self.0.numerator_ref()
    }

    /// Bit length of the canonical denominator; the quantity the
    /// denominator-growth guard is expressed in.
    pub fn denominator_bits(&self) -> u64 {
        self.0.denominator_ref().significant_bits()
    }

    pub fn is_zero(&self) -> bool {
        self.0 == 0u32
    }

    pub fn is_positive(&self) -> bool {
        self.0 > 0u32
    }

    pub fn is_negative(&self) -> bool {
        self.0 < 0u32
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denominator_ref() == 1u32
    }

    /// Sign as an ordering against zero.
    pub fn signum(&self) -> Ordering {
        self.0.sign()
    }

    pub fn abs(&self) -> Self {
        Rational((&self.0).abs())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational, NumericsError> {
        if rhs.is_zero() {
            return Err(NumericsError::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    pub fn recip(&self) -> Result<Rational, NumericsError> {
        Rational::one().checked_div(self)
    }

    pub fn pow(&self, exp: i64) -> Self {
        Rational((&self.0).pow(exp))
    }

    /// Exact square root when `self` is the square of a rational.
    pub fn checked_sqrt(&self) -> Option<Rational> {
        (&self.0).checked_sqrt().map(Rational)
    }

    pub fn to_f64(&self) -> f64 {
        f64::rounding_from(&self.0, RoundingMode::Nearest).0
    }

    /// Correctly rounded conversion to a binary float with `prec` mantissa bits.
    pub fn to_float(&self, prec: u64) -> Float {
        Float::from_rational_prec_ref(&self.0, prec).0
    }

    /// Decimal rendering with `digits` significant digits. Advisory only.
    pub fn to_decimal(&self, digits: usize) -> String {
        format_significant(self.to_f64(), digits)
    }

    /// Parses `p/q`, a plain integer, or a finite decimal such as `-1.25`.
    /// Decimals are expanded literally (`1.2` is exactly `6/5`).
    pub fn parse(text: &str) -> Result<Self, NumericsError> {
        let s = text.trim();
        let bad = || NumericsError::Parse(text.to_string());
        if s.is_empty() {
            return Err(bad());
        }
        if let Some((num, den)) = s.split_once('/') {
            let num = Integer::from_str(num.trim()).map_err(|_| bad())?;
            let den = Integer::from_str(den.trim()).map_err(|_| bad())?;
            return Rational::from_integers(num, den);
        }
        if let Some((int_part, frac_part)) = s.split_once('.') {
            let negative = int_part.starts_with('-');
            let int_digits = int_part.trim_start_matches(['-', '+']);
            if frac_part.is_empty() && int_digits.is_empty()
                || !frac_part.chars().all(|c| c.is_ascii_digit())
                || !int_digits.chars().all(|c| c.is_ascii_digit())
            {
                return Err(bad());
            }
            let digits = format!("{int_digits}{frac_part}");
            let digits = if digits.is_empty() { "0".to_string() } else { digits };
            let mut num = Integer::from_str(&digits).map_err(|_| bad())?;
            if negative {
                num = -num;
            }
            let den = Integer::from(10u32).pow(frac_part.len() as u64);
            return Rational::from_integers(num, den);
        }
        let n = Integer::from_str(s).map_err(|_| bad())?;
        Ok(Rational(malachite::Rational::from(n)))
    }
}

pub(crate) fn format_significant(value: f64, digits: usize) -> String {
    if value == 0.0 || !value.is_finite() {
        return format!("{value}");
    }
    let magnitude = value.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    let s = format!("{value:.decimals$}");
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = NumericsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rational::parse(s)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational(malachite::Rational::from(n))
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
        Rational::parse(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! binary_op {
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

binary_op!(Add, add);
binary_op!(Sub, sub);
binary_op!(Mul, mul);

// Division by zero is a hard error; use `checked_div` to recover.
impl Div<&Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Div<Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        &self / &rhs
    }
}

impl Div<&Rational> for Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        &self / rhs
    }
}

impl Div<Rational> for &Rational {
    type Output = Rational;
    fn div(self, rhs: Rational) -> Rational {
        self / &rhs
    }
}

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

impl AddAssign<&Rational> for Rational {
    fn add_assign(&mut self, rhs: &Rational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&Rational> for Rational {
    fn sub_assign(&mut self, rhs: &Rational) {
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Rational> for Rational {
    fn mul_assign(&mut self, rhs: &Rational) {
        self.0 *= &rhs.0;
    }
}

impl Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Rational> for Rational {
    fn sum<I: Iterator<Item = &'a Rational>>(iter: I) -> Self {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

impl Product for Rational {
    fn product<I: Iterator<Item = Rational>>(iter: I) -> Self {
        iter.fold(Rational::one(), |acc, x| acc * x)
    }
}

/// Shorthand for `Rational::new(num, den)`.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}
