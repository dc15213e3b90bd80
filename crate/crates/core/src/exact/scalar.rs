//! Gaussian rationals: complex numbers with exact rational parts.

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use dashu_int::IBig;
use dashu_ratio::RBig;
use num_traits::{One, Signed, Zero};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = RBig;

/// A Gaussian rational `re + im*i`.
///
/// This is the only scalar type used by the crate. All arithmetic is exact.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    re: Rational,
    im: Rational,
}

impl ExactScalar {
    pub fn new(re: Rational, im: Rational) -> Self {
        ExactScalar { re, im }
    }

    pub fn real(re: Rational) -> Self {
        ExactScalar {
            re,
            im: Rational::zero(),
        }
    }

    /// `numer/denom` as a real scalar. Panics if `denom == 0`.
    pub fn ratio(numer: i64, denom: i64) -> Self {
        Self::real(Rational::from_parts_signed(numer.into(), denom.into()))
    }

    pub fn from_int<T: Into<IBig>>(value: T) -> Self {
        Self::real(Rational::from(value.into()))
    }

    pub fn i() -> Self {
        ExactScalar {
            re: Rational::zero(),
            im: Rational::one(),
        }
    }

    pub fn re(&self) -> &Rational {
        &self.re
    }

    pub fn im(&self) -> &Rational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactScalar {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    /// `re^2 + im^2`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.is_real() {
            return Some(Self::real(Rational::ONE / &self.re));
        }
        let n = self.norm_sqr();
        Some(ExactScalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        if rhs.is_zero() {
            return None;
        }
        if rhs.is_real() {
            return Some(ExactScalar {
                re: &self.re / &rhs.re,
                im: &self.im / &rhs.re,
            });
        }
        rhs.checked_inv().map(|inv| self * &inv)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        ExactScalar {
            re: &self.re * factor,
            im: &self.im * factor,
        }
    }

    /// Decimal approximation of each part, rounded half away from zero to
    /// `digits` fractional digits. Display only; never fed back into
    /// computations.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let re = decimal(&self.re, digits);
        if self.is_real() {
            return re;
        }
        let im = decimal(&self.im.abs(), digits);
        let sign = if self.im.is_negative() { '-' } else { '+' };
        format!("{re}{sign}{im}*i")
    }
}

fn decimal(value: &Rational, digits: usize) -> String {
    let scale = IBig::from(10u32).pow(digits);
    let scaled = value.abs() * Rational::from(scale.clone());
    let rounded = (scaled + Rational::from_parts_signed(1.into(), 2.into())).floor();
    let (int_part, frac_part) = (&rounded / &scale, &rounded % &scale);
    let sign = if value.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = digits)
    }
}

impl Zero for ExactScalar {
    fn zero() -> Self {
        ExactScalar {
            re: Rational::zero(),
            im: Rational::zero(),
        }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for ExactScalar {
    fn one() -> Self {
        Self::real(Rational::one())
    }
}

impl From<Rational> for ExactScalar {
    fn from(re: Rational) -> Self {
        Self::real(re)
    }
}

impl From<i64> for ExactScalar {
    fn from(v: i64) -> Self {
        Self::from_int(v)
    }
}

impl From<IBig> for ExactScalar {
    fn from(v: IBig) -> Self {
        Self::real(Rational::from(v))
    }
}

impl<'a> Add<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl<'a> Sub<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl<'a> Mul<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        // Most inputs are real; skip the cross terms when we can.
        match (self.is_real(), rhs.is_real()) {
            (true, true) => ExactScalar::real(&self.re * &rhs.re),
            (true, false) => rhs.scale(&self.re),
            (false, true) => self.scale(&rhs.re),
            (false, false) => ExactScalar {
                re: &self.re * &rhs.re - &self.im * &rhs.im,
                im: &self.re * &rhs.im + &self.im * &rhs.re,
            },
        }
    }
}

impl<'a> Div<&'a ExactScalar> for &'a ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: &ExactScalar) -> ExactScalar {
        self.checked_div(rhs).expect("division of an exact scalar by zero")
    }
}

macro_rules! forward_owned_binop {
    ($($imp:ident, $method:ident);*) => {$(
        impl $imp<ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $imp<&'a ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $imp<ExactScalar> for &'a ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add, add; Sub, sub; Mul, mul; Div, div);

impl AddAssign<&ExactScalar> for ExactScalar {
    fn add_assign(&mut self, rhs: &ExactScalar) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for ExactScalar {
    fn add_assign(&mut self, rhs: ExactScalar) {
        *self += &rhs;
    }
}

impl SubAssign<&ExactScalar> for ExactScalar {
    fn sub_assign(&mut self, rhs: &ExactScalar) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign for ExactScalar {
    fn sub_assign(&mut self, rhs: ExactScalar) {
        *self -= &rhs;
    }
}

impl MulAssign<&ExactScalar> for ExactScalar {
    fn mul_assign(&mut self, rhs: &ExactScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            re: -&self.re,
            im: -&self.im,
        }
    }
}

impl Sum for ExactScalar {
    fn sum<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> Sum<&'a ExactScalar> for ExactScalar {
    fn sum<I: Iterator<Item = &'a ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for ExactScalar {
    fn product<I: Iterator<Item = ExactScalar>>(iter: I) -> Self {
        iter.fold(ExactScalar::one(), |acc, x| &acc * &x)
    }
}

// Text format: "p/q" for reals, "p/q+r/s*i" for complex values. Integers drop
// the "/1". Serialization always writes the real part when im != 0.

fn write_rational(f: &mut fmt::Formatter<'_>, r: &Rational) -> fmt::Result {
    if r.denominator().is_one() {
        write!(f, "{}", r.numerator())
    } else {
        write!(f, "{}/{}", r.numerator(), r.denominator())
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_rational(f, &self.re)?;
        if !self.im.is_zero() {
            f.write_str(if self.im.is_negative() { "-" } else { "+" })?;
            write_rational(f, &self.im.abs())?;
            f.write_str("*i")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(text: &str) -> Result<Rational, Error> {
    let bad = || Error::Parse(format!("malformed rational {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num: IBig = num.trim().parse().map_err(|_| bad())?;
    let den: IBig = match den {
        Some(d) => d.trim().parse().map_err(|_| bad())?,
        None => IBig::one(),
    };
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in {text:?}")));
    }
    Ok(Rational::from_parts_signed(num, den))
}

/// Parses the imaginary term without its sign: "i", "r*i", "r i".
fn parse_imaginary_magnitude(text: &str) -> Result<Rational, Error> {
    let body = text
        .strip_suffix('i')
        .ok_or_else(|| Error::Parse(format!("malformed imaginary part {text:?}")))?
        .trim_end();
    let body = body.strip_suffix('*').unwrap_or(body).trim();
    if body.is_empty() {
        Ok(Rational::one())
    } else {
        parse_rational(body)
    }
}

impl FromStr for ExactScalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::Parse("empty scalar".into()));
        }
        if !text.ends_with('i') {
            return Ok(Self::real(parse_rational(&text)?));
        }
        // The separator is the last '+'/'-' that is not the leading sign.
        let split = text
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (re_text, im_text) = match split {
            Some(i) => (&text[..i], &text[i..]),
            None => ("", text.as_str()),
        };
        let (negative, magnitude) = match im_text.as_bytes()[0] {
            b'-' => (true, &im_text[1..]),
            b'+' => (false, &im_text[1..]),
            _ => (false, im_text),
        };
        let mut im = parse_imaginary_magnitude(magnitude)?;
        if negative {
            im = -im;
        }
        let re = if re_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(re_text)?
        };
        Ok(ExactScalar { re, im })
    }
}

impl Serialize for ExactScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

struct ScalarVisitor;

impl Visitor<'_> for ScalarVisitor {
    type Value = ExactScalar;

    fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("an exact scalar string such as \"3/4\" or \"1/2-5*i\", or an integer")
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExactScalar, E> {
        v.parse().map_err(E::custom)
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExactScalar, E> {
        Ok(ExactScalar::from_int(v))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExactScalar, E> {
        Ok(ExactScalar::from_int(v))
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExactScalar, E> {
        Err(E::custom(format!(
            "floating-point value {v} is not accepted; write it as a fraction string"
        )))
    }
}

impl<'de> Deserialize<'de> for ExactScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        deserializer.deserialize_any(ScalarVisitor)
    }
}
