//! Scalar fields.
//!
//! Two fields sit behind the [`Scalar`] trait: exact Gaussian rationals
//! ([`GaussianRational`], pairs of arbitrary-precision rationals) and complex
//! double floats ([`ComplexFloat`]). Everything else in the crate is generic
//! over `Scalar`, so each construction can be run exactly and numerically.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("non-finite float {0}")]
    NonFinite(String),
}

/// Which field a value lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Exact,
    Float,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Exact => f.write_str("exact"),
            Field::Float => f.write_str("float"),
        }
    }
}

impl FromStr for Field {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Field::Exact),
            "float" => Ok(Field::Float),
            other => Err(ScalarError::Parse(other.to_string())),
        }
    }
}

// ---------------------------------------------------------------------------
// Rational
// ---------------------------------------------------------------------------

/// Arbitrary-precision rational in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(BigRational);

impl Rational {
    /// Builds `numerator / denominator` in canonical form.
    pub fn new(numerator: BigInt, denominator: BigInt) -> Result<Self, ScalarError> {
        normalize(numerator, denominator)
    }

    pub fn from_integer(value: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(value)))
    }

    pub fn from_big(inner: BigRational) -> Self {
        Rational(inner)
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn numerator(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denominator(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// Exact conversion; every finite double is a dyadic rational.
    pub fn from_f64(value: f64) -> Result<Self, ScalarError> {
        BigRational::from_float(value)
            .map(Rational)
            .ok_or_else(|| ScalarError::NonFinite(value.to_string()))
    }

    pub fn to_f64(&self) -> f64 {
        match self.0.to_f64() {
            Some(v) => v,
            None => {
                // Huge numerators/denominators: fall back to scaled division.
                let n = self.numerator().to_f64().unwrap_or(f64::NAN);
                let d = self.denominator().to_f64().unwrap_or(f64::NAN);
                n / d
            }
        }
    }
}

/// Reduces `numerator / denominator` by their gcd and moves the sign to the numerator.
pub fn normalize(numerator: BigInt, denominator: BigInt) -> Result<Rational, ScalarError> {
    if denominator.is_zero() {
        return Err(ScalarError::ZeroDenominator);
    }
    if numerator.is_zero() {
        return Ok(Rational::zero());
    }
    let g = numerator.gcd(&denominator);
    let (mut n, mut d) = (numerator / &g, denominator / &g);
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Ok(Rational(BigRational::new_raw(n, d)))
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numerator(), self.denominator())
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ScalarError::Parse(s.to_string());
        match s.split_once('/') {
            Some((p, q)) => {
                let p = BigInt::from_str(p.trim()).map_err(|_| err())?;
                let q = BigInt::from_str(q.trim()).map_err(|_| err())?;
                normalize(p, q)
            }
            None => {
                let p = BigInt::from_str(s).map_err(|_| err())?;
                Ok(Rational(BigRational::from_integer(p)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($ty:ident, $trait:ident, $method:ident, |$a:ident, $b:ident| $body:expr) => {
        impl $trait for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                let $a = &self;
                let $b = &rhs;
                $body
            }
        }
        impl<'a> $trait<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn $method(self, rhs: &'a $ty) -> $ty {
                let $a = self;
                let $b = rhs;
                $body
            }
        }
    };
}

forward_binop!(Rational, Add, add, |a, b| Rational(&a.0 + &b.0));
forward_binop!(Rational, Sub, sub, |a, b| Rational(&a.0 - &b.0));
forward_binop!(Rational, Mul, mul, |a, b| Rational(&a.0 * &b.0));
forward_binop!(Rational, Div, div, |a, b| {
    assert!(!b.is_zero(), "rational division by zero");
    Rational(&a.0 / &b.0)
});

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

// ---------------------------------------------------------------------------
// Gaussian rationals
// ---------------------------------------------------------------------------

/// `re + im·i` with rational parts.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational { re, im: Rational::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        GaussianRational::new(Rational::from_integer(re), Rational::from_integer(im))
    }

    pub fn i() -> Self {
        GaussianRational::from_ints(0, 1)
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// `re² + im²`, exact.
    pub fn norm_sq(&self) -> Rational {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        let den = rhs.norm_sq();
        let inv = den.recip()?;
        let num = self * &rhs.conj();
        Some(GaussianRational::new(&num.re * &inv, &num.im * &inv))
    }

    pub fn to_complex_float(&self) -> ComplexFloat {
        ComplexFloat::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = GaussianRational::from_ints(1, 0);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for GaussianRational {
    /// Human form: `a`, `bi`, `a+bi`, with rationals written `p/q` when not integral.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn short(r: &Rational) -> String {
            if r.denominator().is_one() {
                r.numerator().to_string()
            } else {
                r.to_string()
            }
        }
        if self.im.is_zero() {
            return f.write_str(&short(&self.re));
        }
        let im = if self.im == Rational::one() {
            String::new()
        } else if self.im == -Rational::one() {
            "-".to_string()
        } else {
            short(&self.im)
        };
        if self.re.is_zero() {
            write!(f, "{im}i")
        } else if self.im.inner().is_negative() {
            write!(f, "{}{im}i", short(&self.re))
        } else {
            write!(f, "{}+{im}i", short(&self.re))
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussianRational {
    type Err = ScalarError;

    /// Parses `a`, `bi`, `i`, `-i`, `a+bi`, `a-bi` where `a`, `b` are `p` or `p/q`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ScalarError::Parse(s.to_string());
        if t.is_empty() {
            return Err(err());
        }
        let Some(body) = t.strip_suffix('i') else {
            return Ok(GaussianRational::real(t.parse().map_err(|_| err())?));
        };
        // Split real and imaginary parts at the last sign not in leading position.
        let split = body
            .char_indices()
            .rev()
            .find(|&(idx, c)| idx > 0 && (c == '+' || c == '-'))
            .map(|(idx, _)| idx);
        let (re_part, im_part) = match split {
            Some(idx) => (&body[..idx], &body[idx..]),
            None => ("", body),
        };
        let re = if re_part.is_empty() {
            Rational::zero()
        } else {
            re_part.parse().map_err(|_| err())?
        };
        let im = match im_part {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            other => other.trim_start_matches('+').parse().map_err(|_| err())?,
        };
        Ok(GaussianRational::new(re, im))
    }
}

impl Serialize for GaussianRational {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        [&self.re, &self.im].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussianRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        // Canonical pair form, or the human string form as a convenience.
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Pair([Rational; 2]),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Pair([re, im]) => Ok(GaussianRational { re, im }),
            Repr::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

forward_binop!(GaussianRational, Add, add, |a, b| GaussianRational::new(
    &a.re + &b.re,
    &a.im + &b.im
));
forward_binop!(GaussianRational, Sub, sub, |a, b| GaussianRational::new(
    &a.re - &b.re,
    &a.im - &b.im
));
forward_binop!(GaussianRational, Mul, mul, |a, b| GaussianRational::new(
    &(&a.re * &b.re) - &(&a.im * &b.im),
    &(&a.re * &b.im) + &(&a.im * &b.re)
));
forward_binop!(GaussianRational, Div, div, |a, b| a
    .checked_div(b)
    .expect("Gaussian rational division by zero"));

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}

// ---------------------------------------------------------------------------
// Complex floats
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Default)]
pub struct ComplexFloat {
    pub re: f64,
    pub im: f64,
}

impl ComplexFloat {
    pub const fn new(re: f64, im: f64) -> Self {
        ComplexFloat { re, im }
    }

    pub fn abs(&self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn to_complex64(self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    /// Exact lift into the Gaussian rationals.
    pub fn to_exact(self) -> Result<GaussianRational, ScalarError> {
        Ok(GaussianRational::new(Rational::from_f64(self.re)?, Rational::from_f64(self.im)?))
    }
}

impl From<Complex64> for ComplexFloat {
    fn from(z: Complex64) -> Self {
        ComplexFloat::new(z.re, z.im)
    }
}

/// `|a − b| ≤ tol · max(1, |a|, |b|)`.
pub fn approx_eq(a: ComplexFloat, b: ComplexFloat, tol: f64) -> bool {
    let scale = 1f64.max(a.abs()).max(b.abs());
    (a - b).abs() <= tol * scale
}

impl fmt::Display for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im == 0.0 {
            write!(f, "{}", self.re)
        } else if self.im < 0.0 {
            write!(f, "{}-{}i", self.re, -self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl fmt::Debug for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for ComplexFloat {
    fn serialize<Ser: Serializer>(&self, serializer: Ser) -> Result<Ser::Ok, Ser::Error> {
        [self.re, self.im].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ComplexFloat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [re, im] = <[f64; 2]>::deserialize(deserializer)?;
        let z = ComplexFloat::new(re, im);
        if !z.is_finite() {
            return Err(serde::de::Error::custom(ScalarError::NonFinite(z.to_string())));
        }
        Ok(z)
    }
}

forward_binop!(ComplexFloat, Add, add, |a, b| ComplexFloat::new(a.re + b.re, a.im + b.im));
forward_binop!(ComplexFloat, Sub, sub, |a, b| ComplexFloat::new(a.re - b.re, a.im - b.im));
forward_binop!(ComplexFloat, Mul, mul, |a, b| ComplexFloat::from(
    a.to_complex64() * b.to_complex64()
));
forward_binop!(ComplexFloat, Div, div, |a, b| ComplexFloat::from(
    a.to_complex64() / b.to_complex64()
));

impl Neg for ComplexFloat {
    type Output = ComplexFloat;
    fn neg(self) -> ComplexFloat {
        ComplexFloat::new(-self.re, -self.im)
    }
}

// ---------------------------------------------------------------------------
// The field contract
// ---------------------------------------------------------------------------

/// Arithmetic contract shared by both fields.
pub trait Scalar:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Serialize
    + for<'de> Deserialize<'de>
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const FIELD: Field;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(value: i64) -> Self;
    /// Embeds an exact value; rounds in the float field.
    fn from_exact(value: &GaussianRational) -> Self;
    /// Embeds a double; exact in the exact field.
    fn from_f64(value: f64) -> Self;
    /// Exact zero test (`0.0` compares equal to `-0.0` in the float field).
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    /// Modulus, rounded to a double.
    fn modulus(&self) -> f64;
    fn to_complex_float(&self) -> ComplexFloat;
    fn is_finite(&self) -> bool;
}

impl Scalar for GaussianRational {
    const FIELD: Field = Field::Exact;

    fn zero() -> Self {
        GaussianRational::default()
    }
    fn one() -> Self {
        GaussianRational::from_ints(1, 0)
    }
    fn from_i64(value: i64) -> Self {
        GaussianRational::from_ints(value, 0)
    }
    fn from_exact(value: &GaussianRational) -> Self {
        value.clone()
    }
    fn from_f64(value: f64) -> Self {
        GaussianRational::real(Rational::from_f64(value).expect("finite float"))
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        GaussianRational::conj(self)
    }
    fn modulus(&self) -> f64 {
        self.norm_sq().to_f64().sqrt()
    }
    fn to_complex_float(&self) -> ComplexFloat {
        GaussianRational::to_complex_float(self)
    }
    fn is_finite(&self) -> bool {
        true
    }
}

impl Scalar for ComplexFloat {
    const FIELD: Field = Field::Float;

    fn zero() -> Self {
        ComplexFloat::new(0.0, 0.0)
    }
    fn one() -> Self {
        ComplexFloat::new(1.0, 0.0)
    }
    fn from_i64(value: i64) -> Self {
        ComplexFloat::new(value as f64, 0.0)
    }
    fn from_exact(value: &GaussianRational) -> Self {
        value.to_complex_float()
    }
    fn from_f64(value: f64) -> Self {
        ComplexFloat::new(value, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn conj(&self) -> Self {
        ComplexFloat::new(self.re, -self.im)
    }
    fn modulus(&self) -> f64 {
        self.abs()
    }
    fn to_complex_float(&self) -> ComplexFloat {
        *self
    }
    fn is_finite(&self) -> bool {
        ComplexFloat::is_finite(self)
    }
}

/// `k!` in the given field.
pub fn factorial<S: Scalar>(k: usize) -> S {
    (1..=k).fold(S::one(), |acc, j| acc * S::from_i64(j as i64))
}

/// Falling factorial `a (a−1) ⋯ (a−k+1)` as an integer.
pub fn falling_factorial(a: usize, k: usize) -> i64 {
    if k > a {
        return 0;
    }
    (a - k + 1..=a).map(|j| j as i64).product()
}
