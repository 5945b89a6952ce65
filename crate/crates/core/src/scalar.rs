//! Scalar fields used throughout the crate.
//!
//! Two modes are supported: exact rationals ([`BigRational`]) and
//! double-precision complex numbers ([`Complex64`]). A multi-parameter `q`
//! is always stored as an exact rational; the exact mode is available
//! whenever every `sqrt(q_s)` is rational.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Pruning threshold for floating point coefficients.
pub const FLOAT_ZERO: f64 = 1e-14;

pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    /// Exact zero test in rational mode, `|x| < FLOAT_ZERO` in float mode.
    fn is_zero(&self) -> bool;
    fn conj(&self) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    /// `sqrt(q)` if it is representable in this field.
    fn sqrt_rational(q: &BigRational) -> Option<Self>;
    fn inv(&self) -> Self;
    fn to_complex(&self) -> Complex64;
    fn abs_sq(&self) -> f64 {
        self.to_complex().norm_sqr()
    }
    fn is_exact() -> bool;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(n)))
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn sqrt_rational(q: &BigRational) -> Option<Self> {
        exact_sqrt(q)
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn to_complex(&self) -> Complex64 {
        Complex64::new(self.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn abs_sq(&self) -> f64 {
        let f = self.to_f64().unwrap_or(f64::NAN);
        f * f
    }
    fn is_exact() -> bool {
        true
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn is_zero(&self) -> bool {
        self.norm() < FLOAT_ZERO
    }
    fn conj(&self) -> Self {
        Complex64::conj(self)
    }
    fn from_rational(r: &BigRational) -> Self {
        Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn sqrt_rational(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        Some(Complex64::new(q.to_f64()?.sqrt(), 0.0))
    }
    fn inv(&self) -> Self {
        Complex64::new(1.0, 0.0) / self
    }
    fn to_complex(&self) -> Complex64 {
        *self
    }
    fn is_exact() -> bool {
        false
    }
}

/// Exact square root of a non-negative rational, if it is rational.
pub fn exact_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let num = q.numer();
    let den = q.denom();
    let rn = num.sqrt();
    let rd = den.sqrt();
    if &(&rn * &rn) == num && &(&rd * &rd) == den {
        Some(BigRational::new(rn, rd))
    } else {
        None
    }
}

/// Parse `"3/4"`, `"-2"`, `"0.25"` or `"1e-3"` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    if t.is_empty() {
        return None;
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(pos) => (&t[..pos], t[pos + 1..].parse::<i32>().ok()?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let all: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if negative { -value } else { value })
}

/// Shorthand for `BigRational::new(n, d)` with machine integers.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Maximum of `|a - b|` over paired scalars.
pub fn abs_diff<S: Scalar>(a: &S, b: &S) -> f64 {
    (a.clone() - b.clone()).abs_sq().sqrt()
}
