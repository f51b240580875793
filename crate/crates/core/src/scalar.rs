//! Numeric field abstraction shared by the exact (rational) and floating
//! evaluation paths.

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A numeric type usable by the symmetric-function and thermodynamics code.
///
/// Implemented for `f64` (float mode) and [`BigRational`] (exact mode).
pub trait Scalar:
    Clone
    + Debug
    + Display
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact.
    const EXACT: bool;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(v: i64) -> Self;
    /// Nearest representable value; exact for finite floats in exact mode.
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact value (a float's binary value, for `f64`).
    fn to_rational(&self) -> BigRational;
    /// Nearest representable value.
    fn from_rational(r: &BigRational) -> Self;
    fn is_zero(&self) -> bool;

    /// `Some(m)` when the value equals the integer `-m` for some `m >= 0`.
    fn as_nonpositive_integer(&self) -> Option<u64>;

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Integer power by repeated squaring.
    fn powu(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Integer power allowing negative exponents. Zero to a negative power is
    /// a caller error.
    fn powi(&self, e: i64) -> Self {
        if e >= 0 {
            self.powu(e as u64)
        } else {
            Self::one() / self.powu(e.unsigned_abs())
        }
    }

    /// Binomial coefficient C(n, k) in this field; zero when k > n.
    fn binomial(n: u64, k: u64) -> Self {
        if k > n {
            return Self::zero();
        }
        let k = k.min(n - k);
        let mut acc = Self::one();
        for i in 1..=k {
            acc = acc * Self::from_i64((n - k + i) as i64) / Self::from_i64(i as i64);
        }
        acc
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_i64(v: i64) -> Self {
        v as f64
    }
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).expect("finite float")
    }
    fn from_rational(r: &BigRational) -> Self {
        ratio_to_f64(r)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn as_nonpositive_integer(&self) -> Option<u64> {
        if *self <= 0.0 && self.fract() == 0.0 && self.is_finite() {
            Some((-*self) as u64)
        } else {
            None
        }
    }
    fn powi(&self, e: i64) -> Self {
        if let Ok(e32) = i32::try_from(e) {
            f64::powi(*self, e32)
        } else {
            f64::powf(*self, e as f64)
        }
    }
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_f64(v: f64) -> Self {
        BigRational::from_float(v).expect("finite float")
    }
    fn to_rational(&self) -> BigRational {
        self.clone()
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn to_f64(&self) -> f64 {
        ratio_to_f64(self)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn as_nonpositive_integer(&self) -> Option<u64> {
        if self.is_integer() && !Signed::is_positive(self) {
            (-self.to_integer()).to_u64()
        } else {
            None
        }
    }
}

/// Converts a big rational to the nearest-ish `f64`, staying finite for
/// numerators and denominators far beyond the `f64` exponent range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = ToPrimitive::to_f64(r) {
        if v.is_finite() && (v != 0.0 || Zero::is_zero(r.numer())) {
            return v;
        }
    }
    // Scale both parts down to the top 64 bits before dividing.
    let num = r.numer();
    let den = r.denom();
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let n = (num >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (den >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

/// Parses `"3"`, `"-1/2"`, `"0.25"` or `"1e-3"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty number".into()));
    }
    if s.contains('/') {
        return BigRational::from_str(s).map_err(|e| Error::Parse(format!("{s}: {e}")));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(pos) => {
            let exp: i64 = s[pos + 1..]
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in {s}")))?;
            (&s[..pos], exp)
        }
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((a, b)) => (a, b),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(Error::Parse(format!("not a number: {s}")));
    }
    let all: String = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if all.is_empty() { "0" } else { &all })
        .map_err(|e| Error::Parse(format!("{s}: {e}")))?;
    let scale = exponent - frac_part.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    let mut value = BigRational::from_integer(numer) * Scalar::powi(&ten, scale);
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Parses a comma-separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<BigRational>> {
    s.split(',').map(parse_rational).collect()
}

/// Parses a comma-separated list of floats.
pub fn parse_f64_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("not a number: {t}")))
        })
        .collect()
}
