//! Exact signed square roots of nonnegative rationals.
//!
//! Every matrix element of the Jacobson generators, their quasi-Fermi
//! rescalings and the Fermi operators has the form `±√r` with `r` rational.
//! Products stay in this set. Sums stay in it whenever the two radicands
//! differ by a rational square factor, which covers every anticommutator
//! that appears in the algebra.

use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::ratio_to_f64;

/// The value `sign · √radicand`.
///
/// Canonical form: `sign == 0` iff `radicand == 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Amplitude {
    sign: i8,
    radicand: BigRational,
}

impl Amplitude {
    pub fn zero() -> Self {
        Amplitude {
            sign: 0,
            radicand: BigRational::zero(),
        }
    }

    pub fn one() -> Self {
        Amplitude {
            sign: 1,
            radicand: BigRational::one(),
        }
    }

    /// `sign · √radicand`. Panics on a negative radicand.
    pub fn new(sign: i8, radicand: BigRational) -> Self {
        assert!(!radicand.is_negative(), "negative radicand {radicand}");
        if sign == 0 || radicand.is_zero() {
            return Self::zero();
        }
        Amplitude {
            sign: sign.signum(),
            radicand,
        }
    }

    /// `+√r`.
    pub fn sqrt_of(radicand: BigRational) -> Self {
        Self::new(1, radicand)
    }

    /// `+√n` for an integer radicand.
    pub fn sqrt_of_int(n: i64) -> Self {
        Self::new(1, BigRational::from_integer(BigInt::from(n)))
    }

    /// The rational value `v` itself, stored as `sign(v) · √(v²)`.
    pub fn from_rational(v: &BigRational) -> Self {
        let sign = match v.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        Self::new(sign, v * v)
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_rational(&BigRational::from_integer(BigInt::from(v)))
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> &BigRational {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn to_f64(&self) -> f64 {
        f64::from(self.sign) * ratio_to_f64(&self.radicand).sqrt()
    }

    /// The rational value, when the radicand is a perfect rational square.
    pub fn to_rational(&self) -> Option<BigRational> {
        let root = rational_sqrt(&self.radicand)?;
        Some(if self.sign < 0 { -root } else { root })
    }

    /// `+√v` of a nonnegative rational-valued amplitude.
    pub fn sqrt(&self) -> Option<Self> {
        if self.sign < 0 {
            return None;
        }
        let v = self.to_rational()?;
        Some(Self::sqrt_of(v))
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Self {
        self.clone() * Self::from_rational(c)
    }

    /// Exact sum, or `None` when the radicands are not commensurable
    /// (their ratio is not the square of a rational).
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return Some(self.clone());
        }
        if self.is_zero() {
            return Some(other.clone());
        }
        if self.radicand == other.radicand {
            let m = i64::from(self.sign) + i64::from(other.sign);
            let c = BigRational::from_integer(BigInt::from(m));
            return Some(Self::with_coefficient(&c, &self.radicand));
        }
        // self = s·√(ratio)·√(other.radicand)
        let ratio = &self.radicand / &other.radicand;
        let root = rational_sqrt(&ratio)?;
        let c = root * BigRational::from_integer(BigInt::from(self.sign))
            + BigRational::from_integer(BigInt::from(other.sign));
        Some(Self::with_coefficient(&c, &other.radicand))
    }

    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        self.checked_add(&-other.clone())
    }

    // c·√r
    fn with_coefficient(c: &BigRational, r: &BigRational) -> Self {
        let sign = match c.numer().sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        };
        Self::new(sign, c * c * r)
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = int_sqrt(r.numer())?;
    let d = int_sqrt(r.denom())?;
    Some(BigRational::new(n, d))
}

fn int_sqrt(v: &BigInt) -> Option<BigInt> {
    let s = v.sqrt();
    (&s * &s == *v).then_some(s)
}

impl Mul for Amplitude {
    type Output = Amplitude;
    fn mul(self, rhs: Amplitude) -> Amplitude {
        Amplitude::new(self.sign * rhs.sign, self.radicand * rhs.radicand)
    }
}

impl<'a> Mul<&'a Amplitude> for &'a Amplitude {
    type Output = Amplitude;
    fn mul(self, rhs: &Amplitude) -> Amplitude {
        Amplitude::new(self.sign * rhs.sign, &self.radicand * &rhs.radicand)
    }
}

impl Neg for Amplitude {
    type Output = Amplitude;
    fn neg(self) -> Amplitude {
        Amplitude {
            sign: -self.sign,
            radicand: self.radicand,
        }
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let s = if self.sign < 0 { "-" } else { "" };
        write!(f, "{s}sqrt({})", self.radicand)
    }
}

impl fmt::Debug for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Amplitude({self})")
    }
}
