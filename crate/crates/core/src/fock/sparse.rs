//! Sparse matrices over exact amplitudes or floats.

use std::collections::BTreeMap;
use std::fmt::{Debug, Display};

use num_rational::BigRational;

use super::amplitude::Amplitude;
use crate::scalar::ratio_to_f64;

/// Raised when an exact sum would need two incommensurable square roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inexact;

/// Matrix entry arithmetic.
pub trait Entry: Clone + PartialEq + Debug + Display + Send + Sync {
    const EXACT: bool;
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn checked_add(&self, other: &Self) -> Result<Self, Inexact>;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn from_rational(v: &BigRational) -> Self;
    fn from_amplitude(a: &Amplitude) -> Self;
    fn to_f64(&self) -> f64;
    /// Nearest integer (exact entries: the value itself when integral).
    fn nearest_integer(&self) -> Self;
    /// Square root of a nonnegative entry, when representable.
    fn checked_sqrt(&self) -> Result<Self, Inexact>;
}

impl Entry for Amplitude {
    const EXACT: bool = true;
    fn zero() -> Self {
        Amplitude::zero()
    }
    fn is_zero(&self) -> bool {
        Amplitude::is_zero(self)
    }
    fn checked_add(&self, other: &Self) -> Result<Self, Inexact> {
        Amplitude::checked_add(self, other).ok_or(Inexact)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn from_rational(v: &BigRational) -> Self {
        Amplitude::from_rational(v)
    }
    fn from_amplitude(a: &Amplitude) -> Self {
        a.clone()
    }
    fn to_f64(&self) -> f64 {
        Amplitude::to_f64(self)
    }
    fn nearest_integer(&self) -> Self {
        let v = self.to_f64().round();
        Amplitude::from_int(v as i64)
    }
    fn checked_sqrt(&self) -> Result<Self, Inexact> {
        self.sqrt().ok_or(Inexact)
    }
}

impl Entry for f64 {
    const EXACT: bool = false;
    fn zero() -> Self {
        0.0
    }
    fn is_zero(&self) -> bool {
        *self == 0.0
    }
    fn checked_add(&self, other: &Self) -> Result<Self, Inexact> {
        Ok(self + other)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rational(v: &BigRational) -> Self {
        ratio_to_f64(v)
    }
    fn from_amplitude(a: &Amplitude) -> Self {
        a.to_f64()
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn nearest_integer(&self) -> Self {
        self.round()
    }
    fn checked_sqrt(&self) -> Result<Self, Inexact> {
        Ok(self.max(0.0).sqrt())
    }
}

/// Row-major sparse matrix storing only nonzero entries.
#[derive(Clone, PartialEq)]
pub struct SparseMatrix<E> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), E>,
}

impl<E: Entry> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, E::from_rational(&BigRational::from_integer(1.into())))
    }

    /// `c · I`.
    pub fn scalar(dim: usize, c: E) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&E> {
        self.entries.get(&(row, col))
    }

    /// Sets an entry; storing a zero removes it.
    pub fn set(&mut self, row: usize, col: usize, value: E) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn map<F: Entry>(&self, f: impl Fn(&E) -> F) -> SparseMatrix<F> {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (r, c, v) in self.iter() {
            out.set(r, c, f(v));
        }
        out
    }

    pub fn to_float(&self) -> SparseMatrix<f64> {
        self.map(|v| v.to_f64())
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for (r, c, v) in self.iter() {
            out.set(c, r, v.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|v| v.neg())
    }

    pub fn scale(&self, c: &E) -> Self {
        self.map(|v| v.mul(c))
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, Inexact> {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut out = self.clone();
        for (&k, v) in &rhs.entries {
            out.accumulate(k, v)?;
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, Inexact> {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, Inexact> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch");
        let mut rhs_rows: Vec<Vec<(usize, &E)>> = vec![Vec::new(); rhs.rows];
        for (r, c, v) in rhs.iter() {
            rhs_rows[r].push((c, v));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (i, k, a) in self.iter() {
            for &(j, b) in &rhs_rows[k] {
                out.accumulate((i, j), &a.mul(b))?;
            }
        }
        Ok(out)
    }

    /// `AB + BA`.
    pub fn anticommutator(&self, rhs: &Self) -> Result<Self, Inexact> {
        self.mul(rhs)?.add(&rhs.mul(self)?)
    }

    /// `AB - BA`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self, Inexact> {
        self.mul(rhs)?.sub(&rhs.mul(self)?)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.entries
            .values()
            .map(|v| v.to_f64().abs())
            .fold(0.0, f64::max)
    }

    /// True when every column holds at most one nonzero entry.
    pub fn is_monomial_by_column(&self) -> bool {
        let mut seen = vec![false; self.cols];
        for &(_, c) in self.entries.keys() {
            if std::mem::replace(&mut seen[c], true) {
                return false;
            }
        }
        true
    }

    fn accumulate(&mut self, key: (usize, usize), v: &E) -> Result<(), Inexact> {
        let sum = match self.entries.get(&key) {
            Some(old) => old.checked_add(v)?,
            None => v.clone(),
        };
        if sum.is_zero() {
            self.entries.remove(&key);
        } else {
            self.entries.insert(key, sum);
        }
        Ok(())
    }
}

impl<E: Entry> Debug for SparseMatrix<E> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SparseMatrix({}x{}) {{", self.rows, self.cols)?;
        for (r, c, v) in self.iter() {
            write!(f, " ({r},{c})={v}")?;
        }
        write!(f, " }}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_collapses_and_cancels() {
        let mut a = SparseMatrix::<Amplitude>::zeros(2, 2);
        a.set(1, 0, Amplitude::sqrt_of_int(2));
        let at = a.transpose();
        let ac = a.anticommutator(&at).unwrap();
        assert_eq!(ac.get(0, 0), Some(&Amplitude::from_int(2)));
        assert_eq!(ac.get(1, 1), Some(&Amplitude::from_int(2)));
        let z = a.sub(&a).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn incommensurable_sum_is_reported() {
        let mut a = SparseMatrix::<Amplitude>::zeros(1, 1);
        a.set(0, 0, Amplitude::sqrt_of_int(2));
        let mut b = SparseMatrix::<Amplitude>::zeros(1, 1);
        b.set(0, 0, Amplitude::sqrt_of_int(3));
        assert_eq!(a.add(&b), Err(Inexact));
        let f = a.to_float().add(&b.to_float()).unwrap();
        assert!((f.get(0, 0).unwrap() - (2f64.sqrt() + 3f64.sqrt())).abs() < 1e-15);
    }
}
