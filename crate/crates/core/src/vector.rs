//! Small fixed-capacity complex vectors.
//!
//! Every ambient representative in the crate lives in `C^(n+1)` with `n`
//! small (the verification models use at most four coordinates), so vectors
//! are stored inline and are `Copy`. Real models use the same type with zero
//! imaginary parts.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// Maximum number of coordinates a [`CVector`] can hold.
pub const MAX_DIM: usize = 8;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Clone, Copy, PartialEq)]
pub struct CVector {
    data: [Complex64; MAX_DIM],
    len: usize,
}

impl CVector {
    pub fn zeros(len: usize) -> Self {
        assert!(len <= MAX_DIM, "vector length {len} exceeds capacity {MAX_DIM}");
        Self { data: [ZERO; MAX_DIM], len }
    }

    pub fn basis(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v[index] = Complex64::new(1.0, 0.0);
        v
    }

    pub fn from_slice(values: &[Complex64]) -> Self {
        let mut v = Self::zeros(values.len());
        v.data[..values.len()].copy_from_slice(values);
        v
    }

    pub fn from_real(values: &[f64]) -> Self {
        let mut v = Self::zeros(values.len());
        for (slot, &x) in v.data.iter_mut().zip(values) {
            *slot = Complex64::new(x, 0.0);
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn as_slice(&self) -> &[Complex64] {
        &self.data[..self.len]
    }

    #[inline]
    pub fn as_mut_slice(&mut self) -> &mut [Complex64] {
        &mut self.data[..self.len]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Complex64> {
        self.as_slice().iter()
    }

    /// Euclidean Hermitian product `sum conj(a_i) b_i`.
    #[inline]
    pub fn dot(&self, other: &Self) -> Complex64 {
        debug_assert_eq!(self.len, other.len);
        let mut acc = ZERO;
        for i in 0..self.len {
            acc += self.data[i].conj() * other.data[i];
        }
        acc
    }

    #[inline]
    pub fn norm_sqr(&self) -> f64 {
        self.iter().map(|c| c.norm_sqr()).sum()
    }

    #[inline]
    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Largest coordinate modulus.
    pub fn max_modulus(&self) -> f64 {
        self.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: f64) -> Self {
        let mut out = *self;
        for c in out.as_mut_slice() {
            *c *= factor;
        }
        out
    }

    pub fn scale_complex(&self, factor: Complex64) -> Self {
        let mut out = *self;
        for c in out.as_mut_slice() {
            *c *= factor;
        }
        out
    }

    pub fn conj(&self) -> Self {
        let mut out = *self;
        for c in out.as_mut_slice() {
            *c = c.conj();
        }
        out
    }

    pub fn is_real(&self, tol: f64) -> bool {
        self.iter().all(|c| c.im.abs() <= tol * (1.0 + c.re.abs()))
    }

    /// Norm of `a ^ b` for the Euclidean Hermitian structure:
    /// `sqrt(|a|^2 |b|^2 - |<a,b>|^2)`, computed from the 2x2 minors.
    pub fn wedge_norm(&self, other: &Self) -> f64 {
        let mut acc = 0.0;
        for i in 0..self.len {
            for j in (i + 1)..self.len {
                let minor = self.data[i] * other.data[j] - self.data[j] * other.data[i];
                acc += minor.norm_sqr();
            }
        }
        acc.sqrt()
    }

    /// Rescales so that the largest coordinate has modulus one.
    pub fn max_normalized(&self) -> Self {
        let m = self.max_modulus();
        if m > 0.0 {
            self.scale(1.0 / m)
        } else {
            *self
        }
    }

    /// Concatenates `self` with `other`.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.len + other.len);
        out.data[..self.len].copy_from_slice(self.as_slice());
        out.data[self.len..self.len + other.len].copy_from_slice(other.as_slice());
        out
    }
}

impl Index<usize> for CVector {
    type Output = Complex64;
    #[inline]
    fn index(&self, i: usize) -> &Complex64 {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for CVector {
    #[inline]
    fn index_mut(&mut self, i: usize) -> &mut Complex64 {
        &mut self.as_mut_slice()[i]
    }
}

impl Add for CVector {
    type Output = Self;
    #[inline]
    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl AddAssign for CVector {
    #[inline]
    fn add_assign(&mut self, rhs: Self) {
        debug_assert_eq!(self.len, rhs.len);
        for i in 0..self.len {
            self.data[i] += rhs.data[i];
        }
    }
}

impl Sub for CVector {
    type Output = Self;
    #[inline]
    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl SubAssign for CVector {
    #[inline]
    fn sub_assign(&mut self, rhs: Self) {
        debug_assert_eq!(self.len, rhs.len);
        for i in 0..self.len {
            self.data[i] -= rhs.data[i];
        }
    }
}

impl Neg for CVector {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl Mul<f64> for CVector {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        self.scale(rhs)
    }
}

impl Mul<Complex64> for CVector {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Complex64) -> Self {
        self.scale_complex(rhs)
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wedge_norm_matches_lagrange_identity() {
        let a = CVector::from_slice(&[Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.3), Complex64::new(0.2, 0.0)]);
        let b = CVector::from_slice(&[Complex64::new(0.1, -1.0), Complex64::new(2.0, 0.7), Complex64::new(-1.0, 0.4)]);
        let lhs = a.wedge_norm(&b).powi(2);
        let rhs = a.norm_sqr() * b.norm_sqr() - a.dot(&b).norm_sqr();
        assert!((lhs - rhs).abs() < 1e-12);
        assert!(a.wedge_norm(&a.scale_complex(Complex64::new(0.3, -2.0))) < 1e-14);
    }

    #[test]
    fn concat_and_basis() {
        let e = CVector::basis(2, 1);
        let v = e.concat(&CVector::from_real(&[3.0]));
        assert_eq!(v.len(), 3);
        assert_eq!(v[1], Complex64::new(1.0, 0.0));
        assert_eq!(v[2], Complex64::new(3.0, 0.0));
    }
}
