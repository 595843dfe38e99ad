//! The Heisenberg group `N = E1 (+) E2` with `E1 = C^m`, `E2 = R` and bracket
//! `[v, w] = 2 Im <v, w>`.
//!
//! Points are written in exponential coordinates `(z, t)`, so the group law
//! from the Baker-Campbell-Hausdorff formula is
//! `(z, t) (z', t') = (z + z', t + t' + Im <z, z'>)`.

mod cc;
mod path;
mod riemannian;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::vector::CVector;

pub(crate) use cc::initial_polyline;
pub use cc::{
    cc_distance, cc_solve, shooting_distance, shooting_parameter, shooting_path, variational_distance, CcMethod,
    CcSolution, VariationalOptions,
};
pub use path::{horizontal_length, HorizontalPath, HORIZONTAL_TOL};
pub use riemannian::{riemannian_distance, riemannian_solve, RiemannianOptions};

/// Hermitian product `sum conj(a_i) b_i` on `E1`.
#[inline]
fn herm(a: &CVector, b: &CVector) -> Complex64 {
    a.dot(b)
}

/// Element of the Lie algebra.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisVector {
    pub z: CVector,
    pub t: f64,
}

impl HeisVector {
    pub fn new(z: CVector, t: f64) -> Self {
        Self { z, t }
    }

    pub fn horizontal(z: CVector) -> Self {
        Self { z, t: 0.0 }
    }

    /// `[v, w] = 2 Im <v, w>`, an element of `E2`.
    pub fn bracket(&self, other: &Self) -> Result<f64> {
        check_dims(self.z.len(), other.z.len())?;
        Ok(2.0 * herm(&self.z, &other.z).im)
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { z: self.z.scale(s), t: s * self.t }
    }

    /// The exponential map, which is the identity in exponential coordinates.
    pub fn exp(&self) -> HeisPoint {
        HeisPoint { z: self.z, t: self.t }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeisPoint {
    z: CVector,
    t: f64,
}

fn check_dims(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::Domain(format!("Heisenberg dimension mismatch ({a} vs {b})")));
    }
    Ok(())
}

impl HeisPoint {
    pub fn new(z: CVector, t: f64) -> Self {
        Self { z, t }
    }

    /// Point of the first Heisenberg group, `z` in `C`.
    pub fn planar(z: Complex64, t: f64) -> Self {
        Self { z: CVector::from_slice(&[z]), t }
    }

    pub fn identity(dim: usize) -> Self {
        Self { z: CVector::zeros(dim), t: 0.0 }
    }

    pub fn z(&self) -> &CVector {
        &self.z
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Number of complex coordinates of `E1`.
    pub fn dim(&self) -> usize {
        self.z.len()
    }

    pub fn inverse(&self) -> Self {
        Self { z: -self.z, t: -self.t }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        group_mul(self, other)
    }

    /// The point `self^{-1} other`.
    pub fn relative(&self, other: &Self) -> Result<Self> {
        group_mul(&self.inverse(), other)
    }

    pub fn log(&self) -> HeisVector {
        HeisVector { z: self.z, t: self.t }
    }
}

pub fn group_mul(p: &HeisPoint, q: &HeisPoint) -> Result<HeisPoint> {
    check_dims(p.dim(), q.dim())?;
    Ok(HeisPoint { z: p.z + q.z, t: p.t + q.t + herm(&p.z, &q.z).im })
}

/// The automorphism `h_lambda (z, t) = (lambda z, lambda^2 t)`.
pub fn dilation(lambda: f64, p: &HeisPoint) -> Result<HeisPoint> {
    if lambda <= 0.0 || !lambda.is_finite() {
        return Err(Error::Domain(format!("dilation factor {lambda} must be positive")));
    }
    Ok(HeisPoint { z: p.z.scale(lambda), t: lambda * lambda * p.t })
}

/// Group commutator `a b a^{-1} b^{-1}`.
pub fn commutator(a: &HeisPoint, b: &HeisPoint) -> Result<HeisPoint> {
    group_mul(&group_mul(&group_mul(a, b)?, &a.inverse())?, &b.inverse())
}

/// Koranyi gauge `(|z|^4 + t^2)^{1/4}`.
pub fn gauge(p: &HeisPoint) -> f64 {
    let r2 = p.z.norm_sqr();
    (r2 * r2 + p.t * p.t).sqrt().sqrt()
}

/// Cygan metric `N(p^{-1} q)`.
pub fn cygan_distance(p: &HeisPoint, q: &HeisPoint) -> Result<f64> {
    Ok(gauge(&p.relative(q)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(re: f64, im: f64, t: f64) -> HeisPoint {
        HeisPoint::planar(Complex64::new(re, im), t)
    }

    #[test]
    fn group_axioms() {
        let p = pt(0.3, -1.2, 0.7);
        let q = pt(-2.0, 0.5, 1.1);
        let r = pt(0.9, 0.4, -0.3);
        let e = HeisPoint::identity(1);
        assert_eq!(group_mul(&e, &p).unwrap(), p);
        let pp = group_mul(&p, &p.inverse()).unwrap();
        assert!(pp.z.norm() == 0.0 && pp.t == 0.0);
        let a = group_mul(&group_mul(&p, &q).unwrap(), &r).unwrap();
        let b = group_mul(&p, &group_mul(&q, &r).unwrap()).unwrap();
        assert!((a.z - b.z).norm() < 1e-15 && (a.t - b.t).abs() < 1e-15);
        assert!(group_mul(&p, &HeisPoint::identity(2)).is_err());
    }

    #[test]
    fn commutator_is_the_bracket() {
        let v = HeisVector::horizontal(CVector::from_slice(&[Complex64::new(1.0, 0.5)]));
        let w = HeisVector::horizontal(CVector::from_slice(&[Complex64::new(-0.2, 1.0)]));
        let br = v.bracket(&w).unwrap();
        for s in [1e-2, 1e-3] {
            let c = commutator(&v.scaled(s).exp(), &w.scaled(s).exp()).unwrap();
            assert!(c.z.norm() < 1e-15);
            assert!((c.t / (s * s) - br).abs() < 1e-9);
        }
    }

    #[test]
    fn dilations_are_automorphisms() {
        let p = pt(0.3, -1.2, 0.7);
        let q = pt(-2.0, 0.5, 1.1);
        assert_eq!(dilation(1.0, &p).unwrap(), p);
        let a = dilation(2.0, &dilation(0.75, &p).unwrap()).unwrap();
        let b = dilation(1.5, &p).unwrap();
        assert!((a.z - b.z).norm() < 1e-15 && (a.t - b.t).abs() < 1e-15);
        let lhs = dilation(3.0, &group_mul(&p, &q).unwrap()).unwrap();
        let rhs = group_mul(&dilation(3.0, &p).unwrap(), &dilation(3.0, &q).unwrap()).unwrap();
        assert!((lhs.z - rhs.z).norm() < 1e-14 && (lhs.t - rhs.t).abs() < 1e-13);
        assert!(dilation(0.0, &p).is_err());
    }

    #[test]
    fn cygan_gauge_homogeneity() {
        let p = pt(0.3, -1.2, 0.7);
        let q = pt(-2.0, 0.5, 1.1);
        assert_eq!(cygan_distance(&p, &p).unwrap(), 0.0);
        let d = cygan_distance(&p, &q).unwrap();
        let hp = dilation(2.5, &p).unwrap();
        let hq = dilation(2.5, &q).unwrap();
        assert!((cygan_distance(&hp, &hq).unwrap() - 2.5 * d).abs() < 1e-13);
    }
}
