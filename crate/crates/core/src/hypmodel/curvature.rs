use num_complex::Complex64;

use super::{Field, ModelSpace, TangentVector, TANGENT_TOL};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JacobiKind {
    /// Jacobi field vanishing at `t = 0` (distance spheres).
    Sphere,
    /// Stable Jacobi field along a horosphere normal.
    Horosphere,
}

/// Splits `v` in `u^perp` into its components in the eigenspaces of the
/// curvature operator `R(., u) u` for eigenvalues `-1` and `-4`.
pub fn curvature_eigensplit(u: &TangentVector, v: &TangentVector) -> Result<(TangentVector, TangentVector)> {
    let model = u.at().model();
    if model != v.at().model() {
        return Err(Error::ModelMismatch);
    }
    if u.at().rep().wedge_norm(v.at().rep()) > super::PROJECTIVE_TOL * (1.0 + u.at().rep().norm_sqr()) {
        return Err(Error::Precondition("vectors are based at different points".into()));
    }
    if (u.norm_sqr() - 1.0).abs() > TANGENT_TOL {
        return Err(Error::Normalization { norm_sqr: u.norm_sqr() });
    }
    let ortho = u.inner(v);
    if ortho.abs() > 1e-9 * (1.0 + v.norm()) {
        return Err(Error::Precondition(format!("v is not orthogonal to u (<u, v> = {ortho:e})")));
    }
    let zero = TangentVector::from_parts(*v.at(), v.vec().scale(0.0));
    if model.field() == Field::Real {
        return Ok((*v, zero));
    }
    // E(-4) is spanned by J u; the coefficient of v along it is Im <u, v>
    let c = model.form(u.vec(), v.vec()).im;
    let ju = u.vec().scale_complex(Complex64::new(0.0, c));
    let v2 = TangentVector::from_parts(*v.at(), ju);
    Ok((v.sub(&v2), v2))
}

/// Dimensions of `(E(-1), E(-4))` inside `u^perp`.
pub fn eigenspace_dims(model: &ModelSpace) -> (usize, usize) {
    match model.field() {
        Field::Real => (model.n() - 1, 0),
        Field::Complex => (2 * (model.n() - 1), 1),
    }
}

/// Growth factor of a Jacobi field in an eigenspace with eigenvalue `lambda`.
pub fn jacobi_scale(lambda: f64, t: f64, kind: JacobiKind) -> Result<f64> {
    if lambda != -1.0 && lambda != -4.0 {
        return Err(Error::Domain(format!("eigenvalue {lambda} is not -1 or -4")));
    }
    let k = (-lambda).sqrt();
    match kind {
        JacobiKind::Sphere => {
            if t < 0.0 {
                return Err(Error::Domain("sphere Jacobi fields require t >= 0".into()));
            }
            Ok((k * t).sinh() / k)
        }
        JacobiKind::Horosphere => Ok((k * t).exp()),
    }
}

/// Hyperbolicity constant of the real hyperbolic plane, twice the log of
/// the golden ratio. It bounds the constant of every CAT(-1) space.
pub fn plane_delta() -> f64 {
    2.0 * (0.5 * (1.0 + 5f64.sqrt())).ln()
}

/// True when the two smallest of `a, b, c` differ by at most `delta`.
pub fn is_delta_triple(a: f64, b: f64, c: f64, delta: f64) -> bool {
    let mut v = [a, b, c];
    v.sort_by(f64::total_cmp);
    v[1] - v[0] <= delta
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vector::CVector;

    #[test]
    fn split_of_j_u_and_complex_orthogonal() {
        let m = ModelSpace::complex(2);
        let o = m.origin();
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let u = TangentVector::new(o, CVector::from_slice(&[c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])).unwrap();
        let (v1, v2) = curvature_eigensplit(&u, &u.rotate_j()).unwrap();
        assert!(v1.norm() < 1e-15 && (v2.norm() - 1.0).abs() < 1e-15);
        let w = TangentVector::new(o, CVector::from_slice(&[c(0.0, 0.0), c(0.3, 0.4), c(0.0, 0.0)])).unwrap();
        let (w1, w2) = curvature_eigensplit(&u, &w).unwrap();
        assert!(w2.norm() < 1e-15 && (w1.norm() - 0.5).abs() < 1e-15);
        assert!(curvature_eigensplit(&u, &u).is_err());
        assert_eq!(eigenspace_dims(&m), (2, 1));
    }

    #[test]
    fn jacobi_factors() {
        assert!((jacobi_scale(-1.0, 1.5, JacobiKind::Sphere).unwrap() - 1.5f64.sinh()).abs() < 1e-15);
        assert_eq!(jacobi_scale(-4.0, 0.0, JacobiKind::Sphere).unwrap(), 0.0);
        assert!((jacobi_scale(-1.0, 2.0, JacobiKind::Horosphere).unwrap() - 2f64.exp()).abs() < 1e-14);
        assert!(jacobi_scale(-2.0, 1.0, JacobiKind::Sphere).is_err());
    }

    #[test]
    fn delta_triples() {
        assert!(is_delta_triple(1.0, 1.0, 5.0, 0.1));
        assert!(!is_delta_triple(1.0, 3.0, 5.0, 0.5));
        assert!(is_delta_triple(0.0, 0.96, 7.0, 0.9624));
    }
}
