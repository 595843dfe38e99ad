use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use super::{Field, IdealPoint, ModelSpace, ProjectivePoint, TangentVector};
use crate::error::{Error, Result};
use crate::vector::{CVector, MAX_DIM};

/// Linear map of `K^(n+1)` preserving the Hermitian form, stored by columns.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry {
    model: ModelSpace,
    cols: [CVector; MAX_DIM],
}

impl Isometry {
    pub fn identity(model: ModelSpace) -> Self {
        let dim = model.ambient_dim();
        let mut cols = [CVector::zeros(dim); MAX_DIM];
        for (i, c) in cols.iter_mut().enumerate().take(dim) {
            *c = CVector::basis(dim, i);
        }
        Self { model, cols }
    }

    /// Hyperbolic translation of length `s` along the axis through the
    /// origin in the direction of the first coordinate.
    pub fn boost(model: ModelSpace, s: f64) -> Self {
        let mut g = Self::identity(model);
        let dim = model.ambient_dim();
        let (c, sh) = (s.cosh(), s.sinh());
        g.cols[0] = CVector::basis(dim, 0).scale(c) + CVector::basis(dim, model.n()).scale(sh);
        g.cols[model.n()] = CVector::basis(dim, 0).scale(sh) + CVector::basis(dim, model.n()).scale(c);
        g
    }

    /// Random element of the stabilizer of the origin (a unitary or
    /// orthogonal block and, for complex models, a phase on the last axis).
    pub fn random_rotation<R: Rng + ?Sized>(model: ModelSpace, rng: &mut R) -> Self {
        let dim = model.ambient_dim();
        let n = model.n();
        let mut g = Self::identity(model);
        let mut basis: Vec<CVector> = Vec::with_capacity(n);
        while basis.len() < n {
            let mut v = CVector::zeros(dim);
            for i in 0..n {
                v[i] = gaussian_scalar(model.field(), rng);
            }
            for b in &basis {
                let c = b.dot(&v);
                v -= b.scale_complex(c);
            }
            let norm = v.norm();
            if norm > 1e-6 {
                basis.push(v.scale(1.0 / norm));
            }
        }
        g.cols[..n].copy_from_slice(&basis);
        if model.field() == Field::Complex {
            let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
            g.cols[n] = CVector::basis(dim, n).scale_complex(Complex64::from_polar(1.0, phase));
        }
        g
    }

    /// Random isometry: rotation, boost of length up to `max_shift`, rotation.
    pub fn random<R: Rng + ?Sized>(model: ModelSpace, max_shift: f64, rng: &mut R) -> Self {
        let a = Self::random_rotation(model, rng);
        let s: f64 = rng.random_range(0.0..=max_shift);
        let b = Self::random_rotation(model, rng);
        a.compose(&Self::boost(model, s)).compose(&b)
    }

    pub fn model(&self) -> ModelSpace {
        self.model
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut out = *self;
        for j in 0..self.model.ambient_dim() {
            out.cols[j] = self.apply(&other.cols[j]);
        }
        out
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        let dim = self.model.ambient_dim();
        let mut out = CVector::zeros(dim);
        for j in 0..dim {
            out += self.cols[j].scale_complex(v[j]);
        }
        out
    }

    pub fn apply_point(&self, x: &ProjectivePoint) -> Result<ProjectivePoint> {
        if x.model() != self.model {
            return Err(Error::ModelMismatch);
        }
        ProjectivePoint::new(self.model, self.apply(x.rep()))
    }

    pub fn apply_ideal(&self, xi: &IdealPoint) -> Result<IdealPoint> {
        if xi.model() != self.model {
            return Err(Error::ModelMismatch);
        }
        Ok(IdealPoint::from_null(self.model, self.apply(xi.rep())))
    }

    pub fn apply_tangent(&self, v: &TangentVector) -> Result<TangentVector> {
        let at = self.apply_point(v.at())?;
        // keep the base representative and the vector on the same scale
        let scale = (-self.model.form_sqr(&self.apply(v.at().rep()))).sqrt();
        Ok(TangentVector::from_parts(at, self.apply(v.vec()).scale(1.0 / scale)))
    }

    /// Largest deviation `|<g e_i, g e_j> - <e_i, e_j>|`.
    pub fn form_defect(&self) -> f64 {
        let dim = self.model.ambient_dim();
        let mut worst: f64 = 0.0;
        for i in 0..dim {
            for j in 0..dim {
                let expected = if i != j {
                    0.0
                } else if i == self.model.n() {
                    -1.0
                } else {
                    1.0
                };
                worst = worst.max((self.model.form(&self.cols[i], &self.cols[j]) - expected).norm());
            }
        }
        worst
    }
}

pub(crate) fn gaussian_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    match field {
        Field::Real => Complex64::new(re, 0.0),
        Field::Complex => Complex64::new(re, rng.sample(StandardNormal)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn random_maps_preserve_the_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for model in [ModelSpace::real(3), ModelSpace::complex(2), ModelSpace::complex(3)] {
            let g = Isometry::random(model, 2.0, &mut rng);
            assert!(g.form_defect() < 1e-12, "{}", g.form_defect());
            if model.field() == Field::Real {
                assert!(g.cols.iter().take(model.ambient_dim()).all(|c| c.is_real(0.0)));
            }
        }
    }
}
