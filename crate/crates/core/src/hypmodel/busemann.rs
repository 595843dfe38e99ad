use super::{distance, geodesic_ray, IdealGeodesic, IdealPoint, ModelSpace, ProjectivePoint, TangentVector};
use crate::error::{Error, Result};
use crate::solve::limit_at_infinity;
use crate::vector::CVector;

/// Busemann function centered at `center`, normalized to vanish at
/// `basepoint`.
///
/// With the center representative scaled so that `<O, W> = -1`, the function
/// is `b(x) = ln |<X, W>|` on normalized representatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BusemannChart {
    center: IdealPoint,
    basepoint: ProjectivePoint,
    omega: CVector,
}

impl BusemannChart {
    pub fn new(center: IdealPoint, basepoint: ProjectivePoint) -> Result<Self> {
        if center.model() != basepoint.model() {
            return Err(Error::ModelMismatch);
        }
        let omega = center.normalized_at(&basepoint);
        Ok(Self { center, basepoint, omega })
    }

    pub fn model(&self) -> ModelSpace {
        self.center.model()
    }

    pub fn center(&self) -> &IdealPoint {
        &self.center
    }

    pub fn basepoint(&self) -> &ProjectivePoint {
        &self.basepoint
    }

    /// Center representative with `<basepoint, W> = -1`.
    pub fn omega(&self) -> &CVector {
        &self.omega
    }

    fn check(&self, x: &ProjectivePoint) -> Result<()> {
        if x.model() != self.model() {
            return Err(Error::ModelMismatch);
        }
        Ok(())
    }

    /// Closed-form value `ln |<X, W>|`.
    pub fn value(&self, x: &ProjectivePoint) -> Result<f64> {
        self.check(x)?;
        Ok(self.model().form(x.rep(), &self.omega).norm().ln())
    }

    /// `|x gamma(t)| - t` along the ray from the basepoint to the center.
    pub fn value_at_ray(&self, x: &ProjectivePoint, t: f64) -> Result<f64> {
        self.check(x)?;
        let u = TangentVector::from_parts(self.basepoint, self.omega - *self.basepoint.rep());
        let g = geodesic_ray(&self.basepoint, &u, t)?;
        Ok(distance(x, &g)? - t)
    }

    /// The defining limit `lim (|x gamma(t)| - t)`.
    pub fn value_by_limit(&self, x: &ProjectivePoint) -> Result<f64> {
        self.check(x)?;
        limit_at_infinity(|t| self.value_at_ray(x, t).unwrap_or(f64::NAN))
    }

    /// Unit gradient at `x`: the velocity of the geodesic from the center
    /// through `x`, pointing away from the center.
    pub fn gradient(&self, x: &ProjectivePoint) -> Result<TangentVector> {
        self.check(x)?;
        let c = -1.0 / self.model().form(x.rep(), &self.omega);
        Ok(TangentVector::from_parts(*x, *x.rep() - self.omega.scale_complex(c)))
    }

    /// Same center, renormalized to vanish at `basepoint`.
    pub fn rebased(&self, basepoint: ProjectivePoint) -> Result<Self> {
        Self::new(self.center, basepoint)
    }

    /// Chart for `b + shift` with the same center.
    pub fn shifted(&self, shift: f64) -> Result<Self> {
        // b(o') = -shift on the geodesic through the basepoint
        let u = TangentVector::from_parts(self.basepoint, self.omega - *self.basepoint.rep());
        let rep = self.basepoint.rep().scale(shift.cosh()) + u.vec().scale(shift.sinh());
        self.rebased(ProjectivePoint::from_normalized(self.model(), rep))
    }

    /// Geodesic from the center to `xi`, parameterized by Busemann level:
    /// `b(gamma(s)) = s`.
    pub fn level_geodesic(&self, xi: &IdealPoint) -> Result<IdealGeodesic> {
        if xi.model() != self.model() {
            return Err(Error::ModelMismatch);
        }
        let pairing = self.model().form(&self.omega, xi.rep());
        if xi.projectively_eq(&self.center) || pairing.norm() < 1e-15 {
            return Err(Error::CenterCollision);
        }
        let head = xi.rep().scale_complex(-2.0 / pairing);
        Ok(IdealGeodesic::from_scaled(self.model(), self.omega, head))
    }

    /// Representative of `xi` scaled so that `<W, Xi> = -2`.
    pub(crate) fn level_rep(&self, xi: &IdealPoint) -> Result<CVector> {
        let pairing = self.model().form(&self.omega, xi.rep());
        if xi.projectively_eq(&self.center) || pairing.norm() < 1e-15 {
            return Err(Error::CenterCollision);
        }
        Ok(xi.rep().scale_complex(-2.0 / pairing))
    }

    /// Point at level `s` on the geodesic from the center to `xi`.
    pub fn level_point(&self, xi: &IdealPoint, s: f64) -> Result<ProjectivePoint> {
        Ok(self.level_geodesic(xi)?.point(s))
    }

    /// Image of the chart under a form-preserving map.
    pub fn transformed(&self, g: &super::Isometry) -> Result<Self> {
        Self::new(g.apply_ideal(&self.center)?, g.apply_point(&self.basepoint)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn chart() -> BusemannChart {
        let m = ModelSpace::complex(2);
        let omega = IdealPoint::new(
            m,
            CVector::from_slice(&[Complex64::new(0.6, 0.0), Complex64::new(0.0, 0.8), Complex64::new(1.0, 0.0)]),
        )
        .unwrap();
        BusemannChart::new(omega, m.origin()).unwrap()
    }

    #[test]
    fn vanishes_at_basepoint_and_decreases_toward_center() {
        let c = chart();
        let o = c.basepoint;
        assert!(c.value(&o).unwrap().abs() < 1e-15);
        let u = TangentVector::from_parts(o, c.omega - *o.rep());
        // the pairing cancels like e^{-2t} against representatives of size e^t
        for t in [0.5, 2.0, 9.0] {
            let x = geodesic_ray(&o, &u, t).unwrap();
            assert!((c.value(&x).unwrap() + t).abs() < 1e-15 * (2.0 * t).exp());
        }
    }

    #[test]
    fn closed_form_matches_limit() {
        let c = chart();
        let m = c.model();
        let x = ProjectivePoint::new(
            m,
            CVector::from_slice(&[Complex64::new(0.3, -0.2), Complex64::new(0.1, 0.5), Complex64::new(1.4, 0.0)]),
        )
        .unwrap();
        let closed = c.value(&x).unwrap();
        assert!((c.value_at_ray(&x, 30.0).unwrap() - closed).abs() < 1e-8);
        assert!((c.value_by_limit(&x).unwrap() - closed).abs() < 1e-8);
    }

    #[test]
    fn level_geodesic_tracks_levels() {
        let c = chart();
        let m = c.model();
        let xi = IdealPoint::new(
            m,
            CVector::from_slice(&[Complex64::new(-1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]),
        )
        .unwrap();
        let g = c.level_geodesic(&xi).unwrap();
        for s in [-3.0, 0.0, 2.5] {
            assert!((c.value(&g.point(s)).unwrap() - s).abs() < 1e-12);
        }
        assert_eq!(c.level_geodesic(c.center()).unwrap_err(), Error::CenterCollision);
    }

    #[test]
    fn shifted_chart_differs_by_constant() {
        let c = chart();
        let s = c.shifted(0.7).unwrap();
        let x = c.basepoint;
        assert!((s.value(&x).unwrap() - c.value(&x).unwrap() - 0.7).abs() < 1e-12);
    }
}
