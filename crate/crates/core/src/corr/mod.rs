//! Identifications between the Heisenberg group, horospheres, the boundary
//! at infinity and the unit tangent sphere.
//!
//! For a chart with center `w` and basepoint `o`, scale `W` so that
//! `<O, W> = -1` and pick an orthonormal frame `e_1..e_m` of the complement
//! of `span{O, W}`. Then
//!
//! ```text
//! embed(z, t) = O + sum z_i e_i + (|z|^2 / 2 + i t) W
//! ideal(z, t) = 2 embed(z, t) - W
//! ```
//!
//! `embed` is an isometry from the left-invariant metric with `E1 (+) E2`
//! orthonormal onto the horosphere `b = 0`, and `ideal` is the endpoint of
//! the geodesic from `w` through `embed(z, t)`. Both facts are checked
//! numerically when a chart is built.

mod ambient;
mod horo;
mod sphere;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::heisen::{HeisPoint, HeisVector};
use crate::hypmodel::{
    direction_to_ideal, direction_to_point, distance, geodesic_between_ideal, BusemannChart, Field, IdealPoint,
    ModelSpace, ProjectivePoint, TangentVector, Vertex,
};
use crate::solve::roots::monotone_root;
use crate::vector::{CVector, MAX_DIM};

pub use ambient::AmbientOptions;
pub use horo::{horospherical_distance, horospherical_solve, project_curve_to_level, HoroMethod, LevelCurve};
pub use sphere::{
    conformal_factor, horo_to_sphere_map, sphere_image_length, sphere_map_differential, spherical_distance,
    spherical_solve, SphereDifferential, SphereOptions, SphereSolution,
};

/// Number of samples used to validate a chart before it is handed out.
pub const VALIDATION_SAMPLES: usize = 200;

/// Orthonormal basis (for the form) of the complement of `span_K{vs}`.
fn orthonormal_complement(model: &ModelSpace, vs: &[(CVector, f64)]) -> Vec<CVector> {
    let dim = model.ambient_dim();
    let mut basis: Vec<CVector> = Vec::new();
    let target = dim - vs.len();
    for i in 0..dim {
        let mut w = CVector::basis(dim, i);
        // (v, <v, v>) pairs with <v, v> = +-1 and the vs mutually orthogonal
        for (v, q) in vs {
            let c = model.form(v, &w) * *q;
            w -= v.scale_complex(c);
        }
        for b in &basis {
            let c = model.form(b, &w);
            w -= b.scale_complex(c);
        }
        let q = model.form_sqr(&w);
        if q > 1e-8 {
            basis.push(w.scale(1.0 / q.sqrt()));
        }
        if basis.len() == target {
            break;
        }
    }
    basis
}

/// Horosphere `b = 0` of a Busemann chart, parameterized by the Heisenberg
/// group.
#[derive(Debug, Clone, PartialEq)]
pub struct HoroChart {
    chart: BusemannChart,
    frame: [CVector; MAX_DIM],
    m: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChartValidation {
    pub samples: usize,
    /// Largest `|b(embed(p))|`.
    pub level_error: f64,
    /// Largest change of an embedded distance under a left translation.
    pub invariance_error: f64,
    /// Largest relative error of the differential's norm.
    pub isometry_error: f64,
    /// Largest distance between `embed(p)` and the level-0 point of the
    /// geodesic from the center to `ideal(p)`.
    pub radial_error: f64,
}

impl ChartValidation {
    pub fn passed(&self) -> bool {
        self.level_error <= 1e-8
            && self.invariance_error <= 1e-8
            && self.isometry_error <= 1e-5
            && self.radial_error <= 1e-6
    }
}

/// Random Heisenberg point adapted to the model: coordinates of `z`
/// uniform on `[-radius, radius]` and `t` uniform on `[-radius^2, radius^2]`,
/// real and horizontal in the real model.
pub fn random_heis_point<R: Rng + ?Sized>(model: ModelSpace, radius: f64, rng: &mut R) -> HeisPoint {
    let m = model.n() - 1;
    let mut z = CVector::zeros(m);
    for j in 0..m {
        let re = rng.random_range(-radius..=radius);
        let im = if model.is_complex() { rng.random_range(-radius..=radius) } else { 0.0 };
        z[j] = Complex64::new(re, im);
    }
    let t = if model.is_complex() { rng.random_range(-radius * radius..=radius * radius) } else { 0.0 };
    HeisPoint::new(z, t)
}

/// Random Lie algebra direction adapted to the model.
pub fn random_heis_vector<R: Rng + ?Sized>(model: ModelSpace, horizontal: bool, rng: &mut R) -> HeisVector {
    let p = random_heis_point(model, 1.0, rng);
    HeisVector::new(*p.z(), if horizontal { 0.0 } else { p.t() })
}

impl HoroChart {
    /// Builds the frame and validates it on [`VALIDATION_SAMPLES`] points.
    pub fn new(chart: BusemannChart) -> Result<Self> {
        let hc = Self::unchecked(chart);
        let report = hc.validate(VALIDATION_SAMPLES, 0x5eed);
        if !report.passed() {
            return Err(Error::Chart(format!("horosphere chart failed validation: {report:?}")));
        }
        Ok(hc)
    }

    fn unchecked(chart: BusemannChart) -> Self {
        let model = chart.model();
        let o = *chart.basepoint().rep();
        let u = *chart.omega() - o;
        let basis = orthonormal_complement(&model, &[(o, -1.0), (u, 1.0)]);
        let mut frame = [CVector::zeros(model.ambient_dim()); MAX_DIM];
        frame[..basis.len()].copy_from_slice(&basis);
        Self { chart, frame, m: model.n() - 1 }
    }

    pub fn chart(&self) -> &BusemannChart {
        &self.chart
    }

    pub fn model(&self) -> ModelSpace {
        self.chart.model()
    }

    pub fn basepoint(&self) -> &ProjectivePoint {
        self.chart.basepoint()
    }

    /// Number of complex Heisenberg coordinates.
    pub fn heis_dim(&self) -> usize {
        self.m
    }

    pub fn frame(&self) -> &[CVector] {
        &self.frame[..self.m]
    }

    fn check(&self, p: &HeisPoint) -> Result<()> {
        if p.dim() != self.m {
            return Err(Error::Chart(format!("expected {} Heisenberg coordinates, got {}", self.m, p.dim())));
        }
        if self.model().field() == Field::Real && (!p.z().is_real(1e-14) || p.t() != 0.0) {
            return Err(Error::Chart("real horospheres carry real horizontal coordinates only".into()));
        }
        Ok(())
    }

    /// Representative of `embed(p)` with `<X, X> = -1` and `<X, W> = -1`.
    pub(crate) fn embed_rep(&self, p: &HeisPoint) -> CVector {
        let mut x = *self.chart.basepoint().rep();
        for (i, e) in self.frame().iter().enumerate() {
            x += e.scale_complex(p.z()[i]);
        }
        let c = Complex64::new(0.5 * p.z().norm_sqr(), p.t());
        x + self.chart.omega().scale_complex(c)
    }

    pub fn embed(&self, p: &HeisPoint) -> Result<ProjectivePoint> {
        self.check(p)?;
        ProjectivePoint::new(self.model(), self.embed_rep(p))
    }

    /// Heisenberg coordinates of a point on the horosphere.
    pub fn preimage(&self, x: &ProjectivePoint) -> Result<HeisPoint> {
        let level = self.chart.value(x)?;
        if level.abs() > 1e-6 {
            return Err(Error::Chart(format!("point is off the horosphere (b = {level:e})")));
        }
        let model = self.model();
        let pairing = model.form(x.rep(), self.chart.omega());
        let xr = x.rep().scale_complex(-1.0 / pairing);
        let mut z = CVector::zeros(self.m);
        for (i, e) in self.frame().iter().enumerate() {
            z[i] = model.form(e, &xr);
        }
        let c = -1.0 - model.form(self.chart.basepoint().rep(), &xr);
        Ok(self.clean(z, c.im))
    }

    fn clean(&self, mut z: CVector, t: f64) -> HeisPoint {
        if self.model().field() == Field::Real {
            for j in 0..self.m {
                z[j] = Complex64::new(z[j].re, 0.0);
            }
            return HeisPoint::new(z, 0.0);
        }
        HeisPoint::new(z, t)
    }

    /// Runs the chart invariants on `samples` pseudo-random configurations.
    pub fn validate(&self, samples: usize, seed: u64) -> ChartValidation {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = self.model();
        let mut report = ChartValidation {
            samples,
            level_error: 0.0,
            invariance_error: 0.0,
            isometry_error: 0.0,
            radial_error: 0.0,
        };
        let bc = BoundaryChart { horo: self.clone() };
        let fail = |r: &mut ChartValidation| {
            r.level_error = f64::INFINITY;
        };
        for _ in 0..samples {
            let p = random_heis_point(model, 1.5, &mut rng);
            let q = random_heis_point(model, 1.5, &mut rng);
            let g = random_heis_point(model, 1.5, &mut rng);
            let (Ok(xp), Ok(xq)) = (self.embed(&p), self.embed(&q)) else {
                fail(&mut report);
                continue;
            };
            let level = self.chart.value(&xp).unwrap_or(f64::INFINITY).abs();
            report.level_error = report.level_error.max(level);

            let moved = g.mul(&p).and_then(|gp| Ok((gp, g.mul(&q)?)));
            let d0 = distance(&xp, &xq);
            let d1 = moved.and_then(|(gp, gq)| distance(&self.embed(&gp)?, &self.embed(&gq)?));
            match (d0, d1) {
                (Ok(a), Ok(b)) => report.invariance_error = report.invariance_error.max((a - b).abs() / (1.0 + a)),
                _ => fail(&mut report),
            }

            let v = random_heis_vector(model, false, &mut rng);
            match self.differential_norm(&p, &v, 1e-5) {
                Ok(norm) => {
                    let expected = (v.z.norm_sqr() + v.t * v.t).sqrt();
                    report.isometry_error = report.isometry_error.max((norm - expected).abs() / expected);
                }
                Err(_) => fail(&mut report),
            }

            let radial = bc
                .ideal(&p)
                .and_then(|xi| radial_project_horosphere(&self.chart, &xi, 0.0))
                .and_then(|y| distance(&y, &xp));
            match radial {
                Ok(d) => report.radial_error = report.radial_error.max(d),
                Err(_) => fail(&mut report),
            }
        }
        report
    }

    /// Norm of `d/ds embed(p exp(s v))` at `s = 0`, by central differences.
    pub fn differential_norm(&self, p: &HeisPoint, v: &HeisVector, step: f64) -> Result<f64> {
        let plus = p.mul(&v.scaled(step).exp())?;
        let minus = p.mul(&v.scaled(-step).exp())?;
        self.check(&plus)?;
        self.check(&minus)?;
        let d = (self.embed_rep(&plus) - self.embed_rep(&minus)).scale(0.5 / step);
        let x = self.embed(p)?;
        Ok(TangentVector::project(x, d).norm())
    }
}

/// Radial extension of a horosphere chart to the boundary minus the center.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryChart {
    horo: HoroChart,
}

impl BoundaryChart {
    pub fn new(horo: HoroChart) -> Self {
        Self { horo }
    }

    /// Validated chart for the Busemann function centered at `center` with
    /// `b(basepoint) = 0`.
    pub fn from_center(center: IdealPoint, basepoint: ProjectivePoint) -> Result<Self> {
        Ok(Self { horo: HoroChart::new(BusemannChart::new(center, basepoint)?)? })
    }

    pub fn horo(&self) -> &HoroChart {
        &self.horo
    }

    pub fn chart(&self) -> &BusemannChart {
        &self.horo.chart
    }

    pub fn model(&self) -> ModelSpace {
        self.horo.model()
    }

    pub(crate) fn ideal_rep(&self, p: &HeisPoint) -> CVector {
        self.horo.embed_rep(p).scale(2.0) - *self.chart().omega()
    }

    pub fn ideal(&self, p: &HeisPoint) -> Result<IdealPoint> {
        self.horo.check(p)?;
        Ok(IdealPoint::from_null(self.model(), self.ideal_rep(p)))
    }

    /// Heisenberg coordinates of a boundary point other than the center.
    pub fn preimage(&self, xi: &IdealPoint) -> Result<HeisPoint> {
        if xi.model() != self.model() {
            return Err(Error::ModelMismatch);
        }
        let model = self.model();
        let pairing = model.form(xi.rep(), self.chart().omega());
        if xi.projectively_eq(self.chart().center()) || pairing.norm() < 1e-14 {
            return Err(Error::CenterCollision);
        }
        let xr = xi.rep().scale_complex(-2.0 / pairing);
        let mut z = CVector::zeros(self.horo.m);
        for (i, e) in self.horo.frame().iter().enumerate() {
            z[i] = 0.5 * model.form(e, &xr);
        }
        let c = -1.0 - model.form(self.chart().basepoint().rep(), &xr);
        Ok(self.horo.clean(z, 0.5 * c.im))
    }
}

/// Point at Busemann level `t` on the geodesic from the chart center to
/// `xi`, located by monotone root finding along the geodesic.
pub fn radial_project_horosphere(chart: &BusemannChart, xi: &IdealPoint, t: f64) -> Result<ProjectivePoint> {
    if xi.model() != chart.model() {
        return Err(Error::ModelMismatch);
    }
    if xi.projectively_eq(chart.center()) {
        return Err(Error::CenterCollision);
    }
    let g = geodesic_between_ideal(chart.center(), xi).map_err(|_| Error::CenterCollision)?;
    let level = |s: f64| chart.value(&g.point(s)).unwrap_or(f64::NAN) - t;
    let s = monotone_root(level, t, 1.0, 1e-13).ok_or_else(|| Error::Degenerate("level search failed".into()))?;
    let x = g.point(s);
    let residual = level(s);
    if residual.abs() > 1e-9 {
        return Err(Error::Degenerate(format!("level residual {residual:e}")));
    }
    Ok(x)
}

/// Unit tangent at `o` of the geodesic toward `x`.
pub fn radial_project_sphere(o: &ProjectivePoint, x: &Vertex) -> Result<TangentVector> {
    match x {
        Vertex::Interior(p) => {
            if p.model() != o.model() {
                return Err(Error::ModelMismatch);
            }
            if p.projectively_eq(o) {
                return Err(Error::Degenerate("radial projection of the base point".into()));
            }
            direction_to_point(o, p)
        }
        Vertex::Ideal(xi) => direction_to_ideal(o, xi),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypmodel::{geodesic_ray, ray_endpoint, sampling};

    fn charts() -> Vec<BoundaryChart> {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        [ModelSpace::real(2), ModelSpace::real(3), ModelSpace::complex(2), ModelSpace::complex(3)]
            .into_iter()
            .map(|m| {
                let o = sampling::point(m, 1.0, &mut rng);
                let w = sampling::ideal(m, &mut rng);
                BoundaryChart::from_center(w, o).unwrap()
            })
            .collect()
    }

    #[test]
    fn embed_and_ideal_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for bc in charts() {
            let m = bc.model();
            for _ in 0..20 {
                let p = random_heis_point(m, 3.0, &mut rng);
                let x = bc.horo().embed(&p).unwrap();
                let back = bc.horo().preimage(&x).unwrap();
                assert!((*back.z() - *p.z()).norm() < 1e-10 && (back.t() - p.t()).abs() < 1e-10);
                let xi = bc.ideal(&p).unwrap();
                let back = bc.preimage(&xi).unwrap();
                assert!((*back.z() - *p.z()).norm() < 1e-10 && (back.t() - p.t()).abs() < 1e-10);
            }
            let id = HeisPoint::identity(bc.horo().heis_dim());
            assert!(bc.horo().embed(&id).unwrap().projectively_eq(bc.chart().basepoint()));
            assert_eq!(bc.preimage(bc.chart().center()), Err(Error::CenterCollision));
        }
    }

    #[test]
    fn radial_projection_levels() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for bc in charts() {
            let xi = sampling::ideal(bc.model(), &mut rng);
            let a = radial_project_horosphere(bc.chart(), &xi, -0.4).unwrap();
            let b = radial_project_horosphere(bc.chart(), &xi, 1.1).unwrap();
            assert!((bc.chart().value(&a).unwrap() + 0.4).abs() < 1e-9);
            assert!((distance(&a, &b).unwrap() - 1.5).abs() < 1e-9);
            let closed = bc.chart().level_point(&xi, 1.1).unwrap();
            assert!(distance(&b, &closed).unwrap() < 1e-7);
        }
    }

    #[test]
    fn sphere_projection_inverts_rays() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let m = ModelSpace::complex(2);
        let o = sampling::point(m, 1.0, &mut rng);
        let u = sampling::unit_tangent(&o, &mut rng);
        let x = geodesic_ray(&o, &u, 3.0).unwrap();
        let back = radial_project_sphere(&o, &Vertex::Interior(x)).unwrap();
        assert!((*back.vec() - *u.vec()).norm() < 1e-9);
        let xi = ray_endpoint(&u).unwrap();
        let back = radial_project_sphere(&o, &Vertex::Ideal(xi)).unwrap();
        assert!((*back.vec() - *u.vec()).norm() < 1e-9);
        let eta = ray_endpoint(&u.scaled(-1.0)).unwrap();
        let opp = radial_project_sphere(&o, &Vertex::Ideal(eta)).unwrap();
        assert!((*opp.vec() + *u.vec()).norm() < 1e-9);
        assert!(radial_project_sphere(&o, &Vertex::Interior(o)).is_err());
    }
}
