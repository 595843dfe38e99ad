//! Equiradial points of triangles with finite and ideal vertices: the
//! points where balls or horoballs centered at the vertices touch pairwise
//! from outside.
//!
//! Vertices are indexed `0, 1, 2` (`x, y, z` or `xi, eta, zeta`). The point
//! `u` lies on the side opposite vertex 0, `v` on the side opposite vertex 1
//! and `w` on the side opposite vertex 2.

use serde::{Deserialize, Serialize};

use crate::corr::{radial_project_horosphere, radial_project_sphere};
use crate::error::{Error, Result};
use crate::hypmodel::{
    direction_to_ideal, distance, geodesic_ray, gromov_product_busemann, gromov_product_ideal, gromov_product_point,
    gromov_product_point_busemann, plane_delta, segment_point, BusemannChart, IdealPoint, ModelSpace, ProjectivePoint,
    Vertex,
};
use crate::solve::limit_at_infinity;

/// Three pairwise distinct vertices, finite or ideal.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleConfig {
    vertices: [Vertex; 3],
}

impl TriangleConfig {
    pub fn new(vertices: [Vertex; 3]) -> Result<Self> {
        let model = vertices[0].model();
        if vertices.iter().any(|v| v.model() != model) {
            return Err(Error::ModelMismatch);
        }
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            if vertices[i].projectively_eq(&vertices[j]) {
                return Err(Error::Degenerate(format!("vertices {i} and {j} coincide")));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vertex; 3] {
        &self.vertices
    }

    pub fn model(&self) -> ModelSpace {
        self.vertices[0].model()
    }
}

/// Side of a triangle, named by its opposite vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    /// Between vertices 1 and 2.
    Opposite0,
    /// Between vertices 0 and 2.
    Opposite1,
    /// Between vertices 0 and 1.
    Opposite2,
}

impl Side {
    /// End vertices; the second one is the direction of travel along the side.
    pub fn ends(self) -> (usize, usize) {
        match self {
            Side::Opposite0 => (1, 2),
            Side::Opposite1 => (0, 2),
            Side::Opposite2 => (0, 1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidePoint {
    pub point: ProjectivePoint,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquiradialTriple {
    pub config: TriangleConfig,
    pub u: SidePoint,
    pub v: SidePoint,
    pub w: SidePoint,
    /// Largest disagreement among the alternative characterizations of the
    /// points (zero for finite triangles).
    pub consistency: f64,
}

/// Signed "distance" of `x` from vertex `v`: the distance for a finite
/// vertex, the Busemann function centered there (vanishing at the model
/// origin) for an ideal one.
fn vertex_level(model: ModelSpace, vertex: &Vertex, x: &ProjectivePoint) -> Result<f64> {
    match vertex {
        Vertex::Interior(p) => distance(p, x),
        Vertex::Ideal(xi) => BusemannChart::new(*xi, model.origin())?.value(x),
    }
}

fn advance(x: &ProjectivePoint, toward: &Vertex, s: f64) -> Result<ProjectivePoint> {
    let u = radial_project_sphere(x, toward)?;
    geodesic_ray(x, &u, s)
}

impl EquiradialTriple {
    pub fn points(&self) -> [&SidePoint; 3] {
        [&self.u, &self.v, &self.w]
    }

    /// `|uv|, |uw|, |vw|`.
    pub fn pairwise_distances(&self) -> Result<[f64; 3]> {
        let (u, v, w) = (&self.u.point, &self.v.point, &self.w.point);
        Ok([distance(u, v)?, distance(u, w)?, distance(v, w)?])
    }

    /// Largest `|a + b|` over the three points, where `a` and `b` are the
    /// unit directions toward the two ends of the point's side. Zero exactly
    /// when every point lies on its side.
    pub fn side_deviation(&self) -> Result<f64> {
        let mut worst = 0.0f64;
        for p in self.points() {
            let (i, j) = p.side.ends();
            let a = radial_project_sphere(&p.point, &self.config.vertices[i])?;
            let b = radial_project_sphere(&p.point, &self.config.vertices[j])?;
            worst = worst.max(a.add(&b).norm());
        }
        Ok(worst)
    }

    /// Largest violation of the tangency equations: for each vertex, the two
    /// points on its adjacent sides are equally far (or on the same
    /// horosphere).
    pub fn residual(&self) -> Result<f64> {
        residual(&self.config, [self.u.point, self.v.point, self.w.point])
    }

    /// Smallest tangency violation after moving any single point along its
    /// side by `+-step`. Local uniqueness shows up as a violation of order
    /// `step`.
    pub fn uniqueness_probe(&self, step: f64) -> Result<f64> {
        let base = [self.u, self.v, self.w];
        let mut least = f64::INFINITY;
        for (k, p) in base.iter().enumerate() {
            let toward = &self.config.vertices[p.side.ends().1];
            for s in [step, -step] {
                let mut pts = [self.u.point, self.v.point, self.w.point];
                pts[k] = advance(&p.point, toward, s)?;
                least = least.min(residual(&self.config, pts)?);
            }
        }
        Ok(least)
    }
}

fn residual(config: &TriangleConfig, pts: [ProjectivePoint; 3]) -> Result<f64> {
    let model = config.model();
    let [u, v, w] = pts;
    let pairs = [(v, w), (u, w), (u, v)];
    let mut worst = 0.0f64;
    for (vertex, (a, b)) in config.vertices.iter().zip(pairs) {
        worst = worst.max((vertex_level(model, vertex, &a)? - vertex_level(model, vertex, &b)?).abs());
    }
    Ok(worst)
}

/// Equiradial points of a finite triangle, placed by the Gromov products
/// at the vertices.
pub fn equiradial_finite(x: &ProjectivePoint, y: &ProjectivePoint, z: &ProjectivePoint) -> Result<EquiradialTriple> {
    let config = TriangleConfig::new([Vertex::from(*x), Vertex::from(*y), Vertex::from(*z)])?;
    let rz = gromov_product_point(x, y, z)?;
    let ry = gromov_product_point(x, z, y)?;
    let u = segment_point(z, y, rz)?;
    let v = segment_point(z, x, rz)?;
    let w = segment_point(y, x, ry)?;
    Ok(EquiradialTriple {
        config,
        u: SidePoint { point: u, side: Side::Opposite0 },
        v: SidePoint { point: v, side: Side::Opposite1 },
        w: SidePoint { point: w, side: Side::Opposite2 },
        consistency: 0.0,
    })
}

/// Equiradial points of an ideal triangle. `v` and `w` sit at level
/// `(eta|zeta)_b` of a Busemann function centered at `xi`, `u` at level
/// `(xi|eta)_b''` of one centered at `zeta`; the remaining level identities
/// are measured into `consistency`.
pub fn equiradial_ideal(xi: &IdealPoint, eta: &IdealPoint, zeta: &IdealPoint) -> Result<EquiradialTriple> {
    let config = TriangleConfig::new([Vertex::from(*xi), Vertex::from(*eta), Vertex::from(*zeta)])?;
    let o = xi.model().origin();
    let b0 = BusemannChart::new(*xi, o)?;
    let b1 = BusemannChart::new(*eta, o)?;
    let b2 = BusemannChart::new(*zeta, o)?;
    let l0 = gromov_product_busemann(eta, zeta, &b0)?;
    let l1 = gromov_product_busemann(xi, zeta, &b1)?;
    let l2 = gromov_product_busemann(xi, eta, &b2)?;
    let v = radial_project_horosphere(&b0, zeta, l0)?;
    let w = radial_project_horosphere(&b0, eta, l0)?;
    let u = radial_project_horosphere(&b2, eta, l2)?;
    let checks = [
        b1.value(&u)? - l1,
        b1.value(&w)? - l1,
        b2.value(&v)? - l2,
        distance(&v, &b0.level_point(zeta, l0)?)?,
        distance(&w, &b0.level_point(eta, l0)?)?,
        distance(&u, &b2.level_point(eta, l2)?)?,
    ];
    Ok(EquiradialTriple {
        config,
        u: SidePoint { point: u, side: Side::Opposite0 },
        v: SidePoint { point: v, side: Side::Opposite1 },
        w: SidePoint { point: w, side: Side::Opposite2 },
        consistency: checks.iter().fold(0.0f64, |m, c| m.max(c.abs())),
    })
}

/// `(a|xi)_b` for a Busemann chart, as a limit along the ray from `a`.
fn point_ideal_busemann_product(a: &ProjectivePoint, xi: &IdealPoint, chart: &BusemannChart) -> Result<f64> {
    let dir = direction_to_ideal(a, xi)?;
    limit_at_infinity(|t| {
        geodesic_ray(a, &dir, t).and_then(|p| gromov_product_point_busemann(a, &p, chart)).unwrap_or(f64::NAN)
    })
}

/// Equiradial points of a triangle with one finite vertex `a`. `w` and `v`
/// sit at distance `(eta|zeta)_a` from `a` toward `eta` and `zeta`; `u` is
/// on the horosphere centered at `eta` through `w`.
pub fn equiradial_mixed(a: &ProjectivePoint, eta: &IdealPoint, zeta: &IdealPoint) -> Result<EquiradialTriple> {
    let config = TriangleConfig::new([Vertex::from(*a), Vertex::from(*eta), Vertex::from(*zeta)])?;
    let r = gromov_product_ideal(eta, zeta, a)?;
    let w = geodesic_ray(a, &direction_to_ideal(a, eta)?, r)?;
    let v = geodesic_ray(a, &direction_to_ideal(a, zeta)?, r)?;
    let b1 = BusemannChart::new(*eta, *a)?;
    let b2 = BusemannChart::new(*zeta, *a)?;
    let u = radial_project_horosphere(&b1, zeta, -r)?;
    let checks = [
        b2.value(&u)? + r,
        b2.value(&v)? + r,
        point_ideal_busemann_product(a, zeta, &b1)? + r,
        point_ideal_busemann_product(a, eta, &b2)? + r,
    ];
    Ok(EquiradialTriple {
        config,
        u: SidePoint { point: u, side: Side::Opposite0 },
        v: SidePoint { point: v, side: Side::Opposite1 },
        w: SidePoint { point: w, side: Side::Opposite2 },
        consistency: checks.iter().fold(0.0f64, |m, c| m.max(c.abs())),
    })
}

/// Default advance for [`separated_points`]: `1 + delta`.
pub fn default_offset() -> f64 {
    1.0 + plane_delta()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparatedPair {
    /// `v` advanced toward vertex 2.
    pub v_prime: ProjectivePoint,
    /// `w` advanced toward vertex 1.
    pub w_prime: ProjectivePoint,
    pub separation: f64,
}

/// Moves `v` toward vertex 2 and `w` toward vertex 1 by `offset`.
pub fn separated_points(triple: &EquiradialTriple, offset: f64) -> Result<SeparatedPair> {
    let vs = triple.config.vertices();
    let v_prime = advance(&triple.v.point, &vs[2], offset)?;
    let w_prime = advance(&triple.w.point, &vs[1], offset)?;
    Ok(SeparatedPair { v_prime, w_prime, separation: distance(&v_prime, &w_prime)? })
}

/// Largest distance between the equiradial points of an ideal triangle and
/// those of the finite triangle whose vertices are pushed distance `length`
/// from `v, w, u` toward `xi, eta, zeta`.
pub fn truncation_gap(triple: &EquiradialTriple, length: f64) -> Result<f64> {
    let vs = triple.config.vertices();
    if !vs.iter().all(|v| matches!(v, Vertex::Ideal(_))) {
        return Err(Error::Precondition("truncation needs an ideal triangle".into()));
    }
    let x = advance(&triple.v.point, &vs[0], length)?;
    let y = advance(&triple.w.point, &vs[1], length)?;
    let z = advance(&triple.u.point, &vs[2], length)?;
    let finite = equiradial_finite(&x, &y, &z)?;
    Ok(distance(&finite.u.point, &triple.u.point)?
        .max(distance(&finite.v.point, &triple.v.point)?)
        .max(distance(&finite.w.point, &triple.w.point)?))
}

/// Points on two geodesics from a common ideal point at two shared
/// Busemann levels, with the distortion bound `ln(sinh A / a)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistortionRecord {
    /// `|vv'| = |ww'|`.
    pub shift: f64,
    pub near: f64,
    pub far: f64,
    pub bound: f64,
}

impl DistortionRecord {
    pub fn slack(&self) -> f64 {
        self.bound - self.shift
    }
}

/// `v, v'` on the geodesic from the chart center to `omega`, `w, w'` on the
/// one to `eta`, at levels `t` and `t2`.
pub fn level_distortion(
    chart: &BusemannChart,
    omega: &IdealPoint,
    eta: &IdealPoint,
    t: f64,
    t2: f64,
) -> Result<DistortionRecord> {
    let v = radial_project_horosphere(chart, omega, t)?;
    let w = radial_project_horosphere(chart, eta, t)?;
    let v2 = radial_project_horosphere(chart, omega, t2)?;
    let w2 = radial_project_horosphere(chart, eta, t2)?;
    let (s1, s2) = (distance(&v, &w)?, distance(&v2, &w2)?);
    let (near, far) = (s1.min(s2), s1.max(s2));
    let shift = distance(&v, &v2)?;
    Ok(DistortionRecord { shift, near, far, bound: (far.sinh() / near).ln() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypmodel::{ray_endpoint, sampling, TangentVector};
    use crate::vector::CVector;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn circle(model: ModelSpace, theta: f64) -> IdealPoint {
        let mut rep = vec![0.0; model.ambient_dim()];
        rep[0] = theta.cos();
        rep[1] = theta.sin();
        rep[model.ambient_dim() - 1] = 1.0;
        IdealPoint::new(model, CVector::from_real(&rep)).unwrap()
    }

    #[test]
    fn finite_points_solve_the_tangency_equations() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for model in [ModelSpace::real(2), ModelSpace::complex(2)] {
            for _ in 0..10 {
                let [x, y, z] = [0, 1, 2].map(|_| sampling::point(model, 2.0, &mut rng));
                let t = equiradial_finite(&x, &y, &z).unwrap();
                assert!(t.residual().unwrap() < 1e-8);
                assert!(t.side_deviation().unwrap() < 1e-8);
                let rz = gromov_product_point(&x, &y, &z).unwrap();
                assert!((distance(&t.u.point, &z).unwrap() - rz).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn collinear_vertex_is_its_own_equiradial_point() {
        let model = ModelSpace::real(2);
        let o = model.origin();
        let u = TangentVector::new(o, CVector::from_real(&[1.0, 0.0, 0.0])).unwrap();
        let x = geodesic_ray(&o, &u, 1.0).unwrap();
        let y = geodesic_ray(&o, &u, -2.0).unwrap();
        let t = equiradial_finite(&x, &y, &o).unwrap();
        assert!(distance(&t.u.point, &o).unwrap() < 1e-8);
        assert!(distance(&t.v.point, &o).unwrap() < 1e-8);
    }

    #[test]
    fn symmetric_ideal_triangle() {
        let model = ModelSpace::real(2);
        let tau = 2.0 * std::f64::consts::PI / 3.0;
        let [a, b, c] = [0.0, tau, 2.0 * tau].map(|th| circle(model, th));
        let t = equiradial_ideal(&a, &b, &c).unwrap();
        let d = t.pairwise_distances().unwrap();
        assert!((d[0] - d[1]).abs() < 1e-8 && (d[1] - d[2]).abs() < 1e-8, "{d:?}");
        assert!(d[0] <= plane_delta());
        assert!(t.consistency < 1e-6);
    }

    #[test]
    fn ideal_triangles_in_the_complex_plane() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let model = ModelSpace::complex(2);
        for _ in 0..10 {
            let [a, b, c] = [0, 1, 2].map(|_| sampling::ideal(model, &mut rng));
            let t = equiradial_ideal(&a, &b, &c).unwrap();
            assert!(t.consistency < 1e-6, "{}", t.consistency);
            assert!(t.side_deviation().unwrap() < 1e-8);
            assert!(t.pairwise_distances().unwrap().iter().all(|&d| d <= plane_delta() + 1e-9));
            assert!(separated_points(&t, default_offset()).unwrap().separation >= 2.0);
            assert!(t.uniqueness_probe(1e-3).unwrap() >= 5e-4);
        }
    }

    #[test]
    fn truncated_triangles_converge() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let model = ModelSpace::complex(2);
        let [a, b, c] = [0, 1, 2].map(|_| sampling::ideal(model, &mut rng));
        let t = equiradial_ideal(&a, &b, &c).unwrap();
        let gaps: Vec<f64> = [10.0, 20.0, 30.0].iter().map(|&l| truncation_gap(&t, l).unwrap()).collect();
        assert!(gaps[0] > gaps[1] && gaps[1] >= gaps[2] && gaps[0] < 1e-3, "{gaps:?}");
    }

    #[test]
    fn mixed_triangle_is_consistent() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for model in [ModelSpace::real(2), ModelSpace::complex(2)] {
            for _ in 0..5 {
                let a = sampling::point(model, 1.0, &mut rng);
                let [b, c] = [0, 1].map(|_| sampling::ideal(model, &mut rng));
                let t = equiradial_mixed(&a, &b, &c).unwrap();
                assert!(t.consistency < 1e-6, "{}", t.consistency);
                assert!(t.residual().unwrap() < 1e-6);
                assert!(t.pairwise_distances().unwrap().iter().all(|&d| d <= plane_delta() + 1e-9));
            }
        }
    }

    #[test]
    fn distortion_bound_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let model = ModelSpace::complex(2);
        let o = model.origin();
        for _ in 0..10 {
            let center = ray_endpoint(&sampling::unit_tangent(&o, &mut rng)).unwrap();
            let chart = BusemannChart::new(center, o).unwrap();
            let [b, c] = [0, 1].map(|_| sampling::ideal(model, &mut rng));
            let r = level_distortion(&chart, &b, &c, -1.0, 1.5).unwrap();
            assert!(r.slack() >= -1e-6, "{r:?}");
        }
    }
}
