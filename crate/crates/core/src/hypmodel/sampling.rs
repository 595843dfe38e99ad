//! Random points, directions and boundary points for tests and batch runs.

use rand::Rng;

use super::isometry::gaussian_scalar;
use super::{geodesic_ray, ray_endpoint, IdealPoint, ModelSpace, ProjectivePoint, TangentVector};
use crate::vector::CVector;

/// Uniformly distributed unit tangent vector at `x`.
pub fn unit_tangent<R: Rng + ?Sized>(x: &ProjectivePoint, rng: &mut R) -> TangentVector {
    let model = x.model();
    loop {
        let mut v = CVector::zeros(model.ambient_dim());
        for i in 0..model.ambient_dim() {
            v[i] = gaussian_scalar(model.field(), rng);
        }
        let t = TangentVector::project(*x, v);
        if t.norm() > 1e-6 {
            return t.scaled(1.0 / t.norm());
        }
    }
}

/// Point at a distance drawn uniformly from `[0, radius]` in a uniform
/// direction from the origin.
pub fn point<R: Rng + ?Sized>(model: ModelSpace, radius: f64, rng: &mut R) -> ProjectivePoint {
    let o = model.origin();
    let u = unit_tangent(&o, rng);
    let r: f64 = rng.random_range(0.0..=radius);
    geodesic_ray(&o, &u, r).expect("unit tangent")
}

/// Boundary point distributed by the visual measure from the origin.
pub fn ideal<R: Rng + ?Sized>(model: ModelSpace, rng: &mut R) -> IdealPoint {
    let u = unit_tangent(&model.origin(), rng);
    ray_endpoint(&u).expect("unit tangent")
}
