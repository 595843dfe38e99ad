//! Gromov products based at points and at Busemann functions, for interior
//! and ideal arguments.

use super::{direction_to_ideal, distance, BusemannChart, IdealPoint, ProjectivePoint};
use crate::error::{Error, Result};
use crate::solve::limit_at_infinity;

fn acosh_large(a: f64) -> f64 {
    if a < 1.0 {
        0.0
    } else {
        a.acosh()
    }
}

/// `(x|y)_o = (|xo| + |yo| - |xy|) / 2`.
pub fn gromov_product_point(x: &ProjectivePoint, y: &ProjectivePoint, o: &ProjectivePoint) -> Result<f64> {
    let dx = distance(x, o)?;
    let dy = distance(y, o)?;
    let dxy = distance(x, y)?;
    Ok((0.5 * (dx + dy - dxy)).clamp(0.0, dx.min(dy)))
}

/// `(x|y)_b = (b(x) + b(y) - |xy|) / 2`.
pub fn gromov_product_point_busemann(x: &ProjectivePoint, y: &ProjectivePoint, chart: &BusemannChart) -> Result<f64> {
    Ok(0.5 * (chart.value(x)? + chart.value(y)? - distance(x, y)?))
}

/// `(gamma(t) | rho(t))_o` for the rays from `o` to `xi` and `eta`.
///
/// The pairing of the two ray points is `-1 - sinh^2(t) (1 - <U, V>)`, and
/// `1 - <U, V>` is assembled from `|U - V|^2` so that nearby directions do
/// not cancel.
pub fn ideal_product_at(xi: &IdealPoint, eta: &IdealPoint, o: &ProjectivePoint, t: f64) -> Result<f64> {
    let model = o.model();
    let u = direction_to_ideal(o, xi)?;
    let v = direction_to_ideal(o, eta)?;
    let diff = *u.vec() - *v.vec();
    let cross = model.form(u.vec(), v.vec());
    let gap = num_complex::Complex64::new(0.5 * model.form_sqr(&diff).max(0.0), -cross.im);
    let s = t.sinh();
    let pairing = num_complex::Complex64::new(-1.0, 0.0) - gap * (s * s);
    Ok(t - 0.5 * acosh_large(pairing.norm()))
}

/// `(xi|eta)_o`, evaluated as a limit along the rays from `o`.
pub fn gromov_product_ideal(xi: &IdealPoint, eta: &IdealPoint, o: &ProjectivePoint) -> Result<f64> {
    if xi.model() != o.model() || eta.model() != o.model() {
        return Err(Error::ModelMismatch);
    }
    if xi.projectively_eq(eta) {
        return Ok(f64::INFINITY);
    }
    let mut failure = None;
    let value = limit_at_infinity(|t| match ideal_product_at(xi, eta, o, t) {
        Ok(v) => v,
        Err(e) => {
            failure = Some(e);
            f64::NAN
        }
    });
    match failure {
        Some(e) => Err(e),
        None => value,
    }
}

/// `(gamma(t) | rho(t))_b` for the geodesics from the center to `xi` and
/// `eta`, both at Busemann level `t`.
pub fn busemann_product_at(xi: &IdealPoint, eta: &IdealPoint, chart: &BusemannChart, t: f64) -> Result<f64> {
    let a = chart.level_rep(xi)?;
    let b = chart.level_rep(eta)?;
    // <X, Y> = -1 + e^{2t} <A, B> / 4 for X, Y at level t
    let pairing = num_complex::Complex64::new(-1.0, 0.0) + chart.model().form(&a, &b) * (0.25 * (2.0 * t).exp());
    Ok(t - 0.5 * acosh_large(pairing.norm()))
}

/// `(xi|eta)_b`, evaluated as a limit along the geodesics from the center.
pub fn gromov_product_busemann(xi: &IdealPoint, eta: &IdealPoint, chart: &BusemannChart) -> Result<f64> {
    if xi.model() != chart.model() || eta.model() != chart.model() {
        return Err(Error::ModelMismatch);
    }
    if xi.projectively_eq(chart.center()) || eta.projectively_eq(chart.center()) {
        return Err(Error::CenterCollision);
    }
    if xi.projectively_eq(eta) {
        return Ok(f64::INFINITY);
    }
    let mut failure = None;
    let value = limit_at_infinity(|t| match busemann_product_at(xi, eta, chart, t) {
        Ok(v) => v,
        Err(e) => {
            failure = Some(e);
            f64::NAN
        }
    });
    match failure {
        Some(e) => Err(e),
        None => value,
    }
}

/// Closed form `-ln sqrt(|<Xi, Eta>| / 2)` with `<O, Xi> = <O, Eta> = -1`.
pub fn visual_product_closed_form(xi: &IdealPoint, eta: &IdealPoint, o: &ProjectivePoint) -> f64 {
    let a = xi.normalized_at(o);
    let b = eta.normalized_at(o);
    -0.5 * (0.5 * o.model().form(&a, &b).norm()).ln()
}

/// Closed form `-ln sqrt(2 |<Xi, Eta>| / (|<Xi, W>| |<Eta, W>|))`.
pub fn busemann_product_closed_form(xi: &IdealPoint, eta: &IdealPoint, chart: &BusemannChart) -> f64 {
    let m = chart.model();
    let w = chart.omega();
    let num = 2.0 * m.form(xi.rep(), eta.rep()).norm();
    let den = m.form(xi.rep(), w).norm() * m.form(eta.rep(), w).norm();
    -0.5 * (num / den).ln()
}

#[cfg(test)]
mod tests {
    use super::super::{geodesic_ray, ModelSpace, TangentVector};
    use super::*;
    use crate::vector::CVector;

    fn circle_point(theta: f64) -> IdealPoint {
        IdealPoint::new(ModelSpace::real(2), CVector::from_real(&[theta.cos(), theta.sin(), 1.0])).unwrap()
    }

    #[test]
    fn point_products_edge_cases() {
        let m = ModelSpace::real(2);
        let o = m.origin();
        let u = TangentVector::new(o, CVector::from_real(&[0.0, 1.0, 0.0])).unwrap();
        let x = geodesic_ray(&o, &u, 1.3).unwrap();
        assert!((gromov_product_point(&x, &x, &o).unwrap() - 1.3).abs() < 1e-12);
        assert_eq!(gromov_product_point(&o, &x, &x).unwrap(), 0.0);
    }

    #[test]
    fn chordal_identity_on_the_circle() {
        let o = ModelSpace::real(2).origin();
        for (a, b) in [(0.0, 0.3), (0.0, std::f64::consts::PI), (1.0, 2.5), (0.2, 0.2 + 1e-3)] {
            let (xi, eta) = (circle_point(a), circle_point(b));
            let g = gromov_product_ideal(&xi, &eta, &o).unwrap();
            let chord = ((a.cos() - b.cos()).powi(2) + (a.sin() - b.sin()).powi(2)).sqrt();
            assert!(((-g).exp() - 0.5 * chord).abs() < 1e-9, "{a} {b}");
            assert!((g - visual_product_closed_form(&xi, &eta, &o)).abs() < 1e-9);
        }
        assert_eq!(gromov_product_ideal(&circle_point(1.0), &circle_point(1.0), &o).unwrap(), f64::INFINITY);
    }

    #[test]
    fn busemann_product_matches_closed_form_and_shift() {
        let o = ModelSpace::real(2).origin();
        let chart = BusemannChart::new(circle_point(std::f64::consts::FRAC_PI_2), o).unwrap();
        let (xi, eta) = (circle_point(0.1), circle_point(2.0));
        let g = gromov_product_busemann(&xi, &eta, &chart).unwrap();
        assert!((g - busemann_product_closed_form(&xi, &eta, &chart)).abs() < 1e-9);
        let shifted = chart.shifted(0.4).unwrap();
        assert!((gromov_product_busemann(&xi, &eta, &shifted).unwrap() - g - 0.4).abs() < 1e-9);
        assert_eq!(gromov_product_busemann(chart.center(), &eta, &chart), Err(Error::CenterCollision));
    }
}
