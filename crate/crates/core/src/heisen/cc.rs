//! Carnot-Caratheodory distance by geodesic shooting and by constrained
//! minimization over horizontal polylines.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{gauge, herm, HeisPoint, HorizontalPath};
use crate::error::{Error, Result};
use crate::solve::penalty::{self, ConstrainedProblem, PenaltyOptions};
use crate::solve::roots::bisect;
use crate::solve::{richardson_even, LbfgsOptions};
use crate::vector::CVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CcMethod {
    Variational,
    Shooting,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CcSolution {
    pub distance: f64,
    /// Method that produced the value.
    pub method: CcMethod,
    /// Set when shooting could not bracket its root and the variational
    /// solver was used instead.
    pub fell_back: bool,
    /// Extrapolation error indicator (zero for shooting).
    pub error_estimate: f64,
}

#[derive(Debug, Clone)]
pub struct VariationalOptions {
    /// Polyline resolutions, each double the previous, combined by
    /// Richardson extrapolation.
    pub resolutions: Vec<usize>,
    pub penalty: PenaltyOptions,
}

impl Default for VariationalOptions {
    fn default() -> Self {
        Self {
            resolutions: vec![64, 128, 256],
            penalty: PenaltyOptions {
                inner: LbfgsOptions { grad_tol: 1e-11, ..LbfgsOptions::default() },
                ..PenaltyOptions::default()
            },
        }
    }
}

pub fn cc_distance(p: &HeisPoint, q: &HeisPoint, method: CcMethod) -> Result<f64> {
    cc_solve(p, q, method, &VariationalOptions::default()).map(|s| s.distance)
}

pub fn cc_solve(p: &HeisPoint, q: &HeisPoint, method: CcMethod, opts: &VariationalOptions) -> Result<CcSolution> {
    let rel = p.relative(q)?;
    let variational = |fell_back| {
        variational_distance(p, q, opts).map(|(distance, error_estimate)| CcSolution {
            distance,
            method: CcMethod::Variational,
            fell_back,
            error_estimate,
        })
    };
    match method {
        CcMethod::Variational => variational(false),
        CcMethod::Shooting => match shooting_distance(rel.z().norm(), rel.t()) {
            Some(distance) => Ok(CcSolution { distance, method, fell_back: false, error_estimate: 0.0 }),
            None => {
                log::warn!("shooting bracket failed for {rel:?}; using the variational solver");
                variational(true)
            }
        },
    }
}

const SHOOTING_EPS: f64 = 1e-6;

/// `g(a) = (a - sin a) / (4 sin^2(a / 2))`: the vertical displacement per
/// squared chord of a circular arc with total turning `a`.
fn area_ratio(a: f64) -> f64 {
    let s = (0.5 * a).sin();
    let num = if a.abs() < 0.1 {
        let a2 = a * a;
        a * a2 / 6.0 * (1.0 - a2 / 20.0 * (1.0 - a2 / 42.0 * (1.0 - a2 / 72.0)))
    } else {
        a - a.sin()
    };
    if s == 0.0 {
        return 0.0;
    }
    num / (4.0 * s * s)
}

/// Total turning `a` of the normal geodesic from the identity to a point
/// with `|z| = r` and vertical coordinate `t`, root of `g(a) = t / r^2` on
/// `(-2 pi + eps, 2 pi - eps)`. `None` when no bracket exists.
pub fn shooting_parameter(r: f64, t: f64) -> Option<f64> {
    if t == 0.0 {
        return Some(0.0);
    }
    if r == 0.0 {
        return None;
    }
    let target = t.abs() / (r * r);
    let hi = 2.0 * PI - SHOOTING_EPS;
    let a = bisect(|a| area_ratio(a) - target, 0.0, hi, 1e-15)?;
    Some(a.copysign(t))
}

/// Closed-form length of the normal geodesic: `r a / (2 sin(a/2))`, or
/// `sqrt(2 pi |t|)` on the vertical axis.
pub fn shooting_distance(r: f64, t: f64) -> Option<f64> {
    if r == 0.0 {
        return Some((2.0 * PI * t.abs()).sqrt());
    }
    let a = shooting_parameter(r, t)?.abs();
    if a < 1e-8 {
        return Some(r * (1.0 + a * a / 24.0));
    }
    Some(r * a / (2.0 * (0.5 * a).sin()))
}

/// The normal geodesic from `p` to `q` sampled at `resolution` steps.
pub fn shooting_path(p: &HeisPoint, q: &HeisPoint, resolution: usize) -> Result<HorizontalPath> {
    let rel = p.relative(q)?;
    let r = rel.z().norm();
    let dim = rel.dim();
    let (dir, turning, length) = if r > 0.0 {
        let a = shooting_parameter(r, rel.t()).ok_or_else(|| Error::Degenerate("shooting bracket failed".into()))?;
        let length = shooting_distance(r, rel.t()).expect("bracketed");
        (rel.z().scale(1.0 / r), a, length)
    } else {
        (CVector::basis(dim, 0), (2.0 * PI).copysign(rel.t()), (2.0 * PI * rel.t().abs()).sqrt())
    };
    let resolution = resolution.max(1);
    let zs: Vec<CVector> = (1..=resolution)
        .map(|k| {
            let s = k as f64 / resolution as f64;
            // unit-speed arc of total turning `turning`, chord along `dir`
            let w = if turning.abs() < 1e-12 {
                Complex64::new(length * s, 0.0)
            } else {
                let rot = Complex64::from_polar(1.0, -0.5 * turning);
                rot * (Complex64::from_polar(1.0, turning * s) - 1.0) / Complex64::new(0.0, turning) * length
            };
            *p.z() + dir.scale_complex(w)
        })
        .collect();
    HorizontalPath::from_plane_curve(*p, &zs)
}

/// Polyline in `E1 = C^m` from `0` to `end` with `segments` steps whose
/// enclosed vertical displacement is `t`. Variables are the interior
/// vertices.
struct CcProblem {
    m: usize,
    segments: usize,
    end: CVector,
    t: f64,
}

impl CcProblem {
    fn vertex(&self, x: &[f64], k: usize) -> CVector {
        if k == 0 {
            return CVector::zeros(self.m);
        }
        if k == self.segments {
            return self.end;
        }
        let base = (k - 1) * 2 * self.m;
        let mut v = CVector::zeros(self.m);
        for j in 0..self.m {
            v[j] = Complex64::new(x[base + 2 * j], x[base + 2 * j + 1]);
        }
        v
    }

    fn vertices(&self, x: &[f64]) -> Vec<CVector> {
        (0..=self.segments).map(|k| self.vertex(x, k)).collect()
    }

    fn add_grad(&self, grad: &mut [f64], k: usize, g: &CVector, weight: f64) {
        let base = (k - 1) * 2 * self.m;
        for j in 0..self.m {
            grad[base + 2 * j] += weight * g[j].re;
            grad[base + 2 * j + 1] += weight * g[j].im;
        }
    }

    fn pack(&self, zs: &[CVector]) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dim());
        for z in &zs[1..self.segments] {
            for j in 0..self.m {
                x.push(z[j].re);
                x.push(z[j].im);
            }
        }
        x
    }
}

impl ConstrainedProblem for CcProblem {
    fn dim(&self) -> usize {
        (self.segments - 1) * 2 * self.m
    }

    fn constraint_count(&self) -> usize {
        1
    }

    fn objective(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let zs = self.vertices(x);
        let n = self.segments as f64;
        let mut energy = 0.0;
        for k in 0..self.segments {
            energy += (zs[k + 1] - zs[k]).norm_sqr();
        }
        for k in 1..self.segments {
            let g = zs[k].scale(2.0) - zs[k - 1] - zs[k + 1];
            self.add_grad(grad, k, &g, 2.0 * n);
        }
        n * energy
    }

    fn constraints(&self, x: &[f64], out: &mut [f64]) {
        let zs = self.vertices(x);
        out[0] = zs.windows(2).map(|w| herm(&w[0], &w[1]).im).sum::<f64>() - self.t;
    }

    fn add_constraint_gradient(&self, x: &[f64], weights: &[f64], grad: &mut [f64]) {
        let zs = self.vertices(x);
        let i = Complex64::i();
        for k in 1..self.segments {
            let g = (zs[k - 1] - zs[k + 1]).scale_complex(i);
            self.add_grad(grad, k, &g, weights[0]);
        }
    }
}

/// Initial polyline: the chord plus a half-sine bump sized to enclose the
/// required area, or a full loop when the chord is negligible.
pub(crate) fn initial_polyline(end: &CVector, t: f64, segments: usize) -> Vec<CVector> {
    let m = end.len();
    let r = end.norm();
    let i = Complex64::i();
    (0..=segments)
        .map(|k| {
            let s = k as f64 / segments as f64;
            if r > 0.2 {
                let dir = end.scale(1.0 / r);
                let h = PI * t / (4.0 * r);
                end.scale(s) - dir.scale_complex(i * (h * (PI * s).sin()))
            } else {
                let radius = (t.abs() / (2.0 * PI)).sqrt();
                let dir = if r > 0.0 { end.scale(1.0 / r) } else { CVector::basis(m, 0) };
                // loop on the same side of the chord as the bump
                let loop_pt = -i * radius * (1.0 - Complex64::from_polar(1.0, 2.0 * PI * s));
                let loop_pt = if t < 0.0 { loop_pt.conj() } else { loop_pt };
                end.scale(s) + dir.scale_complex(loop_pt)
            }
        })
        .collect()
}

fn refine_vertices(zs: &[CVector]) -> Vec<CVector> {
    let mut out = Vec::with_capacity(2 * zs.len() - 1);
    for w in zs.windows(2) {
        out.push(w[0]);
        out.push((w[0] + w[1]).scale(0.5));
    }
    out.push(zs[zs.len() - 1]);
    out
}

/// Minimal horizontal polyline length at each resolution, extrapolated.
/// Returns the distance and an error indicator.
pub fn variational_distance(p: &HeisPoint, q: &HeisPoint, opts: &VariationalOptions) -> Result<(f64, f64)> {
    let rel = p.relative(q)?;
    let scale = gauge(&rel);
    if scale == 0.0 {
        return Ok((0.0, 0.0));
    }
    // solve the dilation-normalized problem with unit gauge
    let end = rel.z().scale(1.0 / scale);
    let t = rel.t() / (scale * scale);
    if t.abs() < 1e-14 {
        return Ok((rel.z().norm(), 0.0));
    }
    let resolutions = &opts.resolutions;
    if resolutions.is_empty() {
        return Err(Error::Config("no polyline resolutions given".into()));
    }
    let mut zs = initial_polyline(&end, t, resolutions[0]);
    let mut lengths = Vec::with_capacity(resolutions.len());
    for (level, &segments) in resolutions.iter().enumerate() {
        if level > 0 {
            while zs.len() - 1 < segments {
                zs = refine_vertices(&zs);
            }
        }
        let problem = CcProblem { m: end.len(), segments, end, t };
        let sol = penalty::solve(&problem, problem.pack(&zs), &opts.penalty);
        if !sol.converged && sol.residual > 1e-9 {
            return Err(Error::OptimizerConvergence { residual: sol.residual });
        }
        zs = problem.vertices(&sol.x);
        lengths.push(zs.windows(2).map(|w| (w[1] - w[0]).norm()).sum::<f64>());
    }
    let (value, err) = richardson_even(&lengths);
    Ok((scale * value, scale * err))
}

#[cfg(test)]
mod tests {
    use super::super::horizontal_length;
    use super::*;

    fn pt(re: f64, im: f64, t: f64) -> HeisPoint {
        HeisPoint::planar(Complex64::new(re, im), t)
    }

    #[test]
    fn horizontal_points_are_at_euclidean_distance() {
        let o = HeisPoint::identity(1);
        let q = pt(3.0, -4.0, 0.0);
        assert!((cc_distance(&o, &q, CcMethod::Shooting).unwrap() - 5.0).abs() < 1e-15);
        assert!((cc_distance(&o, &q, CcMethod::Variational).unwrap() - 5.0).abs() < 1e-15);
    }

    #[test]
    fn vertical_unit_distance() {
        let o = HeisPoint::identity(1);
        let q = pt(0.0, 0.0, 1.0);
        let exact = (2.0 * PI).sqrt();
        assert!((cc_distance(&o, &q, CcMethod::Shooting).unwrap() - exact).abs() < 1e-14);
        let (v, _) = variational_distance(&o, &q, &VariationalOptions::default()).unwrap();
        assert!(((v - exact) / exact).abs() < 1e-6, "{v}");
    }

    #[test]
    fn shooting_agrees_with_variational() {
        for (a, b, t) in [(1.0, 0.0, 0.3), (0.3, -0.2, -1.5), (0.05, 0.02, 0.7)] {
            let o = pt(0.1, 0.2, -0.3);
            let q = o.mul(&pt(a, b, t)).unwrap();
            let s = cc_distance(&o, &q, CcMethod::Shooting).unwrap();
            let (v, _) = variational_distance(&o, &q, &VariationalOptions::default()).unwrap();
            assert!(((s - v) / s).abs() < 1e-6, "{a} {b} {t}: {s} vs {v}");
        }
    }

    #[test]
    fn shooting_path_reaches_its_endpoint() {
        let p = pt(0.4, 0.1, 0.2);
        let q = pt(-0.5, 0.9, 1.3);
        let path = shooting_path(&p, &q, 2048).unwrap();
        let end = path.end();
        assert!((*end.z() - *q.z()).norm() < 1e-12);
        assert!((end.t() - q.t()).abs() < 1e-5);
        let len = horizontal_length(&path).unwrap();
        let d = cc_distance(&p, &q, CcMethod::Shooting).unwrap();
        assert!((len - d).abs() < 1e-5 * d);
    }
}
