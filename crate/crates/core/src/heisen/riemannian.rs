//! Distance of the left-invariant Riemannian metric in which `E1 (+) E2` is
//! orthonormal, by unconstrained minimization over polylines of left
//! translated one-parameter subgroups.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::{herm, HeisPoint};
use crate::error::{Error, Result};
use crate::solve::{minimize, richardson_even, LbfgsOptions};
use crate::vector::CVector;

#[derive(Debug, Clone)]
pub struct RiemannianOptions {
    pub resolutions: Vec<usize>,
    pub inner: LbfgsOptions,
}

impl Default for RiemannianOptions {
    fn default() -> Self {
        Self { resolutions: vec![32, 64, 128], inner: LbfgsOptions { grad_tol: 1e-10, ..LbfgsOptions::default() } }
    }
}

pub fn riemannian_distance(p: &HeisPoint, q: &HeisPoint) -> Result<f64> {
    riemannian_solve(p, q, &RiemannianOptions::default()).map(|(d, _)| d)
}

/// Vertex `k` of a polyline from the identity to `(end, t_end)`.
struct Polyline<'a> {
    m: usize,
    segments: usize,
    end: &'a HeisPoint,
}

impl Polyline<'_> {
    fn stride(&self) -> usize {
        2 * self.m + 1
    }

    fn vertex(&self, x: &[f64], k: usize) -> (CVector, f64) {
        if k == 0 {
            return (CVector::zeros(self.m), 0.0);
        }
        if k == self.segments {
            return (*self.end.z(), self.end.t());
        }
        let base = (k - 1) * self.stride();
        let mut z = CVector::zeros(self.m);
        for j in 0..self.m {
            z[j] = Complex64::new(x[base + 2 * j], x[base + 2 * j + 1]);
        }
        (z, x[base + 2 * self.m])
    }

    fn vertices(&self, x: &[f64]) -> Vec<(CVector, f64)> {
        (0..=self.segments).map(|k| self.vertex(x, k)).collect()
    }

    fn pack(&self, vs: &[(CVector, f64)]) -> Vec<f64> {
        let mut x = Vec::with_capacity((self.segments - 1) * self.stride());
        for (z, t) in &vs[1..self.segments] {
            for j in 0..self.m {
                x.push(z[j].re);
                x.push(z[j].im);
            }
            x.push(*t);
        }
        x
    }

    /// Energy `N sum (|dz|^2 + theta^2)` and its gradient.
    fn energy(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let vs = self.vertices(x);
        let n = self.segments as f64;
        let i = Complex64::i();
        let mut total = 0.0;
        let stride = self.stride();
        for k in 0..self.segments {
            let (za, ta) = &vs[k];
            let (zb, tb) = &vs[k + 1];
            let dz = *zb - *za;
            let theta = tb - ta - herm(za, zb).im;
            total += dz.norm_sqr() + theta * theta;
            // d/dz_a: -2 dz + 2 theta (i z_b); d/dz_b: 2 dz - 2 theta (i z_a)
            if k > 0 {
                let base = (k - 1) * stride;
                let g = dz.scale(-2.0) + zb.scale_complex(i * (2.0 * theta));
                for j in 0..self.m {
                    grad[base + 2 * j] += n * g[j].re;
                    grad[base + 2 * j + 1] += n * g[j].im;
                }
                grad[base + 2 * self.m] -= n * 2.0 * theta;
            }
            if k + 1 < self.segments {
                let base = k * stride;
                let g = dz.scale(2.0) - za.scale_complex(i * (2.0 * theta));
                for j in 0..self.m {
                    grad[base + 2 * j] += n * g[j].re;
                    grad[base + 2 * j + 1] += n * g[j].im;
                }
                grad[base + 2 * self.m] += n * 2.0 * theta;
            }
        }
        n * total
    }

    fn length(&self, vs: &[(CVector, f64)]) -> f64 {
        vs.windows(2)
            .map(|w| {
                let theta = w[1].1 - w[0].1 - herm(&w[0].0, &w[1].0).im;
                ((w[1].0 - w[0].0).norm_sqr() + theta * theta).sqrt()
            })
            .sum()
    }
}

fn refine(vs: &[(CVector, f64)]) -> Vec<(CVector, f64)> {
    let mut out = Vec::with_capacity(2 * vs.len() - 1);
    for w in vs.windows(2) {
        let (za, ta) = w[0];
        let (zb, tb) = w[1];
        let dz = (zb - za).scale(0.5);
        let theta = 0.5 * (tb - ta - herm(&za, &zb).im);
        out.push(w[0]);
        out.push((za + dz, ta + theta + herm(&za, &dz).im));
    }
    out.push(vs[vs.len() - 1]);
    out
}

/// Straight path in exponential coordinates plus a helical excursion of
/// amplitude `h` in the complex line of `dir`.
fn initial_path(end: &HeisPoint, dir: &CVector, h: f64, segments: usize) -> Vec<(CVector, f64)> {
    (0..=segments)
        .map(|k| {
            let s = k as f64 / segments as f64;
            let bump = Complex64::from_polar(h * (PI * s).sin(), PI * s);
            (end.z().scale(s) + dir.scale_complex(bump), end.t() * s)
        })
        .collect()
}

/// Minimal polyline length from several starts, extrapolated across
/// resolutions. Returns the distance and an error indicator.
pub fn riemannian_solve(p: &HeisPoint, q: &HeisPoint, opts: &RiemannianOptions) -> Result<(f64, f64)> {
    let rel = p.relative(q)?;
    let r = rel.z().norm();
    if r == 0.0 && rel.t() == 0.0 {
        return Ok((0.0, 0.0));
    }
    let resolutions = &opts.resolutions;
    if resolutions.is_empty() {
        return Err(Error::Config("no polyline resolutions given".into()));
    }
    let m = rel.dim();
    let dir = if r > 0.0 { rel.z().scale(1.0 / r) } else { CVector::basis(m, 0) };
    let amplitude = 0.5 * rel.t().abs().sqrt();
    let mut best: Option<(f64, f64)> = None;
    for h in [0.0, amplitude, -amplitude] {
        if h == 0.0 && amplitude > 0.0 && best.is_some() {
            continue;
        }
        let mut vs = initial_path(&rel, &dir, h, resolutions[0]);
        let mut lengths = Vec::with_capacity(resolutions.len());
        let mut failed = false;
        for (level, &segments) in resolutions.iter().enumerate() {
            if level > 0 {
                while vs.len() - 1 < segments {
                    vs = refine(&vs);
                }
            }
            let line = Polyline { m, segments, end: &rel };
            let min = minimize(|x, g| line.energy(x, g), line.pack(&vs), &opts.inner);
            if !min.converged && min.grad_norm > 1e-6 {
                failed = true;
                break;
            }
            vs = line.vertices(&min.x);
            lengths.push(line.length(&vs));
        }
        if failed {
            continue;
        }
        let (value, err) = richardson_even(&lengths);
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, err));
        }
    }
    best.ok_or(Error::OptimizerConvergence { residual: f64::NAN })
}

#[cfg(test)]
mod tests {
    use super::super::{cc_distance, CcMethod};
    use super::*;

    fn pt(re: f64, im: f64, t: f64) -> HeisPoint {
        HeisPoint::planar(Complex64::new(re, im), t)
    }

    #[test]
    fn zero_and_short_vertical() {
        let o = HeisPoint::identity(1);
        assert_eq!(riemannian_distance(&o, &o).unwrap(), 0.0);
        let d = riemannian_distance(&o, &pt(0.0, 0.0, 0.8)).unwrap();
        assert!((d - 0.8).abs() < 1e-6, "{d}");
    }

    #[test]
    fn bounded_by_straight_and_cc() {
        let o = HeisPoint::identity(1);
        let q = pt(1.5, -0.5, 0.0);
        assert!(riemannian_distance(&o, &q).unwrap() <= q.z().norm() + 1e-9);
        let q = pt(0.3, 0.4, 2.0);
        let dh = riemannian_distance(&o, &q).unwrap();
        let dcc = cc_distance(&o, &q, CcMethod::Shooting).unwrap();
        assert!(dh <= dcc, "{dh} {dcc}");
    }

    #[test]
    fn long_vertical_escapes_the_axis() {
        // beyond t = pi the vertical segment is no longer minimizing
        let o = HeisPoint::identity(1);
        let d = riemannian_distance(&o, &pt(0.0, 0.0, 6.0)).unwrap();
        assert!(d < 6.0 - 1e-3, "{d}");
    }
}
