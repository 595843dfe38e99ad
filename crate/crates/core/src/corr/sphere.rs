//! The visual sphere at a point: the contact (Carnot-Caratheodory) distance
//! between unit tangent directions, and the radial map from a horosphere
//! onto the sphere.
//!
//! Unit vectors at `o` are written in a form-orthonormal frame of `o^perp`,
//! so the sphere is the standard unit sphere. A polyline `w_0..w_N` has step
//! angles `f_k = atan2(|w_k ^ w_{k+1}|, |<w_k, w_{k+1}>|)`; in the complex
//! model the phase sum `sum arg <w_k, w_{k+1}>` must vanish, which makes the
//! polyline the horizontal lift of a broken projective geodesic. Its length
//! is then an upper bound for the contact distance, and the visual distance
//! is half the contact distance.

use num_complex::Complex64;

use super::{orthonormal_complement, HoroChart};
use crate::error::{Error, Result};
use crate::heisen::{HeisPoint, HeisVector};
use crate::hypmodel::{
    direction_to_ideal, BusemannChart, Field, IdealPoint, ModelSpace, ProjectivePoint, TangentVector,
};
use crate::solve::penalty::{self, ConstrainedProblem, PenaltyOptions};
use crate::solve::{richardson_even, LbfgsOptions};
use crate::vector::CVector;

#[derive(Debug, Clone)]
pub struct SphereOptions {
    pub resolutions: Vec<usize>,
    pub penalty: PenaltyOptions,
}

impl Default for SphereOptions {
    fn default() -> Self {
        Self {
            resolutions: vec![32, 64, 128],
            penalty: PenaltyOptions {
                constraint_tol: 1e-11,
                inner: LbfgsOptions { grad_tol: 1e-10, ..LbfgsOptions::default() },
                ..PenaltyOptions::default()
            },
        }
    }
}

impl SphereOptions {
    /// A single coarse resolution without extrapolation. Every value it
    /// returns is the length of an admissible curve, hence an upper bound.
    pub fn coarse(segments: usize) -> Self {
        Self {
            resolutions: vec![segments],
            penalty: PenaltyOptions {
                constraint_tol: 1e-11,
                inner: LbfgsOptions { grad_tol: 1e-8, f_rel_tol: 1e-13, ..LbfgsOptions::default() },
                ..PenaltyOptions::default()
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereSolution {
    /// Visual distance (half the contact distance), extrapolated.
    pub distance: f64,
    pub error_estimate: f64,
    /// Half the length of the best admissible polyline found.
    pub upper_bound: f64,
}

fn step_angle(a: &CVector, b: &CVector, complex: bool) -> f64 {
    let p = a.dot(b);
    let cross = a.wedge_norm(b);
    if complex {
        cross.atan2(p.norm())
    } else {
        cross.atan2(p.re)
    }
}

struct Problem {
    complex: bool,
    n: usize,
    segments: usize,
    start: CVector,
    end: CVector,
}

impl Problem {
    fn stride(&self) -> usize {
        if self.complex {
            2 * self.n
        } else {
            self.n
        }
    }

    fn vertex(&self, x: &[f64], k: usize) -> CVector {
        if k == 0 {
            return self.start;
        }
        if k == self.segments {
            return self.end;
        }
        let base = (k - 1) * self.stride();
        let mut w = CVector::zeros(self.n);
        for j in 0..self.n {
            w[j] = if self.complex {
                Complex64::new(x[base + 2 * j], x[base + 2 * j + 1])
            } else {
                Complex64::new(x[base + j], 0.0)
            };
        }
        w
    }

    fn vertices(&self, x: &[f64]) -> Vec<CVector> {
        (0..=self.segments).map(|k| self.vertex(x, k)).collect()
    }

    fn pack(&self, ws: &[CVector]) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dim());
        for w in &ws[1..self.segments] {
            for j in 0..self.n {
                x.push(w[j].re);
                if self.complex {
                    x.push(w[j].im);
                }
            }
        }
        x
    }

    fn add(&self, grad: &mut [f64], k: usize, g: &CVector, weight: f64) {
        if k == 0 || k == self.segments {
            return;
        }
        let base = (k - 1) * self.stride();
        for j in 0..self.n {
            if self.complex {
                grad[base + 2 * j] += weight * g[j].re;
                grad[base + 2 * j + 1] += weight * g[j].im;
            } else {
                grad[base + j] += weight * g[j].re;
            }
        }
    }

    fn length(&self, x: &[f64]) -> f64 {
        self.vertices(x).windows(2).map(|w| step_angle(&w[0], &w[1], self.complex)).sum()
    }
}

impl ConstrainedProblem for Problem {
    fn dim(&self) -> usize {
        (self.segments - 1) * self.stride()
    }

    fn constraint_count(&self) -> usize {
        usize::from(self.complex)
    }

    fn objective(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let ws = self.vertices(x);
        let n = self.segments as f64;
        let mut value = 0.0;
        for (k, w) in ws.windows(2).enumerate() {
            let (a, b) = (&w[0], &w[1]);
            let (na, nb) = (a.norm_sqr(), b.norm_sqr());
            let p = a.dot(b);
            let f = step_angle(a, b, self.complex);
            value += n * f * f;
            let sin = a.wedge_norm(b) / (na * nb).sqrt();
            // d(f^2)/dc with c = |p|^2/(|a|^2|b|^2) (complex) or cos f (real)
            let (ga, gb) = if self.complex {
                let c = p.norm_sqr() / (na * nb);
                let dfdc = if sin > 1e-300 { -f / (sin * f.cos()) } else { -1.0 };
                let ga = b.scale_complex(2.0 * p.conj() / (na * nb)) - a.scale(2.0 * c / na);
                let gb = a.scale_complex(2.0 * p / (na * nb)) - b.scale(2.0 * c / nb);
                (ga.scale(dfdc), gb.scale(dfdc))
            } else {
                let c = p.re / (na * nb).sqrt();
                let dfdc = if sin > 1e-300 { -2.0 * f / sin } else { -2.0 };
                let ga = b.scale(1.0 / (na * nb).sqrt()) - a.scale(c / na);
                let gb = a.scale(1.0 / (na * nb).sqrt()) - b.scale(c / nb);
                (ga.scale(dfdc), gb.scale(dfdc))
            };
            self.add(grad, k, &ga, n);
            self.add(grad, k + 1, &gb, n);
        }
        for (k, w) in ws.iter().enumerate().take(self.segments).skip(1) {
            let defect = w.norm_sqr() - 1.0;
            value += defect * defect;
            self.add(grad, k, &w.scale(4.0 * defect), 1.0);
        }
        value
    }

    fn constraints(&self, x: &[f64], out: &mut [f64]) {
        if self.complex {
            let ws = self.vertices(x);
            out[0] = ws.windows(2).map(|w| w[0].dot(&w[1]).arg()).sum();
        }
    }

    fn add_constraint_gradient(&self, x: &[f64], weights: &[f64], grad: &mut [f64]) {
        if !self.complex {
            return;
        }
        let ws = self.vertices(x);
        let i = Complex64::i();
        for (k, w) in ws.windows(2).enumerate() {
            let p = w[0].dot(&w[1]);
            self.add(grad, k, &w[1].scale_complex(-i / p), weights[0]);
            self.add(grad, k + 1, &w[0].scale_complex(i / p.conj()), weights[0]);
        }
    }
}

fn refine(ws: &[CVector]) -> Vec<CVector> {
    let mut out = Vec::with_capacity(2 * ws.len() - 1);
    for w in ws.windows(2) {
        out.push(w[0]);
        let mid = w[0] + w[1].scale_complex(phase(w[0].dot(&w[1])).conj());
        out.push(mid.scale(1.0 / mid.norm()));
    }
    out.push(ws[ws.len() - 1]);
    out
}

fn phase(p: Complex64) -> Complex64 {
    if p.norm() > 0.0 {
        p / p.norm()
    } else {
        Complex64::new(1.0, 0.0)
    }
}

/// Unit vector orthogonal (Hermitian) to `a`, preferring `hint`.
fn orthogonal_unit(a: &CVector, hint: &CVector) -> CVector {
    let v = *hint - a.scale_complex(a.dot(hint));
    if v.norm() > 1e-8 {
        return v.scale(1.0 / v.norm());
    }
    for j in 0..a.len() {
        let e = CVector::basis(a.len(), j);
        let v = e - a.scale_complex(a.dot(&e));
        if v.norm() > 0.5 {
            return v.scale(1.0 / v.norm());
        }
    }
    unreachable!("sphere of dimension at least one")
}

/// Starting polylines: the projective geodesic with bumps of both
/// orientations, and small loops when the endpoints nearly share a fiber.
fn initial_polylines(a: &CVector, b: &CVector, complex: bool, segments: usize) -> Vec<Vec<CVector>> {
    let p = a.dot(b);
    if !complex {
        let v = orthogonal_unit(a, b);
        let psi = p.re.clamp(-1.0, 1.0).acos();
        return vec![(0..=segments)
            .map(|k| {
                let s = k as f64 / segments as f64;
                a.scale((s * psi).cos()) + v.scale((s * psi).sin())
            })
            .collect()];
    }
    let aligned = b.scale_complex(phase(p).conj());
    let psi = a.dot(&aligned).re.clamp(-1.0, 1.0).acos();
    let v = orthogonal_unit(a, &aligned);
    let phi = p.arg();
    let i = Complex64::i();
    let bump = 0.5 * phi.abs().sqrt();
    let mut starts = Vec::new();
    let curve = |h: f64, loop_radius: f64| -> Vec<CVector> {
        let mut ws: Vec<CVector> = (0..=segments)
            .map(|k| {
                let s = k as f64 / segments as f64;
                let (c, sn) = ((s * psi).cos(), (s * psi).sin());
                let base = a.scale(c) + v.scale(sn);
                let normal = v.scale(c) - a.scale(sn);
                let lp = Complex64::from_polar(loop_radius.abs(), 0.0)
                    * (Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * s * loop_radius.signum()) - 1.0);
                let w = base + normal.scale_complex(i * (h * (std::f64::consts::PI * s).sin()) + lp);
                w.scale(1.0 / w.norm())
            })
            .collect();
        ws[0] = *a;
        ws[segments] = *b;
        ws
    };
    for h in [0.0, bump, -bump] {
        starts.push(curve(h, 0.0));
        if bump == 0.0 {
            break;
        }
    }
    if psi < bump {
        let radius = (phi.abs() / (2.0 * std::f64::consts::PI)).sqrt();
        starts.push(curve(0.0, radius));
        starts.push(curve(0.0, -radius));
    }
    starts
}

/// Frame coordinates of a unit tangent vector.
fn coordinates(frame: &[CVector], model: &ModelSpace, u: &TangentVector) -> CVector {
    let mut w = CVector::zeros(frame.len());
    for (j, e) in frame.iter().enumerate() {
        w[j] = model.form(e, u.vec());
    }
    w.scale(1.0 / w.norm())
}

/// Visual distance at `o` between the directions toward two ideal points.
pub fn spherical_distance(o: &ProjectivePoint, xi: &IdealPoint, eta: &IdealPoint) -> Result<f64> {
    Ok(spherical_solve(o, xi, eta, &SphereOptions::default())?.distance)
}

pub fn spherical_solve(
    o: &ProjectivePoint,
    xi: &IdealPoint,
    eta: &IdealPoint,
    opts: &SphereOptions,
) -> Result<SphereSolution> {
    let model = o.model();
    if xi.model() != model || eta.model() != model {
        return Err(Error::ModelMismatch);
    }
    if opts.resolutions.is_empty() {
        return Err(Error::Config("no polyline resolutions given".into()));
    }
    let frame = orthonormal_complement(&model, &[(*o.rep(), -1.0)]);
    let a = coordinates(&frame, &model, &direction_to_ideal(o, xi)?);
    let b = coordinates(&frame, &model, &direction_to_ideal(o, eta)?);
    let complex = model.field() == Field::Complex;
    let n = frame.len();
    if (a - b).norm() < 1e-14 {
        return Ok(SphereSolution { distance: 0.0, error_estimate: 0.0, upper_bound: 0.0 });
    }

    let mut best: Option<(f64, Vec<CVector>)> = None;
    let mut lengths = Vec::with_capacity(opts.resolutions.len());
    for (level, &segments) in opts.resolutions.iter().enumerate() {
        let problem = Problem { complex, n, segments, start: a, end: b };
        let starts = match &best {
            None => initial_polylines(&a, &b, complex, segments),
            Some((_, ws)) => {
                let mut ws = ws.clone();
                while ws.len() - 1 < segments {
                    ws = refine(&ws);
                }
                vec![ws]
            }
        };
        let mut level_best: Option<(f64, Vec<CVector>)> = None;
        let mut worst = 0.0f64;
        for ws in starts {
            let sol = penalty::solve(&problem, problem.pack(&ws), &opts.penalty);
            if sol.residual > 1e-9 {
                worst = worst.max(sol.residual);
                continue;
            }
            let len = problem.length(&sol.x);
            if level_best.as_ref().is_none_or(|(l, _)| len < *l) {
                level_best = Some((len, problem.vertices(&sol.x)));
            }
        }
        let Some(found) = level_best else {
            return Err(Error::OptimizerConvergence { residual: worst });
        };
        log::debug!("sphere level {level}: {segments} segments, length {}", found.0);
        lengths.push(found.0);
        best = Some(found);
    }
    let (value, err) = richardson_even(&lengths);
    let upper = best.map(|(l, _)| l).unwrap_or(f64::INFINITY);
    Ok(SphereSolution { distance: 0.5 * value.min(upper), error_estimate: 0.5 * err, upper_bound: 0.5 * upper })
}

/// Direction at the chart basepoint toward the endpoint of the geodesic
/// from the chart center through `embed(x)`.
pub fn horo_to_sphere_map(hc: &HoroChart, x: &HeisPoint) -> Result<TangentVector> {
    hc.check(x)?;
    let ideal = hc.embed_rep(x).scale(2.0) - *hc.chart().omega();
    direction_to_ideal(hc.basepoint(), &IdealPoint::new(hc.model(), ideal)?)
}

/// `2 exp(-b(o))` for the Busemann function centered at the image point of
/// `x` and vanishing at `embed(x)`.
pub fn conformal_factor(hc: &HoroChart, x: &HeisPoint) -> Result<f64> {
    hc.check(x)?;
    let ideal = IdealPoint::new(hc.model(), hc.embed_rep(x).scale(2.0) - *hc.chart().omega())?;
    let chart = BusemannChart::new(ideal, hc.embed(x)?)?;
    Ok(2.0 * (-chart.value(hc.basepoint())?).exp())
}

/// Central-difference differential of [`horo_to_sphere_map`].
#[derive(Debug, Clone, PartialEq)]
pub struct SphereDifferential {
    pub image: TangentVector,
    pub df: CVector,
    /// `|df(v)| / |v|`.
    pub stretch: f64,
    /// Angle between `df(v)` and the complex-orthogonal complement of the
    /// image direction.
    pub transverse_angle: f64,
}

pub fn sphere_map_differential(hc: &HoroChart, p: &HeisPoint, v: &HeisVector, step: f64) -> Result<SphereDifferential> {
    let image = horo_to_sphere_map(hc, p)?;
    let plus = horo_to_sphere_map(hc, &p.mul(&v.scaled(step).exp())?)?;
    let minus = horo_to_sphere_map(hc, &p.mul(&v.scaled(-step).exp())?)?;
    let df = (*plus.vec() - *minus.vec()).scale(0.5 / step);
    let model = hc.model();
    let norm = model.form_sqr(&df).max(0.0).sqrt();
    let speed = (v.z.norm_sqr() + v.t * v.t).sqrt();
    if speed == 0.0 {
        return Err(Error::Precondition("zero tangent vector".into()));
    }
    let transverse = if norm > 0.0 { (model.form(image.vec(), &df).im.abs() / norm).min(1.0).asin() } else { 0.0 };
    Ok(SphereDifferential { image, df, stretch: norm / speed, transverse_angle: transverse })
}

/// Length on the unit sphere of the image of a sampled curve, summing the
/// angles between consecutive image directions.
pub fn sphere_image_length(hc: &HoroChart, samples: &[HeisPoint]) -> Result<f64> {
    let images = samples.iter().map(|p| horo_to_sphere_map(hc, p)).collect::<Result<Vec<_>>>()?;
    let model = hc.model();
    Ok(images.windows(2).map(|w| model.form(w[0].vec(), w[1].vec()).re.clamp(-1.0, 1.0).acos()).sum())
}
