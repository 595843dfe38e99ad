//! Horospherical distance measured inside the model: horizontal polylines
//! on the horosphere, with step lengths and the contact condition read off
//! from the Busemann gradient `u` and its complex rotation `J u`.

use num_complex::Complex64;

use super::BoundaryChart;
use crate::error::{Error, Result};
use crate::heisen::{gauge, initial_polyline, HeisPoint, HorizontalPath};
use crate::hypmodel::Field;
use crate::solve::penalty::{self, ConstrainedProblem, PenaltyOptions};
use crate::solve::{richardson_even, LbfgsOptions};
use crate::vector::CVector;

#[derive(Debug, Clone)]
pub struct AmbientOptions {
    pub resolutions: Vec<usize>,
    pub penalty: PenaltyOptions,
    /// Central-difference step for the gradients.
    pub step: f64,
}

impl Default for AmbientOptions {
    fn default() -> Self {
        Self {
            resolutions: vec![32, 64],
            penalty: PenaltyOptions {
                constraint_tol: 1e-10,
                inner: LbfgsOptions { grad_tol: 1e-8, f_rel_tol: 1e-14, ..LbfgsOptions::default() },
                ..PenaltyOptions::default()
            },
            step: 1e-6,
        }
    }
}

struct Problem<'a> {
    bc: &'a BoundaryChart,
    m: usize,
    complex: bool,
    segments: usize,
    start: HeisPoint,
    end: HeisPoint,
    step: f64,
}

impl Problem<'_> {
    fn stride(&self) -> usize {
        if self.complex {
            2 * self.m + 1
        } else {
            self.m
        }
    }

    fn vertex(&self, x: &[f64], k: usize) -> HeisPoint {
        if k == 0 {
            return self.start;
        }
        if k == self.segments {
            return self.end;
        }
        let base = (k - 1) * self.stride();
        let mut z = CVector::zeros(self.m);
        if self.complex {
            for j in 0..self.m {
                z[j] = Complex64::new(x[base + 2 * j], x[base + 2 * j + 1]);
            }
            HeisPoint::new(z, x[base + 2 * self.m])
        } else {
            for j in 0..self.m {
                z[j] = Complex64::new(x[base + j], 0.0);
            }
            HeisPoint::new(z, 0.0)
        }
    }

    fn pack(&self, ps: &[HeisPoint]) -> Vec<f64> {
        let mut x = Vec::with_capacity(self.dim());
        for p in &ps[1..self.segments] {
            for j in 0..self.m {
                x.push(p.z()[j].re);
                if self.complex {
                    x.push(p.z()[j].im);
                }
            }
            if self.complex {
                x.push(p.t());
            }
        }
        x
    }

    /// Squared horizontal length and vertical component of one step.
    fn step_terms(&self, xa: &CVector, xb: &CVector) -> (f64, f64) {
        let model = self.bc.model();
        let omega = self.bc.chart().omega();
        let sum = *xa + *xb;
        let mid = sum.scale(1.0 / (-model.form_sqr(&sum)).sqrt());
        let c = -1.0 / model.form(&mid, omega);
        let u = mid - omega.scale_complex(c);
        let delta = *xb - *xa;
        let dh = delta + mid.scale_complex(model.form(&mid, &delta));
        let along = model.form(&u, &dh);
        let horizontal = dh - u.scale_complex(along);
        (model.form_sqr(&horizontal), along.im)
    }

    fn reps(&self, x: &[f64]) -> Vec<CVector> {
        (0..=self.segments).map(|k| self.bc.horo.embed_rep(&self.vertex(x, k))).collect()
    }

    fn local_terms(&self, x: &[f64], k: usize) -> [(f64, f64); 2] {
        let r = |j| self.bc.horo.embed_rep(&self.vertex(x, j));
        let (a, b, c) = (r(k - 1), r(k), r(k + 1));
        [self.step_terms(&a, &b), self.step_terms(&b, &c)]
    }

    /// Central differences of `combine` over the two steps adjacent to each
    /// interior vertex.
    fn local_gradient<F: Fn(usize, &[(f64, f64); 2]) -> f64>(&self, x: &[f64], grad: &mut [f64], combine: F) {
        let mut probe = x.to_vec();
        let stride = self.stride();
        for k in 1..self.segments {
            for j in 0..stride {
                let idx = (k - 1) * stride + j;
                let h = self.step * (1.0 + x[idx].abs());
                probe[idx] = x[idx] + h;
                let plus = combine(k, &self.local_terms(&probe, k));
                probe[idx] = x[idx] - h;
                let minus = combine(k, &self.local_terms(&probe, k));
                probe[idx] = x[idx];
                grad[idx] += (plus - minus) / (2.0 * h);
            }
        }
    }

    fn length(&self, x: &[f64]) -> f64 {
        let reps = self.reps(x);
        reps.windows(2).map(|w| self.step_terms(&w[0], &w[1]).0.max(0.0).sqrt()).sum()
    }
}

impl ConstrainedProblem for Problem<'_> {
    fn dim(&self) -> usize {
        (self.segments - 1) * self.stride()
    }

    fn constraint_count(&self) -> usize {
        if self.complex {
            self.segments
        } else {
            0
        }
    }

    fn objective(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        grad.iter_mut().for_each(|g| *g = 0.0);
        let n = self.segments as f64;
        self.local_gradient(x, grad, |_, terms| n * (terms[0].0 + terms[1].0));
        let reps = self.reps(x);
        n * reps.windows(2).map(|w| self.step_terms(&w[0], &w[1]).0).sum::<f64>()
    }

    fn constraints(&self, x: &[f64], out: &mut [f64]) {
        if !self.complex {
            return;
        }
        let reps = self.reps(x);
        for (k, w) in reps.windows(2).enumerate() {
            out[k] = self.step_terms(&w[0], &w[1]).1;
        }
    }

    fn add_constraint_gradient(&self, x: &[f64], weights: &[f64], grad: &mut [f64]) {
        if !self.complex {
            return;
        }
        self.local_gradient(x, grad, |k, terms| weights[k - 1] * terms[0].1 + weights[k] * terms[1].1);
    }
}

/// Minimal horizontal polyline length on the horosphere between the
/// embedded points, extrapolated across resolutions.
pub(crate) fn ambient_distance(bc: &BoundaryChart, p: &HeisPoint, q: &HeisPoint, opts: &AmbientOptions) -> Result<f64> {
    let rel = p.relative(q)?;
    let scale = gauge(&rel);
    if scale == 0.0 {
        return Ok(0.0);
    }
    if opts.resolutions.is_empty() {
        return Err(Error::Config("no polyline resolutions given".into()));
    }
    let complex = bc.model().field() == Field::Complex;
    // starting guess: a horizontal lift of a planar bump, translated to p
    let first = opts.resolutions[0];
    let plane: Vec<CVector> = initial_polyline(&rel.z().scale(1.0 / scale), rel.t() / (scale * scale), first)
        .into_iter()
        .skip(1)
        .map(|z| z.scale(scale))
        .collect();
    let lifted = HorizontalPath::from_plane_curve(HeisPoint::identity(rel.dim()), &plane)?.translated(p)?;
    let mut vertices: Vec<HeisPoint> = lifted.samples().to_vec();
    *vertices.last_mut().expect("nonempty") = *q;

    let mut lengths = Vec::with_capacity(opts.resolutions.len());
    for (level, &segments) in opts.resolutions.iter().enumerate() {
        if level > 0 {
            while vertices.len() - 1 < segments {
                vertices = HorizontalPath::new(vertices)?.refined().samples().to_vec();
            }
        }
        let problem = Problem { bc, m: rel.dim(), complex, segments, start: *p, end: *q, step: opts.step };
        let sol = penalty::solve(&problem, problem.pack(&vertices), &opts.penalty);
        if sol.residual > 1e-8 {
            return Err(Error::OptimizerConvergence { residual: sol.residual });
        }
        vertices = (0..=segments).map(|k| problem.vertex(&sol.x, k)).collect();
        lengths.push(problem.length(&sol.x));
    }
    Ok(richardson_even(&lengths).0)
}
