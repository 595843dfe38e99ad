//! Limited-memory BFGS with a strong-Wolfe line search.

use std::collections::VecDeque;

#[derive(Debug, Clone)]
pub struct LbfgsOptions {
    pub memory: usize,
    pub max_iter: usize,
    /// Stop once the gradient 2-norm falls below this value.
    pub grad_tol: f64,
    /// Stop after three consecutive iterations that improve the objective by
    /// less than `f_rel_tol * |f|`.
    pub f_rel_tol: f64,
}

impl Default for LbfgsOptions {
    fn default() -> Self {
        Self { memory: 12, max_iter: 4000, grad_tol: 1e-10, f_rel_tol: 1e-15 }
    }
}

#[derive(Debug, Clone)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub grad_norm: f64,
    pub iterations: usize,
    pub converged: bool,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

struct Probe {
    step: f64,
    x: Vec<f64>,
    g: Vec<f64>,
    f: f64,
    slope: f64,
}

struct LineSearch<'a, F> {
    f: &'a mut F,
    x: &'a [f64],
    dir: &'a [f64],
    f0: f64,
    slope0: f64,
}

const C1: f64 = 1e-4;
const C2: f64 = 0.9;

impl<F> LineSearch<'_, F>
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    fn eval(&mut self, step: f64) -> Probe {
        let x: Vec<f64> = self.x.iter().zip(self.dir).map(|(xi, di)| xi + step * di).collect();
        let mut g = vec![0.0; x.len()];
        let f = (self.f)(&x, &mut g);
        let slope = dot(&g, self.dir);
        Probe { step, x, g, f, slope }
    }

    fn sufficient(&self, p: &Probe) -> bool {
        p.f.is_finite() && p.f <= self.f0 + C1 * p.step * self.slope0
    }

    fn curvature(&self, p: &Probe) -> bool {
        p.slope.abs() <= -C2 * self.slope0
    }

    fn run(&mut self, step0: f64) -> Option<Probe> {
        let mut prev = Probe { step: 0.0, x: self.x.to_vec(), g: Vec::new(), f: self.f0, slope: self.slope0 };
        let mut step = step0;
        for i in 0..50 {
            let p = self.eval(step);
            if !self.sufficient(&p) || (i > 0 && p.f >= prev.f) {
                return self.zoom(prev, p);
            }
            if self.curvature(&p) {
                return Some(p);
            }
            if p.slope >= 0.0 {
                return self.zoom(p, prev);
            }
            prev = p;
            step *= 2.0;
        }
        None
    }

    /// `lo` satisfies sufficient decrease and has the lower value; the
    /// minimizer lies between `lo.step` and `hi.step`.
    fn zoom(&mut self, mut lo: Probe, mut hi: Probe) -> Option<Probe> {
        for _ in 0..60 {
            let width = hi.step - lo.step;
            if width.abs() <= 1e-16 * lo.step.abs().max(1e-300) {
                break;
            }
            let denom = 2.0 * (hi.f - lo.f - lo.slope * width);
            let mut step = if hi.f.is_finite() && denom > 0.0 {
                lo.step - lo.slope * width * width / denom
            } else {
                lo.step + 0.5 * width
            };
            let (a, b) = if lo.step < hi.step { (lo.step, hi.step) } else { (hi.step, lo.step) };
            let margin = 0.1 * (b - a);
            if !step.is_finite() || step < a + margin || step > b - margin {
                step = 0.5 * (lo.step + hi.step);
            }
            let p = self.eval(step);
            if !self.sufficient(&p) || p.f >= lo.f {
                hi = p;
            } else {
                if self.curvature(&p) {
                    return Some(p);
                }
                if p.slope * (hi.step - lo.step) >= 0.0 {
                    hi = lo;
                }
                lo = p;
            }
        }
        // accept the best point found when it still decreases the objective
        if lo.step > 0.0 && lo.f < self.f0 && !lo.g.is_empty() {
            Some(lo)
        } else {
            None
        }
    }
}

/// Minimizes `f`, which writes its gradient into the second argument and
/// returns the objective value.
pub fn minimize<F>(mut f: F, x0: Vec<f64>, opts: &LbfgsOptions) -> Minimum
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let n = x0.len();
    let mut x = x0;
    let mut g = vec![0.0; n];
    let mut fx = f(&x, &mut g);
    if n == 0 {
        return Minimum { x, value: fx, grad_norm: 0.0, iterations: 0, converged: true };
    }

    let mut history: VecDeque<(Vec<f64>, Vec<f64>, f64)> = VecDeque::with_capacity(opts.memory);
    let mut dir = vec![0.0; n];
    let mut alpha = vec![0.0; opts.memory.max(1)];
    let mut stall = 0usize;
    let mut restarts = 0usize;

    for iter in 0..opts.max_iter {
        let gnorm = norm(&g);
        if !fx.is_finite() {
            return Minimum { x, value: fx, grad_norm: gnorm, iterations: iter, converged: false };
        }
        if gnorm <= opts.grad_tol {
            return Minimum { x, value: fx, grad_norm: gnorm, iterations: iter, converged: true };
        }

        dir.copy_from_slice(&g);
        for (k, (s, y, rho)) in history.iter().enumerate().rev() {
            let a = rho * dot(s, &dir);
            alpha[k] = a;
            for (d, yi) in dir.iter_mut().zip(y) {
                *d -= a * yi;
            }
        }
        let gamma = history.back().map(|(s, y, _)| dot(s, y) / dot(y, y)).unwrap_or(1.0);
        for d in dir.iter_mut() {
            *d *= gamma;
        }
        for (k, (s, y, rho)) in history.iter().enumerate() {
            let b = rho * dot(y, &dir);
            for (d, si) in dir.iter_mut().zip(s) {
                *d += (alpha[k] - b) * si;
            }
        }
        for d in dir.iter_mut() {
            *d = -*d;
        }
        let mut slope = dot(&g, &dir);
        if history.is_empty() || slope >= 0.0 {
            history.clear();
            for (d, gi) in dir.iter_mut().zip(&g) {
                *d = -gi / gnorm;
            }
            slope = -gnorm;
        }

        let step0 = 1.0;
        let probe = LineSearch { f: &mut f, x: &x, dir: &dir, f0: fx, slope0: slope }.run(step0);
        let probe = match probe {
            Some(p) => p,
            None => {
                restarts += 1;
                if history.is_empty() || restarts > 5 {
                    return Minimum { x, value: fx, grad_norm: gnorm, iterations: iter, converged: false };
                }
                history.clear();
                continue;
            }
        };

        let s: Vec<f64> = probe.x.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = probe.g.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        let improvement = fx - probe.f;
        x = probe.x;
        g = probe.g;
        fx = probe.f;
        if sy > 1e-300 {
            if history.len() == opts.memory {
                history.pop_front();
            }
            history.push_back((s, y, 1.0 / sy));
        }
        if improvement <= opts.f_rel_tol * fx.abs() {
            stall += 1;
            if stall >= 3 {
                let gnorm = norm(&g);
                return Minimum { x, value: fx, grad_norm: gnorm, iterations: iter + 1, converged: true };
            }
        } else {
            stall = 0;
        }
    }
    let gnorm = norm(&g);
    Minimum { x, value: fx, grad_norm: gnorm, iterations: opts.max_iter, converged: false }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let m = minimize(
            |x, g| {
                let (a, b) = (x[0], x[1]);
                g[0] = -2.0 * (1.0 - a) - 400.0 * a * (b - a * a);
                g[1] = 200.0 * (b - a * a);
                (1.0 - a).powi(2) + 100.0 * (b - a * a).powi(2)
            },
            vec![-1.2, 1.0],
            &LbfgsOptions::default(),
        );
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-7 && (m.x[1] - 1.0).abs() < 1e-7, "{:?}", m);
    }

    #[test]
    fn ill_conditioned_quadratic() {
        let n = 200;
        let m = minimize(
            |x, g| {
                let mut f = 0.0;
                for i in 0..n {
                    let w = 1.0 + i as f64 * 50.0;
                    f += 0.5 * w * (x[i] - 1.0).powi(2);
                    g[i] = w * (x[i] - 1.0);
                }
                f
            },
            vec![0.0; n],
            &LbfgsOptions::default(),
        );
        assert!(m.converged);
        assert!(m.x.iter().all(|v| (v - 1.0).abs() < 1e-8), "{:?}", (m.iterations, m.grad_norm, m.value));
    }
}
