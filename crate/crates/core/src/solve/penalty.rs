//! Equality-constrained minimization by an increasing penalty schedule with
//! multiplier updates (augmented Lagrangian), each stage solved by L-BFGS.

use super::lbfgs::{minimize, LbfgsOptions};

/// A smooth objective with smooth equality constraints `c(x) = 0`.
pub trait ConstrainedProblem {
    fn dim(&self) -> usize;
    fn constraint_count(&self) -> usize;
    /// Returns the objective and writes its gradient.
    fn objective(&self, x: &[f64], grad: &mut [f64]) -> f64;
    fn constraints(&self, x: &[f64], out: &mut [f64]);
    /// Adds `sum_j weights[j] * grad c_j(x)` into `grad`.
    fn add_constraint_gradient(&self, x: &[f64], weights: &[f64], grad: &mut [f64]);
}

#[derive(Debug, Clone)]
pub struct PenaltyOptions {
    pub initial_weight: f64,
    pub growth: f64,
    pub max_weight: f64,
    pub constraint_tol: f64,
    pub max_stages: usize,
    pub inner: LbfgsOptions,
}

impl Default for PenaltyOptions {
    fn default() -> Self {
        Self {
            initial_weight: 10.0,
            growth: 10.0,
            max_weight: 1e12,
            constraint_tol: 1e-11,
            max_stages: 40,
            inner: LbfgsOptions::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PenaltySolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub residual: f64,
    pub stages: usize,
    pub inner_iterations: usize,
    pub converged: bool,
}

fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn solve<P: ConstrainedProblem>(problem: &P, x0: Vec<f64>, opts: &PenaltyOptions) -> PenaltySolution {
    let m = problem.constraint_count();
    let mut multipliers = vec![0.0; m];
    let mut weight = opts.initial_weight;
    let mut x = x0;
    let mut c = vec![0.0; m];
    problem.constraints(&x, &mut c);
    let mut residual = max_abs(&c);
    let mut inner_iterations = 0;
    let mut inner_ok = true;

    for stage in 0..opts.max_stages {
        let lagrangian = |x: &[f64], g: &mut [f64]| -> f64 {
            let mut cx = vec![0.0; m];
            let f = problem.objective(x, g);
            problem.constraints(x, &mut cx);
            let mut weights = vec![0.0; m];
            let mut val = f;
            for j in 0..m {
                val += -multipliers[j] * cx[j] + 0.5 * weight * cx[j] * cx[j];
                weights[j] = weight * cx[j] - multipliers[j];
            }
            problem.add_constraint_gradient(x, &weights, g);
            val
        };
        let min = minimize(lagrangian, x, &opts.inner);
        inner_iterations += min.iterations;
        inner_ok = min.converged;
        x = min.x;
        problem.constraints(&x, &mut c);
        let new_residual = max_abs(&c);
        if new_residual <= opts.constraint_tol && inner_ok {
            let mut g = vec![0.0; problem.dim()];
            let objective = problem.objective(&x, &mut g);
            return PenaltySolution {
                x,
                objective,
                residual: new_residual,
                stages: stage + 1,
                inner_iterations,
                converged: true,
            };
        }
        for j in 0..m {
            multipliers[j] -= weight * c[j];
        }
        if new_residual > 0.25 * residual {
            weight = (weight * opts.growth).min(opts.max_weight);
        }
        residual = new_residual;
    }
    let mut g = vec![0.0; problem.dim()];
    let objective = problem.objective(&x, &mut g);
    PenaltySolution {
        x,
        objective,
        residual,
        stages: opts.max_stages,
        inner_iterations,
        converged: residual <= opts.constraint_tol && inner_ok,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// min x^2 + y^2 subject to x + y = 1 and x y = 0.16 -> {0.2, 0.8}.
    struct Toy;

    impl ConstrainedProblem for Toy {
        fn dim(&self) -> usize {
            2
        }
        fn constraint_count(&self) -> usize {
            2
        }
        fn objective(&self, x: &[f64], g: &mut [f64]) -> f64 {
            g[0] = 2.0 * x[0];
            g[1] = 2.0 * x[1];
            x[0] * x[0] + x[1] * x[1]
        }
        fn constraints(&self, x: &[f64], out: &mut [f64]) {
            out[0] = x[0] + x[1] - 1.0;
            out[1] = x[0] * x[1] - 0.16;
        }
        fn add_constraint_gradient(&self, x: &[f64], w: &[f64], g: &mut [f64]) {
            g[0] += w[0] + w[1] * x[1];
            g[1] += w[0] + w[1] * x[0];
        }
    }

    #[test]
    fn solves_toy_problem() {
        let sol = solve(&Toy, vec![0.1, 0.5], &PenaltyOptions::default());
        assert!(sol.converged, "{sol:?}");
        let (lo, hi) = (sol.x[0].min(sol.x[1]), sol.x[0].max(sol.x[1]));
        assert!((lo - 0.2).abs() < 1e-8 && (hi - 0.8).abs() < 1e-8, "{sol:?}");
    }
}
