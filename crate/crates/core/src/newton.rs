//! Damped Gauss-Newton for the small nonlinear systems cut out by relator
//! and holonomy constraints. Jacobians are forward finite differences; steps
//! are minimum-norm least-squares solutions, so gauge directions (conjugation
//! freedom) are simply not moved along.

use nalgebra::{DMatrix, DVector};

pub struct NewtonOptions {
    pub max_iters: usize,
    /// Converged when the residual 2-norm drops below this.
    pub tol: f64,
    pub fd_step: f64,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        NewtonOptions {
            max_iters: 60,
            tol: 1e-12,
            fd_step: 1e-7,
        }
    }
}

pub enum NewtonOutcome {
    Converged,
    Stalled,
}

/// Minimizes ‖F(x)‖ by damped Gauss-Newton, mutating `x` in place.
/// Returns `Converged` once the sup-norm of F is below `opts.tol`.
pub fn gauss_newton<F>(mut residual: F, x: &mut [f64], opts: &NewtonOptions) -> NewtonOutcome
where
    F: FnMut(&[f64]) -> Vec<f64>,
{
    let n = x.len();
    let mut fx = residual(x);
    let m = fx.len();
    let mut best = norm2(&fx);
    let mut stall = 0usize;

    for _ in 0..opts.max_iters {
        if best <= opts.tol {
            return NewtonOutcome::Converged;
        }
        // Forward-difference Jacobian.
        let mut jac = DMatrix::<f64>::zeros(m, n);
        for j in 0..n {
            let h = opts.fd_step * (1.0 + x[j].abs());
            let saved = x[j];
            x[j] = saved + h;
            let f_plus = residual(x);
            x[j] = saved;
            for i in 0..m {
                jac[(i, j)] = (f_plus[i] - fx[i]) / h;
            }
        }
        let rhs = DVector::from_iterator(m, fx.iter().map(|v| -v));
        let svd = jac.svd(true, true);
        // Relative cutoff: gauge directions (conjugation freedom) show up as
        // near-zero singular values polluted by finite-difference noise;
        // treating them as null keeps the min-norm step from exploding.
        let sigma_max = svd.singular_values.max();
        if sigma_max <= 0.0 || sigma_max.is_nan() {
            return NewtonOutcome::Stalled;
        }
        let mut step = match svd.solve(&rhs, 1e-5 * sigma_max) {
            Ok(s) => s,
            Err(_) => return NewtonOutcome::Stalled,
        };
        if !step.iter().all(|v| v.is_finite()) {
            return NewtonOutcome::Stalled;
        }
        // Trust cap: far from a solution the Gauss-Newton step can still be
        // wild; the backtracking handles the rest.
        let step_norm = step.norm();
        if step_norm > 2.0 {
            step *= 2.0 / step_norm;
        }

        // Backtracking on the residual norm.
        let mut lambda = 1.0;
        let mut accepted = false;
        for _ in 0..10 {
            let trial: Vec<f64> = x
                .iter()
                .zip(step.iter())
                .map(|(xi, si)| xi + lambda * si)
                .collect();
            let f_trial = residual(&trial);
            let norm_trial = norm2(&f_trial);
            if norm_trial < best {
                x.copy_from_slice(&trial);
                fx = f_trial;
                best = norm_trial;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if !accepted {
            stall += 1;
            if stall >= 2 {
                return NewtonOutcome::Stalled;
            }
        } else {
            stall = 0;
        }
    }
    if best <= opts.tol {
        NewtonOutcome::Converged
    } else {
        NewtonOutcome::Stalled
    }
}

fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
