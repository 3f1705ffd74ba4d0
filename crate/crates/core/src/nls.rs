//! Damped Gauss-Newton for small nonlinear systems `r(z) = 0`.
//!
//! Each step solves `J d = -r` in the least-squares sense (SVD, so rank
//! deficient and non-square Jacobians are fine) and halves the step until the
//! merit `|r|^2 / 2` decreases, at most 50 times. When no halving helps, a
//! steepest-descent step on the merit is tried before giving up.

use nalgebra::{DMatrix, DVector};

pub(crate) const MAX_HALVINGS: usize = 50;

#[derive(Debug, Clone, Copy)]
pub(crate) struct NlsOptions {
    pub max_iters: usize,
    /// Stop once the max-norm of the residual is at most this.
    pub tol: f64,
}

#[derive(Debug, Clone)]
pub(crate) struct NlsResult {
    pub z: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
}

/// Residual vector and Jacobian at a point.
pub(crate) type System<'a> = dyn FnMut(&[f64]) -> (DVector<f64>, DMatrix<f64>) + 'a;

pub(crate) fn solve(z0: &[f64], system: &mut System<'_>, opts: NlsOptions) -> NlsResult {
    solve_observed(z0, system, opts, &mut |_, _| true)
}

/// As [`solve`], calling `observe(z, merit)` after every accepted step; a
/// `false` return stops the iteration.
pub(crate) fn solve_observed(
    z0: &[f64],
    system: &mut System<'_>,
    opts: NlsOptions,
    observe: &mut dyn FnMut(&[f64], f64) -> bool,
) -> NlsResult {
    let mut z = DVector::from_column_slice(z0);
    let (mut r, mut jac) = system(z.as_slice());
    let mut merit = 0.5 * r.norm_squared();
    let mut iterations = 0;
    while iterations < opts.max_iters {
        if !merit.is_finite() {
            break;
        }
        if r.amax() <= opts.tol {
            break;
        }
        iterations += 1;
        let step = newton_direction(&jac, &r);
        let mut accepted = step.and_then(|d| line_search(system, &z, &d, merit, 2.0 * merit));
        if accepted.is_none() {
            let grad = jac.transpose() * &r;
            let g2 = grad.norm_squared();
            if g2 > 0.0 && g2.is_finite() {
                let d = -grad * (merit / g2);
                accepted = line_search(system, &z, &d, merit, merit);
            }
        }
        let Some((z_new, r_new, jac_new, merit_new)) = accepted else {
            break;
        };
        z = z_new;
        r = r_new;
        jac = jac_new;
        merit = merit_new;
        if !observe(z.as_slice(), merit) {
            break;
        }
    }
    let residual_inf = if r.is_empty() { 0.0 } else { r.amax() };
    NlsResult {
        converged: residual_inf <= opts.tol && residual_inf.is_finite(),
        z: z.as_slice().to_vec(),
        iterations,
    }
}

fn newton_direction(jac: &DMatrix<f64>, r: &DVector<f64>) -> Option<DVector<f64>> {
    if jac.iter().any(|v| !v.is_finite()) {
        return None;
    }
    if jac.is_square() {
        if let Some(d) = jac.clone().lu().solve(&(-r)) {
            if d.iter().all(|v| v.is_finite()) {
                return Some(d);
            }
        }
    }
    let scale = jac.amax().max(1.0);
    let d = jac.clone().svd(true, true).solve(&(-r), 1e-13 * scale).ok()?;
    d.iter().all(|v| v.is_finite()).then_some(d)
}

type Accepted = (DVector<f64>, DVector<f64>, DMatrix<f64>, f64);

/// Armijo backtracking by halving; `slope` is the predicted merit decrease per unit step.
fn line_search(system: &mut System<'_>, z: &DVector<f64>, d: &DVector<f64>, merit: f64, slope: f64) -> Option<Accepted> {
    let mut alpha = 1.0;
    for _ in 0..=MAX_HALVINGS {
        let trial = z + d * alpha;
        let (r, jac) = system(trial.as_slice());
        let m = 0.5 * r.norm_squared();
        if m.is_finite() && (m <= merit - 1e-4 * alpha * slope || m == 0.0) && m < merit {
            return Some((trial, r, jac, m));
        }
        alpha *= 0.5;
    }
    None
}

/// Fischer-Burmeister `phi(a, b) = sqrt(a^2 + b^2) - a - b` with an element
/// `(da, db)` of its generalized gradient.
pub(crate) fn fischer_burmeister(a: f64, b: f64) -> (f64, f64, f64) {
    let r = a.hypot(b);
    if r > 1e-300 {
        (r - a - b, a / r - 1.0, b / r - 1.0)
    } else {
        let c = std::f64::consts::FRAC_1_SQRT_2 - 1.0;
        (0.0, c, c)
    }
}
