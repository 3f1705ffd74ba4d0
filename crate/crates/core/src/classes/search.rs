//! Seeded multi-start witness search for `n >= 3`.
//!
//! The R, R0 and ER systems are complementarity systems in `(x, t)`; they are
//! solved by Gauss-Newton on the Fischer-Burmeister residual with `t = tau^2`
//! and the extra equation `sum x = 1`. The remaining classes ask for a point
//! where a maximum of polynomials is small, which is attacked by projected
//! gradient on a log-sum-exp smoothing of that maximum.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use super::system::{check_normalized, normalize};
use super::{ClassId, Domain, Found, Witness};
use crate::budget::{first_hit, Budget, StartOutcome};
use crate::nls::{self, fischer_burmeister, NlsOptions};
use crate::tensor::{dot, Tensor};

const SALT: u64 = 0xc1a5;

pub(super) fn search(a: &Tensor, class: ClassId, budget: &Budget) -> Found {
    let margin = budget.tol.margin;
    let (hit, used) = first_hit(budget, budget.max_starts, |k| match class {
        ClassId::R | ClassId::R0 | ClassId::ER => ncp_start(a, class, budget, k),
        _ => descent_start(a, class, budget, k),
    });
    let witness = hit.map(|(_, (x, t))| {
        let residual = check_normalized(a, class, &x, t, margin).residual;
        Witness { system: class, x, t, residual }
    });
    Found { witness, used, exhaustive: false }
}

type Point = (Vec<f64>, Option<f64>);

fn accept(a: &Tensor, class: ClassId, x: &[f64], t: Option<f64>, margin: f64) -> Option<Point> {
    let (x, t) = normalize(a, class, x, t)?;
    check_normalized(a, class, &x, t, margin).valid.then_some((x, t))
}

fn ncp_start(a: &Tensor, class: ClassId, budget: &Budget, k: usize) -> StartOutcome<Point> {
    let n = a.dim();
    let has_t = class.has_t();
    let mut rng = budget.rng(SALT, k);
    let mut x0: Vec<f64> = if k == 0 { vec![1.0; n] } else { (0..n).map(|_| rng.random_range(0.0..1.0)).collect() };
    if k % 3 == 2 {
        // sparse start: keep a random nonempty support
        let keep = rng.random_range(0..n);
        for (i, v) in x0.iter_mut().enumerate() {
            if i != keep && rng.random_bool(0.5) {
                *v = 0.0;
            }
        }
    }
    let sum: f64 = x0.iter().sum::<f64>().max(1e-12);
    x0.iter_mut().for_each(|v| *v /= sum);
    let mut z0 = x0;
    if has_t {
        z0.push(rng.random_range(0.0..1.0) * a.max_abs().sqrt());
    }
    let cols = n + usize::from(has_t);
    let mut system = |z: &[f64]| {
        let x = &z[..n];
        let tau = if has_t { z[n] } else { 0.0 };
        let t = tau * tau;
        let f = a.eval(x);
        let jf = a.eval_jacobian(x);
        let mut r = DVector::zeros(n + 1);
        let mut j = DMatrix::zeros(n + 1, cols);
        for i in 0..n {
            let (g, dgdt) = match class {
                ClassId::ER => (f[i] + t * x[i], 2.0 * tau * x[i]),
                ClassId::R => (f[i] + t, 2.0 * tau),
                _ => (f[i], 0.0),
            };
            let (phi, da, db) = fischer_burmeister(x[i], g);
            r[i] = phi;
            for c in 0..n {
                j[(i, c)] = db * jf[(i, c)];
            }
            if class == ClassId::ER {
                j[(i, i)] += db * t;
            }
            j[(i, i)] += da;
            if has_t {
                j[(i, n)] = db * dgdt;
            }
            j[(n, i)] = 1.0;
        }
        r[n] = x.iter().sum::<f64>() - 1.0;
        (r, j)
    };
    let opts = NlsOptions { max_iters: budget.max_iters, tol: 1e-3 * budget.tol.margin };
    let res = nls::solve(&z0, &mut system, opts);
    let x: Vec<f64> = res.z[..n].iter().map(|&v| if v < 1e-14 { 0.0 } else { v }).collect();
    let t = has_t.then(|| res.z[n] * res.z[n]);
    StartOutcome { hit: accept(a, class, &x, t, budget.tol.margin), iterations: res.iterations }
}

/// Components whose maximum must be driven to (or below) zero, with gradients.
fn components(a: &Tensor, class: ClassId, x: &[f64], support: &[usize]) -> Vec<(f64, Vec<f64>)> {
    let n = a.dim();
    let d = a.degree() as i32;
    let f = a.eval(x);
    let jf = a.eval_jacobian(x);
    let row = |i: usize| -> Vec<f64> { (0..n).map(|c| jf[(i, c)]).collect() };
    match class {
        ClassId::SemiPositive | ClassId::StrictlySemiPositive => support.iter().map(|&i| (f[i], row(i))).collect(),
        ClassId::P0 | ClassId::P | ClassId::WP => support
            .iter()
            .map(|&i| {
                let (w, dw) = if class == ClassId::WP {
                    (x[i].powi(d), d as f64 * x[i].powi(d - 1))
                } else {
                    (x[i], 1.0)
                };
                let mut g: Vec<f64> = row(i).into_iter().map(|v| w * v).collect();
                g[i] += dw * f[i];
                (w * f[i], g)
            })
            .collect(),
        _ => {
            let mut g = f.clone();
            for c in 0..n {
                for i in 0..n {
                    g[c] += jf[(i, c)] * x[i];
                }
            }
            vec![(dot(x, &f), g)]
        }
    }
}

/// Smoothed maximum `mu log sum exp(v / mu)` and its gradient.
fn smooth_max(parts: &[(f64, Vec<f64>)], mu: f64, n: usize) -> (f64, Vec<f64>) {
    let top = parts.iter().fold(f64::NEG_INFINITY, |m, p| m.max(p.0));
    let weights: Vec<f64> = parts.iter().map(|p| ((p.0 - top) / mu).exp()).collect();
    let total: f64 = weights.iter().sum();
    let mut grad = vec![0.0; n];
    for (w, p) in weights.iter().zip(parts) {
        for (g, v) in grad.iter_mut().zip(&p.1) {
            *g += w / total * v;
        }
    }
    (top + mu * total.ln(), grad)
}

/// Euclidean projection onto `{x >= 0, sum x = 1}` restricted to `support`.
fn project_simplex(x: &mut [f64], support: &[usize]) {
    let mut v: Vec<f64> = support.iter().map(|&i| x[i]).collect();
    v.sort_by(|p, q| q.total_cmp(p));
    let mut acc = 0.0;
    let mut theta = 0.0;
    for (k, &vk) in v.iter().enumerate() {
        acc += vk;
        let cand = (acc - 1.0) / (k + 1) as f64;
        if vk - cand > 0.0 {
            theta = cand;
        }
    }
    for &i in support {
        x[i] = (x[i] - theta).max(0.0);
    }
}

fn project(x: &mut [f64], support: &[usize], domain: Domain) {
    for i in 0..x.len() {
        if !support.contains(&i) {
            x[i] = 0.0;
        }
    }
    match domain {
        Domain::Cone => project_simplex(x, support),
        Domain::Sphere => {
            let norm = dot(x, x).sqrt();
            if norm > 0.0 {
                x.iter_mut().for_each(|v| *v /= norm);
            }
        }
    }
}

fn descent_start(a: &Tensor, class: ClassId, budget: &Budget, k: usize) -> StartOutcome<Point> {
    let n = a.dim();
    let domain = class.domain();
    let margin = budget.tol.margin;
    let mut rng = budget.rng(SALT ^ 0xd35c, k);
    let restricted = matches!(class, ClassId::SemiPositive | ClassId::StrictlySemiPositive | ClassId::P0);
    let support: Vec<usize> = if !restricted || k == n {
        (0..n).collect()
    } else if k < n {
        vec![k]
    } else {
        let mask = rng.random_range(1..(1u64 << n.min(63)));
        (0..n).filter(|&i| i >= 63 || (mask >> i) & 1 == 1).collect()
    };
    let mut x = vec![0.0; n];
    for &i in &support {
        x[i] = match domain {
            Domain::Cone => rng.random_range(0.0..1.0),
            Domain::Sphere => StandardNormal.sample(&mut rng),
        };
    }
    if x.iter().all(|&v| v == 0.0) {
        x[support[0]] = 1.0;
    }
    project(&mut x, &support, domain);
    let parts = components(a, class, &x, &support);
    let scale = parts.iter().fold(0.0f64, |m, p| m.max(p.0.abs())).max(a.max_abs()).max(1e-12);
    let mut mu = 0.1 * scale;
    let mut step = 0.1;
    let mut iterations = 0;
    for _ in 0..budget.max_iters {
        iterations += 1;
        if let Some(hit) = accept(a, class, &x, None, margin) {
            return StartOutcome { hit: Some(hit), iterations };
        }
        let parts = components(a, class, &x, &support);
        let (val, grad) = smooth_max(&parts, mu, n);
        let gnorm = dot(&grad, &grad).sqrt();
        if !(gnorm > 0.0) || !gnorm.is_finite() {
            break;
        }
        let mut improved = false;
        for _ in 0..30 {
            let mut trial: Vec<f64> = x.iter().zip(&grad).map(|(xi, gi)| xi - step * gi / gnorm).collect();
            project(&mut trial, &support, domain);
            if trial.iter().all(|&v| v == 0.0) {
                step *= 0.5;
                continue;
            }
            let (tv, _) = smooth_max(&components(a, class, &trial, &support), mu, n);
            if tv < val {
                x = trial;
                improved = true;
                step = (step * 1.5).min(1.0);
                break;
            }
            step *= 0.5;
        }
        if !improved {
            if mu <= 1e-6 * margin {
                break;
            }
            step = 0.1;
        }
        mu = (mu * 0.8).max(1e-3 * margin);
    }
    StartOutcome { hit: accept(a, class, &x, None, margin), iterations }
}
