//! Real H- and Z-eigenpairs at desk scale.
//!
//! For `n = 2` both spectra are swept exhaustively: Z-eigenvectors are the
//! zeros of the angular defect `x1 (A x^{m-1})_2 - x2 (A x^{m-1})_1` on the
//! unit circle, and H-eigenvectors reduce to univariate polynomials on the two
//! faces of the unit box. Larger `n` uses seeded multi-start Newton, which is
//! best effort. Every pair is polished by damped Newton and re-checked
//! against its defining equation before it is returned.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::budget::{all_hits, Budget, StartOutcome};
use crate::error::Result;
use crate::nls::{self, NlsOptions};
use crate::poly::{Poly, Roots};
use crate::tensor::{dot, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EigenKind {
    H,
    Z,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EigenPair {
    pub kind: EigenKind,
    pub lambda: f64,
    pub x: Vec<f64>,
    /// Max-norm defect of the defining equation.
    pub residual: f64,
}

impl EigenPair {
    pub fn is_nonnegative(&self) -> bool {
        self.x.iter().all(|&v| v >= 0.0)
    }

    pub fn is_nonpositive(&self) -> bool {
        self.x.iter().all(|&v| v <= 0.0)
    }
}

/// Max-norm defect `|A x^{m-1} - lambda x|` (Z) or `|A x^{m-1} - lambda x^{[m-1]}|` (H).
pub fn eigen_defect(a: &Tensor, kind: EigenKind, lambda: f64, x: &[f64]) -> Result<f64> {
    let f = a.apply(x)?;
    let d = a.degree() as i32;
    Ok(f.iter()
        .zip(x)
        .map(|(fi, xi)| match kind {
            EigenKind::Z => (fi - lambda * xi).abs(),
            EigenKind::H => (fi - lambda * xi.powi(d)).abs(),
        })
        .fold(0.0, f64::max))
}

const ANGLE_GRID: usize = 20_000;
const Z_SALT: u64 = 0x5a5a;
const H_SALT: u64 = 0x4848;

pub fn z_eigenpairs(a: &Tensor, budget: &Budget) -> Result<Vec<EigenPair>> {
    budget.validate()?;
    let n = a.dim();
    let raw = match n {
        1 => vec![vec![1.0], vec![-1.0]],
        2 => angle_sweep(a),
        _ => Vec::new(),
    };
    let mut pairs: Vec<EigenPair> = raw.into_iter().filter_map(|x| polish_z(a, &x, budget)).collect();
    if n > 2 {
        let (hits, _) = all_hits(budget, budget.max_starts, |k| {
            let x0 = z_start(a.dim(), budget, k);
            StartOutcome { hit: polish_z(a, &x0, budget), iterations: 1 }
        });
        pairs.extend(hits);
    }
    Ok(finish(a, pairs, budget))
}

pub fn h_eigenpairs(a: &Tensor, budget: &Budget) -> Result<Vec<EigenPair>> {
    budget.validate()?;
    let n = a.dim();
    let mut pairs = Vec::new();
    match n {
        1 => pairs.extend(polish_h(a, &[1.0], budget)),
        2 => {
            for x in h_faces(a) {
                pairs.extend(polish_h(a, &x, budget));
            }
        }
        _ => {
            let (hits, _) = all_hits(budget, budget.max_starts, |k| {
                let x0 = h_start(n, budget, k);
                StartOutcome { hit: polish_h(a, &x0, budget), iterations: 1 }
            });
            pairs.extend(hits);
        }
    }
    Ok(finish(a, pairs, budget))
}

/// Angular defect `g(theta)` sampled on `[0, 2 pi)`; defined for `n = 2` only.
pub fn z_defect_curve(a: &Tensor, samples: usize) -> Vec<(f64, f64)> {
    if a.dim() != 2 || samples == 0 {
        return Vec::new();
    }
    let forms = BinaryForms::new(a);
    (0..samples)
        .map(|k| {
            let th = std::f64::consts::TAU * k as f64 / samples as f64;
            (th, forms.angle_defect(th))
        })
        .collect()
}

/// Components of `A x^{m-1}` for `n = 2` as binary forms.
struct BinaryForms {
    rows: [Vec<f64>; 2],
    degree: usize,
}

impl BinaryForms {
    fn new(a: &Tensor) -> Self {
        Self { rows: [a.binary_form(0, 0, 1), a.binary_form(1, 0, 1)], degree: a.degree() }
    }

    fn eval(&self, row: usize, x1: f64, x2: f64) -> f64 {
        let d = self.degree as i32;
        self.rows[row].iter().enumerate().map(|(k, c)| c * x1.powi(d - k as i32) * x2.powi(k as i32)).sum()
    }

    fn angle_defect(&self, th: f64) -> f64 {
        let (s, c) = th.sin_cos();
        c * self.eval(1, c, s) - s * self.eval(0, c, s)
    }
}

/// Candidate Z-eigenvectors on the unit circle for `n = 2`.
fn angle_sweep(a: &Tensor) -> Vec<Vec<f64>> {
    let forms = BinaryForms::new(a);
    let step = std::f64::consts::TAU / ANGLE_GRID as f64;
    let g: Vec<f64> = (0..=ANGLE_GRID).map(|k| forms.angle_defect(k as f64 * step)).collect();
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    let mut thetas = Vec::new();
    for k in 0..ANGLE_GRID {
        let (u, v) = (k as f64 * step, (k + 1) as f64 * step);
        if g[k] == 0.0 {
            thetas.push(u);
        } else if g[k].signum() != g[k + 1].signum() && g[k + 1] != 0.0 {
            thetas.push(bisect_angle(&forms, u, v, g[k]));
        }
        // grazing zeros: local minima of |g| that do not change sign
        if k > 0 {
            let (prev, cur, next) = (g[k - 1].abs(), g[k].abs(), g[k + 1].abs());
            if cur < prev && cur <= next && g[k - 1].signum() == g[k + 1].signum() && cur < 1e-3 * scale {
                thetas.push(golden_min(&forms, (k - 1) as f64 * step, v));
            }
        }
    }
    thetas.into_iter().map(|th| vec![th.cos(), th.sin()]).collect()
}

fn bisect_angle(forms: &BinaryForms, mut u: f64, mut v: f64, gu: f64) -> f64 {
    let su = gu.signum();
    for _ in 0..100 {
        let mid = 0.5 * (u + v);
        let gm = forms.angle_defect(mid);
        if gm == 0.0 {
            return mid;
        }
        if gm.signum() == su {
            u = mid;
        } else {
            v = mid;
        }
    }
    0.5 * (u + v)
}

fn golden_min(forms: &BinaryForms, mut u: f64, mut v: f64) -> f64 {
    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    for _ in 0..120 {
        let p = v - ratio * (v - u);
        let q = u + ratio * (v - u);
        if forms.angle_defect(p).abs() < forms.angle_defect(q).abs() {
            v = q;
        } else {
            u = p;
        }
    }
    0.5 * (u + v)
}

/// Candidate H-eigenvectors for `n = 2` on the faces `x = (1, s)` and `x = (s, 1)`.
fn h_faces(a: &Tensor) -> Vec<Vec<f64>> {
    let d = a.degree();
    let zero_tol = 1e-13 * a.max_abs().max(f64::MIN_POSITIVE);
    let mut out = Vec::new();
    for fixed in 0..2 {
        let free = 1 - fixed;
        let lam = a.face_poly(fixed, fixed, 1.0);
        let other = a.face_poly(free, fixed, 1.0);
        let defect = &other - &(&lam * &Poly::monomial(1.0, d));
        let roots = match defect.roots_in(-1.0, 1.0, zero_tol) {
            Roots::Finite(r) => r,
            Roots::Everywhere => vec![-1.0, -0.5, 0.0, 0.5, 1.0],
        };
        for s in roots {
            let mut x = vec![0.0; 2];
            x[fixed] = 1.0;
            x[free] = s;
            out.push(x);
        }
    }
    out
}

fn z_start(n: usize, budget: &Budget, k: usize) -> Vec<f64> {
    if k < 2 * n {
        let mut x = vec![0.0; n];
        x[k / 2] = if k.is_multiple_of(2) { 1.0 } else { -1.0 };
        return x;
    }
    let mut rng = budget.rng(Z_SALT, k);
    let x: Vec<f64> = (0..n).map(|_| StandardNormal.sample(&mut rng)).collect();
    let norm = dot(&x, &x).sqrt().max(1e-300);
    x.into_iter().map(|v| v / norm).collect()
}

fn h_start(n: usize, budget: &Budget, k: usize) -> Vec<f64> {
    let mut rng = budget.rng(H_SALT, k);
    let pivot = k % n;
    let corners = 1usize << n.min(16);
    let mut x: Vec<f64> = if k < corners {
        (0..n).map(|i| if (k >> i) & 1 == 0 { 1.0 } else { -1.0 }).collect()
    } else {
        (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect()
    };
    x[pivot] = 1.0;
    x
}

fn polish_z(a: &Tensor, x0: &[f64], budget: &Budget) -> Option<EigenPair> {
    let n = a.dim();
    let norm = dot(x0, x0).sqrt();
    if !(norm > 0.0) {
        return None;
    }
    let x0: Vec<f64> = x0.iter().map(|v| v / norm).collect();
    let lam0 = dot(&x0, &a.eval(&x0));
    let mut z0 = x0;
    z0.push(lam0);
    let mut system = |z: &[f64]| {
        let (x, lam) = (&z[..n], z[n]);
        let f = a.eval(x);
        let jf = a.eval_jacobian(x);
        let mut r = DVector::zeros(n + 1);
        let mut j = DMatrix::zeros(n + 1, n + 1);
        for i in 0..n {
            r[i] = f[i] - lam * x[i];
            for c in 0..n {
                j[(i, c)] = jf[(i, c)];
            }
            j[(i, i)] -= lam;
            j[(i, n)] = -x[i];
            j[(n, i)] = x[i];
        }
        r[n] = 0.5 * (dot(x, x) - 1.0);
        (r, j)
    };
    let tol = (budget.tol.eig * 1e-2).max(1e-15);
    let res = nls::solve(&z0, &mut system, NlsOptions { max_iters: budget.max_iters, tol });
    let mut x = res.z[..n].to_vec();
    let norm = dot(&x, &x).sqrt();
    if !(norm > 0.0) || !norm.is_finite() {
        return None;
    }
    x.iter_mut().for_each(|v| *v /= norm);
    let lambda = dot(&x, &a.eval(&x));
    let residual = eigen_defect(a, EigenKind::Z, lambda, &x).ok()?;
    (residual <= budget.tol.eig).then_some(EigenPair { kind: EigenKind::Z, lambda, x, residual })
}

fn polish_h(a: &Tensor, x0: &[f64], budget: &Budget) -> Option<EigenPair> {
    let n = a.dim();
    let d = a.degree() as i32;
    let pivot = argmax_abs(x0)?;
    let p = x0[pivot];
    let x0: Vec<f64> = x0.iter().map(|v| v / p).collect();
    let free: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
    let mut z0: Vec<f64> = free.iter().map(|&i| x0[i]).collect();
    z0.push(a.eval(&x0)[pivot]);
    let unpack = |z: &[f64]| {
        let mut x = vec![1.0; n];
        for (slot, &i) in free.iter().enumerate() {
            x[i] = z[slot];
        }
        x
    };
    let mut system = |z: &[f64]| {
        let x = unpack(z);
        let lam = z[n - 1];
        let f = a.eval(&x);
        let jf = a.eval_jacobian(&x);
        let mut r = DVector::zeros(n);
        let mut j = DMatrix::zeros(n, n);
        for i in 0..n {
            r[i] = f[i] - lam * x[i].powi(d);
            for (slot, &c) in free.iter().enumerate() {
                j[(i, slot)] = jf[(i, c)];
                if c == i {
                    j[(i, slot)] -= lam * d as f64 * x[i].powi(d - 1);
                }
            }
            j[(i, n - 1)] = -x[i].powi(d);
        }
        (r, j)
    };
    let tol = (budget.tol.eig * 1e-2).max(1e-15);
    let res = nls::solve(&z0, &mut system, NlsOptions { max_iters: budget.max_iters, tol });
    let x = unpack(&res.z);
    let scale = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(scale > 0.0) || !scale.is_finite() {
        return None;
    }
    let x: Vec<f64> = x.iter().map(|v| v / scale).collect();
    let k = argmax_abs(&x)?;
    let lambda = a.eval(&x)[k] / x[k].powi(d);
    let residual = eigen_defect(a, EigenKind::H, lambda, &x).ok()?;
    (residual <= budget.tol.eig).then_some(EigenPair { kind: EigenKind::H, lambda, x, residual })
}

fn argmax_abs(x: &[f64]) -> Option<usize> {
    let mut best: Option<(usize, f64)> = None;
    for (i, v) in x.iter().enumerate() {
        if best.is_none_or(|(_, b)| v.abs() > b + 1e-12) {
            best = Some((i, v.abs()));
        }
    }
    best.filter(|&(_, b)| b > 0.0).map(|(i, _)| i)
}

/// Flips `x` so that its first largest-magnitude entry is positive.
fn canonical_sign(x: &mut [f64]) {
    if let Some(k) = argmax_abs(x) {
        if x[k] < 0.0 {
            x.iter_mut().for_each(|v| *v = -*v);
        }
    }
}

/// Canonical sign, deduplication and sorting by `(lambda, x)`.
fn finish(a: &Tensor, mut pairs: Vec<EigenPair>, budget: &Budget) -> Vec<EigenPair> {
    for p in &mut pairs {
        // x and -x carry the same eigenvalue for H pairs of any order and for Z pairs of even order
        if p.kind == EigenKind::H || a.order().is_multiple_of(2) {
            canonical_sign(&mut p.x);
        }
        for v in &mut p.x {
            if *v == 0.0 {
                *v = 0.0;
            }
        }
    }
    let tol = budget.tol.dedup;
    let mut out: Vec<EigenPair> = Vec::new();
    for p in pairs {
        let dup = out.iter().any(|q| {
            (q.lambda - p.lambda).abs() <= tol && q.x.iter().zip(&p.x).all(|(u, v)| (u - v).abs() <= tol)
        });
        if !dup {
            out.push(p);
        }
    }
    out.sort_by(|p, q| {
        p.lambda.total_cmp(&q.lambda).then_with(|| {
            p.x.iter().zip(&q.x).map(|(u, v)| u.total_cmp(v)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
        })
    });
    out
}
