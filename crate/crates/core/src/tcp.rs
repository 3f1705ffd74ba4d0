//! Tensor complementarity problems `x >= 0, f(x) = A x^{m-1} + q >= 0, x^T f(x) = 0`.
//!
//! The solver applies damped semismooth Newton to the Fischer-Burmeister
//! equations `phi(x_i, f_i(x)) = 0` from a seeded schedule of starts, then
//! polishes the result by Newton on the active set. Solution sets are
//! enumerated exactly for supports of size at most two by restricting to rays
//! `x = r y`, which turns each support system into a univariate polynomial.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::budget::{all_hits, first_hit, Budget, BudgetUsed, StartOutcome};
use crate::classes::{check_witness, classify, ClassId, Status, Verdict, Witness};
use crate::error::{input, Result};
use crate::nls::{self, fischer_burmeister, NlsOptions};
use crate::poly::{sort_dedup, Roots};
use crate::tensor::{dot, IndexSet, Tensor};

#[derive(Debug, Clone, PartialEq)]
pub struct TcpInstance {
    a: Tensor,
    q: Vec<f64>,
}

impl TcpInstance {
    pub fn new(a: Tensor, q: Vec<f64>) -> Result<Self> {
        if q.len() != a.dim() {
            return input(format!("q has length {}, tensor dimension is {}", q.len(), a.dim()));
        }
        if q.iter().any(|v| !v.is_finite()) {
            return input("q has non-finite entries");
        }
        Ok(Self { a, q })
    }

    pub fn tensor(&self) -> &Tensor {
        &self.a
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    /// `f(x) = A x^{m-1} + q`.
    pub fn f(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut f = self.a.apply(x)?;
        f.iter_mut().zip(&self.q).for_each(|(fi, qi)| *fi += qi);
        Ok(f)
    }

    fn eval_f(&self, x: &[f64]) -> Vec<f64> {
        let mut f = self.a.eval(x);
        f.iter_mut().zip(&self.q).for_each(|(fi, qi)| *fi += qi);
        f
    }

    /// `(feasibility, complementarity)` residuals at `x`.
    pub fn residuals(&self, x: &[f64]) -> Result<(f64, f64)> {
        self.a.check_point(x)?;
        Ok(self.eval_residuals(x))
    }

    fn eval_residuals(&self, x: &[f64]) -> (f64, f64) {
        let f = self.eval_f(x);
        let low = x.iter().chain(&f).fold(f64::INFINITY, |m, v| m.min(*v));
        ((-low).max(0.0), dot(x, &f).abs())
    }

    fn solution(&self, x: Vec<f64>, method: &str, tol: f64) -> Option<TcpSolution> {
        if x.iter().any(|v| !v.is_finite()) {
            return None;
        }
        let (feas, comp) = self.eval_residuals(&x);
        (feas <= tol && comp <= tol).then(|| TcpSolution {
            x,
            feas_residual: feas,
            comp_residual: comp,
            method: method.to_string(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TcpSolution {
    pub x: Vec<f64>,
    pub feas_residual: f64,
    pub comp_residual: f64,
    pub method: String,
}

/// Points of an exceptional family for `f(x) = A x^{m-1} + q`: norms grow,
/// and `f_i(x) = -mu x_i` on the support, `f_i(x) >= 0` off it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DivergenceTrace {
    pub q: Vec<f64>,
    pub points: Vec<Vec<f64>>,
    pub multipliers: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveReport {
    pub solution: Option<TcpSolution>,
    /// Some start ran off to infinity without reducing the merit.
    pub diverged: bool,
    pub divergence_trace: Option<DivergenceTrace>,
    pub used: BudgetUsed,
}

const SOLVE_SALT: u64 = 0x7c9a;
const ENUM_SALT: u64 = 0xe17e;
const TRACE_SALT: u64 = 0x7ace;
const DIVERGENCE_NORM: f64 = 1e6;
const STALL_ITERS: usize = 20;
/// A start whose merit has not improved for this long is abandoned.
const GIVE_UP_ITERS: usize = 40;
const TRACE_RADII: [f64; 4] = [10.0, 100.0, 1e3, 1e4];

/// Uniform `q` in `[-w, w]^n` from the seeded stream `(salt, k)`.
pub fn random_q(n: usize, w: f64, budget: &Budget, salt: u64, k: usize) -> Vec<f64> {
    let mut rng = budget.rng(salt, k);
    (0..n).map(|_| rng.random_range(-w..=w)).collect()
}

/// Typical solution magnitude `(|q| / |A|)^{1/(m-1)}`, clamped to `[1e-3, 1e3]`.
fn natural_scale(inst: &TcpInstance) -> f64 {
    let qmax = inst.q.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let amax = inst.a.max_abs();
    if qmax == 0.0 || amax == 0.0 {
        return 1.0;
    }
    (qmax / amax).powf(1.0 / inst.a.degree() as f64).clamp(1e-3, 1e3)
}

fn start_point(inst: &TcpInstance, budget: &Budget, k: usize) -> Vec<f64> {
    let n = inst.a.dim();
    match k {
        0 => vec![0.0; n],
        1 => vec![natural_scale(inst); n],
        _ => {
            let mut rng = budget.rng(SOLVE_SALT, k);
            // radii spread over three decades around the natural scale
            let r = natural_scale(inst) * 10f64.powf(rng.random_range(-1.0..2.0));
            let sparse = k.is_multiple_of(2);
            (0..n).map(|_| if sparse && rng.random_bool(0.4) { 0.0 } else { rng.random_range(0.0..r) }).collect()
        }
    }
}

struct Attempt {
    x: Vec<f64>,
    diverged: bool,
    iterations: usize,
}

fn fb_newton(inst: &TcpInstance, x0: &[f64], budget: &Budget) -> Attempt {
    let n = inst.a.dim();
    let mut system = |x: &[f64]| {
        let f = inst.eval_f(x);
        let jf = inst.a.eval_jacobian(x);
        let mut r = DVector::zeros(n);
        let mut j = DMatrix::zeros(n, n);
        for i in 0..n {
            let (phi, da, db) = fischer_burmeister(x[i], f[i]);
            r[i] = phi;
            for c in 0..n {
                j[(i, c)] = db * jf[(i, c)];
            }
            j[(i, i)] += da;
        }
        (r, j)
    };
    let mut best = f64::INFINITY;
    let mut stall = 0;
    let mut diverged = false;
    let mut observe = |z: &[f64], merit: f64| {
        if merit < best * (1.0 - 1e-6) {
            best = merit;
            stall = 0;
        } else {
            stall += 1;
        }
        if dot(z, z).sqrt() > DIVERGENCE_NORM && stall >= STALL_ITERS {
            diverged = true;
            return false;
        }
        stall < GIVE_UP_ITERS
    };
    let opts = NlsOptions { max_iters: budget.max_iters, tol: 1e-3 * budget.tol.tcp };
    let res = nls::solve_observed(x0, &mut system, opts, &mut observe);
    let diverged = diverged || (!res.converged && dot(&res.z, &res.z).sqrt() > DIVERGENCE_NORM);
    Attempt { x: res.z, diverged, iterations: res.iterations }
}

/// Newton on `f_S(x) = 0` with `x_i = 0` off the support `S`.
fn polish_support(inst: &TcpInstance, x: &[f64], support: &[usize], budget: &Budget) -> Vec<f64> {
    let n = inst.a.dim();
    if support.is_empty() {
        return vec![0.0; n];
    }
    let lift = |z: &[f64]| {
        let mut full = vec![0.0; n];
        for (slot, &i) in support.iter().enumerate() {
            full[i] = z[slot];
        }
        full
    };
    let mut system = |z: &[f64]| {
        let full = lift(z);
        let f = inst.eval_f(&full);
        let jf = inst.a.eval_jacobian(&full);
        let r = DVector::from_iterator(support.len(), support.iter().map(|&i| f[i]));
        let j = DMatrix::from_fn(support.len(), support.len(), |p, c| jf[(support[p], support[c])]);
        (r, j)
    };
    let z0: Vec<f64> = support.iter().map(|&i| x[i]).collect();
    let res = nls::solve(&z0, &mut system, NlsOptions { max_iters: budget.max_iters.min(50), tol: 1e-15 });
    lift(&res.z)
}

/// Snaps negative noise, then polishes on the support `x_i > f_i`.
fn refine(inst: &TcpInstance, x: &[f64], budget: &Budget, method: &str) -> Option<TcpSolution> {
    let tol = budget.tol.tcp;
    let x0: Vec<f64> = x.iter().map(|&v| v.max(0.0)).collect();
    let f = inst.eval_f(&x0);
    let support: Vec<usize> = (0..x0.len()).filter(|&i| x0[i] > f[i]).collect();
    let polished = polish_support(inst, &x0, &support, budget);
    let candidates = [polished, x0];
    candidates
        .into_iter()
        .filter_map(|c| inst.solution(c, method, tol))
        .min_by(|p, q| (p.feas_residual + p.comp_residual).total_cmp(&(q.feas_residual + q.comp_residual)))
}

/// Solves the instance; the lowest-index successful start wins. When every
/// start fails, an exceptional family is sought as a divergence certificate.
pub fn solve(inst: &TcpInstance, budget: &Budget) -> Result<SolveReport> {
    solve_with(inst, budget, true)
}

pub(crate) fn solve_with(inst: &TcpInstance, budget: &Budget, capture_trace: bool) -> Result<SolveReport> {
    budget.validate()?;
    if let Some(sol) = inst.solution(vec![0.0; inst.a.dim()], "zero", budget.tol.tcp) {
        return Ok(SolveReport { solution: Some(sol), diverged: false, divergence_trace: None, used: BudgetUsed::default() });
    }
    let diverged = std::sync::atomic::AtomicBool::new(false);
    let (hit, used) = first_hit(budget, budget.max_starts, |k| {
        let attempt = fb_newton(inst, &start_point(inst, budget, k), budget);
        if attempt.diverged {
            diverged.store(true, std::sync::atomic::Ordering::Relaxed);
        }
        StartOutcome { hit: refine(inst, &attempt.x, budget, "semismooth-newton"), iterations: attempt.iterations }
    });
    let solution = hit.map(|(_, s)| s);
    let diverged = diverged.into_inner();
    let divergence_trace = if solution.is_none() && capture_trace { exceptional_family(inst, budget) } else { None };
    Ok(SolveReport { solution, diverged, divergence_trace, used })
}

fn lex_sort_dedup(mut sols: Vec<TcpSolution>, tol: f64) -> Vec<TcpSolution> {
    sols.sort_by(|p, q| {
        p.x.iter().zip(&q.x).map(|(u, v)| u.total_cmp(v)).find(|o| o.is_ne()).unwrap_or(std::cmp::Ordering::Equal)
    });
    let mut out: Vec<TcpSolution> = Vec::new();
    for s in sols {
        if !out.iter().any(|o| o.x.iter().zip(&s.x).all(|(u, v)| (u - v).abs() <= tol)) {
            out.push(s);
        }
    }
    out
}

/// Every distinct solution reached from the start schedule.
pub fn solve_multi(inst: &TcpInstance, budget: &Budget) -> Result<(Vec<TcpSolution>, BudgetUsed)> {
    budget.validate()?;
    let (hits, used) = all_hits(budget, budget.max_starts, |k| {
        let attempt = fb_newton(inst, &start_point(inst, budget, k), budget);
        StartOutcome { hit: refine(inst, &attempt.x, budget, "semismooth-newton"), iterations: attempt.iterations }
    });
    Ok((lex_sort_dedup(hits, budget.tol.dedup), used))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Enumeration {
    pub solutions: Vec<TcpSolution>,
    /// `exhaustive` (n <= 2), `exhaustive-partial` (n = 3: supports of size
    /// three are searched by multi-start) or `multistart`.
    pub method: String,
    /// False when some support carries a continuum of solutions, which is
    /// sampled rather than listed, or when part of the search was not exhaustive.
    pub complete: bool,
    pub used: BudgetUsed,
}

pub fn enumerate_solutions(inst: &TcpInstance, budget: &Budget) -> Result<Enumeration> {
    budget.validate()?;
    let n = inst.a.dim();
    if n > 3 {
        let (solutions, used) = solve_multi(inst, budget)?;
        return Ok(Enumeration { solutions, method: "multistart".into(), complete: false, used });
    }
    let mut used = BudgetUsed::default();
    let mut complete = true;
    let mut found = Vec::new();
    found.extend(inst.solution(vec![0.0; n], "enumeration", budget.tol.tcp));
    for j in IndexSet::all_nonempty(n) {
        let support = j.indices().to_vec();
        let (raw, exact) = match support.len() {
            1 | 2 => support_rays(inst, &j)?,
            _ => {
                let (pts, u) = support_multistart(inst, &support, budget);
                used.absorb(u);
                (pts, false)
            }
        };
        complete &= exact;
        for x in raw {
            used.candidates += 1;
            let x = polish_support(inst, &x, &support, budget);
            if support.iter().all(|&i| x[i] > 0.0) {
                found.extend(inst.solution(x, "enumeration", budget.tol.tcp));
            }
        }
    }
    let method = if n <= 2 { "exhaustive" } else { "exhaustive-partial" };
    let complete = complete && n <= 2;
    Ok(Enumeration { solutions: lex_sort_dedup(found, budget.tol.dedup), method: method.into(), complete, used })
}

/// Candidate solutions with support exactly `j` for `|j| <= 2`, and whether
/// the list is exact (no continuum on this support).
fn support_rays(inst: &TcpInstance, j: &IndexSet) -> Result<(Vec<Vec<f64>>, bool)> {
    let n = inst.a.dim();
    let sub = inst.a.principal_subtensor(j)?;
    let idx = j.indices();
    let q: Vec<f64> = idx.iter().map(|&i| inst.q[i]).collect();
    let d = inst.a.degree() as f64;
    let tol = 1e-13 * sub.max_abs().max(q.iter().fold(0.0f64, |m, v| m.max(v.abs()))).max(f64::MIN_POSITIVE);
    let lift = |y: &[f64], r: f64| {
        let mut x = vec![0.0; n];
        for (slot, &i) in idx.iter().enumerate() {
            x[i] = r * y[slot];
        }
        x
    };
    let radius = |p: f64, qi: f64| -> Option<f64> {
        let rd = -qi / p;
        (rd > 0.0 && rd.is_finite()).then(|| rd.powf(1.0 / d))
    };
    let mut out = Vec::new();
    if idx.len() == 1 {
        let aii = sub.coeffs()[0];
        if aii.abs() <= tol {
            // f_i = q_i along the whole ray
            return Ok((out, q[0].abs() > tol));
        }
        out.extend(radius(aii, q[0]).map(|r| lift(&[1.0], r)));
        return Ok((out, true));
    }
    let mut exact = true;
    for fixed in 0..2 {
        let free = 1 - fixed;
        let pa = sub.face_poly(fixed, fixed, 1.0);
        let pb = sub.face_poly(free, fixed, 1.0);
        // f = r^d P(s) + q on the ray through (1, s) or (s, 1)
        let e = &pa.scale(q[free]) - &pb.scale(q[fixed]);
        let roots = match e.roots_in(0.0, 1.0, tol) {
            Roots::Finite(r) => r,
            Roots::Everywhere => {
                exact = false;
                let mut v = pa.extremum_candidates(0.0, 1.0, tol);
                v.extend([0.25, 0.5, 0.75]);
                v
            }
        };
        let mut roots = roots;
        sort_dedup(&mut roots);
        for s in roots.into_iter().filter(|&s| s > 0.0 && (fixed == 0 || s < 1.0)) {
            let (va, vb) = (pa.eval(s), pb.eval(s));
            let r = if va.abs() >= vb.abs() { radius(va, q[fixed]) } else { radius(vb, q[free]) };
            if let Some(r) = r {
                let mut y = [0.0; 2];
                y[fixed] = 1.0;
                y[free] = s;
                out.push(lift(&y, r));
            }
        }
    }
    Ok((out, exact))
}

fn support_multistart(inst: &TcpInstance, support: &[usize], budget: &Budget) -> (Vec<Vec<f64>>, BudgetUsed) {
    let scale = 2.0 * natural_scale(inst);
    let n = inst.a.dim();
    all_hits(budget, budget.max_starts, |k| {
        let mut rng = budget.rng(ENUM_SALT, k);
        let mut x0 = vec![0.0; n];
        for &i in support {
            x0[i] = rng.random_range(0.0..scale);
        }
        let x = polish_support(inst, &x0, support, budget);
        let f = inst.eval_f(&x);
        let ok = support.iter().all(|&i| x[i] > 0.0 && f[i].abs() <= budget.tol.tcp);
        StartOutcome { hit: ok.then_some(x), iterations: 1 }
    })
}

/// Exceptional family by continuation in the radius: solves
/// `phi(x_i, f_i(x) + mu x_i) = 0`, `|x|_2 = r` for growing `r`.
fn exceptional_family(inst: &TcpInstance, budget: &Budget) -> Option<DivergenceTrace> {
    let n = inst.a.dim();
    let solve_at = |x0: &[f64], nu0: f64, r: f64| -> Option<(Vec<f64>, f64)> {
        let mut system = |z: &[f64]| {
            let x = &z[..n];
            let nu = z[n];
            let mu = nu * nu;
            let f = inst.eval_f(x);
            let jf = inst.a.eval_jacobian(x);
            let mut res = DVector::zeros(n + 1);
            let mut j = DMatrix::zeros(n + 1, n + 1);
            for i in 0..n {
                let (phi, da, db) = fischer_burmeister(x[i], f[i] + mu * x[i]);
                res[i] = phi;
                for c in 0..n {
                    j[(i, c)] = db * jf[(i, c)];
                }
                j[(i, i)] += da + db * mu;
                j[(i, n)] = db * 2.0 * nu * x[i];
                j[(n, i)] = x[i] / r;
            }
            res[n] = 0.5 * (dot(x, x) / r - r);
            (res, j)
        };
        let mut z0 = x0.to_vec();
        z0.push(nu0);
        let res = nls::solve(&z0, &mut system, NlsOptions { max_iters: budget.max_iters, tol: 1e-10 });
        let x: Vec<f64> = res.z[..n].iter().map(|v| v.max(0.0)).collect();
        let mu = res.z[n] * res.z[n];
        let pt = (x, mu);
        (mu > 0.0 && trace_point_ok(inst, &pt.0, mu)).then_some(pt)
    };
    let r0 = TRACE_RADII[0];
    let (first, _) = first_hit(budget, budget.max_starts, |k| {
        let mut rng = budget.rng(TRACE_SALT, k);
        let mut x: Vec<f64> = (0..n).map(|_| rng.random_range(0.0..1.0)).collect();
        let norm = dot(&x, &x).sqrt().max(1e-12);
        x.iter_mut().for_each(|v| *v *= r0 / norm);
        let nu = rng.random_range(0.0..1.0) * (inst.a.max_abs() * r0.powi(inst.a.order() as i32 - 2)).sqrt();
        StartOutcome { hit: solve_at(&x, nu, r0), iterations: 1 }
    });
    let (_, (mut x, mut mu)) = first?;
    let mut points = vec![x.clone()];
    let mut multipliers = vec![mu];
    let m = inst.a.order() as i32;
    for w in TRACE_RADII.windows(2) {
        let ratio = w[1] / w[0];
        let x0: Vec<f64> = x.iter().map(|v| v * ratio).collect();
        let nu0 = (mu * ratio.powi(m - 2)).sqrt();
        (x, mu) = solve_at(&x0, nu0, w[1])?;
        points.push(x.clone());
        multipliers.push(mu);
    }
    Some(DivergenceTrace { q: inst.q.clone(), points, multipliers })
}

fn trace_tol(inst: &TcpInstance, x: &[f64]) -> f64 {
    1e-6 * dot(x, x).sqrt().powi(inst.a.degree() as i32).max(1.0)
}

fn trace_point_ok(inst: &TcpInstance, x: &[f64], mu: f64) -> bool {
    let f = inst.eval_f(x);
    let tol = trace_tol(inst, x);
    x.iter().zip(&f).all(|(&xi, &fi)| if xi > 0.0 { (fi + mu * xi).abs() <= tol } else { fi >= -tol })
}

impl DivergenceTrace {
    /// Checks the trace invariants against `a`. Tolerances are relative to
    /// `|x|^{m-1}`, the size of `A x^{m-1}` along the trace.
    pub fn validate(&self, a: &Tensor) -> Result<()> {
        if self.points.is_empty() {
            return input("divergence trace is empty");
        }
        if self.points.len() != self.multipliers.len() {
            return input("divergence trace needs one multiplier per point");
        }
        let inst = TcpInstance::new(a.clone(), self.q.clone())?;
        let mut last = 0.0;
        for (k, (x, &mu)) in self.points.iter().zip(&self.multipliers).enumerate() {
            a.check_point(x)?;
            if x.iter().any(|&v| v < 0.0) {
                return input(format!("trace point {k} has negative entries"));
            }
            if !(mu > 0.0) || !mu.is_finite() {
                return input(format!("trace multiplier {k} must be positive"));
            }
            let norm = dot(x, x).sqrt();
            if !(norm > last) {
                return input(format!("trace norms must increase strictly (point {k})"));
            }
            last = norm;
            if !trace_point_ok(&inst, x, mu) {
                return input(format!("trace point {k} violates the exceptional-family conditions"));
            }
        }
        Ok(())
    }
}

const EXTRACT_TOL: f64 = 1e-6;

/// ER witness from the normalized tail of an exceptional family:
/// `x* = x/|x|_2` and `t* = mu/|x|_2^{m-2}`, using the last point or the
/// average of the last three, whichever fits the ER system better.
pub fn extract_er_witness(trace: &DivergenceTrace, a: &Tensor) -> Result<Option<Witness>> {
    trace.validate(a)?;
    let m = a.order() as i32;
    let normalized = |k: usize| {
        let x = &trace.points[k];
        let norm = dot(x, x).sqrt();
        (x.iter().map(|v| v / norm).collect::<Vec<f64>>(), trace.multipliers[k] / norm.powi(m - 2))
    };
    let len = trace.points.len();
    let mut candidates = vec![normalized(len - 1)];
    if len >= 3 {
        let tail: Vec<_> = (len - 3..len).map(normalized).collect();
        let x: Vec<f64> = (0..a.dim()).map(|i| tail.iter().map(|p| p.0[i]).sum::<f64>() / 3.0).collect();
        let t = tail.iter().map(|p| p.1).sum::<f64>() / 3.0;
        candidates.push((x, t));
    }
    let mut best: Option<Witness> = None;
    for (x, t) in candidates {
        let check = check_witness(a, ClassId::ER, &x, Some(t), EXTRACT_TOL)?;
        if !check.valid || best.as_ref().is_some_and(|b| b.residual <= check.residual) {
            continue;
        }
        let (x, t) = crate::classes::normalize_witness(a, ClassId::ER, &x, Some(t)).expect("nonzero point");
        best = Some(Witness { system: ClassId::ER, x, t, residual: check.residual });
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundednessReport {
    pub r0: Verdict,
    pub solutions: usize,
    /// Largest Euclidean norm among enumerated solutions.
    pub max_norm: Option<f64>,
    pub enumeration_method: String,
    pub enumeration_complete: bool,
    pub conclusion: Vec<String>,
    /// Solution of the R0 failure system: a direction along which solutions may escape.
    pub recession_witness: Option<Witness>,
}

pub fn boundedness_report(inst: &TcpInstance, budget: &Budget) -> Result<BoundednessReport> {
    let r0 = classify(&inst.a, ClassId::R0, budget)?;
    let en = enumerate_solutions(inst, budget)?;
    let max_norm = en.solutions.iter().map(|s| dot(&s.x, &s.x).sqrt()).reduce(f64::max);
    let conclusion: Vec<String> = match r0.status {
        Status::Member => vec![
            "A is an R0-tensor".into(),
            "[-f(x^k)]_+ / |x^k| -> 0 along every unbounded sequence".into(),
            "the solution set is bounded for every q".into(),
        ],
        Status::NonMember => vec![
            "A is not an R0-tensor".into(),
            "the recession witness is a direction along which solutions may be unbounded".into(),
        ],
        Status::Unknown => vec!["R0 membership undecided under the budget; no boundedness conclusion".into()],
    };
    let recession_witness = r0.witness.clone();
    Ok(BoundednessReport {
        r0,
        solutions: en.solutions.len(),
        max_norm,
        enumeration_method: en.method,
        enumeration_complete: en.complete,
        conclusion,
        recession_witness,
    })
}
