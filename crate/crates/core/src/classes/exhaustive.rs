//! Complete witness search for `n <= 2`.
//!
//! On the normalized slice a nonzero point of the plane is a unit vector
//! `+-e_k` or lies on a face where one coordinate is `+-1` and the other is a
//! free `s` with `|s| <= 1`. Along a face every constraint is a univariate
//! polynomial in `s`, so each failure system either has a solution at
//! one of finitely many critical values of `s` (roots, touching points,
//! extremum candidates of a min-max) or has none at all. Candidates are tried
//! singletons first, then face `x1 = +-1`, then face `x2 = +-1`, ascending in
//! `s`; the first candidate that passes the checker is returned.

use super::system::{check_normalized, normalize};
use super::{ClassId, Domain, Found, Witness};
use crate::budget::BudgetUsed;
use crate::poly::{sort_dedup, Poly, Roots};
use crate::tensor::Tensor;

type Candidate = (Vec<f64>, Option<f64>);

pub(super) fn search(a: &Tensor, class: ClassId, margin: f64) -> Found {
    debug_assert!(a.dim() <= 2);
    let candidates = match a.dim() {
        1 => line_candidates(a, class),
        _ => plane_candidates(a, class),
    };
    let mut used = BudgetUsed::default();
    for (x, t) in candidates {
        used.candidates += 1;
        let Some((x, t)) = normalize(a, class, &x, t) else { continue };
        let check = check_normalized(a, class, &x, t, margin);
        if check.valid {
            let witness = Witness { system: class, x, t, residual: check.residual };
            return Found { witness: Some(witness), used, exhaustive: true };
        }
    }
    Found { witness: None, used, exhaustive: true }
}

/// The scalar that makes equation `k` of the R or ER system hold at `x`.
fn t_for(a: &Tensor, class: ClassId, x: &[f64], k: usize) -> Option<f64> {
    class.has_t().then(|| {
        let f = a.eval(x)[k];
        let t = if class == ClassId::ER { -f / x[k] } else { -f };
        t.max(0.0)
    })
}

fn line_candidates(a: &Tensor, class: ClassId) -> Vec<Candidate> {
    let signs: &[f64] = match class.domain() {
        Domain::Cone => &[1.0],
        Domain::Sphere => &[1.0, -1.0],
    };
    signs.iter().map(|&s| (vec![s], t_for(a, class, &[s], 0))).collect()
}

fn plane_candidates(a: &Tensor, class: ClassId) -> Vec<Candidate> {
    let tol = 1e-13 * a.max_abs().max(f64::MIN_POSITIVE);
    let d = a.degree();
    let (signs, lo): (&[f64], f64) = match class.domain() {
        Domain::Cone => (&[1.0], 0.0),
        Domain::Sphere => (&[1.0, -1.0], -1.0),
    };
    let mut out = Vec::new();
    for k in 0..2 {
        for &sg in signs {
            let mut x = vec![0.0; 2];
            x[k] = sg;
            let t = t_for(a, class, &x, k);
            out.push((x, t));
        }
    }
    let s_poly = Poly::monomial(1.0, 1);
    for fixed in 0..2 {
        let free = 1 - fixed;
        for &sg in signs {
            let pk = a.face_poly(fixed, fixed, sg);
            let pj = a.face_poly(free, fixed, sg);
            let mut ss = match class {
                ClassId::ER => equality_points(&(&pj - &(&s_poly * &pk)), &pk, lo, tol),
                ClassId::R => equality_points(&(&pj - &pk), &pk, lo, tol),
                ClassId::R0 => {
                    let mut v = zeros_and_touches(&pk, lo, tol);
                    v.extend(zeros_and_touches(&pj, lo, tol));
                    if pk.is_zero(tol) && pj.is_zero(tol) {
                        v.extend([lo, 0.5, 1.0]);
                    }
                    v
                }
                ClassId::SemiPositive | ClassId::StrictlySemiPositive => min_max_points(&pk, &pj, lo, tol),
                ClassId::P0 | ClassId::P | ClassId::WP => {
                    // x_i^e F_i with e = 1, or e = m - 1 for WP
                    let e = if class == ClassId::WP { d } else { 1 };
                    let gk = pk.scale(sg.powi(e as i32));
                    let gj = &Poly::monomial(1.0, e) * &pj;
                    min_max_points(&gk, &gj, lo, tol)
                }
                ClassId::StrictlyCopositive | ClassId::PositiveDefinite => {
                    let form = &pk.scale(sg) + &(&s_poly * &pj);
                    form.extremum_candidates(lo, 1.0, tol)
                }
                ClassId::Q => Vec::new(),
            };
            ss.retain(|s| (lo..=1.0).contains(s));
            sort_dedup(&mut ss);
            for s in ss {
                let mut x = vec![0.0; 2];
                x[fixed] = sg;
                x[free] = s;
                let t = t_for(a, class, &x, fixed);
                out.push((x, t));
            }
        }
    }
    out
}

/// Roots of `p` plus its critical points, where `p` may touch zero within the margin.
fn zeros_and_touches(p: &Poly, lo: f64, tol: f64) -> Vec<f64> {
    let mut v = p.roots_in(lo, 1.0, tol).finite().unwrap_or_default();
    v.extend(p.critical_points(lo, 1.0, tol));
    v
}

/// Points where the free equation `e(s) = 0` holds; the fixed equation is
/// solved by the choice of `t`. When `e` vanishes identically every `s`
/// works, and the best `t` is where the fixed component `pk` is smallest.
fn equality_points(e: &Poly, pk: &Poly, lo: f64, tol: f64) -> Vec<f64> {
    match e.roots_in(lo, 1.0, tol) {
        Roots::Finite(mut r) => {
            r.extend(e.critical_points(lo, 1.0, tol));
            r
        }
        Roots::Everywhere => pk.extremum_candidates(lo, 1.0, tol),
    }
}

/// Candidates for the minimum of `max(p, q)` on `[lo, 1]`: endpoints,
/// critical points of either, and crossings.
fn min_max_points(p: &Poly, q: &Poly, lo: f64, tol: f64) -> Vec<f64> {
    let mut v = p.extremum_candidates(lo, 1.0, tol);
    v.extend(q.critical_points(lo, 1.0, tol));
    if let Roots::Finite(r) = (p - q).roots_in(lo, 1.0, tol) {
        v.extend(r);
    }
    v
}
