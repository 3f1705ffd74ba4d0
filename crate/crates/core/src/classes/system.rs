//! Failure systems and their margin semantics.
//!
//! With margin `eps`, `> 0` means `> eps` and `>= 0` means `>= -eps`. A
//! failure system negates the class predicate, so its strict constraints are
//! `<= eps` and `< -eps`. Equations must hold to within `eps`.

use serde::{Deserialize, Serialize};

use super::{ClassId, Domain};
use crate::error::{input, Error, Result};
use crate::tensor::{scale_point, ScaleMode, Tensor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemCheck {
    pub valid: bool,
    /// Largest constraint violation at the normalized point.
    pub residual: f64,
}

struct Acc {
    eps: f64,
    residual: f64,
    valid: bool,
}

impl Acc {
    fn push(&mut self, violation: f64, allowed: f64) {
        self.residual = self.residual.max(violation);
        self.valid &= violation <= allowed;
    }
    fn eq(&mut self, v: f64) {
        self.push(v.abs(), self.eps);
    }
    fn ge(&mut self, v: f64) {
        self.push((-v).max(0.0), self.eps);
    }
    fn le(&mut self, v: f64) {
        self.push(v.max(0.0), self.eps);
    }
    /// `v < -eps`, i.e. the negation of `v >= 0` under the margin.
    fn lt(&mut self, v: f64) {
        self.push((v + self.eps).max(0.0), 0.0);
    }
    fn fail(&mut self) {
        self.valid = false;
    }
}

/// Normalizes `(x, t)` onto the class's slice. `None` for the zero vector.
pub(crate) fn normalize(a: &Tensor, class: ClassId, x: &[f64], t: Option<f64>) -> Option<(Vec<f64>, Option<f64>)> {
    let scale = match class.domain() {
        Domain::Cone => x.iter().fold(0.0f64, |m, v| m.max(v.abs())),
        Domain::Sphere => x.iter().map(|v| v * v).sum::<f64>().sqrt(),
    };
    if !(scale > 0.0) || !scale.is_finite() {
        return None;
    }
    let alpha = 1.0 / scale;
    let mode = if class == ClassId::ER { ScaleMode::Er } else { ScaleMode::R };
    let (xs, ts) = scale_point(x, t.unwrap_or(0.0), alpha, a.order(), mode).ok()?;
    Some((xs, t.map(|_| ts)))
}

/// Checks `(x, t)` against the failure system of `class` after normalizing
/// it onto the class's slice. `t` is required for R and ER and ignored
/// otherwise.
pub fn check_witness(a: &Tensor, class: ClassId, x: &[f64], t: Option<f64>, margin: f64) -> Result<SystemCheck> {
    a.check_point(x)?;
    if class == ClassId::Q {
        return Err(Error::Capability("Q has no failure system".into()));
    }
    let t = match (class.has_t(), t) {
        (true, None) => return input(format!("{class} witness requires t")),
        (true, Some(t)) if !t.is_finite() => return input("t must be finite"),
        (true, t) => t,
        (false, _) => None,
    };
    let Some((x, t)) = normalize(a, class, x, t) else {
        return Ok(SystemCheck { valid: false, residual: f64::INFINITY });
    };
    Ok(check_normalized(a, class, &x, t, margin))
}

pub(crate) fn check_normalized(a: &Tensor, class: ClassId, x: &[f64], t: Option<f64>, margin: f64) -> SystemCheck {
    let mut acc = Acc { eps: margin, residual: 0.0, valid: true };
    if class.domain() == Domain::Cone {
        for &v in x {
            acc.push((-v).max(0.0), 0.0);
        }
    }
    let f = a.eval(x);
    let d = a.degree() as i32;
    let on = |v: f64| match class.domain() {
        Domain::Cone => v > margin,
        Domain::Sphere => v.abs() > margin,
    };
    let t = t.unwrap_or(0.0);
    if class.has_t() {
        acc.ge(t);
    }
    match class {
        ClassId::SemiPositive => x.iter().zip(&f).filter(|(xi, _)| on(**xi)).for_each(|(_, fi)| acc.lt(*fi)),
        ClassId::StrictlySemiPositive => x.iter().zip(&f).filter(|(xi, _)| on(**xi)).for_each(|(_, fi)| acc.le(*fi)),
        ClassId::P0 => x.iter().zip(&f).filter(|(xi, _)| on(**xi)).for_each(|(xi, fi)| acc.lt(xi * fi)),
        ClassId::P => x.iter().zip(&f).for_each(|(xi, fi)| acc.le(xi * fi)),
        ClassId::WP => x.iter().zip(&f).for_each(|(xi, fi)| acc.le(xi.powi(d) * fi)),
        ClassId::StrictlyCopositive | ClassId::PositiveDefinite => {
            acc.le(crate::tensor::dot(x, &f));
        }
        ClassId::R | ClassId::R0 | ClassId::ER => {
            for (xi, fi) in x.iter().zip(&f) {
                let g = match class {
                    ClassId::ER => fi + t * xi,
                    ClassId::R => fi + t,
                    _ => *fi,
                };
                if on(*xi) {
                    acc.eq(g);
                } else {
                    acc.ge(g);
                }
            }
        }
        ClassId::Q => acc.fail(),
    }
    if !acc.residual.is_finite() {
        acc.fail();
    }
    SystemCheck { valid: acc.valid, residual: acc.residual }
}
