//! Dense univariate polynomials with real-root isolation on a closed interval.
//!
//! Roots are isolated by splitting the interval at the critical points (the
//! roots of the derivative, found recursively), which leaves monotone pieces
//! that are bisected to full precision. Critical points where the value
//! vanishes up to rounding are reported as even-multiplicity roots.

use std::ops::{Add, Mul, Sub};

/// Polynomial with coefficients stored lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<f64>,
}

/// Real zeros of a polynomial on an interval.
#[derive(Debug, Clone, PartialEq)]
pub enum Roots {
    Finite(Vec<f64>),
    /// The polynomial vanishes identically.
    Everywhere,
}

impl Roots {
    pub fn finite(self) -> Option<Vec<f64>> {
        match self {
            Roots::Finite(r) => Some(r),
            Roots::Everywhere => None,
        }
    }
}

impl Poly {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self { coeffs: vec![c] }
    }

    /// The monomial `c s^k`.
    pub fn monomial(c: f64, k: usize) -> Self {
        let mut coeffs = vec![0.0; k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * s + c)
    }

    /// Running error bound for Horner evaluation at `s`.
    fn eval_bound(&self, s: f64) -> f64 {
        let a = s.abs();
        let mag = self.coeffs.iter().rev().fold(0.0, |acc: f64, &c| acc * a + c.abs());
        let n = self.coeffs.len().max(1) as f64;
        4.0 * n * f64::EPSILON * mag
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::constant(0.0);
        }
        Poly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * k as f64).collect())
    }

    pub fn scale(&self, factor: f64) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Degree after dropping leading coefficients with magnitude at most `zero_tol`,
    /// or `None` when every coefficient is below the threshold.
    pub fn degree(&self, zero_tol: f64) -> Option<usize> {
        self.coeffs.iter().rposition(|c| c.abs() > zero_tol)
    }

    pub fn is_zero(&self, zero_tol: f64) -> bool {
        self.degree(zero_tol).is_none()
    }

    fn trimmed(&self, zero_tol: f64) -> Poly {
        match self.degree(zero_tol) {
            Some(d) => Poly::new(self.coeffs[..=d].to_vec()),
            None => Poly::constant(0.0),
        }
    }

    /// Real roots in `[lo, hi]`, sorted ascending. Coefficients with magnitude
    /// at most `zero_tol` are treated as zero when deciding the degree.
    pub fn roots_in(&self, lo: f64, hi: f64, zero_tol: f64) -> Roots {
        debug_assert!(lo <= hi);
        let p = self.trimmed(zero_tol);
        if p.is_zero(zero_tol) {
            return Roots::Everywhere;
        }
        Roots::Finite(p.isolate(lo, hi, zero_tol))
    }

    /// Roots of the derivative in `[lo, hi]`; empty when the derivative vanishes.
    pub fn critical_points(&self, lo: f64, hi: f64, zero_tol: f64) -> Vec<f64> {
        self.trimmed(zero_tol).derivative().roots_in(lo, hi, zero_tol).finite().unwrap_or_default()
    }

    /// Endpoints plus critical points: the candidates for extrema on `[lo, hi]`.
    pub fn extremum_candidates(&self, lo: f64, hi: f64, zero_tol: f64) -> Vec<f64> {
        let mut pts = vec![lo, hi];
        pts.extend(self.critical_points(lo, hi, zero_tol));
        sort_dedup(&mut pts);
        pts
    }

    fn isolate(&self, lo: f64, hi: f64, zero_tol: f64) -> Vec<f64> {
        let deg = self.degree(zero_tol).unwrap_or(0);
        let mut roots = Vec::new();
        match deg {
            0 => return roots,
            1 => {
                let r = -self.coeffs[0] / self.coeffs[1];
                if r >= lo && r <= hi {
                    roots.push(r);
                }
                return roots;
            }
            _ => {}
        }
        let crit = self.derivative().isolate(lo, hi, zero_tol);
        let mut breaks = Vec::with_capacity(crit.len() + 2);
        breaks.push(lo);
        breaks.extend(crit.iter().copied().filter(|&c| c > lo && c < hi));
        breaks.push(hi);
        for &b in &breaks {
            if self.eval(b).abs() <= self.eval_bound(b) {
                roots.push(b);
            }
        }
        for w in breaks.windows(2) {
            let (u, v) = (w[0], w[1]);
            let (fu, fv) = (self.eval(u), self.eval(v));
            if fu.abs() <= self.eval_bound(u) || fv.abs() <= self.eval_bound(v) {
                continue;
            }
            if fu.signum() != fv.signum() {
                roots.push(self.bisect(u, v, fu));
            }
        }
        sort_dedup(&mut roots);
        roots
    }

    fn bisect(&self, mut u: f64, mut v: f64, fu: f64) -> f64 {
        let su = fu.signum();
        for _ in 0..200 {
            let mid = 0.5 * (u + v);
            if mid <= u || mid >= v {
                break;
            }
            let fm = self.eval(mid);
            if fm == 0.0 {
                return mid;
            }
            if fm.signum() == su {
                u = mid;
            } else {
                v = mid;
            }
        }
        if self.eval(u).abs() <= self.eval(v).abs() {
            u
        } else {
            v
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Poly, k: usize| p.coeffs.get(k).copied().unwrap_or(0.0);
        Poly::new((0..len).map(|k| get(self, k) + get(rhs, k)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &Poly, k: usize| p.coeffs.get(k).copied().unwrap_or(0.0);
        Poly::new((0..len).map(|k| get(self, k) - get(rhs, k)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![0.0; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

pub(crate) fn sort_dedup(v: &mut Vec<f64>) {
    v.sort_by(|a, b| a.total_cmp(b));
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-12 * (1.0 + b.abs()));
}
