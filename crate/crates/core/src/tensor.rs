//! Dense m-order n-dimensional tensors and their multilinear products.
//!
//! Coefficients are stored row-major by the multi-index `(i1, ..., im)`, so
//! the block of entries sharing the leading index `i1` is contiguous. All
//! indices in this module are zero-based; the file format converts from the
//! one-based convention on load.

use nalgebra::DMatrix;

use crate::error::{input, Result};
use crate::poly::Poly;

/// A real m-order n-dimensional tensor with dense storage.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    order: usize,
    dim: usize,
    coeffs: Vec<f64>,
}

impl Tensor {
    /// Builds a tensor from a row-major coefficient array of length `dim^order`.
    pub fn new(order: usize, dim: usize, coeffs: Vec<f64>) -> Result<Self> {
        if order < 2 {
            return input(format!("tensor order must be at least 2, got {order}"));
        }
        if dim < 1 {
            return input("tensor dimension must be at least 1");
        }
        let len = checked_len(order, dim)?;
        if coeffs.len() != len {
            return input(format!(
                "expected {len} coefficients for order {order} dimension {dim}, got {}",
                coeffs.len()
            ));
        }
        if let Some(pos) = coeffs.iter().position(|c| !c.is_finite()) {
            return input(format!("coefficient at flat position {pos} is not finite"));
        }
        Ok(Self { order, dim, coeffs })
    }

    pub fn zeros(order: usize, dim: usize) -> Result<Self> {
        let len = checked_len(order.max(2), dim.max(1))?;
        Self::new(order, dim, vec![0.0; len])
    }

    /// Tensor whose every coefficient equals `value`.
    pub fn filled(order: usize, dim: usize, value: f64) -> Result<Self> {
        let len = checked_len(order.max(2), dim.max(1))?;
        Self::new(order, dim, vec![value; len])
    }

    /// Diagonal tensor with `a_{i...i} = diag[i]` and zeros elsewhere.
    pub fn diagonal(order: usize, diag: &[f64]) -> Result<Self> {
        let mut t = Self::zeros(order, diag.len())?;
        for (i, &d) in diag.iter().enumerate() {
            let idx = vec![i; order];
            t.set(&idx, d)?;
        }
        Ok(t)
    }

    /// Builds a tensor by evaluating `f` at every zero-based multi-index.
    pub fn from_fn(order: usize, dim: usize, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let len = checked_len(order.max(2), dim.max(1))?;
        let mut coeffs = Vec::with_capacity(len);
        let mut idx = vec![0usize; order];
        for _ in 0..len {
            coeffs.push(f(&idx));
            odometer(&mut idx, dim);
        }
        Self::new(order, dim, coeffs)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Degree of the homogeneous map `x -> A x^{m-1}`.
    pub fn degree(&self) -> usize {
        self.order - 1
    }

    /// Largest coefficient magnitude.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn flat_index(&self, idx: &[usize]) -> Result<usize> {
        if idx.len() != self.order {
            return input(format!("multi-index has {} entries, expected {}", idx.len(), self.order));
        }
        let mut flat = 0usize;
        for &i in idx {
            if i >= self.dim {
                return input(format!("index {i} out of range for dimension {}", self.dim));
            }
            flat = flat * self.dim + i;
        }
        Ok(flat)
    }

    pub fn get(&self, idx: &[usize]) -> Result<f64> {
        Ok(self.coeffs[self.flat_index(idx)?])
    }

    pub fn set(&mut self, idx: &[usize], value: f64) -> Result<()> {
        if !value.is_finite() {
            return input("coefficient must be finite");
        }
        let flat = self.flat_index(idx)?;
        self.coeffs[flat] = value;
        Ok(())
    }

    /// Coefficientwise sum of two tensors of equal shape.
    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.order != other.order || self.dim != other.dim {
            return input("tensor shapes differ");
        }
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Tensor::new(self.order, self.dim, coeffs)
    }

    /// Coefficientwise scaling.
    pub fn scaled(&self, factor: f64) -> Result<Tensor> {
        Tensor::new(self.order, self.dim, self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// The vector `A x^{m-1}`.
    pub fn apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        self.check_point(x)?;
        Ok(self.eval(x))
    }

    /// The homogeneous form `A x^m = x^T (A x^{m-1})`.
    pub fn form(&self, x: &[f64]) -> Result<f64> {
        self.check_point(x)?;
        Ok(self.eval_form(x))
    }

    /// Jacobian of `x -> A x^{m-1}`; row `i` holds the gradient of component `i`.
    pub fn jacobian(&self, x: &[f64]) -> Result<DMatrix<f64>> {
        self.check_point(x)?;
        Ok(self.eval_jacobian(x))
    }

    pub(crate) fn check_point(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.dim {
            return input(format!("vector has length {}, tensor dimension is {}", x.len(), self.dim));
        }
        if x.iter().any(|v| !v.is_finite()) {
            return input("vector has non-finite entries");
        }
        Ok(())
    }

    fn stride(&self) -> usize {
        self.coeffs.len() / self.dim
    }

    /// Unchecked `A x^{m-1}`. Sums over `(i2, ..., im)` in lexicographic order.
    pub(crate) fn eval(&self, x: &[f64]) -> Vec<f64> {
        let n = self.dim;
        let stride = self.stride();
        let mut out = vec![0.0; n];
        let mut idx = vec![0usize; self.order - 1];
        for o in 0..stride {
            let mut prod = 1.0;
            for &k in &idx {
                prod *= x[k];
            }
            if prod != 0.0 {
                for (i, slot) in out.iter_mut().enumerate() {
                    *slot += self.coeffs[i * stride + o] * prod;
                }
            }
            odometer(&mut idx, n);
        }
        out
    }

    pub(crate) fn eval_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.eval(x))
    }

    pub(crate) fn eval_jacobian(&self, x: &[f64]) -> DMatrix<f64> {
        let n = self.dim;
        let stride = self.stride();
        let tail = self.order - 1;
        let mut jac = DMatrix::zeros(n, n);
        let mut idx = vec![0usize; tail];
        let mut prefix = vec![1.0; tail + 1];
        let mut suffix = vec![1.0; tail + 1];
        for o in 0..stride {
            for p in 0..tail {
                prefix[p + 1] = prefix[p] * x[idx[p]];
            }
            for p in (0..tail).rev() {
                suffix[p] = suffix[p + 1] * x[idx[p]];
            }
            for p in 0..tail {
                let partial = prefix[p] * suffix[p + 1];
                if partial == 0.0 {
                    continue;
                }
                let col = idx[p];
                for i in 0..n {
                    jac[(i, col)] += self.coeffs[i * stride + o] * partial;
                }
            }
            odometer(&mut idx, n);
        }
        jac
    }

    /// Principal subtensor on the index set `j`: entries whose every index lies in `j`.
    pub fn principal_subtensor(&self, j: &IndexSet) -> Result<Tensor> {
        if j.indices.iter().any(|&i| i >= self.dim) {
            return input(format!("index set {:?} out of range for dimension {}", j.indices, self.dim));
        }
        let map = &j.indices;
        Tensor::from_fn(self.order, map.len(), |sub| {
            let full: usize = sub.iter().fold(0, |acc, &k| acc * self.dim + map[k]);
            self.coeffs[full]
        })
    }

    /// Coefficients `c_0..c_d` of component `row` of `A y^{m-1}` restricted to
    /// vectors supported on `{a, b}`: `(A y^{m-1})_row = sum_k c_k y_a^{d-k} y_b^k`.
    pub(crate) fn binary_form(&self, row: usize, a: usize, b: usize) -> Vec<f64> {
        let d = self.degree();
        let stride = self.stride();
        let mut out = vec![0.0; d + 1];
        let mut idx = vec![0usize; d];
        for o in 0..stride {
            let mut k = 0;
            let mut inside = true;
            for &i in &idx {
                if i == b && a != b {
                    k += 1;
                } else if i != a {
                    inside = false;
                    break;
                }
            }
            if inside {
                out[k] += self.coeffs[row * stride + o];
            }
            odometer(&mut idx, self.dim);
        }
        out
    }

    /// For `n = 2`: component `row` of `A x^{m-1}` as a polynomial in `s` along
    /// the line where `x[fixed] = sign` and the other coordinate is `s`.
    pub(crate) fn face_poly(&self, row: usize, fixed: usize, sign: f64) -> Poly {
        debug_assert!(self.dim == 2 && fixed < 2);
        let d = self.degree();
        let mut coeffs = vec![0.0; d + 1];
        for (k, c) in self.binary_form(row, 0, 1).into_iter().enumerate() {
            if fixed == 0 {
                coeffs[k] += c * sign.powi((d - k) as i32);
            } else {
                coeffs[d - k] += c * sign.powi(k as i32);
            }
        }
        Poly::new(coeffs)
    }
}

fn checked_len(order: usize, dim: usize) -> Result<usize> {
    let mut len = 1usize;
    for _ in 0..order {
        len = match len.checked_mul(dim) {
            Some(v) if v <= 1 << 26 => v,
            _ => return input(format!("tensor of order {order} and dimension {dim} is too large")),
        };
    }
    Ok(len)
}

/// Increments a base-`n` multi-index with the last digit fastest.
pub(crate) fn odometer(idx: &mut [usize], n: usize) {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return;
        }
        *slot = 0;
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A strictly increasing, nonempty set of zero-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IndexSet {
    indices: Vec<usize>,
}

impl IndexSet {
    pub fn new(mut indices: Vec<usize>, dim: usize) -> Result<Self> {
        if indices.is_empty() {
            return input("index set must be nonempty");
        }
        let len = indices.len();
        indices.sort_unstable();
        indices.dedup();
        if indices.len() != len {
            return input("index set contains duplicates");
        }
        if let Some(&bad) = indices.iter().find(|&&i| i >= dim) {
            return input(format!("index {bad} out of range for dimension {dim}"));
        }
        Ok(Self { indices })
    }

    pub fn full(dim: usize) -> Self {
        Self { indices: (0..dim).collect() }
    }

    /// Every nonempty subset of `0..dim`, ordered by bitmask.
    pub fn all_nonempty(dim: usize) -> impl Iterator<Item = IndexSet> {
        (1u64..(1u64 << dim)).map(move |mask| IndexSet {
            indices: (0..dim).filter(|i| mask & (1 << i) != 0).collect(),
        })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }
}

/// Which witness system a rescaling should preserve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScaleMode {
    /// `(A x^{m-1})_i + t x_i = 0`: `t` scales like `alpha^{m-2}`.
    Er,
    /// `(A x^{m-1})_i + t = 0`: `t` scales like `alpha^{m-1}`.
    R,
}

/// Rescales a witness pair `(x, t)` by `alpha > 0` along the homogeneity of `A x^{m-1}`.
pub fn scale_point(x: &[f64], t: f64, alpha: f64, order: usize, mode: ScaleMode) -> Result<(Vec<f64>, f64)> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return input(format!("scale factor must be positive and finite, got {alpha}"));
    }
    if order < 2 {
        return input("order must be at least 2");
    }
    let power = match mode {
        ScaleMode::Er => order - 2,
        ScaleMode::R => order - 1,
    };
    let xs = x.iter().map(|v| v * alpha).collect();
    Ok((xs, t * alpha.powi(power as i32)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn example_31() -> Tensor {
        let mut a = Tensor::zeros(3, 2).unwrap();
        a.set(&[0, 0, 0], -16.0).unwrap();
        a.set(&[0, 1, 1], 1.0).unwrap();
        a.set(&[1, 0, 0], -17.0).unwrap();
        a.set(&[1, 1, 1], 1.0).unwrap();
        a
    }

    fn example_32() -> Tensor {
        let mut a = Tensor::zeros(3, 2).unwrap();
        a.set(&[0, 0, 0], 1.0).unwrap();
        a.set(&[0, 1, 1], -1.0).unwrap();
        a.set(&[1, 0, 0], 2.0).unwrap();
        a.set(&[1, 1, 1], -1.0).unwrap();
        a
    }

    #[test]
    fn apply_matches_worked_examples() {
        assert_eq!(example_31().apply(&[1.0, 1.0]).unwrap(), vec![-15.0, -16.0]);
        let (x1, x2) = (0.7, -1.3);
        let y = example_31().apply(&[x1, x2]).unwrap();
        assert_relative_eq!(y[0], -16.0 * x1 * x1 + x2 * x2, epsilon = 1e-14);
        assert_relative_eq!(y[1], -17.0 * x1 * x1 + x2 * x2, epsilon = 1e-14);
        assert_eq!(example_32().apply(&[0.0, 1.0]).unwrap(), vec![-1.0, -1.0]);
        assert_eq!(example_32().apply(&[0.0, 0.0]).unwrap(), vec![0.0, 0.0]);
    }

    #[test]
    fn form_examples() {
        assert_eq!(example_32().form(&[1.0, 1.0]).unwrap(), 1.0);
        assert_eq!(example_31().form(&[0.0, 0.0]).unwrap(), 0.0);
        let d = Tensor::diagonal(4, &[2.0, -1.0, 0.5]).unwrap();
        let x = [1.5, 2.0, -3.0];
        let expect: f64 = 2.0 * 1.5f64.powi(4) - 2.0f64.powi(4) + 0.5 * 3.0f64.powi(4);
        assert_relative_eq!(d.form(&x).unwrap(), expect, epsilon = 1e-12);
    }

    #[test]
    fn input_errors() {
        assert!(Tensor::new(3, 2, vec![0.0; 7]).is_err());
        assert!(Tensor::new(1, 2, vec![0.0; 2]).is_err());
        assert!(Tensor::new(3, 2, vec![f64::NAN; 8]).is_err());
        let a = example_31();
        assert!(a.apply(&[1.0]).is_err());
        assert!(a.apply(&[1.0, f64::INFINITY]).is_err());
        assert!(a.form(&[1.0, 2.0, 3.0]).is_err());
        assert!(IndexSet::new(vec![], 2).is_err());
        assert!(IndexSet::new(vec![2], 2).is_err());
        assert!(IndexSet::new(vec![1, 1], 2).is_err());
    }

    #[test]
    fn subtensor_examples() {
        let a = example_31();
        let s = a.principal_subtensor(&IndexSet::new(vec![0], 2).unwrap()).unwrap();
        assert_eq!((s.order(), s.dim(), s.coeffs()), (3, 1, &[-16.0][..]));
        let s = example_32().principal_subtensor(&IndexSet::new(vec![1], 2).unwrap()).unwrap();
        assert_eq!(s.coeffs(), &[-1.0]);
        assert_eq!(a.principal_subtensor(&IndexSet::full(2)).unwrap(), a);
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let a = Tensor::from_fn(3, 3, |i| (i[0] as f64 - 1.0) * 0.7 + (i[1] * i[2]) as f64 * 0.3 - 0.2 * i[2] as f64)
            .unwrap();
        let x = [0.4, -1.1, 0.9];
        let jac = a.jacobian(&x).unwrap();
        let h = 1e-6;
        for j in 0..3 {
            let mut xp = x;
            let mut xm = x;
            xp[j] += h;
            xm[j] -= h;
            let fp = a.apply(&xp).unwrap();
            let fm = a.apply(&xm).unwrap();
            for i in 0..3 {
                assert_relative_eq!(jac[(i, j)], (fp[i] - fm[i]) / (2.0 * h), epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn binary_form_reproduces_apply() {
        let a = Tensor::from_fn(4, 3, |i| ((i[0] + 2 * i[1] + 3 * i[2] + 5 * i[3]) % 7) as f64 - 3.0).unwrap();
        let (p, q) = (2usize, 0usize);
        let (ya, yb) = (0.8, -0.35);
        let mut y = vec![0.0; 3];
        y[p] = ya;
        y[q] = yb;
        let f = a.apply(&y).unwrap();
        for row in 0..3 {
            let c = a.binary_form(row, p, q);
            let d = a.degree();
            let v: f64 = c.iter().enumerate().map(|(k, ck)| ck * ya.powi((d - k) as i32) * yb.powi(k as i32)).sum();
            assert_relative_eq!(v, f[row], epsilon = 1e-12);
        }
    }

    #[test]
    fn scale_point_examples() {
        let (x, t) = scale_point(&[0.0, 1.0], 1.0, 2.0, 3, ScaleMode::Er).unwrap();
        assert_eq!((x, t), (vec![0.0, 2.0], 2.0));
        let (x, t) = scale_point(&[0.0, 1.0], 1.0, 2.0, 3, ScaleMode::R).unwrap();
        assert_eq!((x, t), (vec![0.0, 2.0], 4.0));
        let (x, t) = scale_point(&[0.3, 0.1], 0.7, 1.0, 5, ScaleMode::R).unwrap();
        assert_eq!((x, t), (vec![0.3, 0.1], 0.7));
        assert!(scale_point(&[1.0], 1.0, 0.0, 3, ScaleMode::Er).is_err());
        assert!(scale_point(&[1.0], 1.0, -1.0, 3, ScaleMode::R).is_err());
    }
}
