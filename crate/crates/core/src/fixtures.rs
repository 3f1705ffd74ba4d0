//! The two worked tensors used throughout the tests and the demo.

use crate::tensor::Tensor;

fn sparse(entries: &[([usize; 3], f64)]) -> Tensor {
    let mut a = Tensor::zeros(3, 2).expect("3x2 tensor");
    for (idx, v) in entries {
        a.set(idx, *v).expect("index in range");
    }
    a
}

/// `A x^2 = (-16 x1^2 + x2^2, -17 x1^2 + x2^2)`: an R-tensor that is not ER.
pub fn example_31() -> Tensor {
    sparse(&[([0, 0, 0], -16.0), ([0, 1, 1], 1.0), ([1, 0, 0], -17.0), ([1, 1, 1], 1.0)])
}

/// `A x^2 = (x1^2 - x2^2, 2 x1^2 - x2^2)`: an ER-tensor that is not R.
pub fn example_32() -> Tensor {
    sparse(&[([0, 0, 0], 1.0), ([0, 1, 1], -1.0), ([1, 0, 0], 2.0), ([1, 1, 1], -1.0)])
}
