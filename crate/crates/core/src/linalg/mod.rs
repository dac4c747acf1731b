//! Exact dense linear algebra over `Q` and `Q(i)`.

mod matrix;
mod scalar;
mod subspace;

pub use matrix::Matrix;
pub use scalar::{GaussianRational, ParseRationalError, Rational, Scalar, ScalarField};
pub use subspace::{kernel, solve, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("ambient dimensions differ: {left} vs {right}")]
    AmbientMismatch { left: usize, right: usize },
    #[error("subspace is not contained in the larger space")]
    NotContained,
    #[error("matrix shapes {left:?} and {right:?} are incompatible")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
}

/// `sum_k coeffs[k] * vectors[k]`
pub fn combine<S: Scalar>(len: usize, coeffs: &[S], vectors: &[Vec<S>]) -> Vec<S> {
    let mut out = vec![S::zero(); len];
    for (c, v) in coeffs.iter().zip(vectors) {
        if c.is_zero() {
            continue;
        }
        for (o, x) in out.iter_mut().zip(v) {
            o.add_mul_assign(c, x);
        }
    }
    out
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        acc.add_mul_assign(x, y);
    }
    acc
}

pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(S::is_zero)
}
