use std::fmt;

use crate::algebra::{ClassVector, GradedAlgebra};
use crate::linalg::{Matrix, Scalar, Subspace};

/// A degree-homogeneous endomorphism of a graded space: one block per
/// source degree `d`, mapping `A^d → A^{d+shift}`.
#[derive(Clone, PartialEq)]
pub struct GradedOperator<S> {
    dims: Vec<usize>,
    shift: i32,
    blocks: Vec<Matrix<S>>,
}

impl<S> fmt::Debug for GradedOperator<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GradedOperator(shift {}, dims {:?})",
            self.shift, self.dims
        )
    }
}

impl<S: Scalar> GradedOperator<S> {
    pub fn zero(dims: &[usize], shift: i32) -> Self {
        Self::from_fn(dims, shift, |_, rows, cols| Matrix::zeros(rows, cols))
    }

    /// Builds block `d` as `f(d, rows, cols)`; panics on a wrong shape.
    pub fn from_fn(
        dims: &[usize],
        shift: i32,
        mut f: impl FnMut(usize, usize, usize) -> Matrix<S>,
    ) -> Self {
        let blocks = (0..dims.len())
            .map(|d| {
                let rows = target_dim(dims, d, shift);
                let m = f(d, rows, dims[d]);
                assert_eq!(
                    (m.rows(), m.cols()),
                    (rows, dims[d]),
                    "block {d} has the wrong shape"
                );
                m
            })
            .collect();
        GradedOperator {
            dims: dims.to_vec(),
            shift,
            blocks,
        }
    }

    /// Cup product with a homogeneous class.
    pub fn left_mult(alg: &GradedAlgebra, class: &ClassVector<S>) -> Self {
        Self::from_fn(alg.graded_dims(), class.degree as i32, |d, _, _| {
            alg.left_mult_matrix(class, d)
        })
    }

    /// Acts on `A^d` by the scalar `f(d)`.
    pub fn degree_operator(dims: &[usize], f: impl Fn(usize) -> S) -> Self {
        Self::from_fn(dims, 0, |d, rows, _| Matrix::identity(rows).scale(&f(d)))
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn block(&self, d: usize) -> &Matrix<S> {
        &self.blocks[d]
    }

    pub fn blocks(&self) -> &[Matrix<S>] {
        &self.blocks
    }

    /// `d + shift` if it is a degree of the space.
    pub fn target(&self, d: usize) -> Option<usize> {
        target(&self.dims, d, self.shift)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dims, other.dims, "operators act on different spaces");
        Self::from_fn(
            &self.dims,
            self.shift + other.shift,
            |d, rows, cols| match other.target(d) {
                Some(mid) => self.blocks[mid].mul(&other.blocks[d]),
                None => Matrix::zeros(rows, cols),
            },
        )
    }

    pub fn power(&self, k: usize) -> Self {
        let mut acc = Self::degree_operator(&self.dims, |_| S::one());
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.shift, other.shift,
            "adding operators of different shift"
        );
        Self::from_fn(&self.dims, self.shift, |d, _, _| {
            self.blocks[d].add(&other.blocks[d])
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(
            self.shift, other.shift,
            "subtracting operators of different shift"
        );
        Self::from_fn(&self.dims, self.shift, |d, _, _| {
            self.blocks[d].sub(&other.blocks[d])
        })
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::from_fn(&self.dims, self.shift, |d, _, _| self.blocks[d].scale(s))
    }

    /// `[self, other] = self∘other - other∘self`.
    pub fn bracket(&self, other: &Self) -> Self {
        self.compose(other).sub(&other.compose(self))
    }

    pub fn apply(&self, d: usize, v: &[S]) -> Vec<S> {
        self.blocks[d].mul_vec(v)
    }

    /// Kernel of the block leaving degree `d`.
    pub fn kernel_in_degree(&self, d: usize) -> Subspace<S> {
        crate::linalg::kernel(&self.blocks[d])
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> GradedOperator<T> {
        GradedOperator {
            dims: self.dims.clone(),
            shift: self.shift,
            blocks: self.blocks.iter().map(|b| b.map(&f)).collect(),
        }
    }
}

fn target(dims: &[usize], d: usize, shift: i32) -> Option<usize> {
    let t = d as i64 + shift as i64;
    (t >= 0 && (t as usize) < dims.len()).then_some(t as usize)
}

fn target_dim(dims: &[usize], d: usize, shift: i32) -> usize {
    target(dims, d, shift).map_or(0, |t| dims[t])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    #[test]
    fn compose_tracks_shifts() {
        let dims = [1, 0, 2, 0, 1];
        let up = GradedOperator::<Rational>::from_fn(&dims, 2, |_, r, c| {
            Matrix::from_fn(r, c, |_, _| Rational::from(1))
        });
        let down = GradedOperator::<Rational>::from_fn(&dims, -2, |_, r, c| {
            Matrix::from_fn(r, c, |_, _| Rational::from(1))
        });
        let both = up.compose(&down);
        assert_eq!(both.shift(), 0);
        assert_eq!(both.block(2).rows(), 2);
        assert!(both.block(0).is_zero());
        assert!(up.compose(&up).compose(&up).is_zero());
    }
}
