use super::matrix::{rref_rows, Matrix};
use super::scalar::Scalar;
use super::LinalgError;

/// A linear subspace of `S^ambient_dim`, stored by a canonical basis.
///
/// The basis vectors are the nonzero rows of the reduced row echelon form
/// of any spanning set (equivalently, the reduced column echelon form of the
/// column matrix), so two subspaces are equal iff their stored bases are.
#[derive(Clone, PartialEq)]
pub struct Subspace<S> {
    ambient_dim: usize,
    basis: Vec<Vec<S>>,
    pivots: Vec<usize>,
}

impl<S> std::fmt::Debug for Subspace<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {})",
            self.basis.len(),
            self.ambient_dim
        )
    }
}

impl<S: Scalar> Subspace<S> {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![S::zero(); ambient_dim];
                v[i] = S::one();
                v
            })
            .collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// The span of arbitrary (possibly dependent) vectors.
    pub fn span(ambient_dim: usize, vectors: impl IntoIterator<Item = Vec<S>>) -> Self {
        let mut rows: Vec<Vec<S>> = vectors
            .into_iter()
            .inspect(|v| {
                assert_eq!(
                    v.len(),
                    ambient_dim,
                    "vector length differs from ambient dimension"
                )
            })
            .filter(|v| v.iter().any(|x| !x.is_zero()))
            .collect();
        let pivots = rref_rows(&mut rows, ambient_dim);
        rows.truncate(pivots.len());
        Subspace {
            ambient_dim,
            basis: rows,
            pivots,
        }
    }

    /// Column space of a matrix.
    pub fn column_space(m: &Matrix<S>) -> Self {
        Subspace::span(m.rows(), m.col_vecs())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The basis as the columns of an `ambient_dim × dim` matrix.
    pub fn basis_matrix(&self) -> Matrix<S> {
        Matrix::from_cols(self.ambient_dim, &self.basis)
    }

    /// Re-derives the canonical form. Idempotent.
    pub fn canonicalize(&self) -> Self {
        Subspace::span(self.ambient_dim, self.basis.iter().cloned())
    }

    /// Coefficients of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[S]) -> Option<Vec<S>> {
        assert_eq!(v.len(), self.ambient_dim);
        let coeffs: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let residual = self.residual_with(v, &coeffs);
        residual.iter().all(S::is_zero).then_some(coeffs)
    }

    pub fn contains(&self, v: &[S]) -> bool {
        self.coordinates(v).is_some()
    }

    /// `v` minus its canonical reduction against the basis; zero iff `v` is
    /// in the subspace.
    pub fn reduce(&self, v: &[S]) -> Vec<S> {
        let coeffs: Vec<S> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        self.residual_with(v, &coeffs)
    }

    fn residual_with(&self, v: &[S], coeffs: &[S]) -> Vec<S> {
        let mut out = v.to_vec();
        for (b, c) in self.basis.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(b) {
                if !x.is_zero() {
                    *o = o.sub_ref(&c.mul_ref(x));
                }
            }
        }
        out
    }

    /// Adds `v` to the span in place, keeping the canonical form. Returns
    /// whether the dimension grew.
    pub fn insert(&mut self, v: &[S]) -> bool {
        assert_eq!(v.len(), self.ambient_dim);
        let mut r = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv_ref();
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = x.mul_ref(&inv);
            }
        }
        for b in self.basis.iter_mut() {
            let c = b[p].clone();
            if c.is_zero() {
                continue;
            }
            for (bi, ri) in b.iter_mut().zip(&r) {
                if !ri.is_zero() {
                    *bi = bi.sub_ref(&c.mul_ref(ri));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient_dim == other.ambient_dim && self.basis.iter().all(|b| other.contains(b))
    }

    fn check_ambient(&self, other: &Self) -> Result<(), LinalgError> {
        if self.ambient_dim != other.ambient_dim {
            return Err(LinalgError::AmbientMismatch {
                left: self.ambient_dim,
                right: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Smallest subspace containing both.
    pub fn sum(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        Ok(Subspace::span(
            self.ambient_dim,
            self.basis.iter().chain(&other.basis).cloned(),
        ))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, LinalgError> {
        self.check_ambient(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        if self.is_whole() {
            return Ok(other.clone());
        }
        if other.is_whole() {
            return Ok(self.clone());
        }
        // Solve sum x_k a_k - sum y_l b_l = 0 and map the x-part back.
        let n = self.ambient_dim;
        let p = self.dim();
        let q = other.dim();
        let m = Matrix::from_fn(n, p + q, |r, c| {
            if c < p {
                self.basis[c][r].clone()
            } else {
                other.basis[c - p][r].neg_ref()
            }
        });
        let vectors = m.kernel_basis().into_iter().map(|k| {
            let mut v = vec![S::zero(); n];
            for (xk, a) in k[..p].iter().zip(&self.basis) {
                if xk.is_zero() {
                    continue;
                }
                for (vi, ai) in v.iter_mut().zip(a) {
                    vi.add_mul_assign(xk, ai);
                }
            }
            v
        });
        Ok(Subspace::span(n, vectors))
    }

    /// `dim(self) - dim(sub)`, requiring `sub ⊆ self`.
    pub fn quotient_dim(&self, sub: &Self) -> Result<usize, LinalgError> {
        self.check_ambient(sub)?;
        if !sub.is_subspace_of(self) {
            return Err(LinalgError::NotContained);
        }
        Ok(self.dim() - sub.dim())
    }

    /// Image of the subspace under a linear map `m: S^ambient -> S^rows`.
    pub fn image(&self, m: &Matrix<S>) -> Self {
        assert_eq!(m.cols(), self.ambient_dim);
        Subspace::span(m.rows(), self.basis.iter().map(|b| m.mul_vec(b)))
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Subspace<T> {
        Subspace::span(
            self.ambient_dim,
            self.basis.iter().map(|b| b.iter().map(&f).collect()),
        )
    }
}

/// Null space of `m` as a subspace of the source.
pub fn kernel<S: Scalar>(m: &Matrix<S>) -> Subspace<S> {
    Subspace::span(m.cols(), m.kernel_basis())
}

/// Some `x` with `m·x = b`, or `None` if there is no solution.
pub fn solve<S: Scalar>(m: &Matrix<S>, b: &[S]) -> Option<Vec<S>> {
    m.solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Rational;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel(&Matrix::<Rational>::zeros(2, 2)).dim(), 2);
        assert_eq!(kernel(&Matrix::<Rational>::identity(2)).dim(), 0);
        let k = kernel(&Matrix::<Rational>::from_i64(2, 2, &[1, 1, 1, 1]));
        assert_eq!(k, Subspace::span(2, [v(&[1, -1])]));
    }

    #[test]
    fn intersect_examples() {
        let b = Subspace::span(3, [v(&[1, 2, 3])]);
        assert_eq!(Subspace::whole(3).intersect(&b).unwrap(), b);
        let l1 = Subspace::span(2, [v(&[1, 0])]);
        let l2 = Subspace::span(2, [v(&[1, 1])]);
        assert!(l1.intersect(&l2).unwrap().is_zero());
        let a = Subspace::span(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]);
        let c = Subspace::span(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]);
        assert_eq!(a.intersect(&c).unwrap(), Subspace::span(3, [v(&[0, 1, 0])]));
    }

    #[test]
    fn sum_examples() {
        let a = Subspace::span(2, [v(&[1, 1])]);
        assert_eq!(a.sum(&Subspace::zero(2)).unwrap(), a);
        let l1 = Subspace::span(2, [v(&[1, 0])]);
        let l2 = Subspace::span(2, [v(&[0, 1])]);
        assert!(l1.sum(&l2).unwrap().is_whole());
        assert_eq!(a.sum(&Subspace::span(2, [v(&[1, -1])])).unwrap().dim(), 2);
    }

    #[test]
    fn quotient_dim_examples() {
        let plane = Subspace::<Rational>::whole(2);
        assert_eq!(plane.quotient_dim(&plane).unwrap(), 0);
        let line = Subspace::span(2, [v(&[3, 1])]);
        assert_eq!(plane.quotient_dim(&line).unwrap(), 1);
        let five = Subspace::<Rational>::whole(5);
        let two = Subspace::span(5, [v(&[1, 0, 0, 0, 0]), v(&[0, 1, 1, 0, 0])]);
        assert_eq!(five.quotient_dim(&two).unwrap(), 3);
        assert_eq!(line.quotient_dim(&plane), Err(LinalgError::NotContained));
    }

    #[test]
    fn insert_matches_span() {
        let vs = [v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[0, 1, 1]), v(&[1, 0, 0])];
        let mut s = Subspace::zero(3);
        let grew: Vec<bool> = vs.iter().map(|x| s.insert(x)).collect();
        assert_eq!(grew, [true, false, true, true]);
        assert_eq!(s, Subspace::span(3, vs.iter().cloned()));
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let a = Subspace::<Rational>::whole(2);
        let b = Subspace::<Rational>::whole(3);
        assert!(matches!(
            a.intersect(&b),
            Err(LinalgError::AmbientMismatch { .. })
        ));
        assert!(matches!(
            a.sum(&b),
            Err(LinalgError::AmbientMismatch { .. })
        ));
    }
}
