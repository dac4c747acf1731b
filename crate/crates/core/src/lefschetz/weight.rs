use super::operator::GradedOperator;
use super::LefschetzError;
use crate::linalg::{Scalar, Subspace};

/// An increasing filtration `W_lowest ⊆ … ⊆ W_highest` of a graded space by
/// graded subspaces, stored degree by degree. Below `lowest` it is zero and
/// above `highest` it is everything.
#[derive(Debug, Clone, PartialEq)]
pub struct Filtration<S> {
    lowest: i32,
    dims: Vec<usize>,
    pieces: Vec<Vec<Subspace<S>>>,
}

impl<S: Scalar> Filtration<S> {
    pub fn lowest(&self) -> i32 {
        self.lowest
    }

    pub fn highest(&self) -> i32 {
        self.lowest + self.pieces.len() as i32 - 1
    }

    /// `W_k ∩ A^d` in the coordinates of `A^d`.
    pub fn in_degree(&self, k: i32, d: usize) -> Subspace<S> {
        if k < self.lowest {
            Subspace::zero(self.dims[d])
        } else if k > self.highest() {
            Subspace::whole(self.dims[d])
        } else {
            self.pieces[(k - self.lowest) as usize][d].clone()
        }
    }

    /// `W_k` inside the total space `⊕_d A^d`.
    pub fn total(&self, k: i32) -> Subspace<S> {
        let total: usize = self.dims.iter().sum();
        let mut offset = 0;
        let mut vectors = Vec::new();
        for d in 0..self.dims.len() {
            for b in self.in_degree(k, d).basis() {
                let mut v = vec![S::zero(); total];
                v[offset..offset + b.len()].clone_from_slice(b);
                vectors.push(v);
            }
            offset += self.dims[d];
        }
        Subspace::span(total, vectors)
    }

    pub fn dim(&self, k: i32) -> usize {
        (0..self.dims.len())
            .map(|d| self.in_degree(k, d).dim())
            .sum()
    }

    pub fn gr_dim(&self, k: i32) -> usize {
        self.dim(k) - self.dim(k - 1)
    }

    /// `(k, dim Gr_k)` for every weight in range.
    pub fn gr_dims(&self) -> Vec<(i32, usize)> {
        (self.lowest..=self.highest())
            .map(|k| (k, self.gr_dim(k)))
            .collect()
    }
}

/// The weight filtration of a nilpotent `N` with `N^{bound+1} = 0`:
/// `W_k = Σ_{j ≥ max(0,-k)} N^j ker N^{k+2j+1}`, so that `N W_k ⊆ W_{k-2}`
/// and `N^k : Gr_k → Gr_{-k}` is an isomorphism.
pub fn weight_filtration<S: Scalar>(
    n_op: &GradedOperator<S>,
    bound: usize,
) -> Result<Filtration<S>, LefschetzError> {
    if n_op.shift() <= 0 || !n_op.power(bound + 1).is_zero() {
        return Err(LefschetzError::NotNilpotent { order: bound + 1 });
    }
    let dims = n_op.dims().to_vec();
    let step = n_op.shift() as usize;
    let powers: Vec<GradedOperator<S>> = (0..=bound).map(|j| n_op.power(j)).collect();
    let kernel = |r: usize, d: usize| -> Subspace<S> {
        if r > bound {
            Subspace::whole(dims[d])
        } else {
            powers[r].kernel_in_degree(d)
        }
    };

    let b = bound as i32;
    let mut pieces = Vec::new();
    for k in -b..=b {
        let mut per_degree = Vec::with_capacity(dims.len());
        for d in 0..dims.len() {
            let mut acc = Subspace::zero(dims[d]);
            for j in (0.max(-k) as usize)..=bound {
                let Some(src) = d.checked_sub(step * j) else {
                    break;
                };
                let r = (k + 2 * j as i32 + 1) as usize;
                let image = kernel(r, src).image(powers[j].block(src));
                acc = acc.sum(&image).expect("same degree");
            }
            per_degree.push(acc);
        }
        pieces.push(per_degree);
    }
    let filtration = Filtration {
        lowest: -b,
        dims,
        pieces,
    };
    verify(&filtration, n_op)?;
    Ok(filtration)
}

/// Re-checks the characterizing properties independently of the formula.
fn verify<S: Scalar>(w: &Filtration<S>, n_op: &GradedOperator<S>) -> Result<(), LefschetzError> {
    let fail = |msg: String| Err(LefschetzError::WeightPostcondition(msg));
    let dims = &w.dims;
    for d in 0..dims.len() {
        if !w.pieces.last().is_none_or(|p| p[d].is_whole()) {
            return fail(format!("W_{} is not everything in degree {d}", w.highest()));
        }
    }
    for k in w.lowest..=w.highest() {
        for d in 0..dims.len() {
            let here = w.in_degree(k, d);
            if !w.in_degree(k - 1, d).is_subspace_of(&here) {
                return fail(format!("W_{} ⊄ W_{k} in degree {d}", k - 1));
            }
            if let Some(t) = n_op.target(d) {
                if !here
                    .image(n_op.block(d))
                    .is_subspace_of(&w.in_degree(k - 2, t))
                {
                    return fail(format!("N W_{k} ⊄ W_{} from degree {d}", k - 2));
                }
            }
        }
    }
    for k in 0..=w.highest() {
        if w.gr_dim(k) != w.gr_dim(-k) {
            return fail(format!(
                "dim Gr_{k} = {} but dim Gr_{} = {}",
                w.gr_dim(k),
                -k,
                w.gr_dim(-k)
            ));
        }
        let nk = n_op.power(k as usize);
        for d in 0..dims.len() {
            let Some(t) = nk.target(d) else { continue };
            let reached = w
                .in_degree(k, d)
                .image(nk.block(d))
                .sum(&w.in_degree(-k - 1, t))
                .expect("same degree");
            if reached != w.in_degree(-k, t) {
                return fail(format!(
                    "N^{k} does not map Gr_{k} onto Gr_{} in degree {t}",
                    -k
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, Rational};

    /// Multiplication by `x` on `Q[x]/(x^3)` with `x` in degree 2.
    fn jordan_block() -> GradedOperator<Rational> {
        GradedOperator::from_fn(&[1, 0, 1, 0, 1], 2, |d, rows, cols| match d {
            0 | 2 => Matrix::from_i64(rows, cols, &[1]),
            _ => Matrix::zeros(rows, cols),
        })
    }

    #[test]
    fn single_block_weights() {
        let w = weight_filtration(&jordan_block(), 2).unwrap();
        assert_eq!(
            w.gr_dims()
                .into_iter()
                .filter(|&(_, d)| d > 0)
                .collect::<Vec<_>>(),
            vec![(-2, 1), (0, 1), (2, 1)]
        );
        assert_eq!(w.in_degree(-2, 4).dim(), 1);
        assert_eq!(w.in_degree(-2, 0).dim(), 0);
        assert_eq!(w.in_degree(0, 2).dim(), 1);
    }

    #[test]
    fn zero_operator_has_one_weight() {
        let zero = GradedOperator::<Rational>::zero(&[1, 0, 2, 0, 1], 2);
        let w = weight_filtration(&zero, 2).unwrap();
        assert_eq!(w.gr_dim(0), 4);
        assert_eq!(w.dim(-1), 0);
    }

    #[test]
    fn bound_too_small_is_rejected() {
        assert_eq!(
            weight_filtration(&jordan_block(), 1).unwrap_err(),
            LefschetzError::NotNilpotent { order: 2 }
        );
    }
}
