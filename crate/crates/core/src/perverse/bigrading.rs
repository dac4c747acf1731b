use std::collections::BTreeMap;

use crate::linalg::{Scalar, Subspace};

/// A decomposition of a graded space into pieces `(i, j)` with
/// `0 ≤ i, j ≤ 2n`, piece `(i, j)` living in degree `i + j`.
///
/// Pieces are stored in the coordinates of their degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Bigrading<S> {
    n: usize,
    dims: Vec<usize>,
    pieces: BTreeMap<(usize, usize), Subspace<S>>,
}

impl<S: Scalar> Bigrading<S> {
    /// Pieces not listed are zero. Panics if a piece sits in the wrong degree.
    pub fn new(n: usize, dims: Vec<usize>, pieces: BTreeMap<(usize, usize), Subspace<S>>) -> Self {
        for (&(i, j), s) in &pieces {
            assert!(i <= 2 * n && j <= 2 * n, "piece ({i},{j}) out of range");
            assert_eq!(
                s.ambient_dim(),
                dims[i + j],
                "piece ({i},{j}) is not in degree {}",
                i + j
            );
        }
        Bigrading { n, dims, pieces }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn graded_dims(&self) -> &[usize] {
        &self.dims
    }

    /// Piece `(i, j)` in the coordinates of degree `i + j`.
    pub fn piece(&self, i: usize, j: usize) -> Subspace<S> {
        match self.pieces.get(&(i, j)) {
            Some(s) => s.clone(),
            None => Subspace::zero(self.dims.get(i + j).copied().unwrap_or(0)),
        }
    }

    pub fn piece_dim(&self, i: usize, j: usize) -> usize {
        self.pieces.get(&(i, j)).map_or(0, Subspace::dim)
    }

    /// Piece `(i, j)` embedded in the total space `⊕_d A^d`.
    pub fn total_piece(&self, i: usize, j: usize) -> Subspace<S> {
        let total: usize = self.dims.iter().sum();
        let offset: usize = self.dims[..i + j].iter().sum();
        let piece = self.piece(i, j);
        let vectors = piece.basis().iter().map(|b| {
            let mut v = vec![S::zero(); total];
            v[offset..offset + b.len()].clone_from_slice(b);
            v
        });
        Subspace::span(total, vectors.collect::<Vec<_>>())
    }

    /// `(i, j)` with `i + j = d`, `0 ≤ i, j ≤ 2n`, in increasing `i`.
    pub fn indices_in_degree(&self, d: usize) -> Vec<(usize, usize)> {
        let m = 2 * self.n;
        (d.saturating_sub(m)..=d.min(m))
            .map(|i| (i, d - i))
            .collect()
    }

    /// Dimension table with `i` as rows.
    pub fn dim_table(&self) -> Vec<Vec<usize>> {
        let m = 2 * self.n;
        (0..=m)
            .map(|i| (0..=m).map(|j| self.piece_dim(i, j)).collect())
            .collect()
    }

    /// First degree where the pieces fail to be a direct sum decomposition.
    pub fn direct_sum_failure(&self) -> Option<usize> {
        (0..self.dims.len()).find(|&d| {
            let idx = self.indices_in_degree(d);
            let total: usize = idx.iter().map(|&(i, j)| self.piece_dim(i, j)).sum();
            let span = Subspace::span(
                self.dims[d],
                idx.iter()
                    .flat_map(|&(i, j)| self.piece(i, j).basis().to_vec()),
            );
            total != self.dims[d] || !span.is_whole()
        })
    }
}
