use serde::Serialize;

use super::bigrading::Bigrading;
use crate::algebra::{ClassVector, GradedAlgebra};
use crate::linalg::{Matrix, Rational, Scalar, Subspace};

type Index = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MultiplicativityReport {
    pub pass: bool,
    pub pairs_checked: usize,
    pub products_checked: usize,
    /// Piece pairs with some basis product outside piece `(i+i', j+j')`.
    pub violations: Vec<(Index, Index)>,
}

/// Coordinates with respect to the pieces of one degree.
struct DegreeFrame {
    inverse: Matrix<Rational>,
    ranges: Vec<(Index, std::ops::Range<usize>)>,
}

impl DegreeFrame {
    fn new(bg: &Bigrading<Rational>, d: usize) -> Option<Self> {
        let dim = bg.graded_dims()[d];
        let mut cols = Vec::new();
        let mut ranges = Vec::new();
        for (i, j) in bg.indices_in_degree(d) {
            let piece = bg.piece(i, j);
            let start = cols.len();
            cols.extend(piece.basis().iter().cloned());
            ranges.push(((i, j), start..cols.len()));
        }
        let inverse = Matrix::from_cols(dim, &cols).inverse()?;
        Some(DegreeFrame { inverse, ranges })
    }

    /// Whether every column of `m` lies in the piece `target` (or is zero
    /// when `target` is `None`).
    fn inside(&self, m: &Matrix<Rational>, target: Option<Index>) -> bool {
        let coords = self.inverse.mul(m);
        let keep = target.and_then(|t| {
            self.ranges
                .iter()
                .find(|(k, _)| *k == t)
                .map(|(_, r)| r.clone())
        });
        (0..coords.rows()).all(|r| {
            keep.as_ref().is_some_and(|k| k.contains(&r))
                || coords.row(r).iter().all(Scalar::is_zero)
        })
    }
}

/// Every product of basis vectors of pieces `(i,j)` and `(i',j')` must lie
/// in piece `(i+i', j+j')`, and vanish if that index leaves `[0, 2n]²`.
/// Products commute, so each unordered pair is checked once.
pub fn check_multiplicativity(
    alg: &GradedAlgebra,
    bg: &Bigrading<Rational>,
) -> MultiplicativityReport {
    let top = alg.top_degree();
    let m = 2 * bg.n();
    let frames: Vec<Option<DegreeFrame>> = (0..=top).map(|d| DegreeFrame::new(bg, d)).collect();
    let mut report = MultiplicativityReport {
        pass: true,
        pairs_checked: 0,
        products_checked: 0,
        violations: Vec::new(),
    };
    let nonzero: Vec<Index> = (0..=m)
        .flat_map(|i| (0..=m).map(move |j| (i, j)))
        .filter(|&(i, j)| bg.piece_dim(i, j) > 0)
        .collect();
    for (a, &(i, j)) in nonzero.iter().enumerate() {
        for &(k, l) in &nonzero[a..] {
            let (d1, d2) = (i + j, k + l);
            if d1 + d2 > top {
                continue;
            }
            report.pairs_checked += 1;
            let target = (i + k <= m && j + l <= m).then_some((i + k, j + l));
            let right = bg.piece(k, l).basis_matrix();
            let mut ok = true;
            for p in bg.piece(i, j).basis() {
                let product = alg
                    .left_mult_matrix(&ClassVector::new(d1, p.clone()), d2)
                    .mul(&right);
                report.products_checked += right.cols();
                let inside = match &frames[d1 + d2] {
                    Some(frame) => frame.inside(&product, target),
                    None => false,
                };
                if !inside {
                    ok = false;
                    break;
                }
            }
            if !ok {
                report.pass = false;
                report.violations.push(((i, j), (k, l)));
            }
        }
    }
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum DualityViolation {
    /// `∫ a·b ≠ 0` for pieces whose indices do not add to `(2n, 2n)`.
    NonzeroPairing { left: Index, right: Index },
    /// Complementary pieces pair degenerately.
    Degenerate { left: Index, right: Index },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub pass: bool,
    pub blocks_checked: usize,
    pub violations: Vec<DualityViolation>,
}

/// The Poincaré pairing vanishes between pieces off complementary indices
/// and is perfect between `(i, j)` and `(2n-i, 2n-j)`.
pub fn check_duality(alg: &GradedAlgebra, bg: &Bigrading<Rational>) -> DualityReport {
    let top = alg.top_degree();
    let m = 2 * bg.n();
    let mut report = DualityReport {
        pass: true,
        blocks_checked: 0,
        violations: Vec::new(),
    };
    for d in 0..=top / 2 {
        let pairing = alg.pairing_matrix(d);
        for (i, j) in bg.indices_in_degree(d) {
            let left = bg.piece(i, j);
            if left.is_zero() {
                continue;
            }
            let left_t = left.basis_matrix().transpose();
            for (k, l) in bg.indices_in_degree(top - d) {
                let right = bg.piece(k, l);
                let complementary = (i + k, j + l) == (m, m);
                if right.is_zero() {
                    if complementary {
                        report.violations.push(DualityViolation::Degenerate {
                            left: (i, j),
                            right: (k, l),
                        });
                    }
                    continue;
                }
                report.blocks_checked += 1;
                let block = left_t.mul(&pairing).mul(&right.basis_matrix());
                if complementary {
                    if !block.is_square() || block.rank() < block.rows() {
                        report.violations.push(DualityViolation::Degenerate {
                            left: (i, j),
                            right: (k, l),
                        });
                    }
                } else if !block.is_zero() {
                    report.violations.push(DualityViolation::NonzeroPairing {
                        left: (i, j),
                        right: (k, l),
                    });
                }
            }
        }
    }
    report.pass = report.violations.is_empty();
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiltrationReport {
    pub pass: bool,
    /// `(class, k, degree)` where `class·P_k ⊄ P_{k+shift}` in that degree.
    pub violations: Vec<(String, usize, usize)>,
}

/// With `P_k = ⊕_{i ≤ k} piece(i, ·)`: `η·P_k ⊆ P_{k+2}` and `β·P_k ⊆ P_k`.
pub fn check_filtration_shifts(
    alg: &GradedAlgebra,
    bg: &Bigrading<Rational>,
    eta: &ClassVector,
    beta: &ClassVector,
) -> FiltrationReport {
    let top = alg.top_degree();
    let m = 2 * bg.n();
    let dims = alg.graded_dims();
    let p = |k: usize, d: usize| -> Subspace<Rational> {
        Subspace::span(
            dims[d],
            bg.indices_in_degree(d)
                .into_iter()
                .filter(|&(i, _)| i <= k)
                .flat_map(|(i, j)| bg.piece(i, j).basis().to_vec()),
        )
    };
    let mut violations = Vec::new();
    for d in 0..top.saturating_sub(1) {
        for k in 0..=m {
            let source = p(k, d);
            for (name, class, shift) in [("eta", eta, 2), ("beta", beta, 0)] {
                let image = source.image(&alg.left_mult_matrix(class, d));
                if !image.is_subspace_of(&p(k + shift, d + 2)) {
                    violations.push((name.to_string(), k, d));
                }
            }
        }
    }
    FiltrationReport {
        pass: violations.is_empty(),
        violations,
    }
}
