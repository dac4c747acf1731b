use std::collections::{BTreeMap, HashMap};

use super::operator::GradedOperator;
use super::LefschetzError;
use crate::linalg::Scalar;

/// Result of [`lie_closure`]: the dimension and a basis of the generated
/// Lie algebra, in discovery order.
#[derive(Debug, Clone)]
pub struct LieClosure<S> {
    pub dim: usize,
    pub basis: Vec<GradedOperator<S>>,
}

const SHIFTS: [i32; 3] = [-2, 0, 2];

/// Coordinates of operators with shift in {-2, 0, 2} in one flat space.
struct Layout {
    offsets: HashMap<(i32, usize), usize>,
}

impl Layout {
    fn new(dims: &[usize]) -> Self {
        let mut offsets = HashMap::new();
        let mut at = 0;
        for s in SHIFTS {
            for d in 0..dims.len() {
                offsets.insert((s, d), at);
                let t = d as i64 + s as i64;
                if t >= 0 && (t as usize) < dims.len() {
                    at += dims[t as usize] * dims[d];
                }
            }
        }
        Layout { offsets }
    }

    fn flatten<S: Scalar>(
        &self,
        op: &GradedOperator<S>,
    ) -> Result<BTreeMap<usize, S>, LefschetzError> {
        let mut out = BTreeMap::new();
        if op.is_zero() {
            return Ok(out);
        }
        if !SHIFTS.contains(&op.shift()) {
            return Err(LefschetzError::ShiftOutOfRange { shift: op.shift() });
        }
        for (d, block) in op.blocks().iter().enumerate() {
            let base = self.offsets[&(op.shift(), d)];
            for (k, x) in block.entries().iter().enumerate() {
                if !x.is_zero() {
                    out.insert(base + k, x.clone());
                }
            }
        }
        Ok(out)
    }
}

/// Sparse row echelon form: each row is normalized to 1 at its pivot, the
/// smallest index it touches.
struct Echelon<S> {
    rows: HashMap<usize, Vec<(usize, S)>>,
}

impl<S: Scalar> Echelon<S> {
    fn new() -> Self {
        Echelon {
            rows: HashMap::new(),
        }
    }

    fn insert(&mut self, mut v: BTreeMap<usize, S>) -> bool {
        while let Some((&p, c)) = v.iter().next() {
            let Some(row) = self.rows.get(&p) else {
                let inv = c.inv_ref();
                let row: Vec<(usize, S)> =
                    v.into_iter().map(|(k, x)| (k, x.mul_ref(&inv))).collect();
                self.rows.insert(p, row);
                return true;
            };
            let c = c.clone();
            for (k, x) in row {
                let entry = v.entry(*k).or_insert_with(S::zero);
                *entry = entry.sub_ref(&c.mul_ref(x));
                if entry.is_zero() {
                    v.remove(k);
                }
            }
        }
        false
    }
}

/// Smallest bracket-closed subspace containing `ops`, grown by applying
/// `ad(g)` for each input `g` to every newly found basis element until
/// nothing new appears. Deterministic in the order of `ops`.
pub fn lie_closure<S: Scalar>(ops: &[GradedOperator<S>]) -> Result<LieClosure<S>, LefschetzError> {
    let Some(first) = ops.first() else {
        return Ok(LieClosure {
            dim: 0,
            basis: Vec::new(),
        });
    };
    let layout = Layout::new(first.dims());
    let mut span = Echelon::new();
    let mut basis: Vec<GradedOperator<S>> = Vec::new();
    let mut frontier = Vec::new();
    for g in ops {
        if span.insert(layout.flatten(g)?) {
            frontier.push(basis.len());
            basis.push(g.clone());
        }
    }
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &x in &frontier {
            for g in ops {
                let b = g.bracket(&basis[x]);
                if b.is_zero() {
                    continue;
                }
                if span.insert(layout.flatten(&b)?) {
                    next.push(basis.len());
                    basis.push(b);
                }
            }
        }
        frontier = next;
    }
    Ok(LieClosure {
        dim: basis.len(),
        basis,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{Matrix, Rational};

    fn r(x: i64) -> Rational {
        Rational::from(x)
    }

    /// The standard sl2 module placed in degrees 0 and 2.
    fn sl2_on_line() -> [GradedOperator<Rational>; 3] {
        let dims = [1, 0, 1];
        let e = GradedOperator::from_fn(&dims, 2, |_, rows, cols| {
            Matrix::from_fn(rows, cols, |_, _| r(1))
        });
        let f = GradedOperator::from_fn(&dims, -2, |_, rows, cols| {
            Matrix::from_fn(rows, cols, |_, _| r(1))
        });
        let h = GradedOperator::degree_operator(&dims, |d| r(d as i64 - 1));
        [e, h, f]
    }

    #[test]
    fn one_triple_closes_in_dimension_three() {
        let closure = lie_closure(&sl2_on_line()).unwrap();
        assert_eq!(closure.dim, 3);
    }

    #[test]
    fn two_commuting_triples_give_six() {
        // sl2 ⊕ sl2 acting on the tensor square of the standard module,
        // graded by total weight: degrees 0, 2, 4 of dims 1, 2, 1.
        let dims = [1, 0, 2, 0, 1];
        let e1 = GradedOperator::<Rational>::from_fn(&dims, 2, |d, rows, cols| match d {
            0 => Matrix::from_i64(rows, cols, &[1, 0]),
            2 => Matrix::from_i64(rows, cols, &[0, 1]),
            _ => Matrix::zeros(rows, cols),
        });
        let f1 = GradedOperator::<Rational>::from_fn(&dims, -2, |d, rows, cols| match d {
            2 => Matrix::from_i64(rows, cols, &[1, 0]),
            4 => Matrix::from_i64(rows, cols, &[0, 1]),
            _ => Matrix::zeros(rows, cols),
        });
        let e2 = GradedOperator::<Rational>::from_fn(&dims, 2, |d, rows, cols| match d {
            0 => Matrix::from_i64(rows, cols, &[0, 1]),
            2 => Matrix::from_i64(rows, cols, &[1, 0]),
            _ => Matrix::zeros(rows, cols),
        });
        let f2 = GradedOperator::<Rational>::from_fn(&dims, -2, |d, rows, cols| match d {
            2 => Matrix::from_i64(rows, cols, &[0, 1]),
            4 => Matrix::from_i64(rows, cols, &[1, 0]),
            _ => Matrix::zeros(rows, cols),
        });
        let h1 = e1.bracket(&f1);
        let h2 = e2.bracket(&f2);
        assert!(e1.bracket(&e2).is_zero() && e1.bracket(&f2).is_zero());
        let closure = lie_closure(&[e1, h1, f1, e2, h2, f2]).unwrap();
        assert_eq!(closure.dim, 6);
    }
}
