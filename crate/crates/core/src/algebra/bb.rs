//! Quadratic spaces `(H², q, c, n)` that seed the model algebras.

use serde::{Deserialize, Serialize};

use super::AlgebraError;
use crate::linalg::{Matrix, Rational, Scalar};

/// A Beauville–Bogomolov type quadratic space.
#[derive(Debug, Clone, PartialEq)]
pub struct BBSpace {
    gram: Matrix<Rational>,
    fujiki: Rational,
    n: usize,
}

/// On-disk form of a [`BBSpace`]: `{"b2", "gram", "fujiki", "n"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BBSpaceFile {
    pub b2: usize,
    pub gram: Vec<Vec<Rational>>,
    pub fujiki: Rational,
    pub n: usize,
}

/// Rank-8 Cartan matrix of E8 (node 3 is the trivalent one).
const E8_CARTAN: [[i64; 8]; 8] = [
    [2, -1, 0, 0, 0, 0, 0, 0],
    [-1, 2, -1, 0, 0, 0, 0, 0],
    [0, -1, 2, -1, 0, 0, 0, -1],
    [0, 0, -1, 2, -1, 0, 0, 0],
    [0, 0, 0, -1, 2, -1, 0, 0],
    [0, 0, 0, 0, -1, 2, -1, 0],
    [0, 0, 0, 0, 0, -1, 2, 0],
    [0, 0, -1, 0, 0, 0, 0, 2],
];

/// Block-diagonal Gram matrix from square integer blocks.
fn block_diagonal(blocks: &[Vec<Vec<i64>>]) -> Matrix<Rational> {
    let size: usize = blocks.iter().map(Vec::len).sum();
    let mut m = Matrix::zeros(size, size);
    let mut at = 0;
    for b in blocks {
        for (r, row) in b.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.set(at + r, at + c, Rational::from(v));
            }
        }
        at += b.len();
    }
    m
}

fn hyperbolic() -> Vec<Vec<i64>> {
    vec![vec![0, 1], vec![1, 0]]
}

fn e8_negative() -> Vec<Vec<i64>> {
    E8_CARTAN
        .iter()
        .map(|row| row.iter().map(|v| -v).collect())
        .collect()
}

/// The K3 lattice `U^3 ⊕ E8(-1)^2`, basis `e1,f1,e2,f2,e3,f3` then the roots.
pub fn k3_lattice() -> Matrix<Rational> {
    block_diagonal(&[
        hyperbolic(),
        hyperbolic(),
        hyperbolic(),
        e8_negative(),
        e8_negative(),
    ])
}

impl BBSpace {
    pub fn new(gram: Matrix<Rational>, fujiki: Rational, n: usize) -> Result<Self, AlgebraError> {
        if !gram.is_square() || gram.rows() == 0 {
            return Err(AlgebraError::InvalidQuadraticSpace(
                "gram matrix must be square and nonempty".into(),
            ));
        }
        if !gram.is_symmetric() {
            return Err(AlgebraError::InvalidQuadraticSpace(
                "gram matrix is not symmetric".into(),
            ));
        }
        if gram.rank() < gram.rows() {
            return Err(AlgebraError::InvalidQuadraticSpace(
                "gram matrix is degenerate".into(),
            ));
        }
        if fujiki.is_zero() {
            return Err(AlgebraError::InvalidQuadraticSpace(
                "Fujiki constant must be nonzero".into(),
            ));
        }
        if n == 0 {
            return Err(AlgebraError::InvalidQuadraticSpace(
                "half dimension n must be at least 1".into(),
            ));
        }
        Ok(BBSpace { gram, fujiki, n })
    }

    /// K3 surfaces: `b2 = 22`, `c = 1`, `n = 1`.
    pub fn k3() -> Self {
        BBSpace::new(k3_lattice(), Rational::from(1), 1).expect("builtin K3 lattice")
    }

    /// Hilbert squares of K3: the K3 lattice plus `⟨-2⟩`, `c = 3`, `n = 2`.
    pub fn k3_hilb2() -> Self {
        let base = k3_lattice();
        let gram = Matrix::from_fn(23, 23, |r, c| {
            if r < 22 && c < 22 {
                base.get(r, c).clone()
            } else if r == 22 && c == 22 {
                Rational::from(-2)
            } else {
                Rational::from(0)
            }
        });
        BBSpace::new(gram, Rational::from(3), 2).expect("builtin K3^[2] lattice")
    }

    /// Small test space `U ⊕ ⟨1⟩`, `c = 1`, `n = 1`.
    pub fn toy_b3() -> Self {
        let gram = block_diagonal(&[hyperbolic(), vec![vec![1]]]);
        BBSpace::new(gram, Rational::from(1), 1).expect("builtin toy lattice")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "k3" => Some(BBSpace::k3()),
            "k3hilb2" => Some(BBSpace::k3_hilb2()),
            "toy-b3" => Some(BBSpace::toy_b3()),
            _ => None,
        }
    }

    pub fn from_file(file: BBSpaceFile) -> Result<Self, AlgebraError> {
        if file.gram.len() != file.b2 || file.gram.iter().any(|r| r.len() != file.b2) {
            return Err(AlgebraError::Malformed(format!(
                "field \"gram\" must be a {0}x{0} matrix",
                file.b2
            )));
        }
        let gram = Matrix::from_rows(file.b2, file.gram);
        BBSpace::new(gram, file.fujiki, file.n)
    }

    pub fn to_file(&self) -> BBSpaceFile {
        BBSpaceFile {
            b2: self.b2(),
            gram: self.gram.row_vecs(),
            fujiki: self.fujiki.clone(),
            n: self.n,
        }
    }

    pub fn b2(&self) -> usize {
        self.gram.rows()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn fujiki(&self) -> &Rational {
        &self.fujiki
    }

    pub fn gram(&self) -> &Matrix<Rational> {
        &self.gram
    }

    pub fn with_fujiki(mut self, fujiki: Rational) -> Result<Self, AlgebraError> {
        if fujiki.is_zero() {
            return Err(AlgebraError::InvalidQuadraticSpace(
                "Fujiki constant must be nonzero".into(),
            ));
        }
        self.fujiki = fujiki;
        Ok(self)
    }

    pub fn with_n(mut self, n: usize) -> Result<Self, AlgebraError> {
        if n == 0 {
            return Err(AlgebraError::InvalidQuadraticSpace(
                "half dimension n must be at least 1".into(),
            ));
        }
        self.n = n;
        Ok(self)
    }

    /// `(u, v)` over any scalar field containing `Q`.
    pub fn pair<S: Scalar>(&self, u: &[S], v: &[S]) -> S {
        let b2 = self.b2();
        let mut acc = S::zero();
        for r in 0..b2 {
            if u[r].is_zero() {
                continue;
            }
            let mut row = S::zero();
            for c in 0..b2 {
                let g = self.gram.get(r, c);
                if !g.is_zero() && !v[c].is_zero() {
                    row = row.add_ref(&S::from_rational(g).mul_ref(&v[c]));
                }
            }
            acc = acc.add_ref(&u[r].mul_ref(&row));
        }
        acc
    }

    pub fn q<S: Scalar>(&self, v: &[S]) -> S {
        self.pair(v, v)
    }

    /// Pairs `(a, b)` of basis indices spanning a hyperbolic plane orthogonal
    /// to every other basis vector, in index order.
    pub fn hyperbolic_planes(&self) -> Vec<(usize, usize)> {
        let b2 = self.b2();
        let mut planes = Vec::new();
        let mut used = vec![false; b2];
        for a in 0..b2 {
            if used[a] || !self.gram.get(a, a).is_zero() {
                continue;
            }
            let partners: Vec<usize> = (0..b2)
                .filter(|&c| c != a && !self.gram.get(a, c).is_zero())
                .collect();
            let [b] = partners[..] else { continue };
            if used[b] || !self.gram.get(b, b).is_zero() || !self.gram.get(a, b).is_one() {
                continue;
            }
            if (0..b2).any(|c| c != a && c != b && !self.gram.get(b, c).is_zero()) {
                continue;
            }
            used[a] = true;
            used[b] = true;
            planes.push((a, b));
        }
        planes
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::from(0); self.b2()];
        v[i] = Rational::from(1);
        v
    }

    /// Deterministically searches for a nonzero rational isotropic vector.
    ///
    /// Tries isotropic basis vectors, then rational roots of `q(u + t·v)`
    /// over pairs of small integer vectors.
    pub fn find_isotropic(&self) -> Option<Vec<Rational>> {
        let b2 = self.b2();
        if let Some(i) = (0..b2).find(|&i| self.gram.get(i, i).is_zero()) {
            return Some(self.basis_vector(i));
        }
        let mut candidates: Vec<Vec<Rational>> = (0..b2).map(|i| self.basis_vector(i)).collect();
        for i in 0..b2 {
            for j in i + 1..b2 {
                for s in [1, -1, 2, -2] {
                    let mut v = self.basis_vector(i);
                    v[j] = Rational::from(s);
                    candidates.push(v);
                }
            }
        }
        for (ui, u) in candidates.iter().enumerate() {
            for v in &candidates[ui + 1..] {
                if let Some(w) = self.isotropic_on_line(u, v) {
                    return Some(w);
                }
            }
        }
        None
    }

    /// A nonzero isotropic vector `u + t v` if the discriminant is a square.
    fn isotropic_on_line(&self, u: &[Rational], v: &[Rational]) -> Option<Vec<Rational>> {
        let qu = self.q(u);
        let qv = self.q(v);
        let b = self.pair(u, v);
        if qv.is_zero() {
            if v.iter().any(|x| !x.is_zero()) {
                return Some(v.to_vec());
            }
            return None;
        }
        let disc = &(&b * &b) - &(&qu * &qv);
        let root = disc.sqrt_exact()?;
        let t = &(-&b + &root) / &qv;
        let w: Vec<Rational> = u.iter().zip(v).map(|(a, c)| a + &(&t * c)).collect();
        (w.iter().any(|x| !x.is_zero()) && self.q(&w).is_zero()).then_some(w)
    }

    /// Isotropic vector on the line through `e` (isotropic) and `v`:
    /// `w = 2(e,v)v - q(v)e`.
    pub fn line_trick(&self, e: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let two_ev = Rational::from(2) * self.pair(e, v);
        let qv = self.q(v);
        v.iter()
            .zip(e)
            .map(|(vi, ei)| &(&two_ev * vi) - &(&qv * ei))
            .collect()
    }

    pub fn discriminant(&self) -> Rational {
        self.gram.determinant()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k3_lattice_is_unimodular_with_signature_3_19() {
        let k3 = BBSpace::k3();
        assert_eq!(k3.b2(), 22);
        // |det| = 1; the sign is (-1)^(number of negative eigenvalues) = (-1)^19
        assert_eq!(k3.discriminant(), Rational::from(-1));
        assert_eq!(k3.hyperbolic_planes(), vec![(0, 1), (2, 3), (4, 5)]);
    }

    #[test]
    fn k3_hilb2_appends_minus_two() {
        let m = BBSpace::k3_hilb2();
        assert_eq!(m.b2(), 23);
        assert_eq!(m.discriminant(), Rational::from(2));
        assert_eq!(m.fujiki(), &Rational::from(3));
    }

    #[test]
    fn isotropic_search_and_line_trick() {
        for bb in [BBSpace::k3(), BBSpace::toy_b3()] {
            let e = bb.find_isotropic().unwrap();
            assert!(bb.q(&e).is_zero());
            let v: Vec<Rational> = (0..bb.b2())
                .map(|i| Rational::from((i as i64 % 5) - 2))
                .collect();
            let w = bb.line_trick(&e, &v);
            assert!(bb.q(&w).is_zero());
        }
    }

    #[test]
    fn definite_form_has_no_isotropic_vector() {
        let gram = Matrix::from_i64(2, 2, &[1, 0, 0, 1]);
        let bb = BBSpace::new(gram, Rational::from(1), 1).unwrap();
        assert!(bb.find_isotropic().is_none());
    }

    #[test]
    fn isotropic_found_off_the_basis() {
        // x^2 - y^2 has isotropic (1, 1) but no isotropic basis vector
        let gram = Matrix::from_i64(2, 2, &[1, 0, 0, -1]);
        let bb = BBSpace::new(gram, Rational::from(1), 1).unwrap();
        let w = bb.find_isotropic().unwrap();
        assert!(bb.q(&w).is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        let asym = Matrix::from_i64(2, 2, &[0, 1, 2, 0]);
        assert!(BBSpace::new(asym, Rational::from(1), 1).is_err());
        let degenerate = Matrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(BBSpace::new(degenerate, Rational::from(1), 1).is_err());
        let ok = Matrix::from_i64(2, 2, &[0, 1, 1, 0]);
        assert!(BBSpace::new(ok, Rational::from(0), 1).is_err());
    }
}
