//! Finite-dimensional graded-commutative Frobenius algebras.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use super::AlgebraError;
use crate::linalg::{Matrix, Rational, Scalar};

/// A homogeneous class: coordinates in the basis of one graded component.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassVector<S = Rational> {
    pub degree: usize,
    pub coords: Vec<S>,
}

impl<S: Scalar> ClassVector<S> {
    pub fn new(degree: usize, coords: Vec<S>) -> Self {
        ClassVector { degree, coords }
    }

    pub fn zero(alg: &GradedAlgebra, degree: usize) -> Self {
        ClassVector {
            degree,
            coords: vec![S::zero(); alg.dim(degree)],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(S::is_zero)
    }

    pub fn scale(&self, s: &S) -> Self {
        ClassVector {
            degree: self.degree,
            coords: self.coords.iter().map(|c| c.mul_ref(s)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree, other.degree,
            "adding classes of different degree"
        );
        ClassVector {
            degree: self.degree,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ClassVector<T> {
        ClassVector {
            degree: self.degree,
            coords: self.coords.iter().map(f).collect(),
        }
    }
}

/// Sparse images `e_i · e_j` for one ordered pair of degrees, stored at
/// `i * right_dim + j` as `(target index, coefficient)` sorted by index.
#[derive(Debug, Clone, Default)]
pub(crate) struct ProductBlock {
    right_dim: usize,
    entries: Vec<Vec<(usize, Rational)>>,
}

impl ProductBlock {
    pub(crate) fn new(left_dim: usize, right_dim: usize) -> Self {
        ProductBlock {
            right_dim,
            entries: vec![Vec::new(); left_dim * right_dim],
        }
    }

    pub(crate) fn set(&mut self, i: usize, j: usize, mut image: Vec<(usize, Rational)>) {
        image.retain(|(_, c)| !c.is_zero());
        image.sort_by_key(|(k, _)| *k);
        self.entries[i * self.right_dim + j] = image;
    }

    fn get(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.entries[i * self.right_dim + j]
    }
}

/// One failed Frobenius axiom, naming the offending basis elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "kebab-case")]
pub enum FrobeniusViolation {
    Commutativity {
        degrees: (usize, usize),
        pair: (usize, usize),
    },
    Associativity {
        degrees: (usize, usize, usize),
        triple: (usize, usize, usize),
    },
    Unit {
        degree: usize,
        index: usize,
    },
    DegeneratePairing {
        degree: usize,
    },
    NotPalindromic {
        degree: usize,
    },
}

impl fmt::Display for FrobeniusViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrobeniusViolation::Commutativity { degrees, pair } => write!(
                f,
                "graded commutativity fails for basis pair {:?} in degrees {:?}",
                pair, degrees
            ),
            FrobeniusViolation::Associativity { degrees, triple } => write!(
                f,
                "associativity fails for basis triple {:?} in degrees {:?}",
                triple, degrees
            ),
            FrobeniusViolation::Unit { degree, index } => {
                write!(
                    f,
                    "unit law fails on basis vector {index} of degree {degree}"
                )
            }
            FrobeniusViolation::DegeneratePairing { degree } => {
                write!(
                    f,
                    "Poincaré pairing between degree {degree} and its complement is degenerate"
                )
            }
            FrobeniusViolation::NotPalindromic { degree } => {
                write!(
                    f,
                    "graded dimensions are not palindromic at degree {degree}"
                )
            }
        }
    }
}

/// Outcome of [`GradedAlgebra::validate_frobenius`], one flag per axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrobeniusReport {
    pub graded_commutative: bool,
    pub associative: bool,
    pub unit: bool,
    pub pairing_nondegenerate: bool,
    pub palindromic: bool,
    pub violations: Vec<FrobeniusViolation>,
}

impl FrobeniusReport {
    pub fn passed(&self) -> bool {
        self.graded_commutative
            && self.associative
            && self.unit
            && self.pairing_nondegenerate
            && self.palindromic
    }
}

/// Cap on recorded violations per axiom; the flags stay exact.
const MAX_RECORDED: usize = 16;

/// A graded-commutative algebra `A = ⊕_{d=0}^{4n} A^d` with `dim A^0 = 1`
/// and an integration functional on `A^{4n}`.
#[derive(Debug, Clone)]
pub struct GradedAlgebra {
    n: usize,
    dims: Vec<usize>,
    offsets: Vec<usize>,
    products: HashMap<(usize, usize), ProductBlock>,
    integration: Vec<Rational>,
}

impl GradedAlgebra {
    /// Assembles an algebra without checking any axiom.
    pub(crate) fn from_parts(
        n: usize,
        dims: Vec<usize>,
        products: HashMap<(usize, usize), ProductBlock>,
        integration: Vec<Rational>,
    ) -> Result<Self, AlgebraError> {
        if dims.len() != 4 * n + 1 {
            return Err(AlgebraError::Malformed(format!(
                "field \"graded_dims\" must have {} entries (degrees 0..=4n), got {}",
                4 * n + 1,
                dims.len()
            )));
        }
        if dims[0] != 1 {
            return Err(AlgebraError::Malformed(
                "field \"graded_dims\" must start with 1 (connected algebra)".into(),
            ));
        }
        if integration.len() != dims[4 * n] {
            return Err(AlgebraError::Malformed(format!(
                "field \"integration\" must have {} entries, got {}",
                dims[4 * n],
                integration.len()
            )));
        }
        let mut offsets = Vec::with_capacity(dims.len());
        let mut acc = 0;
        for &d in &dims {
            offsets.push(acc);
            acc += d;
        }
        Ok(GradedAlgebra {
            n,
            dims,
            offsets,
            products,
            integration,
        })
    }

    /// Half complex dimension: the top degree is `4n`.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn top_degree(&self) -> usize {
        4 * self.n
    }

    pub fn graded_dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims.get(degree).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Position of degree `d` inside the total space.
    pub fn offset(&self, degree: usize) -> usize {
        self.offsets[degree]
    }

    pub fn integration(&self) -> &[Rational] {
        &self.integration
    }

    pub fn unit(&self) -> ClassVector {
        ClassVector::new(0, vec![Rational::from(1)])
    }

    /// Basis vector `e_i` of degree `d`.
    pub fn basis_class(&self, degree: usize, i: usize) -> ClassVector {
        let mut coords = vec![Rational::from(0); self.dim(degree)];
        coords[i] = Rational::from(1);
        ClassVector::new(degree, coords)
    }

    /// Sparse `e_i · e_j` for `e_i ∈ A^d`, `e_j ∈ A^{d'}`.
    pub(crate) fn basis_product(
        &self,
        d: usize,
        i: usize,
        d2: usize,
        j: usize,
    ) -> &[(usize, Rational)] {
        match self.products.get(&(d, d2)) {
            Some(block) => block.get(i, j),
            None => &[],
        }
    }

    pub fn multiply<S: Scalar>(
        &self,
        a: &ClassVector<S>,
        b: &ClassVector<S>,
    ) -> Result<ClassVector<S>, AlgebraError> {
        let deg = a.degree + b.degree;
        if deg > self.top_degree() {
            return Err(AlgebraError::DegreeOverflow {
                degree: deg,
                top: self.top_degree(),
            });
        }
        self.check_class(a)?;
        self.check_class(b)?;
        let mut out = vec![S::zero(); self.dim(deg)];
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.coords.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let ab = ai.mul_ref(bj);
                for (k, c) in self.basis_product(a.degree, i, b.degree, j) {
                    out[*k].add_mul_assign(&ab, &S::from_rational(c));
                }
            }
        }
        Ok(ClassVector::new(deg, out))
    }

    /// `a^k`, with `a^0` the unit.
    pub fn power<S: Scalar>(
        &self,
        a: &ClassVector<S>,
        k: usize,
    ) -> Result<ClassVector<S>, AlgebraError> {
        let mut acc: ClassVector<S> = self.unit().map(S::from_rational);
        for _ in 0..k {
            acc = self.multiply(&acc, a)?;
        }
        Ok(acc)
    }

    fn check_class<S: Scalar>(&self, a: &ClassVector<S>) -> Result<(), AlgebraError> {
        if a.degree > self.top_degree() || a.coords.len() != self.dim(a.degree) {
            return Err(AlgebraError::Malformed(format!(
                "class of degree {} has {} coordinates, expected {}",
                a.degree,
                a.coords.len(),
                self.dim(a.degree)
            )));
        }
        Ok(())
    }

    /// Matrix of `v ↦ a·v` from `A^{source}` to `A^{source + deg a}`.
    pub fn left_mult_matrix<S: Scalar>(&self, a: &ClassVector<S>, source: usize) -> Matrix<S> {
        let target = a.degree + source;
        let rows = self.dim(target);
        let cols = self.dim(source);
        let mut m = Matrix::zeros(rows, cols);
        if target > self.top_degree() {
            return m;
        }
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for j in 0..cols {
                for (k, c) in self.basis_product(a.degree, i, source, j) {
                    m.get_mut(*k, j).add_mul_assign(ai, &S::from_rational(c));
                }
            }
        }
        m
    }

    pub fn integrate<S: Scalar>(&self, a: &ClassVector<S>) -> Result<S, AlgebraError> {
        if a.degree != self.top_degree() {
            return Err(AlgebraError::WrongDegree {
                expected: self.top_degree(),
                got: a.degree,
            });
        }
        self.check_class(a)?;
        let mut acc = S::zero();
        for (x, w) in a.coords.iter().zip(&self.integration) {
            acc.add_mul_assign(x, &S::from_rational(w));
        }
        Ok(acc)
    }

    /// Gram matrix of `⟨a, b⟩ = ∫ a·b` for `a ∈ A^d`, `b ∈ A^{4n-d}`.
    pub fn pairing_matrix(&self, degree: usize) -> Matrix<Rational> {
        let top = self.top_degree();
        assert!(degree <= top, "degree out of range");
        let other = top - degree;
        let mut m = Matrix::zeros(self.dim(degree), self.dim(other));
        for i in 0..self.dim(degree) {
            for j in 0..self.dim(other) {
                let mut acc = Rational::from(0);
                for (k, c) in self.basis_product(degree, i, other, j) {
                    acc.add_mul_assign(c, &self.integration[*k]);
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    /// Checks graded commutativity, associativity, the unit law, the
    /// palindromic dimensions, and nondegeneracy of the Poincaré pairing.
    pub fn validate_frobenius(&self) -> FrobeniusReport {
        let mut report = FrobeniusReport {
            graded_commutative: true,
            associative: true,
            unit: true,
            pairing_nondegenerate: true,
            palindromic: true,
            violations: Vec::new(),
        };
        let top = self.top_degree();
        let record = |report: &mut FrobeniusReport, v: FrobeniusViolation, count: &mut usize| {
            if *count < MAX_RECORDED {
                report.violations.push(v);
            }
            *count += 1;
        };

        let mut count = 0;
        for d in 0..=top {
            if self.dims[d] != self.dims[top - d] {
                report.palindromic = false;
                record(
                    &mut report,
                    FrobeniusViolation::NotPalindromic { degree: d },
                    &mut count,
                );
            }
        }

        let mut count = 0;
        for d in 0..=top {
            for j in 0..self.dims[d] {
                let expected = vec![(j, Rational::from(1))];
                if self.basis_product(0, 0, d, j) != expected.as_slice()
                    || self.basis_product(d, j, 0, 0) != expected.as_slice()
                {
                    report.unit = false;
                    record(
                        &mut report,
                        FrobeniusViolation::Unit {
                            degree: d,
                            index: j,
                        },
                        &mut count,
                    );
                }
            }
        }

        let mut count = 0;
        for d1 in 0..=top {
            for d2 in d1..=top - d1 {
                let sign_negative = (d1 * d2) % 2 == 1;
                for i in 0..self.dims[d1] {
                    for j in 0..self.dims[d2] {
                        let ab = self.basis_product(d1, i, d2, j);
                        let ba = self.basis_product(d2, j, d1, i);
                        let matches = ab.len() == ba.len()
                            && ab.iter().zip(ba).all(|((k1, c1), (k2, c2))| {
                                k1 == k2 && if sign_negative { *c1 == -c2 } else { c1 == c2 }
                            });
                        if !matches {
                            report.graded_commutative = false;
                            record(
                                &mut report,
                                FrobeniusViolation::Commutativity {
                                    degrees: (d1, d2),
                                    pair: (i, j),
                                },
                                &mut count,
                            );
                        }
                    }
                }
            }
        }

        let mut count = 0;
        for d1 in 1..=top {
            for d2 in 1..=top.saturating_sub(d1) {
                for d3 in 1..=top.saturating_sub(d1 + d2) {
                    if self.dims[d1] == 0 || self.dims[d2] == 0 || self.dims[d3] == 0 {
                        continue;
                    }
                    for i in 0..self.dims[d1] {
                        for j in 0..self.dims[d2] {
                            let ij = self.basis_product(d1, i, d2, j);
                            for k in 0..self.dims[d3] {
                                let mut left: BTreeMap<usize, Rational> = BTreeMap::new();
                                for (m, c) in ij {
                                    for (t, c2) in self.basis_product(d1 + d2, *m, d3, k) {
                                        left.entry(*t)
                                            .or_insert_with(|| Rational::from(0))
                                            .add_mul_assign(c, c2);
                                    }
                                }
                                let mut right: BTreeMap<usize, Rational> = BTreeMap::new();
                                for (m, c) in self.basis_product(d2, j, d3, k) {
                                    for (t, c2) in self.basis_product(d1, i, d2 + d3, *m) {
                                        right
                                            .entry(*t)
                                            .or_insert_with(|| Rational::from(0))
                                            .add_mul_assign(c, c2);
                                    }
                                }
                                left.retain(|_, v| !v.is_zero());
                                right.retain(|_, v| !v.is_zero());
                                if left != right {
                                    report.associative = false;
                                    record(
                                        &mut report,
                                        FrobeniusViolation::Associativity {
                                            degrees: (d1, d2, d3),
                                            triple: (i, j, k),
                                        },
                                        &mut count,
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }

        let mut count = 0;
        for d in 0..=top / 2 {
            let m = self.pairing_matrix(d);
            if !m.is_square() || m.rank() < m.rows() {
                report.pairing_nondegenerate = false;
                record(
                    &mut report,
                    FrobeniusViolation::DegeneratePairing { degree: d },
                    &mut count,
                );
            }
        }
        report
    }
}
