//! The model algebra generated by `H²`: `Sym H²` modulo the annihilator of
//! the polarized Fujiki functional.
//!
//! In degree `2k` with `k ≤ n` the basis is the monomials of `Sym^k`. Above
//! the middle, `A^{2k}` is identified with the dual of `Sym^{2n-k}` through
//! the pairing, so a class is recorded by the values `∫ p·m` against the
//! monomials `m` of complementary degree. The annihilator contains every
//! `w^{n+1}` with `q(w) = 0`; the builder checks this on samples.

use std::collections::HashMap;
use std::ops::Deref;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::bb::BBSpace;
use super::graded::{ClassVector, FrobeniusViolation, GradedAlgebra, ProductBlock};
use super::AlgebraError;
use crate::linalg::{Rational, Scalar, Subspace};

type Monomial = Vec<u16>;

/// Monomials of `Sym^k` in `b2` variables as sorted index lists, in
/// lexicographic order. `sym_basis(b2, 1)[i] == [i]`.
pub fn sym_basis(b2: usize, k: usize) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(b2: usize, k: usize, start: usize, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..b2 {
            cur.push(i as u16);
            rec(b2, k, i, cur, out);
            cur.pop();
        }
    }
    rec(b2, k, 0, &mut cur, &mut out);
    out
}

fn merge(a: &[u16], b: &[u16]) -> Monomial {
    let mut m = Vec::with_capacity(a.len() + b.len());
    m.extend_from_slice(a);
    m.extend_from_slice(b);
    m.sort_unstable();
    m
}

/// `a / b` for sorted multisets, if `b` divides `a`.
fn divide(a: &[u16], b: &[u16]) -> Option<Monomial> {
    let mut out = Vec::with_capacity(a.len().saturating_sub(b.len()));
    let mut bi = 0;
    for &x in a {
        if bi < b.len() && b[bi] == x {
            bi += 1;
        } else if bi < b.len() && b[bi] < x {
            return None;
        } else {
            out.push(x);
        }
    }
    (bi == b.len()).then_some(out)
}

fn double_factorial_odd(n: usize) -> i64 {
    (1..=n as i64).filter(|k| k % 2 == 1).product()
}

/// Evaluates `∫ x_{i_1} ⋯ x_{i_{2n}} = c/(2n-1)!! · Σ_matchings Π (x_a, x_b)`.
struct Polarization<'a> {
    bb: &'a BBSpace,
    scale: Rational,
    cache: HashMap<Monomial, Rational>,
}

impl<'a> Polarization<'a> {
    fn new(bb: &'a BBSpace) -> Self {
        let scale = bb.fujiki() / &Rational::from(double_factorial_odd(2 * bb.n()));
        Polarization {
            bb,
            scale,
            cache: HashMap::new(),
        }
    }

    fn integral(&mut self, m: Monomial) -> Rational {
        if let Some(v) = self.cache.get(&m) {
            return v.clone();
        }
        let v = &self.matchings(&m) * &self.scale;
        self.cache.insert(m, v.clone());
        v
    }

    fn matchings(&self, idx: &[u16]) -> Rational {
        if idx.is_empty() {
            return Rational::from(1);
        }
        let first = idx[0] as usize;
        let mut acc = Rational::from(0);
        let mut rest = idx[1..].to_vec();
        for p in 0..rest.len() {
            let g = self.bb.gram().get(first, rest[p] as usize);
            if g.is_zero() {
                continue;
            }
            let partner = rest.remove(p);
            acc = &acc + &(g * &self.matchings(&rest));
            rest.insert(p, partner);
        }
        acc
    }
}

/// A sym model together with the quadratic space it was built from.
#[derive(Debug, Clone)]
pub struct SymModel {
    algebra: GradedAlgebra,
    bb: BBSpace,
    isotropic: Vec<Rational>,
}

impl Deref for SymModel {
    type Target = GradedAlgebra;

    fn deref(&self) -> &GradedAlgebra {
        &self.algebra
    }
}

impl SymModel {
    pub fn algebra(&self) -> &GradedAlgebra {
        &self.algebra
    }

    pub fn into_algebra(self) -> GradedAlgebra {
        self.algebra
    }

    pub fn bb(&self) -> &BBSpace {
        &self.bb
    }

    /// The isotropic vector found while building; seeds the line trick.
    pub fn isotropic_seed(&self) -> &[Rational] {
        &self.isotropic
    }

    /// The degree-2 class with the given `H²` coordinates.
    pub fn class<S: Scalar>(&self, coords: &[S]) -> ClassVector<S> {
        assert_eq!(
            coords.len(),
            self.bb.b2(),
            "degree-2 class needs b2 coordinates"
        );
        ClassVector::new(2, coords.to_vec())
    }

    /// Deterministic isotropic samples `2(e,v)v - q(v)e` for integer `v`.
    pub fn isotropic_samples(&self, count: usize, seed: u64) -> Vec<Vec<Rational>> {
        isotropic_stream(&self.bb, &self.isotropic, seed)
            .take(count)
            .collect()
    }
}

fn isotropic_stream<'a>(
    bb: &'a BBSpace,
    e: &'a [Rational],
    seed: u64,
) -> impl Iterator<Item = Vec<Rational>> + 'a {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b2 = bb.b2();
    std::iter::repeat_with(move || {
        let v: Vec<Rational> = (0..b2)
            .map(|_| Rational::from(rng.gen_range(-2i64..=2)))
            .collect();
        bb.line_trick(e, &v)
    })
    .filter(|w| w.iter().any(|x| !x.is_zero()))
}

/// Builds the model algebra of `bb` and checks it: nondegenerate pairings
/// between `Sym^k` and `Sym^{2n-k}`, the Frobenius axioms, and
/// `w^{n+1} = 0` on isotropic samples.
pub fn build_sym_model(bb: &BBSpace) -> Result<SymModel, AlgebraError> {
    let isotropic = bb.find_isotropic().ok_or(AlgebraError::NoIsotropicVector)?;
    let n = bb.n();
    let b2 = bb.b2();
    let sym: Vec<Vec<Monomial>> = (0..=n).map(|k| sym_basis(b2, k)).collect();
    let index: Vec<HashMap<Monomial, usize>> = sym
        .iter()
        .map(|basis| {
            basis
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, m)| (m, i))
                .collect()
        })
        .collect();
    let mut pol = Polarization::new(bb);

    // Sym^k -> (Sym^{2n-k})^* must be injective for every k ≤ n.
    for k in 0..=n {
        let other = sym_basis(b2, 2 * n - k);
        let mut image = Subspace::zero(other.len());
        let full = sym[k].len();
        for m in &sym[k] {
            let row: Vec<Rational> = other.iter().map(|o| pol.integral(merge(m, o))).collect();
            image.insert(&row);
            if image.dim() == full {
                break;
            }
        }
        if image.dim() < full {
            return Err(AlgebraError::Frobenius(
                FrobeniusViolation::DegeneratePairing { degree: 2 * k },
            ));
        }
    }

    let top = 4 * n;
    let mut dims = vec![0; top + 1];
    for k in 0..=2 * n {
        dims[2 * k] = if k <= n {
            sym[k].len()
        } else {
            sym[2 * n - k].len()
        };
    }

    let mut products: HashMap<(usize, usize), ProductBlock> = HashMap::new();
    for k in 0..=2 * n {
        for l in 0..=2 * n - k {
            let mut block = ProductBlock::new(dims[2 * k], dims[2 * l]);
            let t = k + l;
            match (k <= n, l <= n) {
                (true, true) if t <= n => {
                    for (i, a) in sym[k].iter().enumerate() {
                        for (j, b) in sym[l].iter().enumerate() {
                            block.set(i, j, vec![(index[t][&merge(a, b)], Rational::from(1))]);
                        }
                    }
                }
                (true, true) => {
                    let dual = &sym[2 * n - t];
                    for (i, a) in sym[k].iter().enumerate() {
                        for (j, b) in sym[l].iter().enumerate() {
                            let ab = merge(a, b);
                            let image = dual
                                .iter()
                                .enumerate()
                                .map(|(x, m)| (x, pol.integral(merge(&ab, m))))
                                .collect();
                            block.set(i, j, image);
                        }
                    }
                }
                (false, true) | (true, false) => {
                    let dual_side_left = k > n;
                    let (dk, ml) = if dual_side_left { (k, l) } else { (l, k) };
                    for (i, beta) in sym[2 * n - dk].iter().enumerate() {
                        for (j, b) in sym[ml].iter().enumerate() {
                            let image = divide(beta, b)
                                .map(|rest| vec![(index[2 * n - t][&rest], Rational::from(1))])
                                .unwrap_or_default();
                            if dual_side_left {
                                block.set(i, j, image);
                            } else {
                                block.set(j, i, image);
                            }
                        }
                    }
                }
                (false, false) => unreachable!("k + l > 2n is excluded"),
            }
            products.insert((2 * k, 2 * l), block);
        }
    }

    let algebra = GradedAlgebra::from_parts(n, dims, products, vec![Rational::from(1)])?;
    let model = SymModel {
        algebra,
        bb: bb.clone(),
        isotropic,
    };

    for w in model.isotropic_samples(8, 0) {
        let power = model.power(&model.class(&w), n + 1)?;
        if !power.is_zero() {
            return Err(AlgebraError::ModelCheck(format!(
                "isotropic class fails w^{} = 0; the functional does not kill the isotropic ideal",
                n + 1
            )));
        }
    }
    Ok(model)
}

/// Rank of the span of `{w^{n+1} : q(w) = 0}` inside `Sym^{n+1}`, grown in
/// rounds of 32 line-trick samples until two consecutive rounds add nothing.
pub fn isotropic_square_rank(bb: &BBSpace, seed: u64) -> Result<usize, AlgebraError> {
    let e = bb.find_isotropic().ok_or(AlgebraError::NoIsotropicVector)?;
    let n = bb.n();
    let basis = sym_basis(bb.b2(), n + 1);
    let index: HashMap<Monomial, usize> = basis
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, m)| (m, i))
        .collect();
    let mut span = Subspace::zero(basis.len());
    let mut stream = isotropic_stream(bb, &e, seed);
    let mut quiet_rounds = 0;
    while quiet_rounds < 2 && !span.is_whole() {
        let before = span.dim();
        for w in stream.by_ref().take(32) {
            span.insert(&expand_power(&w, n + 1, &index));
        }
        quiet_rounds = if span.dim() == before {
            quiet_rounds + 1
        } else {
            0
        };
    }
    Ok(span.dim())
}

/// Coordinates of `w^k` in the monomial basis of `Sym^k`.
fn expand_power(w: &[Rational], k: usize, index: &HashMap<Monomial, usize>) -> Vec<Rational> {
    let mut poly: HashMap<Monomial, Rational> = HashMap::from([(Vec::new(), Rational::from(1))]);
    for _ in 0..k {
        let mut next: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &poly {
            for (i, wi) in w.iter().enumerate() {
                if wi.is_zero() {
                    continue;
                }
                let key = merge(m, &[i as u16]);
                next.entry(key)
                    .or_insert_with(|| Rational::from(0))
                    .add_mul_assign(c, wi);
            }
        }
        poly = next;
    }
    let mut out = vec![Rational::from(0); index.len()];
    for (m, c) in poly {
        out[index[&m]] = c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        assert_eq!(sym_basis(22, 2).len(), 253);
        assert_eq!(sym_basis(23, 2).len(), 276);
        assert_eq!(sym_basis(3, 0), vec![Vec::<u16>::new()]);
        assert_eq!(sym_basis(3, 1), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn divide_multisets() {
        assert_eq!(divide(&[0, 1, 1, 3], &[1, 3]), Some(vec![0, 1]));
        assert_eq!(divide(&[0, 1, 3], &[2]), None);
        assert_eq!(divide(&[0, 0], &[0, 0]), Some(vec![]));
    }

    #[test]
    fn toy_model_dims() {
        let model = build_sym_model(&BBSpace::toy_b3()).unwrap();
        assert_eq!(model.graded_dims(), &[1, 0, 3, 0, 1]);
        assert!(model.validate_frobenius().passed());
    }

    #[test]
    fn k3_model_pairing_is_the_gram_matrix() {
        let bb = BBSpace::k3();
        let model = build_sym_model(&bb).unwrap();
        assert_eq!(model.total_dim(), 24);
        assert_eq!(&model.pairing_matrix(2), bb.gram());
        assert_eq!(model.pairing_matrix(0).rows(), 1);
    }

    #[test]
    fn isotropic_ideal_has_codimension_one_for_n_equal_one() {
        assert_eq!(isotropic_square_rank(&BBSpace::toy_b3(), 0).unwrap(), 5);
    }
}
