use std::collections::BTreeMap;

use super::bigrading::Bigrading;
use super::PerverseError;
use crate::algebra::{ClassVector, GradedAlgebra};
use crate::lefschetz::{weight_filtration, Filtration, GradedOperator};
use crate::linalg::{Matrix, Rational, Scalar, Subspace};

/// Bi-primitive spaces `V^{i,j}` for `0 ≤ i, j ≤ n` and the pieces they
/// generate under cup product with powers of `η` and `β`.
#[derive(Debug, Clone)]
pub struct PrimitivePieces {
    pub n: usize,
    /// `V^{i,j}` in the coordinates of degree `i + j`.
    pub primitives: BTreeMap<(usize, usize), Subspace<Rational>>,
    /// `Σ η^a β^b V^{i-2a, j-2b}` for every `(i, j)`.
    pub generated: Bigrading<Rational>,
}

impl PrimitivePieces {
    pub fn primitive_dim(&self, i: usize, j: usize) -> usize {
        self.primitives.get(&(i, j)).map_or(0, Subspace::dim)
    }
}

fn check_pair(
    alg: &GradedAlgebra,
    eta: &ClassVector,
    beta: &ClassVector,
) -> Result<(), PerverseError> {
    let n = alg.n();
    for (name, c) in [("η", eta), ("β", beta)] {
        if c.degree != 2 || c.coords.len() != alg.dim(2) {
            return Err(PerverseError::Precondition(format!(
                "{name} must be a degree-2 class"
            )));
        }
        if !alg.power(c, n + 1)?.is_zero() {
            return Err(PerverseError::Precondition(format!(
                "{name}^{} ≠ 0, so {name} is not isotropic",
                n + 1
            )));
        }
    }
    let top = alg.multiply(&alg.power(eta, n)?, &alg.power(beta, n)?)?;
    if alg.integrate(&top)?.is_zero() {
        return Err(PerverseError::Precondition(
            "∫ η^n β^n = 0, so (η, β) = 0".into(),
        ));
    }
    Ok(())
}

/// `V^{i,j} = {v ∈ A^{i+j} : η^{n-i+1} v = 0, β^{n-j+1} v = 0}`, checked to
/// generate the whole algebra freely as a module over `Q[η,β]/(η^{n+1}, β^{n+1})`.
pub fn primitive_pieces(
    alg: &GradedAlgebra,
    eta: &ClassVector,
    beta: &ClassVector,
) -> Result<PrimitivePieces, PerverseError> {
    check_pair(alg, eta, beta)?;
    let n = alg.n();
    let dims = alg.graded_dims().to_vec();
    let top = alg.top_degree();
    let eta_pow: Vec<ClassVector> = (0..=n + 1)
        .map(|k| alg.power(eta, k))
        .collect::<Result<_, _>>()?;
    let beta_pow: Vec<ClassVector> = (0..=n + 1)
        .map(|k| alg.power(beta, k))
        .collect::<Result<_, _>>()?;

    let mut primitives = BTreeMap::new();
    for i in 0..=n {
        for j in 0..=n {
            let d = i + j;
            if dims[d] == 0 {
                continue;
            }
            let mut constraint = Matrix::zeros(0, dims[d]);
            for class in [&eta_pow[n - i + 1], &beta_pow[n - j + 1]] {
                if d + class.degree <= top {
                    constraint = constraint.vstack(&alg.left_mult_matrix(class, d));
                }
            }
            let v = crate::linalg::kernel(&constraint);
            if !v.is_zero() {
                primitives.insert((i, j), v);
            }
        }
    }

    let mut generated: BTreeMap<(usize, usize), Subspace<Rational>> = BTreeMap::new();
    let mut listed = vec![0usize; top + 1];
    for (&(i, j), v) in &primitives {
        for a in 0..=n - i {
            for b in 0..=n - j {
                let mult = alg.multiply(&eta_pow[a], &beta_pow[b])?;
                let image = v.image(&alg.left_mult_matrix(&mult, i + j));
                let key = (i + 2 * a, j + 2 * b);
                listed[i + j + 2 * (a + b)] += v.dim();
                let entry = generated
                    .entry(key)
                    .or_insert_with(|| Subspace::zero(dims[key.0 + key.1]));
                *entry = entry.sum(&image).expect("same degree");
            }
        }
    }
    let generated = Bigrading::new(n, dims.clone(), generated);
    for d in 0..=top {
        let spanned = Subspace::span(
            dims[d],
            generated
                .indices_in_degree(d)
                .into_iter()
                .flat_map(|(i, j)| generated.piece(i, j).basis().to_vec()),
        )
        .dim();
        if spanned != dims[d] || listed[d] != dims[d] {
            return Err(PerverseError::PrimitiveDeficit {
                degree: d,
                expected: dims[d],
                spanned,
                listed: listed[d],
            });
        }
    }
    Ok(PrimitivePieces {
        n,
        primitives,
        generated,
    })
}

/// Both filtrations `W(η)` and `W(β)` of the cup-product operators.
pub fn weight_filtrations(
    alg: &GradedAlgebra,
    eta: &ClassVector,
    beta: &ClassVector,
) -> Result<(Filtration<Rational>, Filtration<Rational>), PerverseError> {
    let n = alg.n();
    Ok((
        weight_filtration(&GradedOperator::left_mult(alg, eta), n)?,
        weight_filtration(&GradedOperator::left_mult(alg, beta), n)?,
    ))
}

/// Piece `(i, j) = W_{n-i}(η) ∩ W_{n-j}(β) ∩ A^{i+j}` from the weight
/// filtrations of cup product with `η` and `β`.
pub fn weight_bigrading(
    alg: &GradedAlgebra,
    eta: &ClassVector,
    beta: &ClassVector,
) -> Result<Bigrading<Rational>, PerverseError> {
    check_pair(alg, eta, beta)?;
    let n = alg.n();
    let (w_eta, w_beta) = weight_filtrations(alg, eta, beta)?;
    let dims = alg.graded_dims().to_vec();
    let mut pieces = BTreeMap::new();
    for i in 0..=2 * n {
        for j in 0..=2 * n {
            let d = i + j;
            if dims[d] == 0 {
                continue;
            }
            let a = w_eta.in_degree(n as i32 - i as i32, d);
            let b = w_beta.in_degree(n as i32 - j as i32, d);
            let piece = a.intersect(&b).expect("same degree");
            if !piece.is_zero() {
                pieces.insert((i, j), piece);
            }
        }
    }
    Ok(Bigrading::new(n, dims, pieces))
}

/// The perverse bigrading of `(η, β)`, computed by primitive reconstruction
/// and by intersecting weight filtrations; the two must agree piece by piece.
pub fn perverse_bigrading(
    alg: &GradedAlgebra,
    eta: &ClassVector,
    beta: &ClassVector,
) -> Result<Bigrading<Rational>, PerverseError> {
    let primitive = primitive_pieces(alg, eta, beta)?.generated;
    let weights = weight_bigrading(alg, eta, beta)?;
    let m = 2 * alg.n();
    for i in 0..=m {
        for j in 0..=m {
            if primitive.piece(i, j) != weights.piece(i, j) {
                return Err(PerverseError::RouteDisagreement { i, j });
            }
        }
    }
    Ok(primitive)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_sym_model, BBSpace};
    use crate::perverse::{default_pair, isotropic_relative_ample, perverse_numbers};

    fn table(bb: BBSpace) -> Vec<Vec<u64>> {
        let m = build_sym_model(&bb).unwrap();
        let (eta_prime, beta) = default_pair(&bb).unwrap();
        let eta = isotropic_relative_ample(&bb, &eta_prime, &beta).unwrap();
        let bg = perverse_bigrading(&m, &m.class(&eta), &m.class(&beta)).unwrap();
        perverse_numbers(&bg).unwrap().entries
    }

    #[test]
    fn k3_table() {
        assert_eq!(
            table(BBSpace::k3()),
            vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]
        );
    }

    #[test]
    fn toy_surface_table() {
        assert_eq!(
            table(BBSpace::toy_b3()),
            vec![vec![1, 0, 1], vec![0, 1, 0], vec![1, 0, 1]]
        );
    }

    #[test]
    fn k3_hilb2_table() {
        let t = table(BBSpace::k3_hilb2());
        assert_eq!(t[0], vec![1, 0, 1, 0, 1]);
        assert_eq!(t[1], vec![0, 21, 0, 21, 0]);
        assert_eq!(t[2], vec![1, 0, 232, 0, 1]);
    }

    #[test]
    fn non_isotropic_class_is_rejected() {
        let bb = BBSpace::k3();
        let m = build_sym_model(&bb).unwrap();
        let (_, beta) = default_pair(&bb).unwrap();
        let mut bad = vec![Rational::zero(); 22];
        bad[2] = Rational::one();
        assert!(matches!(
            perverse_bigrading(&m, &m.class(&bad), &m.class(&beta)),
            Err(PerverseError::Precondition(_))
        ));
    }
}
