use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::operator::GradedOperator;
use super::sl2::{lefschetz_triple, Sl2Triple};
use super::LefschetzError;
use crate::algebra::{BBSpace, ClassVector, GradedAlgebra};
use crate::linalg::{GaussianRational, Matrix, Rational, Scalar, Subspace};
use crate::perverse::Bigrading;

type G = GaussianRational;

/// A triple of pairwise orthogonal degree-2 classes with equal nonzero
/// square, over `Q(i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DCirclePoint {
    pub x: ClassVector<G>,
    pub y: ClassVector<G>,
    pub z: ClassVector<G>,
    q: G,
}

impl DCirclePoint {
    pub fn new(bb: &BBSpace, x: Vec<G>, y: Vec<G>, z: Vec<G>) -> Result<Self, LefschetzError> {
        for (name, v) in [("x", &x), ("y", &y), ("z", &z)] {
            if v.len() != bb.b2() {
                return Err(LefschetzError::NotInDCircle(format!(
                    "{name} has {} coordinates, expected {}",
                    v.len(),
                    bb.b2()
                )));
            }
        }
        let q = bb.q(&x);
        if q.is_zero() {
            return Err(LefschetzError::NotInDCircle("q(x) = 0".into()));
        }
        if bb.q(&y) != q || bb.q(&z) != q {
            return Err(LefschetzError::NotInDCircle(
                "q(x), q(y), q(z) differ".into(),
            ));
        }
        for (name, a, b) in [("(x,y)", &x, &y), ("(y,z)", &y, &z), ("(z,x)", &z, &x)] {
            if !bb.pair(a, b).is_zero() {
                return Err(LefschetzError::NotInDCircle(format!("{name} ≠ 0")));
            }
        }
        Ok(DCirclePoint {
            x: ClassVector::new(2, x),
            y: ClassVector::new(2, y),
            z: ClassVector::new(2, z),
            q,
        })
    }

    /// The common value `q(x) = q(y) = q(z)`.
    pub fn q(&self) -> &G {
        &self.q
    }

    pub fn classes(&self) -> [&ClassVector<G>; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn triples(&self, alg: &GradedAlgebra) -> Result<[Sl2Triple<G>; 3], LefschetzError> {
        Ok([
            lefschetz_triple(alg, &self.x)?,
            lefschetz_triple(alg, &self.y)?,
            lefschetz_triple(alg, &self.z)?,
        ])
    }
}

/// Dimension of the span of the directions `x, y, z` of all points.
pub fn direction_span(points: &[DCirclePoint]) -> usize {
    let Some(p) = points.first() else { return 0 };
    let b2 = p.x.coords.len();
    Subspace::span(
        b2,
        points
            .iter()
            .flat_map(|p| p.classes().map(|c| c.coords.clone())),
    )
    .dim()
}

fn gaussian(v: &[Rational]) -> Vec<G> {
    v.iter().cloned().map(G::real).collect()
}

/// `s` with `s² = ratio`, in `Q` or `i·Q`.
fn gaussian_sqrt(ratio: &Rational) -> Option<G> {
    if ratio.is_negative() {
        let r = ratio.abs().sqrt_exact()?;
        Some(G::new(Rational::from(0), r))
    } else {
        ratio.sqrt_exact().map(G::real)
    }
}

/// Deterministic sample of `count` points of D°.
///
/// With three hyperbolic planes the first point is `(e₁+f₁, e₂+f₂, e₃+f₃)`.
/// Further points come from a seeded search over integer vectors of support
/// at most two: `x` is taken as is, and `y`, `z` are orthogonal candidates
/// rescaled by a square root in `Q(i)` to match `q(x)`.
pub fn sample_d_circle(
    bb: &BBSpace,
    count: usize,
    seed: u64,
) -> Result<Vec<DCirclePoint>, LefschetzError> {
    let b2 = bb.b2();
    let mut points: Vec<DCirclePoint> = Vec::new();
    let planes = bb.hyperbolic_planes();
    if planes.len() >= 3 && count > 0 {
        let dirs: Vec<Vec<G>> = planes[..3]
            .iter()
            .map(|&(a, b)| {
                let mut v = bb.basis_vector(a);
                v[b] = Rational::from(1);
                gaussian(&v)
            })
            .collect();
        points.push(DCirclePoint::new(
            bb,
            dirs[0].clone(),
            dirs[1].clone(),
            dirs[2].clone(),
        )?);
    }

    let mut candidates: Vec<Vec<Rational>> = (0..b2).map(|i| bb.basis_vector(i)).collect();
    for i in 0..b2 {
        for j in i + 1..b2 {
            for t in [1, -1, 2, -2] {
                let mut v = bb.basis_vector(i);
                v[j] = Rational::from(t);
                candidates.push(v);
            }
        }
    }
    candidates.retain(|v| !bb.q(v).is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    candidates.shuffle(&mut rng);

    let complete =
        |c: &Rational, chosen: &[&Vec<Rational>], start: usize| -> Option<(usize, Vec<G>)> {
            (0..candidates.len())
                .map(|k| (start + k) % candidates.len())
                .find_map(|k| {
                    let v = &candidates[k];
                    if chosen.iter().any(|u| !bb.pair(u.as_slice(), v).is_zero()) {
                        return None;
                    }
                    let s = gaussian_sqrt(&(c / &bb.q(v)))?;
                    Some((k, gaussian(v).iter().map(|x| x.mul_ref(&s)).collect()))
                })
        };

    for (xi, x) in candidates.iter().enumerate() {
        if points.len() >= count {
            break;
        }
        let c = bb.q(x);
        let Some((yi, y)) = complete(&c, &[x], xi + 1) else {
            continue;
        };
        let Some((_, z)) = complete(&c, &[x, &candidates[yi]], yi + 1) else {
            continue;
        };
        let p = DCirclePoint::new(bb, gaussian(x), y, z)?;
        if !points.contains(&p) {
            points.push(p);
        }
    }
    if points.len() < count {
        return Err(LefschetzError::SearchFailed {
            found: points.len(),
            requested: count,
        });
    }
    Ok(points)
}

/// The shortest prefix of the sample, with at least `min_count` points,
/// whose directions span `H²`.
pub fn sample_d_circle_spanning(
    bb: &BBSpace,
    min_count: usize,
    seed: u64,
) -> Result<Vec<DCirclePoint>, LefschetzError> {
    let mut count = min_count.max(1);
    loop {
        let points = sample_d_circle(bb, count, seed)?;
        if direction_span(&points) == bb.b2() {
            return Ok(points);
        }
        count += 1;
    }
}

/// Simultaneous eigenspaces of `H` and `H' = -i[L_y, Λ_z]`; the piece
/// `(i, j)` is where `H = i+j-2n` and `H' = i-j`.
pub fn cartan_bigrading(
    alg: &GradedAlgebra,
    p: &DCirclePoint,
) -> Result<Bigrading<G>, LefschetzError> {
    let ty = lefschetz_triple(alg, &p.y)?;
    let tz = lefschetz_triple(alg, &p.z)?;
    let h_prime: GradedOperator<G> = ty.e.bracket(&tz.f).scale(&G::i().neg_ref());
    let n = alg.n();
    let dims = alg.graded_dims().to_vec();
    let mut pieces = BTreeMap::new();
    for d in 0..dims.len() {
        if dims[d] == 0 {
            continue;
        }
        let block = h_prime.block(d);
        let mut found = 0;
        for i in d.saturating_sub(2 * n)..=d.min(2 * n) {
            let j = d - i;
            let lambda = G::from_i64(i as i64 - j as i64);
            let shifted = block.sub(&Matrix::identity(dims[d]).scale(&lambda));
            let eigen = crate::linalg::kernel(&shifted);
            found += eigen.dim();
            if !eigen.is_zero() {
                pieces.insert((i, j), eigen);
            }
        }
        if found != dims[d] {
            return Err(LefschetzError::NonIntegerEigenvalue { degree: d });
        }
    }
    Ok(Bigrading::new(n, dims, pieces))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::build_sym_model;

    fn g(xs: &[i64]) -> Vec<G> {
        xs.iter().map(|&x| G::from_i64(x)).collect()
    }

    #[test]
    fn constructor_checks_orthogonality() {
        let bb = BBSpace::new(Matrix::identity(3), Rational::one(), 1).unwrap();
        assert!(DCirclePoint::new(&bb, g(&[1, 0, 0]), g(&[0, 1, 0]), g(&[0, 0, 1])).is_ok());
        assert!(matches!(
            DCirclePoint::new(&bb, g(&[1, 0, 0]), g(&[1, 1, 0]), g(&[0, 0, 1])),
            Err(LefschetzError::NotInDCircle(_))
        ));
        assert!(matches!(
            DCirclePoint::new(&bb, g(&[1, 0, 0]), g(&[0, 2, 0]), g(&[0, 0, 1])),
            Err(LefschetzError::NotInDCircle(_))
        ));
    }

    #[test]
    fn samples_are_seeded_and_valid() {
        let bb = BBSpace::k3();
        let a = sample_d_circle(&bb, 4, 5).unwrap();
        let b = sample_d_circle(&bb, 4, 5).unwrap();
        assert_eq!(a, b);
        for p in &a {
            DCirclePoint::new(
                &bb,
                p.x.coords.clone(),
                p.y.coords.clone(),
                p.z.coords.clone(),
            )
            .unwrap();
        }
        assert_eq!(
            direction_span(&sample_d_circle_spanning(&bb, 5, 0).unwrap()),
            22
        );
    }

    #[test]
    fn k3_cartan_table() {
        let bb = BBSpace::k3();
        let m = build_sym_model(&bb).unwrap();
        for p in sample_d_circle(&bb, 3, 0).unwrap() {
            assert_eq!(
                cartan_bigrading(&m, &p).unwrap().dim_table(),
                vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]
            );
        }
    }
}
