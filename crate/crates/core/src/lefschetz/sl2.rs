use super::operator::GradedOperator;
use super::LefschetzError;
use crate::algebra::{ClassVector, GradedAlgebra};
use crate::linalg::{Matrix, Scalar};

/// `(E, H, F)` with `[H,E] = 2E`, `[H,F] = -2F`, `[E,F] = H`.
#[derive(Debug, Clone, PartialEq)]
pub struct Sl2Triple<S> {
    pub e: GradedOperator<S>,
    pub h: GradedOperator<S>,
    pub f: GradedOperator<S>,
}

impl<S: Scalar> Sl2Triple<S> {
    /// Names the first failing bracket identity, if any.
    pub fn check(&self) -> Result<(), LefschetzError> {
        let two = S::from_i64(2);
        if self.h.bracket(&self.e) != self.e.scale(&two) {
            return Err(LefschetzError::Sl2Identity("[H,E] = 2E"));
        }
        if self.h.bracket(&self.f) != self.f.scale(&two.neg_ref()) {
            return Err(LefschetzError::Sl2Identity("[H,F] = -2F"));
        }
        if self.e.bracket(&self.f) != self.h {
            return Err(LefschetzError::Sl2Identity("[E,F] = H"));
        }
        Ok(())
    }

    pub fn operators(&self) -> [&GradedOperator<S>; 3] {
        [&self.e, &self.h, &self.f]
    }
}

/// Whether `ω^k : A^{2n-k} → A^{2n+k}` is an isomorphism for `1 ≤ k ≤ 2n`.
pub fn is_lefschetz_type<S: Scalar>(alg: &GradedAlgebra, omega: &ClassVector<S>) -> bool {
    if omega.degree != 2 || omega.coords.len() != alg.dim(2) {
        return false;
    }
    let mid = 2 * alg.n();
    let mut power = alg.unit().map(S::from_rational);
    for k in 1..=mid {
        power = match alg.multiply(&power, omega) {
            Ok(p) => p,
            Err(_) => return false,
        };
        let (src, dst) = (mid - k, mid + k);
        if alg.dim(src) != alg.dim(dst) {
            return false;
        }
        if alg.dim(src) > 0 && alg.left_mult_matrix(&power, src).rank() < alg.dim(src) {
            return false;
        }
    }
    true
}

/// The Lefschetz triple of `ω`, with `F` built from the primitive
/// decomposition: `F(E^a p) = a(k-a+1) E^{a-1} p` for `p ∈ ker E^{k+1}` in
/// degree `2n-k`.
pub fn lefschetz_triple<S: Scalar>(
    alg: &GradedAlgebra,
    omega: &ClassVector<S>,
) -> Result<Sl2Triple<S>, LefschetzError> {
    if !is_lefschetz_type(alg, omega) {
        return Err(LefschetzError::NotLefschetz);
    }
    let dims = alg.graded_dims();
    let top = alg.top_degree();
    let mid = 2 * alg.n();
    let e = GradedOperator::left_mult(alg, omega);
    let h = GradedOperator::degree_operator(dims, |d| S::from_i64(d as i64 - mid as i64));

    // For each degree: vectors E^a p and their prescribed F-images.
    let mut sources: Vec<Vec<Vec<S>>> = vec![Vec::new(); top + 1];
    let mut images: Vec<Vec<Vec<S>>> = vec![Vec::new(); top + 1];
    let mut power = alg.unit().map(S::from_rational);
    for k in 0..=mid {
        if 2 * (k + 1) <= top {
            power = alg.multiply(&power, omega)?;
        }
        let d = mid - k;
        if dims[d] == 0 {
            continue;
        }
        let primitives = if d + 2 * (k + 1) > top {
            crate::linalg::Subspace::whole(dims[d])
        } else {
            crate::linalg::kernel(&alg.left_mult_matrix(&power, d))
        };
        for p in primitives.basis() {
            let mut string = vec![p.clone()];
            for a in 1..=k {
                let prev = &string[a - 1];
                string.push(e.apply(d + 2 * (a - 1), prev));
            }
            for a in 0..=k {
                let coeff = S::from_i64((a * (k - a + 1)) as i64);
                let image = if a == 0 {
                    vec![S::zero(); if d >= 2 { dims[d - 2] } else { 0 }]
                } else {
                    string[a - 1].iter().map(|x| x.mul_ref(&coeff)).collect()
                };
                sources[d + 2 * a].push(string[a].clone());
                images[d + 2 * a].push(image);
            }
        }
    }

    let mut blocks = Vec::with_capacity(top + 1);
    for d in 0..=top {
        let rows = if d >= 2 { dims[d - 2] } else { 0 };
        if dims[d] == 0 {
            blocks.push(Matrix::zeros(rows, 0));
            continue;
        }
        if sources[d].len() != dims[d] {
            return Err(LefschetzError::NotLefschetz);
        }
        let v = Matrix::from_cols(dims[d], &sources[d]);
        let v_inv = v.inverse().ok_or(LefschetzError::NotLefschetz)?;
        let y = Matrix::from_cols(rows, &images[d]);
        blocks.push(y.mul(&v_inv));
    }
    let mut blocks = blocks.into_iter();
    let f = GradedOperator::from_fn(dims, -2, |_, _, _| {
        blocks.next().expect("one block per degree")
    });
    let triple = Sl2Triple { e, h, f };
    triple.check()?;
    Ok(triple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_sym_model, BBSpace};
    use crate::linalg::Rational;

    fn class(b2: usize, entries: &[(usize, i64)]) -> ClassVector {
        let mut v = vec![Rational::zero(); b2];
        for &(i, x) in entries {
            v[i] = Rational::from(x);
        }
        ClassVector::new(2, v)
    }

    #[test]
    fn positive_class_gives_a_triple() {
        for bb in [BBSpace::k3(), BBSpace::k3_hilb2()] {
            let m = build_sym_model(&bb).unwrap();
            let omega = class(bb.b2(), &[(0, 1), (1, 1)]);
            assert!(is_lefschetz_type(&m, &omega));
            let t = lefschetz_triple(&m, &omega).unwrap();
            t.check().unwrap();
            assert_eq!(t.h.shift(), 0);
            assert_eq!(t.f.shift(), -2);
        }
    }

    #[test]
    fn isotropic_class_is_not_lefschetz() {
        let bb = BBSpace::k3();
        let m = build_sym_model(&bb).unwrap();
        let beta = class(22, &[(0, 1)]);
        assert!(!is_lefschetz_type(&m, &beta));
        assert_eq!(
            lefschetz_triple(&m, &beta).unwrap_err(),
            LefschetzError::NotLefschetz
        );
    }

    #[test]
    fn negative_class_is_lefschetz_too() {
        // q(e - f) = -2 ≠ 0 suffices on the model algebra.
        let bb = BBSpace::k3();
        let m = build_sym_model(&bb).unwrap();
        assert!(is_lefschetz_type(&m, &class(22, &[(0, 1), (1, -1)])));
    }
}
