use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::sym::SymModel;
use super::AlgebraError;
use crate::linalg::{Rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub samples: usize,
    /// Indices of the samples that failed.
    pub failures: Vec<usize>,
}

impl SampleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `∫ α^{2n} = c · q(α)^n` on seeded integer classes with entries in `-3..=3`.
pub fn check_fujiki(
    model: &SymModel,
    count: usize,
    seed: u64,
) -> Result<SampleReport, AlgebraError> {
    let bb = model.bb();
    let n = bb.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for idx in 0..count {
        let a: Vec<Rational> = (0..bb.b2())
            .map(|_| Rational::from(rng.gen_range(-3i64..=3)))
            .collect();
        let lhs = model.integrate(&model.power(&model.class(&a), 2 * n)?)?;
        let q = bb.q(&a);
        let rhs = (0..n).fold(bb.fujiki().clone(), |acc, _| acc * &q);
        if lhs != rhs {
            failures.push(idx);
        }
    }
    Ok(SampleReport {
        samples: count,
        failures,
    })
}

/// `w^{n+1} = 0` for isotropic `w`, on line-trick samples.
pub fn check_bogomolov(
    model: &SymModel,
    count: usize,
    seed: u64,
) -> Result<SampleReport, AlgebraError> {
    let n = model.bb().n();
    let mut failures = Vec::new();
    for (idx, w) in model.isotropic_samples(count, seed).iter().enumerate() {
        if !model.bb().q(w).is_zero() || !model.power(&model.class(w), n + 1)?.is_zero() {
            failures.push(idx);
        }
    }
    Ok(SampleReport {
        samples: count,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_sym_model, BBSpace};

    #[test]
    fn builtin_models_pass() {
        for bb in [BBSpace::k3(), BBSpace::toy_b3()] {
            let m = build_sym_model(&bb).unwrap();
            assert!(check_fujiki(&m, 20, 1).unwrap().passed());
            assert!(check_bogomolov(&m, 10, 1).unwrap().passed());
        }
    }
}
