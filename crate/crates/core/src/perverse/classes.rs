use super::PerverseError;
use crate::algebra::BBSpace;
use crate::linalg::{Rational, Scalar};

/// `η = η' + λβ` with `λ = -q(η')/(2(η',β))`, the unique isotropic class on
/// the line through `η'` in direction `β`.
pub fn isotropic_relative_ample(
    bb: &BBSpace,
    eta_prime: &[Rational],
    beta: &[Rational],
) -> Result<Vec<Rational>, PerverseError> {
    if !bb.q(beta).is_zero() {
        return Err(PerverseError::Precondition("q(β) must be 0".into()));
    }
    let eb = bb.pair(eta_prime, beta);
    if eb.is_zero() {
        return Err(PerverseError::Precondition(
            "(η', β) = 0, so no multiple of β makes η' isotropic".into(),
        ));
    }
    let lambda = -(bb.q(eta_prime) / (Rational::from(2) * eb));
    Ok(eta_prime
        .iter()
        .zip(beta)
        .map(|(a, b)| a + &(&lambda * b))
        .collect())
}

/// Default `(η', β)`: `β` is the first isotropic generator of the first
/// hyperbolic plane (or a searched isotropic vector), and `η'` is the sum of
/// the other basis vectors.
pub fn default_pair(bb: &BBSpace) -> Option<(Vec<Rational>, Vec<Rational>)> {
    let b2 = bb.b2();
    let beta = match bb.hyperbolic_planes().first() {
        Some(&(a, _)) => bb.basis_vector(a),
        None => bb.find_isotropic()?,
    };
    let mut eta_prime: Vec<Rational> = (0..b2).map(|_| Rational::from(1)).collect();
    if let Some(a) = beta.iter().position(|x| !x.is_zero()) {
        if beta.iter().filter(|x| !x.is_zero()).count() == 1 {
            eta_prime[a] = Rational::from(0);
        }
    }
    if bb.pair(&eta_prime, &beta).is_zero() {
        eta_prime = (0..b2)
            .map(|i| bb.basis_vector(i))
            .find(|e| !bb.pair(e, &beta).is_zero())?;
    }
    Some((eta_prime, beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn plane() -> BBSpace {
        BBSpace::new(Matrix::from_i64(2, 2, &[0, 1, 1, 0]), Rational::from(1), 1).unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn hyperbolic_plane_example() {
        // q(e+f) = 2 and (e+f, f) = 1 give λ = -1.
        assert_eq!(
            isotropic_relative_ample(&plane(), &v(&[1, 1]), &v(&[0, 1])).unwrap(),
            v(&[1, 0])
        );
    }

    #[test]
    fn isotropic_input_is_kept() {
        assert_eq!(
            isotropic_relative_ample(&plane(), &v(&[1, 0]), &v(&[0, 1])).unwrap(),
            v(&[1, 0])
        );
    }

    #[test]
    fn lambda_is_minus_two_when_q_is_four() {
        let bb = BBSpace::toy_b3();
        // q(2e + f) = 4 and (2e + f, e) = 1.
        let eta = isotropic_relative_ample(&bb, &v(&[2, 1, 0]), &v(&[1, 0, 0])).unwrap();
        assert_eq!(eta, v(&[0, 1, 0]));
    }

    #[test]
    fn orthogonal_pair_is_rejected() {
        assert!(isotropic_relative_ample(&plane(), &v(&[1, 0]), &v(&[1, 0])).is_err());
    }

    #[test]
    fn default_pair_is_usable() {
        for bb in [BBSpace::k3(), BBSpace::k3_hilb2(), BBSpace::toy_b3()] {
            let (eta_prime, beta) = default_pair(&bb).unwrap();
            let eta = isotropic_relative_ample(&bb, &eta_prime, &beta).unwrap();
            assert!(bb.q(&eta).is_zero());
            assert!(!bb.pair(&eta, &beta).is_zero());
        }
    }
}
