use std::fmt;

use serde::Serialize;

/// Integer Laurent polynomial in `y` supported on `[-half, half]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LaurentPoly {
    half: usize,
    coeffs: Vec<i64>,
}

impl LaurentPoly {
    pub fn zero(half: usize) -> Self {
        LaurentPoly {
            half,
            coeffs: vec![0; 2 * half + 1],
        }
    }

    /// `coeffs[k]` is the coefficient of `y^{k - half}`.
    pub fn new(coeffs: Vec<i64>) -> Self {
        assert!(coeffs.len() % 2 == 1, "support must be symmetric");
        LaurentPoly {
            half: coeffs.len() / 2,
            coeffs,
        }
    }

    pub fn half(&self) -> usize {
        self.half
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> i64 {
        let idx = k + self.half as i64;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            0
        } else {
            self.coeffs[idx as usize]
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    fn widen(&self, half: usize) -> Self {
        let mut out = LaurentPoly::zero(half.max(self.half));
        let shift = out.half - self.half;
        out.coeffs[shift..shift + self.coeffs.len()].copy_from_slice(&self.coeffs);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.widen(other.half);
        let shift = out.half - other.half;
        for (o, c) in out.coeffs[shift..].iter_mut().zip(&other.coeffs) {
            *o += c;
        }
        out
    }

    pub fn scale(&self, s: i64) -> Self {
        LaurentPoly {
            half: self.half,
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = LaurentPoly::zero(self.half + other.half);
        for (a, x) in self.coeffs.iter().enumerate() {
            for (b, y) in other.coeffs.iter().enumerate() {
                out.coeffs[a + b] += x * y;
            }
        }
        out
    }

    pub fn pow(&self, g: usize) -> Self {
        (0..g).fold(LaurentPoly::new(vec![1]), |acc, _| acc.mul(self))
    }

    /// `(y^{1/2} + y^{-1/2})^{2g} = (y + 2 + y^{-1})^g`.
    pub fn genus_basis(g: usize) -> Self {
        LaurentPoly::new(vec![1, 2, 1]).pow(g)
    }

    /// `(-1)^g (y^{1/2} - y^{-1/2})^{2g} = (-y + 2 - y^{-1})^g`.
    pub fn signed_genus_basis(g: usize) -> Self {
        LaurentPoly::new(vec![-1, 2, -1]).pow(g)
    }

    /// Coefficients `n_g` with `self = Σ_g n_g basis(g)`, peeled from the top
    /// power down. `None` if a remainder is left.
    pub fn peel(&self, basis: impl Fn(usize) -> LaurentPoly) -> Option<Vec<i64>> {
        let mut rest = self.clone();
        let mut out = vec![0; self.half + 1];
        for g in (0..=self.half).rev() {
            let b = basis(g);
            let lead = b.coeff(g as i64);
            let top = rest.coeff(g as i64);
            if top % lead != 0 {
                return None;
            }
            out[g] = top / lead;
            rest = rest.sub(&b.scale(out[g]));
        }
        rest.is_zero().then_some(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (idx, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let k = idx as i64 - self.half as i64;
            terms.push(match k {
                0 => format!("{c}"),
                1 => format!("{c}y"),
                _ => format!("{c}y^{k}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_expansions() {
        assert_eq!(LaurentPoly::genus_basis(2).coeffs(), &[1, 4, 6, 4, 1]);
        assert_eq!(
            LaurentPoly::signed_genus_basis(2).coeffs(),
            &[1, -4, 6, -4, 1]
        );
    }

    #[test]
    fn peel_round_trips() {
        let phi = LaurentPoly::new(vec![3, -42, 234, -42, 3]);
        let n = phi.peel(LaurentPoly::genus_basis).unwrap();
        assert_eq!(n, vec![324, -54, 3]);
        let back = n
            .iter()
            .enumerate()
            .fold(LaurentPoly::zero(2), |acc, (g, &c)| {
                acc.add(&LaurentPoly::genus_basis(g).scale(c))
            });
        assert_eq!(back, phi);
    }

    #[test]
    fn lopsided_poly_does_not_peel() {
        assert!(LaurentPoly::new(vec![1, 0, 0])
            .peel(LaurentPoly::genus_basis)
            .is_none());
    }
}
