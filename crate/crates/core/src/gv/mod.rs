//! Refined Gopakumar–Vafa invariants of K3 from perverse (or Hodge) numbers
//! of Hilbert schemes, with the Göttsche and Katz–Klemm–Vafa product series
//! as independent sources.
//!
//! For a class `β` with `β² = 2h - 2` on K3, the invariants are read off
//!
//! ```text
//! Σ_i χ_i y^{i-h} = Σ_g n_g (y^{1/2} + y^{-1/2})^{2g},   χ_i = Σ_j (-1)^{j-h} ph^{i,j}
//! ```
//!
//! on the Hilbert scheme of `h` points. The KKV side expands
//!
//! ```text
//! Σ_h Σ_g n_{g,h} (-1)^g (y^{1/2} - y^{-1/2})^{2g} q^h
//!     = Π_{m≥1} (1 - q^m)^{-20} (1 - y q^m)^{-2} (1 - y^{-1} q^m)^{-2}.
//! ```

mod laurent;

pub use laurent::LaurentPoly;

use serde::Serialize;

use crate::perverse::{HodgeDiamond, PerverseTable};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GvError {
    #[error("Φ(y) = {0} is not palindromic")]
    NotPalindromic(String),
    #[error("Φ(y) = {0} leaves a remainder in the genus basis")]
    PeelRemainder(String),
    #[error("invalid curve class: {0}")]
    InvalidClass(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GVTable {
    /// `β² = 2h - 2`.
    pub h: usize,
    /// `n_{g,h}` for `0 ≤ g ≤ h`.
    pub n: Vec<i64>,
}

/// `C(e + r - 1, r)`, the coefficient of `m^r` in `(1 - m)^{-e}`.
fn inverse_power_coeff(e: u64, r: u64) -> u128 {
    if r == 0 {
        return 1;
    }
    let mut c: u128 = 1;
    for k in 0..r {
        c = c * u128::from(e + k) / u128::from(k + 1);
    }
    c
}

/// Hodge numbers of `S^[n]` for a K3 surface `S`, from Göttsche's formula
///
/// ```text
/// Σ_n h(S^[n]; x, y) t^n = Π_{k≥1} Π_{p,q} (1 - x^{p+k-1} y^{q+k-1} t^k)^{-h^{p,q}(S)}
/// ```
///
/// (all K3 classes have even total degree, so no signs appear).
pub fn goettsche_hodge(n: usize) -> HodgeDiamond {
    assert!(n >= 1, "need at least one point");
    let k3 = [[1u64, 0, 1], [0, 20, 0], [1, 0, 1]];
    let m = 2 * n;
    // series[t][p][q], truncated at t = n and p, q = 2n.
    let mut series = vec![vec![vec![0u128; m + 1]; m + 1]; n + 1];
    series[0][0][0] = 1;
    for k in 1..=n {
        for (p, row) in k3.iter().enumerate() {
            for (q, &h) in row.iter().enumerate() {
                if h == 0 {
                    continue;
                }
                let (a, b) = (p + k - 1, q + k - 1);
                let mut next = vec![vec![vec![0u128; m + 1]; m + 1]; n + 1];
                for (t, plane) in series.iter().enumerate() {
                    for (x, line) in plane.iter().enumerate() {
                        for (y, &c) in line.iter().enumerate() {
                            if c == 0 {
                                continue;
                            }
                            let mut r = 0;
                            while t + r * k <= n && x + r * a <= m && y + r * b <= m {
                                next[t + r * k][x + r * a][y + r * b] +=
                                    c * inverse_power_coeff(h, r as u64);
                                r += 1;
                            }
                        }
                    }
                }
                series = next;
            }
        }
    }
    let entries = series[n]
        .iter()
        .map(|row| row.iter().map(|&c| c as u64).collect())
        .collect();
    HodgeDiamond::new(n, entries).expect("Göttsche series yields a symmetric diamond")
}

/// `Φ(y) = Σ_i χ_i y^{i-n}` with `χ_i = Σ_j (-1)^{j-n} ph^{i,j}`.
pub fn chi_polynomial(table: &PerverseTable) -> LaurentPoly {
    let n = table.n;
    let coeffs = table
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(j, &x)| {
                    if (j + n).is_multiple_of(2) {
                        x as i64
                    } else {
                        -(x as i64)
                    }
                })
                .sum()
        })
        .collect();
    LaurentPoly::new(coeffs)
}

/// `n_g` for `0 ≤ g ≤ n` from a table of half-dimension `n`.
pub fn refined_gv(table: &PerverseTable) -> Result<GVTable, GvError> {
    let phi = chi_polynomial(table);
    if !phi.is_palindromic() {
        return Err(GvError::NotPalindromic(phi.to_string()));
    }
    let n = phi
        .peel(LaurentPoly::genus_basis)
        .ok_or_else(|| GvError::PeelRemainder(phi.to_string()))?;
    Ok(GVTable { h: table.n, n })
}

/// The q-expansion of the KKV product, `coefficients[h]` of `q^h`.
pub fn kkv_series(h_max: usize) -> Vec<LaurentPoly> {
    let width = 2 * h_max + 1;
    let mut series = vec![vec![0i128; width]; h_max + 1];
    series[0][h_max] = 1;
    for m in 1..=h_max {
        for (y_exp, e) in [(0i64, 20u64), (1, 2), (-1, 2)] {
            let mut next = vec![vec![0i128; width]; h_max + 1];
            for (t, line) in series.iter().enumerate() {
                for (y, &c) in line.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    let mut r = 0;
                    while t + r * m <= h_max {
                        let yy = y as i64 + r as i64 * y_exp;
                        if (0..width as i64).contains(&yy) {
                            next[t + r * m][yy as usize] +=
                                c * inverse_power_coeff(e, r as u64) as i128;
                        }
                        r += 1;
                    }
                }
            }
            series = next;
        }
    }
    series
        .into_iter()
        .enumerate()
        .map(|(h, line)| {
            LaurentPoly::new(
                line[h_max - h..=h_max + h]
                    .iter()
                    .map(|&c| c as i64)
                    .collect(),
            )
        })
        .collect()
}

/// `n_{g,h}` for `0 ≤ h ≤ h_max`, decomposing each `q^h` coefficient in the
/// signed genus basis.
pub fn kkv_oracle(h_max: usize) -> Vec<GVTable> {
    kkv_series(h_max)
        .into_iter()
        .enumerate()
        .map(|(h, coeff)| {
            let n = coeff
                .peel(LaurentPoly::signed_genus_basis)
                .expect("KKV coefficients are palindromic");
            GVTable { h, n }
        })
        .collect()
}

/// `h = β²/2 + 1` for a curve class of square `β²`.
pub fn class_index(beta_square: i64) -> Result<usize, GvError> {
    if beta_square < -2 || beta_square % 2 != 0 {
        return Err(GvError::InvalidClass(format!(
            "β² = {beta_square} must be even and at least -2"
        )));
    }
    Ok((beta_square / 2 + 1) as usize)
}

/// Refined invariants of a class, which depend on `β²` alone.
pub fn gv_for_class(beta_square: i64) -> Result<GVTable, GvError> {
    let h = class_index(beta_square)?;
    if h == 0 {
        return Ok(GVTable { h, n: vec![1] });
    }
    refined_gv(&diamond_as_table(&goettsche_hodge(h)))
}

/// Reads a Hodge diamond as a table of the same shape.
pub fn diamond_as_table(hd: &HodgeDiamond) -> PerverseTable {
    PerverseTable {
        n: hd.n,
        entries: hd.entries.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goettsche_k3() {
        assert_eq!(
            goettsche_hodge(1).entries,
            vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]
        );
    }

    #[test]
    fn goettsche_k3_hilb2() {
        let hd = goettsche_hodge(2);
        assert_eq!(
            (hd.get(1, 1), hd.get(2, 2), hd.get(3, 1), hd.get(2, 0)),
            (21, 232, 21, 1)
        );
        assert_eq!(hd.betti(), vec![1, 0, 23, 0, 276, 0, 23, 0, 1]);
        assert_eq!(hd.betti().iter().sum::<u64>(), 324);
    }

    #[test]
    fn refined_gv_from_diamonds() {
        assert_eq!(
            refined_gv(&diamond_as_table(&goettsche_hodge(1)))
                .unwrap()
                .n,
            vec![24, -2]
        );
        assert_eq!(
            refined_gv(&diamond_as_table(&goettsche_hodge(2)))
                .unwrap()
                .n,
            vec![324, -54, 3]
        );
    }

    #[test]
    fn point_like_middle() {
        let mut entries = vec![vec![0; 5]; 5];
        entries[2][2] = 1;
        let t = PerverseTable::new(2, entries).unwrap();
        assert_eq!(refined_gv(&t).unwrap().n, vec![1, 0, 0]);
    }

    #[test]
    fn asymmetric_table_is_rejected() {
        let t = PerverseTable::new(1, vec![vec![1, 0, 0], vec![0, 0, 0], vec![0, 0, 0]]).unwrap();
        assert!(matches!(refined_gv(&t), Err(GvError::NotPalindromic(_))));
    }

    #[test]
    fn kkv_low_orders() {
        let s = kkv_series(2);
        assert_eq!(s[1].coeffs(), &[2, 20, 2]);
        assert_eq!(s[2].coeffs(), &[3, 42, 234, 42, 3]);
        let o = kkv_oracle(2);
        assert_eq!(o[0].n, vec![1]);
        assert_eq!(o[1].n, vec![24, -2]);
        assert_eq!(o[2].n, vec![324, -54, 3]);
    }

    #[test]
    fn goettsche_matches_kkv_up_to_five() {
        let oracle = kkv_oracle(5);
        for h in 1..=5 {
            let t = diamond_as_table(&goettsche_hodge(h));
            assert_eq!(refined_gv(&t).unwrap(), oracle[h], "h = {h}");
        }
    }

    #[test]
    fn class_index_rules() {
        assert_eq!(class_index(-2).unwrap(), 0);
        assert_eq!(class_index(2).unwrap(), 2);
        assert!(class_index(3).is_err());
        assert!(class_index(-4).is_err());
        assert_eq!(gv_for_class(-2).unwrap().n, vec![1]);
    }
}
