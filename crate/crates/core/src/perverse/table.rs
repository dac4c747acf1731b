use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::bigrading::Bigrading;
use super::PerverseError;
use crate::linalg::Scalar;

/// `(2n+1) × (2n+1)` table of nonnegative integers with `i` as rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerverseTable {
    pub n: usize,
    pub entries: Vec<Vec<u64>>,
}

fn check_shape(n: usize, entries: &[Vec<u64>]) -> Result<(), PerverseError> {
    let m = 2 * n + 1;
    if entries.len() != m || entries.iter().any(|r| r.len() != m) {
        return Err(PerverseError::TableInvariant(format!(
            "table must be {m}x{m}"
        )));
    }
    Ok(())
}

/// Anti-diagonal sums `b_k = Σ_{i+j=k} t[i][j]`.
fn betti_of(entries: &[Vec<u64>]) -> Vec<u64> {
    let m = entries.len();
    let mut b = vec![0; 2 * m - 1];
    for (i, row) in entries.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            b[i + j] += x;
        }
    }
    b
}

fn to_csv(entries: &[Vec<u64>]) -> String {
    let mut out = String::new();
    for row in entries {
        let line: Vec<String> = row.iter().map(u64::to_string).collect();
        writeln!(out, "{}", line.join(",")).expect("write to string");
    }
    out
}

impl PerverseTable {
    pub fn new(n: usize, entries: Vec<Vec<u64>>) -> Result<Self, PerverseError> {
        check_shape(n, &entries)?;
        Ok(PerverseTable { n, entries })
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn betti(&self) -> Vec<u64> {
        betti_of(&self.entries)
    }

    /// Entries breaking `ph^{i,j} = ph^{2n-i,j} = ph^{i,2n-j}`.
    pub fn symmetry_violations(&self) -> Vec<(usize, usize)> {
        let m = 2 * self.n;
        let mut out = Vec::new();
        for i in 0..=m {
            for j in 0..=m {
                let x = self.entries[i][j];
                if x != self.entries[m - i][j] || x != self.entries[i][m - j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetry_violations().is_empty()
    }

    /// `ph^{i,j} = ph^{j,i}`; holds for the sym models but not in general.
    pub fn is_transpose_symmetric(&self) -> bool {
        let m = 2 * self.n;
        (0..=m).all(|i| (0..=m).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn to_csv(&self) -> String {
        to_csv(&self.entries)
    }

    pub fn to_markdown(&self) -> String {
        markdown(&self.entries, "i \\ j")
    }
}

fn markdown(entries: &[Vec<u64>], corner: &str) -> String {
    let m = entries.len();
    let mut out = format!("| {corner} |");
    for j in 0..m {
        write!(out, " {j} |").expect("write to string");
    }
    out.push('\n');
    out.push_str(&"|---".repeat(m + 1));
    out.push_str("|\n");
    for (i, row) in entries.iter().enumerate() {
        write!(out, "| {i} |").expect("write to string");
        for x in row {
            write!(out, " {x} |").expect("write to string");
        }
        out.push('\n');
    }
    out
}

/// Dimensions of the pieces of a bigrading, with the table invariants
/// (sum rule against the graded dimensions and both reflection symmetries)
/// checked.
pub fn perverse_numbers<S: Scalar>(bg: &Bigrading<S>) -> Result<PerverseTable, PerverseError> {
    let entries: Vec<Vec<u64>> = bg
        .dim_table()
        .into_iter()
        .map(|row| row.into_iter().map(|x| x as u64).collect())
        .collect();
    let table = PerverseTable::new(bg.n(), entries)?;
    let dims: Vec<u64> = bg.graded_dims().iter().map(|&d| d as u64).collect();
    if table.betti() != dims {
        return Err(PerverseError::TableInvariant(format!(
            "anti-diagonal sums {:?} differ from graded dimensions {:?}",
            table.betti(),
            dims
        )));
    }
    if let Some(&(i, j)) = table.symmetry_violations().first() {
        return Err(PerverseError::TableInvariant(format!(
            "symmetry fails at ({i},{j})"
        )));
    }
    Ok(table)
}

/// Hodge numbers `h^{p,q}` of a `2n`-dimensional variety, `p` as rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    pub n: usize,
    pub entries: Vec<Vec<u64>>,
}

impl HodgeDiamond {
    /// Checks `h^{p,q} = h^{q,p} = h^{2n-p,2n-q}`.
    pub fn new(n: usize, entries: Vec<Vec<u64>>) -> Result<Self, PerverseError> {
        check_shape(n, &entries)?;
        let m = 2 * n;
        for p in 0..=m {
            for q in 0..=m {
                let x = entries[p][q];
                if x != entries[q][p] || x != entries[m - p][m - q] {
                    return Err(PerverseError::TableInvariant(format!(
                        "Hodge symmetry fails at ({p},{q})"
                    )));
                }
            }
        }
        Ok(HodgeDiamond { n, entries })
    }

    pub fn get(&self, p: usize, q: usize) -> u64 {
        self.entries[p][q]
    }

    pub fn betti(&self) -> Vec<u64> {
        betti_of(&self.entries)
    }

    pub fn to_csv(&self) -> String {
        to_csv(&self.entries)
    }

    pub fn to_markdown(&self) -> String {
        markdown(&self.entries, "p \\ q")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub i: usize,
    pub j: usize,
    pub perverse: u64,
    pub hodge: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HodgeComparison {
    pub pass: bool,
    pub mismatches: Vec<Mismatch>,
}

pub fn compare_hodge(
    pt: &PerverseTable,
    hd: &HodgeDiamond,
) -> Result<HodgeComparison, PerverseError> {
    if pt.n != hd.n {
        return Err(PerverseError::Precondition(format!(
            "table has n = {}, diamond has n = {}",
            pt.n, hd.n
        )));
    }
    let m = 2 * pt.n;
    let mut mismatches = Vec::new();
    for i in 0..=m {
        for j in 0..=m {
            let (perverse, hodge) = (pt.get(i, j), hd.get(i, j));
            if perverse != hodge {
                mismatches.push(Mismatch {
                    i,
                    j,
                    perverse,
                    hodge,
                });
            }
        }
    }
    Ok(HodgeComparison {
        pass: mismatches.is_empty(),
        mismatches,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PatternReport {
    pub pass: bool,
    /// Cells of row 0 or column 0 off the `1, 0, 1, …, 1` pattern.
    pub violations: Vec<(usize, usize)>,
}

/// Row `i = 0` and column `j = 0` must read `1, 0, 1, 0, …, 1`.
pub fn check_base_fiber_pattern(pt: &PerverseTable) -> PatternReport {
    let m = 2 * pt.n;
    let expected = |k: usize| u64::from(k.is_multiple_of(2));
    let mut violations = Vec::new();
    for k in 0..=m {
        if pt.get(0, k) != expected(k) {
            violations.push((0, k));
        }
        if k > 0 && pt.get(k, 0) != expected(k) {
            violations.push((k, 0));
        }
    }
    PatternReport {
        pass: violations.is_empty(),
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Vec<Vec<u64>> {
        vec![vec![1, 0, 1], vec![0, 20, 0], vec![1, 0, 1]]
    }

    #[test]
    fn k3_table_matches_k3_diamond() {
        let pt = PerverseTable::new(1, k3()).unwrap();
        let hd = HodgeDiamond::new(1, k3()).unwrap();
        assert!(compare_hodge(&pt, &hd).unwrap().pass);
        assert!(check_base_fiber_pattern(&pt).pass);
        assert_eq!(pt.betti(), vec![1, 0, 22, 0, 1]);
    }

    #[test]
    fn rational_elliptic_surface_mismatch() {
        let pt = PerverseTable::new(1, vec![vec![1, 0, 1], vec![0, 8, 0], vec![1, 0, 1]]).unwrap();
        let hd = HodgeDiamond::new(1, vec![vec![1, 0, 0], vec![0, 10, 0], vec![0, 0, 1]]).unwrap();
        let cmp = compare_hodge(&pt, &hd).unwrap();
        assert!(!cmp.pass);
        assert!(cmp
            .mismatches
            .iter()
            .any(|m| (m.i, m.j, m.perverse, m.hodge) == (1, 1, 8, 10)));
        assert!(check_base_fiber_pattern(&pt).pass);
    }

    #[test]
    fn csv_layout() {
        assert_eq!(
            PerverseTable::new(1, k3()).unwrap().to_csv(),
            "1,0,1\n0,20,0\n1,0,1\n"
        );
    }
}
