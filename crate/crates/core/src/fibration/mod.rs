//! Perverse and Leray numbers of an elliptic surface `π: X → Y` over a curve
//! of genus `g`, read off the decomposition
//!
//! ```text
//! Rπ_*Q = Q_Y ⊕ j_*R¹[-1] ⊕ Q_Y[-2] ⊕ ⊕_y Q_y^{n_y - 1}[-2]
//! ```
//!
//! where `n_y` counts the irreducible components of the fiber over `y`.

use serde::{Deserialize, Serialize};

use crate::perverse::{PerverseError, PerverseTable};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FibrationError {
    #[error("invalid fibration data: {0}")]
    InvalidData(String),
    #[error("inconsistent data: entry ({i},{j}) would be {value}")]
    NegativeEntry { i: usize, j: usize, value: i64 },
    #[error(transparent)]
    Table(#[from] PerverseError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceFibrationData {
    pub base_genus: u32,
    pub betti: [u64; 5],
    /// `n_y` for each singular fiber.
    #[serde(default)]
    pub fiber_components: Vec<u32>,
    /// `h⁰(Y, j_*R¹)`.
    #[serde(default)]
    pub invariant_rank: u64,
}

impl SurfaceFibrationData {
    pub fn new(
        base_genus: u32,
        betti: [u64; 5],
        fiber_components: Vec<u32>,
        invariant_rank: u64,
    ) -> Result<Self, FibrationError> {
        let data = SurfaceFibrationData {
            base_genus,
            betti,
            fiber_components,
            invariant_rank,
        };
        data.validate()?;
        Ok(data)
    }

    pub fn from_json(text: &str) -> Result<Self, FibrationError> {
        let data: SurfaceFibrationData =
            serde_json::from_str(text).map_err(|e| FibrationError::InvalidData(e.to_string()))?;
        data.validate()?;
        Ok(data)
    }

    pub fn validate(&self) -> Result<(), FibrationError> {
        let b = &self.betti;
        if b[0] != 1 || b[4] != 1 {
            return Err(FibrationError::InvalidData(
                "betti: b0 and b4 must be 1".into(),
            ));
        }
        if b[1] != b[3] {
            return Err(FibrationError::InvalidData(
                "betti: b1 and b3 must agree".into(),
            ));
        }
        if self.fiber_components.contains(&0) {
            return Err(FibrationError::InvalidData(
                "fiber_components: every n_y must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// `Σ_y (n_y - 1)`.
    pub fn reducible_excess(&self) -> u64 {
        self.fiber_components
            .iter()
            .map(|&n| u64::from(n - 1))
            .sum()
    }

    fn two_g(&self) -> i64 {
        2 * i64::from(self.base_genus)
    }
}

/// Rows 0 and 2 given, row 1 forced by `Σ_{i+j=k} t[i][j] = b_k`.
fn fill_middle_row(
    data: &SurfaceFibrationData,
    mut t: [[i64; 3]; 3],
) -> Result<Vec<Vec<u64>>, FibrationError> {
    let b = |k: usize| data.betti[k] as i64;
    for j in 0..3 {
        let above = if j < 2 { t[0][j + 1] } else { 0 };
        let below = if j >= 1 { t[2][j - 1] } else { 0 };
        t[1][j] = b(j + 1) - above - below;
    }
    let mut out = vec![vec![0u64; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let value = t[i][j];
            if value < 0 {
                return Err(FibrationError::NegativeEntry { i, j, value });
            }
            out[i][j] = value as u64;
        }
    }
    Ok(out)
}

/// `ph^{1,1} = h¹(Y, j_*R¹) + Σ_y (n_y - 1)`, with `h⁰ = h² = invariant_rank`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MiddleDecomposition {
    pub h0: u64,
    pub h1: u64,
    pub h2: u64,
    pub reducible_excess: u64,
    /// Disagreements between the input and the derived table.
    pub contradictions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurfacePerverse {
    pub table: PerverseTable,
    pub middle: MiddleDecomposition,
}

pub fn perverse_numbers_surface(
    data: &SurfaceFibrationData,
) -> Result<SurfacePerverse, FibrationError> {
    data.validate()?;
    let g2 = data.two_g();
    let outer = [1, g2, 1];
    let entries = fill_middle_row(data, [outer, [0; 3], outer])?;
    let table = PerverseTable::new(1, entries)?;

    let excess = data.reducible_excess();
    let ph11 = table.get(1, 1);
    let mut contradictions = Vec::new();
    let h1 = match ph11.checked_sub(excess) {
        Some(h1) => h1,
        None => {
            contradictions.push(format!("Σ(n_y - 1) = {excess} exceeds ph^{{1,1}} = {ph11}"));
            0
        }
    };
    for j in [0, 2] {
        if table.get(1, j) != data.invariant_rank {
            contradictions.push(format!(
                "ph^{{1,{j}}} = {} but invariant_rank = {}",
                table.get(1, j),
                data.invariant_rank
            ));
        }
    }
    let middle = MiddleDecomposition {
        h0: data.invariant_rank,
        h1,
        h2: data.invariant_rank,
        reducible_excess: excess,
        contradictions,
    };
    Ok(SurfacePerverse { table, middle })
}

/// Numbers `ℓh^{i,j}` of the Leray filtration, `i` as rows.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LerayTable {
    pub entries: Vec<Vec<u64>>,
}

impl LerayTable {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    pub fn betti(&self) -> Vec<u64> {
        let mut b = vec![0; 5];
        for (i, row) in self.entries.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                b[i + j] += x;
            }
        }
        b
    }

    /// Cells where this table differs from a perverse table.
    pub fn differences(&self, pt: &PerverseTable) -> Vec<(usize, usize)> {
        (0..3)
            .flat_map(|i| (0..3).map(move |j| (i, j)))
            .filter(|&(i, j)| self.get(i, j) != pt.get(i, j))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        PerverseTable {
            n: 1,
            entries: self.entries.clone(),
        }
        .to_csv()
    }

    pub fn to_markdown(&self) -> String {
        PerverseTable {
            n: 1,
            entries: self.entries.clone(),
        }
        .to_markdown()
    }
}

/// `ℓh^{2,0} = 1 + Σ(n_y - 1)`: the reducible components of singular fibers
/// land in the bottom Leray piece.
pub fn leray_numbers_surface(data: &SurfaceFibrationData) -> Result<LerayTable, FibrationError> {
    data.validate()?;
    let g2 = data.two_g();
    let excess = data.reducible_excess() as i64;
    let entries = fill_middle_row(data, [[1, g2, 1], [0; 3], [1 + excess, g2, 1]])?;
    Ok(LerayTable { entries })
}
