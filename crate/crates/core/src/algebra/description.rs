use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::graded::{GradedAlgebra, ProductBlock};
use super::AlgebraError;
use crate::linalg::{Rational, Scalar};

/// One structure constant: `e_i · e_j` has coefficient `value` on `e_k`,
/// with `e_i ∈ A^d`, `e_j ∈ A^{d'}`, `e_k ∈ A^{d+d'}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultEntry(
    pub usize,
    pub usize,
    pub usize,
    pub usize,
    pub usize,
    pub Rational,
);

/// JSON description `{"n", "graded_dims", "mult", "integration", "gram"?, "fujiki"?}`.
///
/// Products with the unit and mirror products `e_j · e_i` may be omitted;
/// they are filled in from the unit law and graded commutativity.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraDescription {
    pub n: usize,
    pub graded_dims: Vec<usize>,
    #[serde(default)]
    pub mult: Vec<MultEntry>,
    pub integration: Vec<Rational>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gram: Option<Vec<Vec<Rational>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fujiki: Option<Rational>,
}

type Key = (usize, usize, usize, usize);

pub fn build_from_description(desc: &AlgebraDescription) -> Result<GradedAlgebra, AlgebraError> {
    let n = desc.n;
    if n == 0 {
        return Err(AlgebraError::Malformed(
            "field \"n\" must be at least 1".into(),
        ));
    }
    let top = 4 * n;
    let dims = &desc.graded_dims;
    if dims.len() != top + 1 {
        return Err(AlgebraError::Malformed(format!(
            "field \"graded_dims\" must have {} entries, got {}",
            top + 1,
            dims.len()
        )));
    }

    let mut listed: BTreeMap<Key, BTreeMap<usize, Rational>> = BTreeMap::new();
    for (pos, MultEntry(d1, d2, i, j, k, v)) in desc.mult.iter().enumerate() {
        let (d1, d2, i, j, k) = (*d1, *d2, *i, *j, *k);
        if d1 + d2 > top || i >= dims[d1] || j >= dims[d2] || k >= dims[d1 + d2] {
            return Err(AlgebraError::Malformed(format!(
                "field \"mult\" entry {pos} ({d1}, {d2}, {i}, {j}, {k}) is out of range"
            )));
        }
        let slot = listed.entry((d1, d2, i, j)).or_default();
        if slot.insert(k, v.clone()).is_some() {
            return Err(AlgebraError::Malformed(format!(
                "field \"mult\" entry {pos} repeats the coefficient ({d1}, {d2}, {i}, {j}, {k})"
            )));
        }
    }

    let mut full = listed.clone();
    for (&(d1, d2, i, j), image) in &listed {
        let mirror = (d2, d1, j, i);
        if !listed.contains_key(&mirror) {
            let negate = (d1 * d2) % 2 == 1;
            let flipped = image
                .iter()
                .map(|(k, v)| (*k, if negate { -v } else { v.clone() }))
                .collect();
            full.insert(mirror, flipped);
        }
    }
    for d in 0..=top {
        for j in 0..dims[d] {
            let id: BTreeMap<usize, Rational> = [(j, Rational::from(1))].into();
            full.entry((0, d, 0, j)).or_insert_with(|| id.clone());
            full.entry((d, 0, j, 0)).or_insert(id);
        }
    }

    let mut products: HashMap<(usize, usize), ProductBlock> = HashMap::new();
    for ((d1, d2, i, j), image) in full {
        products
            .entry((d1, d2))
            .or_insert_with(|| ProductBlock::new(dims[d1], dims[d2]))
            .set(
                i,
                j,
                image.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
            );
    }

    let alg = GradedAlgebra::from_parts(n, dims.clone(), products, desc.integration.clone())?;
    let report = alg.validate_frobenius();
    if let Some(v) = report.violations.into_iter().next() {
        return Err(AlgebraError::Frobenius(v));
    }
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FrobeniusViolation;

    fn truncated_poly() -> AlgebraDescription {
        serde_json::from_str(
            r#"{"n": 1, "graded_dims": [1, 0, 1, 0, 1],
                "mult": [[2, 2, 0, 0, 0, "1"]], "integration": ["1"]}"#,
        )
        .unwrap()
    }

    #[test]
    fn truncated_polynomial_ring() {
        let alg = build_from_description(&truncated_poly()).unwrap();
        assert_eq!(alg.total_dim(), 3);
        assert!(alg.validate_frobenius().passed());
    }

    #[test]
    fn non_associative_constants_name_the_triple() {
        // e4·s = 0 while s·e4 = e6.
        let desc: AlgebraDescription = serde_json::from_str(
            r#"{"n": 2, "graded_dims": [1, 0, 1, 0, 1, 0, 1, 0, 1],
                "mult": [[2, 2, 0, 0, 0, 1], [2, 4, 0, 0, 0, 1], [4, 2, 0, 0, 0, 0],
                         [4, 4, 0, 0, 0, 1], [2, 6, 0, 0, 0, 1]],
                "integration": [1]}"#,
        )
        .unwrap();
        match build_from_description(&desc) {
            Err(AlgebraError::Frobenius(FrobeniusViolation::Commutativity { .. })) => {}
            other => panic!("expected commutativity failure, got {other:?}"),
        }
        let desc: AlgebraDescription = serde_json::from_str(
            r#"{"n": 2, "graded_dims": [1, 0, 1, 0, 1, 0, 1, 0, 1],
                "mult": [[2, 2, 0, 0, 0, 1], [2, 4, 0, 0, 0, 2],
                         [4, 4, 0, 0, 0, 1], [2, 6, 0, 0, 0, 1]],
                "integration": [1]}"#,
        )
        .unwrap();
        match build_from_description(&desc) {
            Err(AlgebraError::Frobenius(FrobeniusViolation::Associativity { degrees, triple })) => {
                assert_eq!(degrees, (2, 2, 4));
                assert_eq!(triple, (0, 0, 0));
            }
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn zeroed_integration_fails_pairing() {
        let mut desc = truncated_poly();
        desc.integration = vec![Rational::from(0)];
        assert!(matches!(
            build_from_description(&desc),
            Err(AlgebraError::Frobenius(
                FrobeniusViolation::DegeneratePairing { .. }
            ))
        ));
    }

    #[test]
    fn out_of_range_entry_names_the_field() {
        let mut desc = truncated_poly();
        desc.mult.push(MultEntry(2, 2, 0, 1, 0, Rational::from(1)));
        let err = build_from_description(&desc).unwrap_err();
        assert!(err.to_string().contains("\"mult\""));
    }
}
