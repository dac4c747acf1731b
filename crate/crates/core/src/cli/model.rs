use crate::algebra::{
    build_from_description, build_sym_model, AlgebraDescription, BBSpace, BBSpaceFile, ClassVector,
    GradedAlgebra, SymModel,
};
use crate::linalg::{Matrix, Rational, Scalar};
use crate::perverse::{default_pair, isotropic_relative_ample};

use super::InputError;

/// Where the model algebra comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSource {
    Builtin(String),
    File(String),
    Params {
        b2: Option<usize>,
        gram_file: Option<String>,
    },
}

pub enum Model {
    Sym {
        name: Option<String>,
        model: Box<SymModel>,
    },
    Described {
        algebra: Box<GradedAlgebra>,
        bb: Option<BBSpace>,
    },
}

impl Model {
    pub fn algebra(&self) -> &GradedAlgebra {
        match self {
            Model::Sym { model, .. } => model.algebra(),
            Model::Described { algebra, .. } => algebra,
        }
    }

    pub fn bb(&self) -> Option<&BBSpace> {
        match self {
            Model::Sym { model, .. } => Some(model.bb()),
            Model::Described { bb, .. } => bb.as_ref(),
        }
    }

    pub fn sym(&self) -> Option<&SymModel> {
        match self {
            Model::Sym { model, .. } => Some(model),
            Model::Described { .. } => None,
        }
    }

    pub fn builtin_name(&self) -> Option<&str> {
        match self {
            Model::Sym { name, .. } => name.as_deref(),
            Model::Described { .. } => None,
        }
    }
}

pub fn read_file(path: &str) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("cannot read {path}: {e}")))
}

/// `(2n)! / (n! 2^n)`, the Fujiki constant of `K3^[n]`-type.
pub fn default_fujiki(n: usize) -> Rational {
    let odd: i64 = (1..2 * n as i64).step_by(2).product();
    Rational::from(odd)
}

/// `U^3 ⊕ ⟨-2⟩^{b2-6}`.
fn default_gram(b2: usize) -> Result<Matrix<Rational>, InputError> {
    if b2 < 6 {
        return Err(InputError("--b2 below 6 needs --gram-file".into()));
    }
    Ok(Matrix::from_fn(b2, b2, |r, c| {
        if r < 6 && c < 6 {
            Rational::from(i64::from(r / 2 == c / 2 && r != c))
        } else if r == c {
            Rational::from(-2)
        } else {
            Rational::zero()
        }
    }))
}

fn parse_gram(text: &str, field: &str) -> Result<Matrix<Rational>, InputError> {
    let rows: Vec<Vec<Rational>> =
        serde_json::from_str(text).map_err(|e| InputError(format!("{field}: {e}")))?;
    let b2 = rows.len();
    if rows.iter().any(|r| r.len() != b2) {
        return Err(InputError(format!("{field}: gram matrix must be square")));
    }
    Ok(Matrix::from_rows(b2, rows))
}

pub struct ModelOverrides {
    pub n: Option<usize>,
    pub fujiki: Option<Rational>,
}

fn apply_overrides(mut bb: BBSpace, o: &ModelOverrides) -> Result<BBSpace, InputError> {
    if let Some(n) = o.n {
        bb = bb.with_n(n).map_err(|e| InputError(format!("--n: {e}")))?;
        if o.fujiki.is_none() {
            bb = bb
                .with_fujiki(default_fujiki(n))
                .map_err(|e| InputError(format!("--n: {e}")))?;
        }
    }
    if let Some(c) = &o.fujiki {
        bb = bb
            .with_fujiki(c.clone())
            .map_err(|e| InputError(format!("--fujiki: {e}")))?;
    }
    Ok(bb)
}

/// The quadratic space a source describes, without building the algebra.
pub fn resolve_bb(source: &ModelSource, o: &ModelOverrides) -> Result<Option<BBSpace>, InputError> {
    let bb = match source {
        ModelSource::Builtin(name) => BBSpace::builtin(name).ok_or_else(|| {
            InputError(format!(
                "--model: unknown builtin model {name:?} (k3, k3hilb2, toy-b3)"
            ))
        })?,
        ModelSource::File(path) => {
            let text = read_file(path)?;
            let value: serde_json::Value = serde_json::from_str(&text)
                .map_err(|e| InputError(format!("--model-file: {e}")))?;
            if value.get("graded_dims").is_some() {
                let desc: AlgebraDescription = serde_json::from_value(value)
                    .map_err(|e| InputError(format!("--model-file: {e}")))?;
                return match desc.gram {
                    Some(rows) => {
                        let b2 = rows.len();
                        let c = desc
                            .fujiki
                            .clone()
                            .unwrap_or_else(|| default_fujiki(desc.n));
                        BBSpace::new(Matrix::from_rows(b2, rows), c, desc.n)
                            .map(Some)
                            .map_err(|e| InputError(format!("--model-file: field \"gram\": {e}")))
                    }
                    None => Ok(None),
                };
            }
            let file: BBSpaceFile = serde_json::from_value(value)
                .map_err(|e| InputError(format!("--model-file: {e}")))?;
            BBSpace::from_file(file).map_err(|e| InputError(format!("--model-file: {e}")))?
        }
        ModelSource::Params { b2, gram_file } => {
            let gram = match gram_file {
                Some(path) => parse_gram(&read_file(path)?, "--gram-file")?,
                None => {
                    default_gram(b2.ok_or_else(|| InputError("need --b2 or --gram-file".into()))?)?
                }
            };
            if let Some(b2) = b2 {
                if *b2 != gram.rows() {
                    return Err(InputError(format!(
                        "--b2 is {b2} but the gram matrix has size {}",
                        gram.rows()
                    )));
                }
            }
            let n = o.n.unwrap_or(1);
            let c = o.fujiki.clone().unwrap_or_else(|| default_fujiki(n));
            return BBSpace::new(gram, c, n)
                .map(Some)
                .map_err(|e| InputError(format!("--gram-file: {e}")));
        }
    };
    apply_overrides(bb, o).map(Some)
}

pub fn resolve_model(source: &ModelSource, o: &ModelOverrides) -> Result<Model, InputError> {
    if let ModelSource::File(path) = source {
        let text = read_file(path)?;
        let value: serde_json::Value =
            serde_json::from_str(&text).map_err(|e| InputError(format!("--model-file: {e}")))?;
        if value.get("graded_dims").is_some() {
            let desc: AlgebraDescription = serde_json::from_value(value)
                .map_err(|e| InputError(format!("--model-file: {e}")))?;
            let algebra = build_from_description(&desc)
                .map_err(|e| InputError(format!("--model-file: {e}")))?;
            let bb = resolve_bb(source, o)?;
            return Ok(Model::Described {
                algebra: Box::new(algebra),
                bb,
            });
        }
    }
    let bb = resolve_bb(source, o)?.expect("sym sources always carry a quadratic space");
    let model = build_sym_model(&bb).map_err(|e| InputError(format!("model: {e}")))?;
    let name = match source {
        ModelSource::Builtin(name) if o.n.is_none() && o.fujiki.is_none() => Some(name.clone()),
        _ => None,
    };
    Ok(Model::Sym {
        name,
        model: Box::new(model),
    })
}

/// A degree-2 class: `e<k>` / `f<k>` for the generators of the `k`-th
/// hyperbolic plane (1-based), or comma-separated rational coordinates.
pub fn parse_class(
    spec: &str,
    dim: usize,
    bb: Option<&BBSpace>,
    flag: &str,
) -> Result<Vec<Rational>, InputError> {
    let spec = spec.trim();
    let named = spec
        .strip_prefix('e')
        .map(|k| (k, 0))
        .or_else(|| spec.strip_prefix('f').map(|k| (k, 1)));
    if let Some((k, which)) = named {
        let k: usize = k
            .parse()
            .map_err(|_| InputError(format!("{flag}: cannot parse {spec:?}")))?;
        let bb = bb.ok_or_else(|| {
            InputError(format!("{flag}: named generators need a quadratic space"))
        })?;
        let planes = bb.hyperbolic_planes();
        let &(a, b) = k
            .checked_sub(1)
            .and_then(|i| planes.get(i))
            .ok_or_else(|| {
                InputError(format!(
                    "{flag}: there are only {} hyperbolic planes",
                    planes.len()
                ))
            })?;
        return Ok(bb.basis_vector(if which == 0 { a } else { b }));
    }
    let coords: Vec<Rational> = spec
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<Rational>()
                .map_err(|e| InputError(format!("{flag}: {e}")))
        })
        .collect::<Result<_, _>>()?;
    if coords.len() != dim {
        return Err(InputError(format!(
            "{flag}: expected {dim} coordinates, got {}",
            coords.len()
        )));
    }
    Ok(coords)
}

/// `(η, β)`, with `η` made isotropic from `η'` when a quadratic space is known.
pub fn resolve_pair(
    model: &Model,
    eta: Option<&str>,
    beta: Option<&str>,
) -> Result<(ClassVector, ClassVector), InputError> {
    let alg = model.algebra();
    let dim = alg.dim(2);
    let bb = model.bb();
    let defaults = bb.and_then(default_pair);
    let beta = match (beta, &defaults) {
        (Some(s), _) => parse_class(s, dim, bb, "--beta")?,
        (None, Some((_, b))) => b.clone(),
        (None, None) => return Err(InputError("--beta is required for this model".into())),
    };
    let eta_prime = match (eta, &defaults) {
        (Some(s), _) => parse_class(s, dim, bb, "--eta")?,
        (None, Some((e, _))) => e.clone(),
        (None, None) => return Err(InputError("--eta is required for this model".into())),
    };
    let eta = match bb {
        Some(bb) => isotropic_relative_ample(bb, &eta_prime, &beta)
            .map_err(|e| InputError(format!("--eta/--beta: {e}")))?,
        None => eta_prime,
    };
    Ok((ClassVector::new(2, eta), ClassVector::new(2, beta)))
}
