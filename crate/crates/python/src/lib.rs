//! Python bindings: model algebras, perverse tables, surface fibrations,
//! GV invariants, and the command-line runner.

use perverse_hodge::algebra::{
    build_from_description, build_sym_model, AlgebraDescription, BBSpace, GradedAlgebra, SymModel,
};
use perverse_hodge::cli;
use perverse_hodge::fibration::{
    leray_numbers_surface, perverse_numbers_surface, SurfaceFibrationData,
};
use perverse_hodge::gv;
use perverse_hodge::lefschetz::{cartan_bigrading, lie_closure, sample_d_circle, GradedOperator};
use perverse_hodge::linalg::{GaussianRational, Matrix, Rational};
use perverse_hodge::perverse::{
    check_duality, check_multiplicativity, compare_hodge, default_pair, isotropic_relative_ample,
    perverse_bigrading, perverse_numbers, HodgeDiamond, PerverseTable,
};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

type TablePair = (Vec<Vec<u64>>, Vec<Vec<u64>>);

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn rationals(xs: &[String]) -> PyResult<Vec<Rational>> {
    xs.iter()
        .map(|s| s.parse::<Rational>().map_err(err))
        .collect()
}

enum Inner {
    Sym(Box<SymModel>),
    Described(Box<GradedAlgebra>),
}

/// A model cohomology algebra.
#[pyclass(name = "Model", module = "perverse_hodge_py")]
struct PyModel {
    inner: Inner,
}

impl PyModel {
    fn algebra(&self) -> &GradedAlgebra {
        match &self.inner {
            Inner::Sym(m) => m.algebra(),
            Inner::Described(a) => a,
        }
    }

    fn bb(&self) -> Option<&BBSpace> {
        match &self.inner {
            Inner::Sym(m) => Some(m.bb()),
            Inner::Described(_) => None,
        }
    }

    fn pair(
        &self,
        eta: Option<Vec<String>>,
        beta: Option<Vec<String>>,
    ) -> PyResult<(Vec<Rational>, Vec<Rational>)> {
        let defaults = self.bb().and_then(default_pair);
        let beta = match (beta, &defaults) {
            (Some(b), _) => rationals(&b)?,
            (None, Some((_, b))) => b.clone(),
            (None, None) => return Err(PyValueError::new_err("beta is required for this model")),
        };
        let eta = match (eta, &defaults) {
            (Some(e), _) => rationals(&e)?,
            (None, Some((e, _))) => e.clone(),
            (None, None) => return Err(PyValueError::new_err("eta is required for this model")),
        };
        let eta = match self.bb() {
            Some(bb) => isotropic_relative_ample(bb, &eta, &beta).map_err(err)?,
            None => eta,
        };
        Ok((eta, beta))
    }
}

#[pymethods]
impl PyModel {
    /// One of `k3`, `k3hilb2`, `toy-b3`.
    #[staticmethod]
    fn builtin(name: &str) -> PyResult<Self> {
        let bb = BBSpace::builtin(name)
            .ok_or_else(|| PyValueError::new_err(format!("unknown builtin model {name:?}")))?;
        Ok(PyModel {
            inner: Inner::Sym(Box::new(build_sym_model(&bb).map_err(err)?)),
        })
    }

    /// Sym model of a quadratic space; entries are integers or "p/q" strings.
    #[staticmethod]
    fn from_gram(gram: Vec<Vec<String>>, fujiki: &str, n: usize) -> PyResult<Self> {
        let b2 = gram.len();
        let rows = gram
            .iter()
            .map(|r| rationals(r))
            .collect::<PyResult<Vec<_>>>()?;
        let bb = BBSpace::new(Matrix::from_rows(b2, rows), fujiki.parse().map_err(err)?, n)
            .map_err(err)?;
        Ok(PyModel {
            inner: Inner::Sym(Box::new(build_sym_model(&bb).map_err(err)?)),
        })
    }

    /// Algebra from a JSON description `{"n", "graded_dims", "mult", "integration"}`.
    #[staticmethod]
    fn from_description(json: &str) -> PyResult<Self> {
        let desc: AlgebraDescription = serde_json::from_str(json).map_err(err)?;
        Ok(PyModel {
            inner: Inner::Described(Box::new(build_from_description(&desc).map_err(err)?)),
        })
    }

    #[getter]
    fn n(&self) -> usize {
        self.algebra().n()
    }

    #[getter]
    fn graded_dims(&self) -> Vec<usize> {
        self.algebra().graded_dims().to_vec()
    }

    fn validate(&self) -> bool {
        self.algebra().validate_frobenius().passed()
    }

    /// Perverse numbers `ph[i][j]` for the pair `(η', β)` given as
    /// coordinate strings, or the default pair.
    #[pyo3(signature = (eta=None, beta=None))]
    fn perverse_table(
        &self,
        eta: Option<Vec<String>>,
        beta: Option<Vec<String>>,
    ) -> PyResult<Vec<Vec<u64>>> {
        let (eta, beta) = self.pair(eta, beta)?;
        let alg = self.algebra();
        let bg = perverse_bigrading(alg, &alg_class(&eta), &alg_class(&beta)).map_err(err)?;
        Ok(perverse_numbers(&bg).map_err(err)?.entries)
    }

    /// `(multiplicativity, duality)` pass flags for the default pair.
    #[pyo3(signature = (eta=None, beta=None))]
    fn structure_checks(
        &self,
        eta: Option<Vec<String>>,
        beta: Option<Vec<String>>,
    ) -> PyResult<(bool, bool)> {
        let (eta, beta) = self.pair(eta, beta)?;
        let alg = self.algebra();
        let bg = perverse_bigrading(alg, &alg_class(&eta), &alg_class(&beta)).map_err(err)?;
        Ok((
            check_multiplicativity(alg, &bg).pass,
            check_duality(alg, &bg).pass,
        ))
    }

    /// Dimensions of the Lie algebras generated at `count` points of D°.
    #[pyo3(signature = (count=3, seed=0))]
    fn so5_dimensions(&self, count: usize, seed: u64) -> PyResult<Vec<usize>> {
        let bb = self
            .bb()
            .ok_or_else(|| PyValueError::new_err("needs a model built from a quadratic space"))?;
        let alg = self.algebra();
        let mut out = Vec::new();
        for p in sample_d_circle(bb, count, seed).map_err(err)? {
            let mut ops: Vec<GradedOperator<GaussianRational>> = Vec::new();
            for t in p.triples(alg).map_err(err)? {
                ops.extend(t.operators().into_iter().cloned());
            }
            out.push(lie_closure(&ops).map_err(err)?.dim);
        }
        Ok(out)
    }

    /// Cartan bigrading dimension table at the first sampled point of D°.
    #[pyo3(signature = (seed=0))]
    fn cartan_table(&self, seed: u64) -> PyResult<Vec<Vec<usize>>> {
        let bb = self
            .bb()
            .ok_or_else(|| PyValueError::new_err("needs a model built from a quadratic space"))?;
        let p = sample_d_circle(bb, 1, seed).map_err(err)?.remove(0);
        Ok(cartan_bigrading(self.algebra(), &p)
            .map_err(err)?
            .dim_table())
    }
}

fn alg_class(coords: &[Rational]) -> perverse_hodge::algebra::ClassVector {
    perverse_hodge::algebra::ClassVector::new(2, coords.to_vec())
}

/// Hodge numbers of the Hilbert scheme of `n` points on K3.
#[pyfunction]
fn goettsche_hodge(n: usize) -> PyResult<Vec<Vec<u64>>> {
    if n == 0 {
        return Err(PyValueError::new_err("n must be at least 1"));
    }
    Ok(gv::goettsche_hodge(n).entries)
}

/// `n_g` for `0 ≤ g ≤ n` from a `(2n+1)`-square table.
#[pyfunction]
fn refined_gv(table: Vec<Vec<u64>>) -> PyResult<Vec<i64>> {
    let n = table.len() / 2;
    let t = PerverseTable::new(n, table).map_err(err)?;
    Ok(gv::refined_gv(&t).map_err(err)?.n)
}

/// `n_{g,h}` for `0 ≤ h ≤ h_max` from the KKV product.
#[pyfunction]
fn kkv_oracle(h_max: usize) -> Vec<Vec<i64>> {
    gv::kkv_oracle(h_max).into_iter().map(|t| t.n).collect()
}

/// Mismatching cells `(i, j, perverse, hodge)`.
#[pyfunction]
fn compare_tables(
    table: Vec<Vec<u64>>,
    diamond: Vec<Vec<u64>>,
) -> PyResult<Vec<(usize, usize, u64, u64)>> {
    let n = table.len() / 2;
    let pt = PerverseTable::new(n, table).map_err(err)?;
    let hd = HodgeDiamond::new(n, diamond).map_err(err)?;
    Ok(compare_hodge(&pt, &hd)
        .map_err(err)?
        .mismatches
        .into_iter()
        .map(|m| (m.i, m.j, m.perverse, m.hodge))
        .collect())
}

/// `(perverse, leray)` tables of an elliptic surface.
#[pyfunction]
#[pyo3(signature = (base_genus, betti, fiber_components=Vec::new(), invariant_rank=0))]
fn surface_tables(
    base_genus: u32,
    betti: [u64; 5],
    fiber_components: Vec<u32>,
    invariant_rank: u64,
) -> PyResult<TablePair> {
    let data = SurfaceFibrationData::new(base_genus, betti, fiber_components, invariant_rank)
        .map_err(err)?;
    let p = perverse_numbers_surface(&data).map_err(err)?;
    let l = leray_numbers_surface(&data).map_err(err)?;
    Ok((p.table.entries, l.entries))
}

/// Runs the command-line tool; returns `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = cli::execute(std::iter::once("perverse-hodge".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn perverse_hodge_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyModel>()?;
    m.add_function(wrap_pyfunction!(goettsche_hodge, m)?)?;
    m.add_function(wrap_pyfunction!(refined_gv, m)?)?;
    m.add_function(wrap_pyfunction!(kkv_oracle, m)?)?;
    m.add_function(wrap_pyfunction!(compare_tables, m)?)?;
    m.add_function(wrap_pyfunction!(surface_tables, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    Ok(())
}
