//! Python bindings for chowkit.

use std::sync::Arc;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use chowkit_core::matroid::{self as core_matroid, DeletionSuite};
use chowkit_core::poly::{self, Polynomial};
use chowkit_core::{abindex, cli, kls, KernelContext, Matroid, Poset, Report};

fn err(e: chowkit_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Integer polynomial in `x`.
#[pyclass(name = "Polynomial", module = "chowkit", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPolynomial(Polynomial);

#[pymethods]
impl PyPolynomial {
    #[new]
    fn new(coeffs: Vec<BigInt>) -> Self {
        PyPolynomial(Polynomial::new(coeffs))
    }

    #[getter]
    fn coeffs(&self) -> Vec<BigInt> {
        self.0.coeffs().to_vec()
    }

    fn degree(&self) -> Option<usize> {
        self.0.degree()
    }

    fn eval(&self, x: BigInt) -> BigInt {
        self.0.eval(&x)
    }

    fn is_palindromic(&self, center_degree: usize) -> bool {
        self.0.is_palindromic(center_degree)
    }

    fn is_unimodal(&self) -> bool {
        self.0.is_unimodal()
    }

    fn is_real_rooted(&self) -> PyResult<bool> {
        self.0.is_real_rooted().map_err(err)
    }

    fn count_real_roots(&self) -> PyResult<usize> {
        self.0.count_real_roots().map_err(err)
    }

    /// γ-vector about the given center degree.
    fn gamma(&self, center_degree: usize) -> PyResult<Vec<BigInt>> {
        Ok(self.0.gamma_expansion(center_degree).map_err(err)?.gammas)
    }

    fn __add__(&self, other: &PyPolynomial) -> PyPolynomial {
        PyPolynomial(&self.0 + &other.0)
    }

    fn __sub__(&self, other: &PyPolynomial) -> PyPolynomial {
        PyPolynomial(&self.0 - &other.0)
    }

    fn __mul__(&self, other: &PyPolynomial) -> PyPolynomial {
        PyPolynomial(&self.0 * &other.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.0)
    }
}

fn report_tuple(reports: Vec<Report>) -> (bool, String) {
    let passed = reports.iter().all(Report::all_passed);
    (passed, reports.iter().map(Report::to_string).collect())
}

/// Finite bounded ranked poset.
#[pyclass(name = "Poset", module = "chowkit", frozen)]
struct PyPoset(Arc<Poset>);

impl PyPoset {
    fn ctx(&self) -> KernelContext {
        KernelContext::characteristic(self.0.clone())
    }
}

#[pymethods]
impl PyPoset {
    /// Builds a poset on `0..n` from cover pairs `(s, t)` with `s ⋖ t`.
    #[staticmethod]
    #[pyo3(signature = (n, covers, rank=None))]
    fn from_covers(n: usize, covers: Vec<(usize, usize)>, rank: Option<Vec<usize>>) -> PyResult<Self> {
        Ok(PyPoset(Arc::new(Poset::from_covers(n, &covers, rank).map_err(err)?)))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyPoset(Arc::new(Poset::from_json_str(text).map_err(err)?)))
    }

    /// Named fixture such as `figure1`, `b3`, `c4`, `pi5`, `u34` or `k4`.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        Ok(PyPoset(Arc::new(cli::fixture(name).map_err(err)?)))
    }

    fn to_json(&self) -> String {
        serde_json::to_string(&self.0.to_json()).expect("serializable")
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn labels(&self) -> Vec<String> {
        self.0.labels().to_vec()
    }

    fn is_isomorphic(&self, other: &PyPoset) -> bool {
        self.0.is_isomorphic(&other.0)
    }

    /// μ(0̂, 1̂).
    fn mobius(&self) -> BigInt {
        self.0.mobius_value(self.0.bottom(), self.0.top())
    }

    fn dual_chow(&self) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.ctx().dual_chow().map_err(err)?.top_value().clone()))
    }

    fn dual_aug_chow(&self) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.ctx().dual_augmented().map_err(err)?.0.top_value().clone()))
    }

    fn chow(&self) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.ctx().chow().map_err(err)?.top_value().clone()))
    }

    /// `H*` from the chain formula in Möbius values.
    fn chain_formula(&self) -> PyPolynomial {
        PyPolynomial(kls::dual_chow_chain_formula(&self.0))
    }

    /// `H*_st` on every comparable pair, keyed by label pair.
    fn dual_chow_intervals(&self) -> PyResult<Vec<(String, String, PyPolynomial)>> {
        let ctx = self.ctx();
        let h = ctx.dual_chow().map_err(err)?;
        Ok(self
            .0
            .pairs()
            .iter()
            .zip(h.values())
            .map(|(&(s, t), v)| (self.0.label(s).to_string(), self.0.label(t).to_string(), PyPolynomial(v.clone())))
            .collect())
    }

    fn ab_index(&self) -> PyResult<String> {
        Ok(abindex::ab_index(&self.0).map_err(err)?.to_string())
    }

    /// γ-vectors of `H*` and `F*` from the flag h-vector.
    fn gamma(&self) -> PyResult<(Vec<BigInt>, Vec<BigInt>)> {
        let (h, f) = abindex::gamma_via_flags(&self.0).map_err(err)?;
        Ok((h.gammas, f.gammas))
    }

    /// Runs the identity reports; returns `(all passed, text)`.
    fn verify(&self) -> PyResult<(bool, String)> {
        let ctx = self.ctx();
        let mut reports = vec![
            ctx.verify_identities().map_err(err)?,
            ctx.verify_dual_identities().map_err(err)?,
            kls::hstar_fstar_bridge(&self.0).map_err(err)?,
        ];
        if self.0.is_graded() {
            reports.push(abindex::abindex_identities(&self.0).map_err(err)?);
        }
        Ok(report_tuple(reports))
    }

    fn __repr__(&self) -> String {
        format!("Poset(len={}, rank={})", self.0.len(), self.0.rank())
    }
}

/// Matroid given by its bases.
#[pyclass(name = "Matroid", module = "chowkit", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyMatroid(Matroid);

#[pymethods]
impl PyMatroid {
    #[new]
    fn new(n: usize, bases: Vec<Vec<usize>>) -> PyResult<Self> {
        Ok(PyMatroid(Matroid::from_bases(n, &bases).map_err(err)?))
    }

    #[staticmethod]
    fn uniform(r: usize, n: usize) -> PyResult<Self> {
        Ok(PyMatroid(Matroid::uniform(r, n).map_err(err)?))
    }

    #[staticmethod]
    fn boolean(n: usize) -> PyResult<Self> {
        Ok(PyMatroid(Matroid::boolean(n).map_err(err)?))
    }

    #[staticmethod]
    fn k4() -> Self {
        PyMatroid(Matroid::graphic_k4())
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyMatroid(core_matroid::matroid_from_json_str(text).map_err(err)?))
    }

    #[getter]
    fn rank(&self) -> usize {
        self.0.rank()
    }

    #[getter]
    fn ground_size(&self) -> usize {
        self.0.ground_size()
    }

    #[getter]
    fn bases(&self) -> Vec<Vec<usize>> {
        self.0.bases()
    }

    fn closure(&self, set: Vec<usize>) -> PyResult<Vec<usize>> {
        self.0.closure(&set).map_err(err)
    }

    fn is_coloop(&self, i: usize) -> PyResult<bool> {
        self.0.is_coloop(i).map_err(err)
    }

    fn delete(&self, i: usize) -> PyResult<Self> {
        Ok(PyMatroid(self.0.delete(i).map_err(err)?))
    }

    fn contract(&self, i: usize) -> PyResult<Self> {
        Ok(PyMatroid(self.0.contract(i).map_err(err)?))
    }

    fn restrict(&self, set: Vec<usize>) -> PyResult<Self> {
        Ok(PyMatroid(self.0.restrict(&set).map_err(err)?))
    }

    /// `(𝒮_i, 𝒮_i without the empty flat)`.
    fn s_sets(&self, i: usize) -> PyResult<(Vec<Vec<usize>>, Vec<Vec<usize>>)> {
        self.0.s_sets(i).map_err(err)
    }

    fn lattice_of_flats(&self) -> PyResult<PyPoset> {
        Ok(PyPoset(self.0.flats().map_err(err)?.poset))
    }

    /// `method` is `"lattice"` or `"deletion"`.
    #[pyo3(signature = (method="lattice"))]
    fn dual_chow(&self, method: &str) -> PyResult<PyPolynomial> {
        let value = match method {
            "lattice" => self.0.dual_chow(),
            "deletion" => self.0.dual_chow_by_deletion(),
            other => return Err(PyValueError::new_err(format!("unknown method {other:?}"))),
        };
        Ok(PyPolynomial(value.map_err(err)?))
    }

    fn dual_aug_chow(&self) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.0.dual_aug_chow().map_err(err)?))
    }

    fn chow(&self) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.0.chow().map_err(err)?))
    }

    fn bergman_h(&self) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.0.bergman_h().map_err(err)?))
    }

    fn characteristic_polynomial(&self) -> PyResult<PyPolynomial> {
        Ok(PyPolynomial(self.0.characteristic_polynomial().map_err(err)?))
    }

    fn gamma(&self) -> PyResult<Vec<BigInt>> {
        Ok(self.0.dual_chow_gamma().map_err(err)?.gammas)
    }

    /// `suite` is one of `deletion`, `ab-deletion`, `extended-deletion`,
    /// `bergman-deletion` or `all`.
    #[pyo3(signature = (suite="all"))]
    fn verify_deletions(&self, suite: &str) -> PyResult<(bool, String)> {
        let suite = match suite {
            "deletion" => DeletionSuite::DualChow,
            "ab-deletion" => DeletionSuite::AbIndex,
            "extended-deletion" => DeletionSuite::Extended,
            "bergman-deletion" => DeletionSuite::Bergman,
            "all" => DeletionSuite::All,
            other => return Err(PyValueError::new_err(format!("unknown suite {other:?}"))),
        };
        Ok(report_tuple(vec![self.0.verify_deletions(suite).map_err(err)?]))
    }

    fn __repr__(&self) -> String {
        format!("Matroid(n={}, rank={})", self.0.ground_size(), self.0.rank())
    }
}

#[pyfunction]
fn uniform_dual_chow(r: usize, n: usize) -> PyResult<PyPolynomial> {
    Ok(PyPolynomial(core_matroid::uniform_dual_chow(r, n).map_err(err)?))
}

#[pyfunction]
fn uniform_dual_aug_chow(r: usize, n: usize) -> PyResult<PyPolynomial> {
    Ok(PyPolynomial(core_matroid::uniform_dual_aug_chow(r, n).map_err(err)?))
}

/// γ-vectors of `H*` and `F*` for `U_{r,n}` from restricted descent counts.
#[pyfunction]
fn uniform_gamma(r: usize, n: usize) -> PyResult<(Vec<BigInt>, Vec<BigInt>)> {
    let (h, f) = core_matroid::uniform_gamma(r, n).map_err(err)?;
    Ok((h.gammas, f.gammas))
}

#[pyfunction]
fn eulerian(n: usize) -> PyPolynomial {
    PyPolynomial(poly::eulerian(n))
}

#[pyfunction]
fn binomial_eulerian(n: usize) -> PyPolynomial {
    PyPolynomial(poly::binomial_eulerian(n))
}

/// Exact dual Chow, Chow and KLS invariants of posets and matroids.
#[pymodule]
fn chowkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPolynomial>()?;
    m.add_class::<PyPoset>()?;
    m.add_class::<PyMatroid>()?;
    m.add_function(wrap_pyfunction!(uniform_dual_chow, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_dual_aug_chow, m)?)?;
    m.add_function(wrap_pyfunction!(uniform_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(eulerian, m)?)?;
    m.add_function(wrap_pyfunction!(binomial_eulerian, m)?)?;
    Ok(())
}
