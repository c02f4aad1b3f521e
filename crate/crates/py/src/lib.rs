use std::collections::BTreeMap;

use num_bigint::BigInt;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use slidechrom::chromatic;
use slidechrom::dyck::{dyck_graph, enumerate_paths, restriction_map};
use slidechrom::keys;
use slidechrom::slide;
use slidechrom::{Error, PartialDyckPath, TCoefficient, TPolynomial, WeakComposition, Window};

fn py_err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn window(lo: i64, hi: i64) -> PyResult<Window> {
    Window::new(lo, hi).map_err(py_err)
}

fn composition(s: &str) -> PyResult<WeakComposition> {
    s.parse().map_err(py_err)
}

/// Coefficient list indexed by the power of `t`.
fn coeffs(c: &TCoefficient) -> Vec<BigInt> {
    match c.degree() {
        Some(d) => (0..=d).map(|k| c.get(k)).collect(),
        None => Vec::new(),
    }
}

fn expansion_dict<'a>(
    terms: impl Iterator<Item = (&'a WeakComposition, &'a TCoefficient)>,
) -> BTreeMap<String, Vec<BigInt>> {
    terms.map(|(a, c)| (a.to_string(), coeffs(c))).collect()
}

#[pyclass(name = "DyckPath", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyDyckPath(PartialDyckPath);

#[pymethods]
impl PyDyckPath {
    /// Parses `"<word>@n,r"`.
    #[new]
    fn new(literal: &str) -> PyResult<Self> {
        literal.parse().map(PyDyckPath).map_err(py_err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n()
    }

    #[getter]
    fn r(&self) -> usize {
        self.0.r()
    }

    fn literal(&self) -> String {
        self.0.literal()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        dyck_graph(&self.0).edges()
    }

    fn rho(&self) -> Vec<i64> {
        restriction_map(&self.0).values().to_vec()
    }

    fn __repr__(&self) -> String {
        format!("DyckPath('{}')", self.0.literal())
    }
}

#[pyclass(name = "Polynomial", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyPolynomial(TPolynomial);

#[pymethods]
impl PyPolynomial {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        TPolynomial::from_json(&v).map(PyPolynomial).map_err(py_err)
    }

    fn to_json(&self) -> String {
        self.0.to_json().to_string()
    }

    /// `{exponent in bar notation: [coefficient of t^0, t^1, ...]}`.
    fn terms(&self) -> BTreeMap<String, Vec<BigInt>> {
        expansion_dict(self.0.terms())
    }

    #[getter]
    fn window(&self) -> (i64, i64) {
        let w = self.0.window();
        (w.lo, w.hi)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn __eq__(&self, other: &PyPolynomial) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Polynomial({})", self.0)
    }
}

fn default_window(path: &PartialDyckPath, lo: Option<i64>, hi: Option<i64>) -> PyResult<Window> {
    window(lo.unwrap_or(1), hi.unwrap_or(path.r() as i64))
}

#[pyfunction]
#[pyo3(signature = (path, lo=None, hi=None))]
fn chromatic_brute(path: &PyDyckPath, lo: Option<i64>, hi: Option<i64>) -> PyResult<PyPolynomial> {
    let w = default_window(&path.0, lo, hi)?;
    Ok(PyPolynomial(chromatic::chromatic_brute(&path.0, &w)))
}

/// The slide-expansion side and its coefficients.
#[pyfunction]
#[pyo3(signature = (path, lo=None, hi=None))]
fn chromatic_theorem(
    path: &PyDyckPath,
    lo: Option<i64>,
    hi: Option<i64>,
) -> PyResult<(PyPolynomial, BTreeMap<String, Vec<BigInt>>)> {
    let w = default_window(&path.0, lo, hi)?;
    let (p, e) = chromatic::chromatic_theorem(&path.0, &w);
    Ok((PyPolynomial(p), expansion_dict(e.iter())))
}

#[pyfunction]
#[pyo3(signature = (path, lo=None, hi=None))]
fn verify_theorem(path: &PyDyckPath, lo: Option<i64>, hi: Option<i64>) -> PyResult<bool> {
    let w = default_window(&path.0, lo, hi)?;
    Ok(chromatic::verify_theorem(&path.0, &w).passed())
}

#[pyfunction]
fn verify_corollary(path: &PyDyckPath, m: i64) -> bool {
    chromatic::verify_corollary(&path.0, m)
}

#[pyfunction]
fn slide_poly(a: &str, lo: i64, hi: i64) -> PyResult<PyPolynomial> {
    Ok(PyPolynomial(slide::slide_poly(&composition(a)?, &window(lo, hi)?)))
}

#[pyfunction]
fn expand_in_slides(p: &PyPolynomial, lo: i64, hi: i64) -> PyResult<BTreeMap<String, Vec<BigInt>>> {
    let e = slide::expand_in_slides(&p.0, &window(lo, hi)?).map_err(py_err)?;
    Ok(expansion_dict(e.iter()))
}

/// `[(fundamental index parts, slide index)]`.
#[pyfunction]
fn backstable_decompose(a: &str, r: i64) -> PyResult<Vec<(Vec<u32>, String)>> {
    let terms = slide::backstable_decompose(&composition(a)?, r).map_err(py_err)?;
    Ok(terms
        .into_iter()
        .map(|(f, s)| (f.parts().to_vec(), s.to_string()))
        .collect())
}

#[pyfunction]
fn key_polynomial(a: &str, r: i64) -> PyResult<PyPolynomial> {
    keys::key_polynomial(&composition(a)?, r)
        .map(PyPolynomial)
        .map_err(py_err)
}

#[pyfunction]
fn expand_in_keys(p: &PyPolynomial, r: i64) -> PyResult<BTreeMap<String, Vec<BigInt>>> {
    let e = keys::expand_in_keys(&p.0, r).map_err(py_err)?;
    Ok(expansion_dict(e.iter()))
}

/// `[(path literal, composition, coefficients)]` for every negative key
/// coefficient over `P_{n,r}`, `r <= r_max`.
#[pyfunction]
fn search_counterexamples(
    py: Python<'_>,
    n: usize,
    r_max: usize,
) -> PyResult<Vec<(String, String, Vec<BigInt>)>> {
    let found = py
        .detach(|| keys::search_counterexamples(n, r_max))
        .map_err(py_err)?;
    Ok(found
        .into_iter()
        .map(|rec| (rec.path.literal(), rec.composition.to_string(), coeffs(&rec.coefficient)))
        .collect())
}

#[pyfunction]
fn paths(n: usize, r: usize) -> Vec<PyDyckPath> {
    enumerate_paths(n, r).map(PyDyckPath).collect()
}

/// Runs a CLI command line (without the program name); returns
/// `(status, json)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (String, String) {
    let res = slidechrom::cli::run(std::iter::once("slidechrom".to_string()).chain(args));
    let status = match res.status {
        slidechrom::cli::Status::Ok => "ok",
        slidechrom::cli::Status::Mismatch => "mismatch",
        slidechrom::cli::Status::Error => "error",
    };
    (status.to_string(), res.json())
}

#[pymodule]
#[pyo3(name = "slidechrom")]
fn slidechrom_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDyckPath>()?;
    m.add_class::<PyPolynomial>()?;
    m.add_function(wrap_pyfunction!(chromatic_brute, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_theorem, m)?)?;
    m.add_function(wrap_pyfunction!(verify_corollary, m)?)?;
    m.add_function(wrap_pyfunction!(slide_poly, m)?)?;
    m.add_function(wrap_pyfunction!(expand_in_slides, m)?)?;
    m.add_function(wrap_pyfunction!(backstable_decompose, m)?)?;
    m.add_function(wrap_pyfunction!(key_polynomial, m)?)?;
    m.add_function(wrap_pyfunction!(expand_in_keys, m)?)?;
    m.add_function(wrap_pyfunction!(search_counterexamples, m)?)?;
    m.add_function(wrap_pyfunction!(paths, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
