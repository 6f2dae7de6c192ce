//! Python bindings for `crkit`.
//!
//! Structured results cross the boundary as plain dicts and lists, built
//! from the same serde representation the CLI prints.

use std::str::FromStr;

use crkit::cralg::{is_hnr, is_n_reductive, CRAlgebra as CoreAlgebra, CRAlgebraSpec};
use crkit::exact::ExactMatrix;
use crkit::grassmann::{self, OrbitDescriptor as CoreDescriptor};
use crkit::levi::{self, Sampling};
use crkit::mostow::{self, ProbeConfig};
use crkit::CrError;
use num_rational::BigRational;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: CrError) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn rationals(coords: &[String]) -> PyResult<Vec<BigRational>> {
    coords
        .iter()
        .map(|c| BigRational::from_str(c.trim()).map_err(|e| PyValueError::new_err(format!("{c}: {e}"))))
        .collect()
}

/// An orbit label `(p, q, m, a, b)` in `Gr_m(C^{p+q})`.
#[pyclass(frozen, skip_from_py_object, name = "OrbitDescriptor")]
#[derive(Clone, Copy)]
struct PyDescriptor(CoreDescriptor);

#[pymethods]
impl PyDescriptor {
    #[new]
    fn new(p: usize, q: usize, m: usize, a: usize, b: usize) -> PyResult<Self> {
        CoreDescriptor::new(p, q, m, a, b).map(PyDescriptor).map_err(err)
    }

    #[getter]
    fn c(&self) -> usize {
        self.0.c()
    }

    fn is_open(&self) -> bool {
        self.0.is_open()
    }

    fn is_minimal(&self) -> bool {
        self.0.is_minimal()
    }

    fn report(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        to_py(py, &grassmann::orbit_report(&self.0).map_err(err)?)
    }

    fn algebra(&self) -> PyResult<PyAlgebra> {
        Ok(PyAlgebra(grassmann::oracle_algebra(&self.0).map_err(err)?.0))
    }

    fn __repr__(&self) -> String {
        let d = self.0;
        format!("OrbitDescriptor(p={}, q={}, m={}, a={}, b={})", d.p, d.q, d.m, d.a, d.b)
    }
}

/// A complex subalgebra `v` of `sl(p+q, C)` together with its real form.
#[pyclass(frozen, name = "CRAlgebra")]
struct PyAlgebra(CoreAlgebra);

#[pymethods]
impl PyAlgebra {
    /// Build from a JSON spec `{"context": {"p":..,"q":..}, "v_basis": [...]}`.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec: CRAlgebraSpec = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        spec.build().map(PyAlgebra).map_err(err)
    }

    #[getter]
    fn n(&self) -> usize {
        self.0.n_cr()
    }

    #[getter]
    fn k(&self) -> usize {
        self.0.k_cr()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.v().dim()
    }

    fn is_n_reductive(&self) -> bool {
        is_n_reductive(&self.0)
    }

    /// "yes", "no" or "undetermined".
    fn is_hnr(&self) -> PyResult<String> {
        Ok(is_hnr(&self.0).map_err(err)?.to_string())
    }

    fn characteristic_dim(&self) -> PyResult<usize> {
        Ok(levi::characteristic_space(&self.0).map_err(err)?.dim())
    }

    /// Levi signature at the direction with the given rational coordinates in `m0`.
    fn levi_signature(&self, py: Python<'_>, coords: Vec<String>) -> PyResult<Py<PyAny>> {
        to_py(py, &levi::levi_report(&self.0, &rationals(&coords)?).map_err(err)?)
    }

    #[pyo3(signature = (seed = 42, samples = 32))]
    fn pseudoconcavity(&self, py: Python<'_>, seed: u64, samples: usize) -> PyResult<Py<PyAny>> {
        let est = levi::pseudoconcavity_estimate(&self.0, &Sampling { seed, count: samples }, None).map_err(err)?;
        to_py(py, &est)
    }

    #[pyo3(signature = (radius = 0.5, samples = 100, seed = 42))]
    fn mostow_probe(&self, py: Python<'_>, radius: f64, samples: usize, seed: u64) -> PyResult<Py<PyAny>> {
        let cfg = ProbeConfig { radius, samples, seed, ..ProbeConfig::default() };
        let report = py.detach(|| mostow::jacobian_probe(&self.0, &cfg)).map_err(err)?;
        to_py(py, &report)
    }
}

#[pyfunction]
fn enumerate_orbits(p: usize, q: usize, m: usize) -> PyResult<Vec<PyDescriptor>> {
    Ok(grassmann::enumerate_orbits(p, q, m).map_err(err)?.into_iter().map(PyDescriptor).collect())
}

#[pyfunction]
fn orbit_reports(py: Python<'_>, p: usize, q: usize, m: usize) -> PyResult<Py<PyAny>> {
    let reports = py.detach(|| grassmann::orbit_reports(p, q, m)).map_err(err)?;
    to_py(py, &reports)
}

/// Signature of a Hermitian matrix given as rows of "a/b+c/d*i" strings.
#[pyfunction]
fn hermitian_signature(py: Python<'_>, rows: Vec<Vec<String>>) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(&rows).map_err(|e| PyValueError::new_err(e.to_string()))?;
    let m: ExactMatrix = serde_json::from_str(&text).map_err(|e| PyValueError::new_err(e.to_string()))?;
    to_py(py, &levi::hermitian_signature(&m).map_err(err)?)
}

#[pymodule]
fn crkit_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyDescriptor>()?;
    m.add_class::<PyAlgebra>()?;
    m.add_function(wrap_pyfunction!(enumerate_orbits, m)?)?;
    m.add_function(wrap_pyfunction!(orbit_reports, m)?)?;
    m.add_function(wrap_pyfunction!(hermitian_signature, m)?)?;
    Ok(())
}
