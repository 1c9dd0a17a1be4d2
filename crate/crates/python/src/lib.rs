use std::sync::Arc;

use num_complex::Complex64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use eqkt::clifford_spinor::{a_factor, cyclic_actions, perp_supertrace, ElementAction};
use eqkt::group_rep::{build_group, ClassFunction, GroupFamily};
use eqkt::models::{circle_spectrum, sphere_index_character, CircleGeometry, SphereGeometry};
use eqkt::r_torus::{torus_add, torus_distance, torus_sub, TorusElement};
use eqkt::spectral_eta::{
    xi_closed_form, xi_reduced, xi_smoothed_oracle, ArithmeticSpectrum, SmoothingConfig, SpectrumJson,
};
use eqkt::verify::{run_suite, RunConfig};

fn err(e: eqkt::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn family(group: &str) -> PyResult<GroupFamily> {
    group.parse().map_err(err)
}

#[pyclass(name = "CharacterTable", module = "pyeqkt", frozen)]
struct PyCharacterTable {
    inner: Arc<eqkt::group_rep::CharacterTable>,
}

#[pymethods]
impl PyCharacterTable {
    #[new]
    fn new(group: &str) -> PyResult<Self> {
        let (_, inner) = build_group(&family(group)?).map_err(err)?;
        Ok(PyCharacterTable { inner })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.group().order()
    }

    #[getter]
    fn num_classes(&self) -> usize {
        self.inner.group().num_classes()
    }

    fn characters(&self) -> Vec<Vec<Complex64>> {
        (0..self.inner.len()).map(|i| self.inner.irrep(i).values().to_vec()).collect()
    }

    /// Multiplicities of each irreducible character in a class function.
    fn decompose(&self, values: Vec<Complex64>) -> PyResult<Vec<Complex64>> {
        let f = ClassFunction::new(self.inner.group().clone(), values).map_err(err)?;
        self.inner.decompose(&f).map_err(err)
    }

    fn to_csv(&self) -> String {
        self.inner.to_csv()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("CharacterTable({})", self.inner.group().family())
    }
}

#[pyclass(name = "TorusElement", module = "pyeqkt", frozen)]
struct PyTorusElement {
    inner: TorusElement,
}

#[pymethods]
impl PyTorusElement {
    #[new]
    fn new(group: &str, coeffs: Vec<f64>) -> PyResult<Self> {
        let (_, table) = build_group(&family(group)?).map_err(err)?;
        Ok(PyTorusElement { inner: TorusElement::from_coeffs(table, &coeffs).map_err(err)? })
    }

    #[getter]
    fn coefficients(&self) -> Vec<f64> {
        self.inner.coeffs().to_vec()
    }

    fn class_function(&self) -> Vec<Complex64> {
        self.inner.to_class_function().values().to_vec()
    }

    fn distance(&self, other: &PyTorusElement) -> PyResult<f64> {
        torus_distance(&self.inner, &other.inner).map_err(err)
    }

    fn __add__(&self, other: &PyTorusElement) -> PyResult<PyTorusElement> {
        Ok(PyTorusElement { inner: torus_add(&self.inner, &other.inner).map_err(err)? })
    }

    fn __sub__(&self, other: &PyTorusElement) -> PyResult<PyTorusElement> {
        Ok(PyTorusElement { inner: torus_sub(&self.inner, &other.inner).map_err(err)? })
    }

    fn __neg__(&self) -> PyTorusElement {
        PyTorusElement { inner: self.inner.negate() }
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!("TorusElement({}, {:?})", self.inner.table().group().family(), self.inner.coeffs())
    }
}

#[pyclass(name = "Spectrum", module = "pyeqkt", frozen)]
struct PySpectrum {
    inner: ArithmeticSpectrum,
}

#[pymethods]
impl PySpectrum {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let spec: SpectrumJson = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PySpectrum { inner: spec.build().map_err(err)? })
    }

    #[staticmethod]
    fn shifted_integers(offset: f64) -> Self {
        PySpectrum { inner: ArithmeticSpectrum::shifted_integers(offset) }
    }

    #[staticmethod]
    #[pyo3(signature = (k, spin_offset, beta, chi = 0))]
    fn circle(k: usize, spin_offset: f64, beta: f64, chi: usize) -> PyResult<Self> {
        let geom = CircleGeometry::new(k, spin_offset, beta, chi).map_err(err)?;
        Ok(PySpectrum { inner: circle_spectrum(&geom).map_err(err)? })
    }

    fn eigenvalues(&self, lo: f64, hi: f64) -> Vec<(f64, Vec<Complex64>)> {
        self.inner.eigenvalues_in(lo, hi).into_iter().map(|(l, w)| (l, w.values().to_vec())).collect()
    }

    #[pyo3(signature = (alpha = 0.0))]
    fn xi(&self, alpha: f64) -> PyResult<Vec<Complex64>> {
        Ok(xi_closed_form(&self.inner, alpha).map_err(err)?.values().to_vec())
    }

    /// Heat-smoothed value and its error estimate.
    #[pyo3(signature = (alpha = 0.0))]
    fn xi_smoothed(&self, alpha: f64) -> PyResult<(Vec<Complex64>, f64)> {
        let s = xi_smoothed_oracle(&self.inner, alpha, &SmoothingConfig::default()).map_err(err)?;
        Ok((s.value.values().to_vec(), s.error_estimate))
    }

    fn xi_reduced(&self) -> PyResult<PyTorusElement> {
        Ok(PyTorusElement { inner: xi_reduced(&self.inner).map_err(err)?.reduced })
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner.to_json()).map_err(|e| PyValueError::new_err(e.to_string()))
    }
}

/// Supertrace of the spin lift on the rotated planes.
#[pyfunction]
#[pyo3(signature = (angles, fixed_dim = 0, negative = false))]
fn plane_supertrace(angles: Vec<f64>, fixed_dim: usize, negative: bool) -> PyResult<Complex64> {
    perp_supertrace(&ElementAction { angles, fixed_dim, negative }).map_err(err)
}

/// Per-element factor for a cyclic group acting through the given weights.
#[pyfunction]
#[pyo3(signature = (k, weights, fixed_dim = 0, negative_generator = false))]
fn cyclic_a_factor(
    k: usize,
    weights: Vec<i64>,
    fixed_dim: usize,
    negative_generator: bool,
) -> PyResult<Vec<Complex64>> {
    let (group, _) = build_group(&GroupFamily::Cyclic { k }).map_err(err)?;
    let actions = cyclic_actions(k, &weights, fixed_dim, negative_generator);
    Ok(a_factor(&group, &actions).map_err(err)?.values().to_vec())
}

/// Irrep multiplicities of the twisted Dirac index on the sphere.
#[pyfunction]
fn sphere_index(k: usize, degree: i64, north_weight: i64) -> PyResult<Vec<i64>> {
    let geom = SphereGeometry::new(k, degree, north_weight).map_err(err)?;
    Ok(sphere_index_character(&geom).map_err(err)?.coeffs().to_vec())
}

/// Runs a verification suite and returns the report as JSON.
#[pyfunction]
#[pyo3(signature = (name, tolerance = None))]
fn verify(name: &str, tolerance: Option<f64>) -> PyResult<String> {
    let mut cfg = RunConfig::default();
    if let Some(t) = tolerance {
        cfg.tolerance = t;
    }
    let report = run_suite(name, &cfg).map_err(err)?;
    serde_json::to_string(&report).map_err(|e| PyValueError::new_err(e.to_string()))
}

#[pymodule]
fn pyeqkt(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyCharacterTable>()?;
    m.add_class::<PyTorusElement>()?;
    m.add_class::<PySpectrum>()?;
    m.add_function(wrap_pyfunction!(plane_supertrace, m)?)?;
    m.add_function(wrap_pyfunction!(cyclic_a_factor, m)?)?;
    m.add_function(wrap_pyfunction!(sphere_index, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
