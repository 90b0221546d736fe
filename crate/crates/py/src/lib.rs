//! Python bindings. Values cross the boundary either as wrapped objects or as
//! JSON strings in the same schema the CLI reads and writes.

use pyo3::exceptions::{PyKeyError, PyValueError};
use pyo3::prelude::*;

use bisetcalc::burnside::{
    burnside_table as table, classify, omega_bullet, omega_plus, omega_star, OmegaElement,
};
use bisetcalc::fixtures;
use bisetcalc::json::{from_str, to_string};
use bisetcalc::laws::{run_laws, Corpus, Law, LawConfig};
use bisetcalc::scat::{is_stab_surjective, sim_factorize, OneCell, ZeroCell};
use bisetcalc::slice::{is_isomorphic, pullback_star, push_bullet, push_plus, SliceObject};

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn group_named(name: &str) -> PyResult<std::sync::Arc<bisetcalc::group::FiniteGroup>> {
    fixtures::group(name).ok_or_else(|| PyKeyError::new_err(format!("unknown group {name:?}")))
}

/// A finite group acting on a finite set.
#[pyclass(
    name = "ZeroCell",
    module = "bisetcalc_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PyZeroCell(ZeroCell);

#[pymethods]
impl PyZeroCell {
    /// The one-point set with a trivial action of a named group.
    #[staticmethod]
    fn point(group: &str) -> PyResult<Self> {
        Ok(PyZeroCell(ZeroCell::point(group_named(group)?)))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        from_str(s).map(PyZeroCell).map_err(value_err)
    }

    fn to_json(&self) -> String {
        to_string(&self.0)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn group(&self) -> String {
        self.0.group().name().to_string()
    }

    #[getter]
    fn group_order(&self) -> usize {
        self.0.group().order()
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!(
            "ZeroCell({} points, group {})",
            self.0.size(),
            self.0.group().name()
        )
    }
}

#[pyclass(name = "OneCell", module = "bisetcalc_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOneCell(OneCell);

#[pymethods]
impl PyOneCell {
    /// A cell from the built-in corpus.
    #[staticmethod]
    fn fixture(name: &str) -> PyResult<Self> {
        fixtures::cell(name)
            .map(|f| PyOneCell(f.cell))
            .ok_or_else(|| PyKeyError::new_err(format!("unknown cell {name:?}")))
    }

    #[staticmethod]
    fn fixture_names() -> Vec<&'static str> {
        fixtures::cells().into_iter().map(|f| f.name).collect()
    }

    #[staticmethod]
    fn identity(x: &PyZeroCell) -> Self {
        PyOneCell(OneCell::identity(x.0.clone()))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        from_str(s).map(PyOneCell).map_err(value_err)
    }

    fn to_json(&self) -> String {
        to_string(&self.0)
    }

    #[getter]
    fn source(&self) -> PyZeroCell {
        PyZeroCell(self.0.source().clone())
    }

    #[getter]
    fn target(&self) -> PyZeroCell {
        PyZeroCell(self.0.target().clone())
    }

    fn is_equivariant(&self) -> bool {
        self.0.is_equivariant()
    }

    fn is_stab_surjective(&self) -> bool {
        is_stab_surjective(&self.0).holds()
    }

    /// `(u, α̃)` with `α̃` returned as a cell between the middle and the target.
    fn sim_factorize(&self) -> (PyOneCell, PyOneCell) {
        let fac = sim_factorize(&self.0);
        (
            PyOneCell(fac.u),
            PyOneCell(OneCell::from_gmap(&fac.a_tilde)),
        )
    }

    fn then(&self, next: &PyOneCell) -> PyResult<PyOneCell> {
        self.0.then(&next.0).map(PyOneCell).map_err(value_err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!(
            "OneCell({} -> {})",
            PyZeroCell(self.0.source().clone()).__repr__(),
            PyZeroCell(self.0.target().clone()).__repr__()
        )
    }
}

/// A G-set over a 0-cell.
#[pyclass(
    name = "SliceObject",
    module = "bisetcalc_py",
    frozen,
    skip_from_py_object
)]
#[derive(Clone)]
struct PySliceObject(SliceObject);

#[pymethods]
impl PySliceObject {
    #[staticmethod]
    fn terminal(base: &PyZeroCell) -> Self {
        PySliceObject(SliceObject::terminal(base.0.clone()))
    }

    #[staticmethod]
    fn initial(base: &PyZeroCell) -> Self {
        PySliceObject(SliceObject::initial(base.0.clone()))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        from_str(s).map(PySliceObject).map_err(value_err)
    }

    fn to_json(&self) -> String {
        to_string(&self.0)
    }

    #[getter]
    fn size(&self) -> usize {
        self.0.size()
    }

    #[getter]
    fn base(&self) -> PyZeroCell {
        PyZeroCell(self.0.base().clone())
    }

    /// The isomorphism class as a JSON string.
    fn class_json(&self) -> String {
        to_string(&classify(&self.0))
    }

    fn is_isomorphic(&self, other: &PySliceObject) -> bool {
        is_isomorphic(&self.0, &other.0)
    }

    fn sum(&self, other: &PySliceObject) -> PyResult<PySliceObject> {
        self.0.sum(&other.0).map(PySliceObject).map_err(value_err)
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!(
            "SliceObject({} points over {} points, group {})",
            self.0.size(),
            self.0.base().size(),
            self.0.base().group().name()
        )
    }
}

/// An element of the Burnside ring of a 0-cell.
#[pyclass(name = "Omega", module = "bisetcalc_py", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyOmega(OmegaElement);

#[pymethods]
impl PyOmega {
    #[staticmethod]
    fn zero(base: &PyZeroCell) -> Self {
        PyOmega(OmegaElement::zero(base.0.clone()))
    }

    #[staticmethod]
    fn one(base: &PyZeroCell) -> Self {
        PyOmega(OmegaElement::one(base.0.clone()))
    }

    #[staticmethod]
    fn from_object(obj: &PySliceObject) -> Self {
        PyOmega(OmegaElement::from_object(&obj.0))
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        from_str(s).map(PyOmega).map_err(value_err)
    }

    fn to_json(&self) -> String {
        to_string(&self.0)
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_effective(&self) -> bool {
        self.0.is_effective()
    }

    fn __add__(&self, other: &PyOmega) -> PyResult<PyOmega> {
        self.0.add(&other.0).map(PyOmega).map_err(value_err)
    }

    fn __sub__(&self, other: &PyOmega) -> PyResult<PyOmega> {
        self.0.sub(&other.0).map(PyOmega).map_err(value_err)
    }

    fn __mul__(&self, other: &PyOmega) -> PyResult<PyOmega> {
        self.0.mul(&other.0).map(PyOmega).map_err(value_err)
    }

    fn __neg__(&self) -> PyOmega {
        PyOmega(self.0.scale(-1))
    }

    fn scale(&self, k: i64) -> PyOmega {
        PyOmega(self.0.scale(k))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Omega({})", self.0)
    }
}

#[pyfunction]
fn pull_star(cell: &PyOneCell, obj: &PySliceObject) -> PyResult<PySliceObject> {
    pullback_star(&cell.0, &obj.0)
        .map(|p| PySliceObject(p.object))
        .map_err(value_err)
}

#[pyfunction]
fn push_forward_plus(cell: &PyOneCell, obj: &PySliceObject) -> PyResult<PySliceObject> {
    push_plus(&cell.0, &obj.0)
        .map(|p| PySliceObject(p.object))
        .map_err(value_err)
}

#[pyfunction]
fn push_forward_bullet(cell: &PyOneCell, obj: &PySliceObject) -> PyResult<PySliceObject> {
    push_bullet(&cell.0, &obj.0)
        .map(|p| PySliceObject(p.object))
        .map_err(value_err)
}

#[pyfunction(name = "omega_star")]
fn py_omega_star(cell: &PyOneCell, y: &PyOmega) -> PyResult<PyOmega> {
    omega_star(&cell.0, &y.0).map(PyOmega).map_err(value_err)
}

#[pyfunction(name = "omega_plus")]
fn py_omega_plus(cell: &PyOneCell, x: &PyOmega) -> PyResult<PyOmega> {
    omega_plus(&cell.0, &x.0).map(PyOmega).map_err(value_err)
}

#[pyfunction(name = "omega_bullet")]
fn py_omega_bullet(cell: &PyOneCell, x: &PyOmega) -> PyResult<PyOmega> {
    omega_bullet(&cell.0, &x.0).map(PyOmega).map_err(value_err)
}

/// Structure constants of `Ω(pt/G)` as a JSON string.
#[pyfunction]
fn burnside_table(group: &str) -> PyResult<String> {
    let t = table(&ZeroCell::point(group_named(group)?));
    serde_json::to_string(&t).map_err(value_err)
}

/// Runs one law (or `"all"`) over the built-in corpus; returns the reports as JSON.
#[pyfunction]
#[pyo3(signature = (law, bound = 3, seed = 0))]
fn verify(py: Python<'_>, law: &str, bound: usize, seed: u64) -> PyResult<String> {
    let laws: Vec<Law> = if law == "all" {
        Law::ALL.to_vec()
    } else {
        vec![law.parse().map_err(PyKeyError::new_err)?]
    };
    let cfg = LawConfig {
        bound,
        seed,
        ..LawConfig::default()
    };
    let reports = py.detach(|| run_laws(&laws, &Corpus::builtin(), &cfg));
    serde_json::to_string(&reports).map_err(value_err)
}

#[pymodule]
fn bisetcalc_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyZeroCell>()?;
    m.add_class::<PyOneCell>()?;
    m.add_class::<PySliceObject>()?;
    m.add_class::<PyOmega>()?;
    m.add_function(wrap_pyfunction!(pull_star, m)?)?;
    m.add_function(wrap_pyfunction!(push_forward_plus, m)?)?;
    m.add_function(wrap_pyfunction!(push_forward_bullet, m)?)?;
    m.add_function(wrap_pyfunction!(py_omega_star, m)?)?;
    m.add_function(wrap_pyfunction!(py_omega_plus, m)?)?;
    m.add_function(wrap_pyfunction!(py_omega_bullet, m)?)?;
    m.add_function(wrap_pyfunction!(burnside_table, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
