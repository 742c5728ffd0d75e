//! Python bindings. Reports, bounds and witnesses cross the boundary as
//! plain dicts decoded from the same JSON the CLI prints.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyAny;

use commdiag_core::adversarial;
use commdiag_core::constructions::{self, Rhomboid, TriploidParams, DEFAULT_RHOMBOID_BUDGET};
use commdiag_core::diagram::{parse_diagram, parse_graph, serialize_diagram, serialize_graph};
use commdiag_core::oracle::{self, DEFAULT_WALK_BUDGET};
use commdiag_core::{OrientedGraph, VerifyOptions, Witness};

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py>(py: Python<'py>, v: &serde_json::Value) -> PyResult<Bound<'py, PyAny>> {
    py.import("json")?.call_method1("loads", (v.to_string(),))
}

fn from_py(obj: &Bound<'_, PyAny>) -> PyResult<serde_json::Value> {
    let text: String = obj.py().import("json")?.call_method1("dumps", (obj,))?.extract()?;
    serde_json::from_str(&text).map_err(value_error)
}

/// An oriented multigraph; loops and parallel edges allowed.
#[pyclass(name = "Graph", module = "commdiag", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: OrientedGraph,
    params: Option<TriploidParams>,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(vertices: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = OrientedGraph::from_pairs(vertices, &edges).map_err(value_error)?;
        Ok(PyGraph { inner, params: None })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyGraph { inner: parse_graph(text).map_err(value_error)?, params: None })
    }

    /// Triploid `T(n1, n2, n3, n0, e)`.
    #[staticmethod]
    fn triploid(n1: u64, n2: u64, n3: u64, n0: u64, e: u64) -> PyResult<Self> {
        let p = TriploidParams::new(n1, n2, n3, n0, e).map_err(value_error)?;
        let inner = constructions::triploid(&p).map_err(value_error)?;
        Ok(PyGraph { inner, params: Some(p) })
    }

    /// The triploid with exactly `n` vertices and `m` edges.
    #[staticmethod]
    fn fit(n: u64, m: u64) -> PyResult<Self> {
        let p = constructions::choose_triploid(n, m).map_err(value_error)?;
        Self::triploid(p.n1, p.n2, p.n3, p.n0, p.e)
    }

    fn to_json(&self) -> String {
        serialize_graph(&self.inner)
    }

    #[getter]
    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    #[getter]
    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    #[getter]
    fn loop_count(&self) -> usize {
        self.inner.loop_count()
    }

    /// `(n1, n2, n3, n0, e)` if built as a triploid.
    #[getter]
    fn triploid_params(&self) -> Option<(u64, u64, u64, u64, u64)> {
        self.params.map(|p| (p.n1, p.n2, p.n3, p.n0, p.e))
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().iter().map(|e| (e.origin, e.tail)).collect()
    }

    fn without_loops(&self) -> Self {
        PyGraph { inner: self.inner.without_loops(), params: None }
    }

    fn is_quasi_acyclic(&self) -> bool {
        self.inner.is_quasi_acyclic()
    }

    fn is_two_path_bounded(&self) -> bool {
        self.inner.is_two_path_bounded()
    }

    fn has_triangle(&self) -> bool {
        self.inner.has_triangle()
    }

    fn has_multiple_edges(&self) -> bool {
        self.inner.has_multiple_edges()
    }

    /// The explicit disjoint family, for graphs built as triploids.
    fn explicit_rhomboids(&self) -> PyResult<Vec<(usize, usize, usize, usize)>> {
        let p = self.params.ok_or_else(|| value_error("graph was not built as a triploid"))?;
        let fam = constructions::explicit_rhomboid_family(&p).map_err(value_error)?;
        Ok(fam.iter().map(|r| (r.a, r.b, r.c, r.d)).collect())
    }

    #[pyo3(signature = (budget = DEFAULT_RHOMBOID_BUDGET))]
    fn greedy_rhomboids(&self, budget: usize) -> PyResult<Vec<(usize, usize, usize, usize)>> {
        let fam = constructions::greedy_disjoint_rhomboids(&self.inner, budget).map_err(value_error)?;
        Ok(fam.iter().map(|r| (r.a, r.b, r.c, r.d)).collect())
    }

    fn is_rhomboid(&self, a: usize, b: usize, c: usize, d: usize) -> PyResult<bool> {
        constructions::is_rhomboid(&self.inner, a, b, c, d).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Graph(vertices={}, edges={})", self.inner.vertex_count(), self.inner.edge_count())
    }
}

/// A monoid-labeled graph.
#[pyclass(name = "Diagram", module = "commdiag", frozen)]
struct PyDiagram {
    inner: commdiag_core::Diagram,
}

#[pymethods]
impl PyDiagram {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyDiagram { inner: parse_diagram(text).map_err(value_error)? })
    }

    fn to_json(&self) -> String {
        serialize_diagram(&self.inner)
    }

    #[getter]
    fn graph(&self) -> PyGraph {
        PyGraph { inner: self.inner.graph().clone(), params: None }
    }

    #[getter]
    fn monoid(&self) -> String {
        self.inner.monoid().to_string()
    }

    /// Runs the verifier; returns the report as a dict.
    #[pyo3(signature = (trace = false))]
    fn verify<'py>(&self, py: Python<'py>, trace: bool) -> PyResult<Bound<'py, PyAny>> {
        let r = commdiag_core::verify(&self.inner, VerifyOptions { trace });
        to_py(py, &r.to_json())
    }

    /// Brute-force verdict over walks of length at most `max_len`
    /// (default: the vertex count).
    #[pyo3(signature = (max_len = None, budget = DEFAULT_WALK_BUDGET))]
    fn oracle(&self, max_len: Option<usize>, budget: usize) -> PyResult<bool> {
        let len = max_len.unwrap_or(self.inner.graph().vertex_count());
        let w = oracle::oracle_check(&self.inner, len, budget).map_err(value_error)?;
        Ok(w.is_none())
    }

    /// Checks a witness dict as found in a verify report.
    fn validate_witness(&self, witness: &Bound<'_, PyAny>) -> PyResult<bool> {
        let w: Witness = serde_json::from_value(from_py(witness)?).map_err(value_error)?;
        Ok(oracle::validate_witness(&self.inner, &w))
    }

    fn __repr__(&self) -> String {
        format!(
            "Diagram(vertices={}, edges={}, monoid={})",
            self.inner.graph().vertex_count(),
            self.inner.graph().edge_count(),
            self.inner.monoid()
        )
    }
}

fn wrap(r: Result<commdiag_core::Diagram, adversarial::AdversarialError>) -> PyResult<PyDiagram> {
    r.map(|inner| PyDiagram { inner }).map_err(value_error)
}

#[pyfunction]
fn nz_edge(graph: &PyGraph, e: usize) -> PyResult<PyDiagram> {
    wrap(adversarial::nz_edge_labeling(&graph.inner, e))
}

#[pyfunction]
fn nz_pair(graph: &PyGraph, e: usize, f: usize) -> PyResult<PyDiagram> {
    wrap(adversarial::nz_pair_labeling(&graph.inner, e, f))
}

#[pyfunction]
fn rhomboid_gap(graph: &PyGraph, rhomboid: (usize, usize, usize, usize)) -> PyResult<PyDiagram> {
    let (a, b, c, d) = rhomboid;
    wrap(adversarial::rhomboid_gap_labeling(&graph.inner, &Rhomboid::new(a, b, c, d)))
}

#[pyfunction]
fn loop_indicator(graph: &PyGraph) -> PyResult<PyDiagram> {
    wrap(adversarial::loop_indicator_labeling(&graph.inner))
}

#[pyfunction]
fn loop_kernel(graph: &PyGraph, v: Vec<i64>) -> PyResult<PyDiagram> {
    let v: Vec<_> = v.into_iter().map(Into::into).collect();
    wrap(adversarial::loop_kernel_labeling(&graph.inner, &v))
}

#[pyfunction]
fn choose_triploid(n: u64, m: u64) -> PyResult<(u64, u64, u64, u64, u64)> {
    let p = constructions::choose_triploid(n, m).map_err(value_error)?;
    Ok((p.n1, p.n2, p.n3, p.n0, p.e))
}

#[pyfunction]
fn rank_bounds(py: Python<'_>, n: u64, m: u64) -> PyResult<Bound<'_, PyAny>> {
    to_py(py, &constructions::rank_bounds(n, m).to_json())
}

#[pyfunction]
fn verify_nu_ge(py: Python<'_>, n: u64, m: u64) -> PyResult<Bound<'_, PyAny>> {
    let r = constructions::verify_nu_ge(n, m).map_err(value_error)?;
    to_py(py, &r.to_json())
}

#[pyfunction]
fn are_disjoint(r1: (usize, usize, usize, usize), r2: (usize, usize, usize, usize)) -> bool {
    constructions::are_disjoint(&Rhomboid::new(r1.0, r1.1, r1.2, r1.3), &Rhomboid::new(r2.0, r2.1, r2.2, r2.3))
}

#[pymodule]
fn commdiag(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(nz_edge, m)?)?;
    m.add_function(wrap_pyfunction!(nz_pair, m)?)?;
    m.add_function(wrap_pyfunction!(rhomboid_gap, m)?)?;
    m.add_function(wrap_pyfunction!(loop_indicator, m)?)?;
    m.add_function(wrap_pyfunction!(loop_kernel, m)?)?;
    m.add_function(wrap_pyfunction!(choose_triploid, m)?)?;
    m.add_function(wrap_pyfunction!(rank_bounds, m)?)?;
    m.add_function(wrap_pyfunction!(verify_nu_ge, m)?)?;
    m.add_function(wrap_pyfunction!(are_disjoint, m)?)?;
    Ok(())
}
