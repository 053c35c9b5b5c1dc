//! Python bindings: lattices, elementary links, descriptors and torus
//! diagrams, with the decision procedures returning plain dicts.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use motif::descriptor::{
    cover_degree_bound, degree_bound_rules, descriptor_equivalent, is_jsj_admissible, lift_descriptor,
};
use motif::diagram::{equivalence_search, SearchConfig, SearchVerdict};
use motif::elementary::{self, MinimalStatus, ScaleVerdict, Separation};
use motif::{Ambient, DegreeBound, Error};
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

pyo3::create_exception!(periodic_motif, NotAdmissibleError, PyValueError);

fn err(e: Error) -> PyErr {
    match e {
        Error::NotAdmissible(_) => NotAdmissibleError::new_err(e.to_string()),
        Error::Overflow => PyRuntimeError::new_err(e.to_string()),
        _ => PyValueError::new_err(e.to_string()),
    }
}

fn hash_of<T: Hash>(x: &T) -> u64 {
    let mut h = DefaultHasher::new();
    x.hash(&mut h);
    h.finish()
}

#[pyclass(name = "Lattice", frozen, skip_from_py_object, module = "periodic_motif")]
#[derive(Clone)]
struct PyLattice(motif::Lattice);

#[pymethods]
impl PyLattice {
    /// Parses a basis such as "[[2,0],[1,1]]" and takes its Hermite normal form.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyLattice).map_err(err)
    }

    #[staticmethod]
    fn enumerate(dim: usize, index: i64) -> PyResult<Vec<PyLattice>> {
        Ok(motif::Lattice::enumerate(dim, index).map_err(err)?.into_iter().map(PyLattice).collect())
    }

    #[getter]
    fn basis(&self) -> Vec<Vec<i64>> {
        self.0.basis().clone()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.0.dim()
    }

    #[getter]
    fn index(&self) -> i64 {
        self.0.index()
    }

    fn meet(&self, other: &PyLattice) -> PyResult<PyLattice> {
        self.0.meet(&other.0).map(PyLattice).map_err(err)
    }

    fn join(&self, other: &PyLattice) -> PyResult<PyLattice> {
        self.0.join(&other.0).map(PyLattice).map_err(err)
    }

    fn contains(&self, other: &PyLattice) -> PyResult<bool> {
        self.0.contains(&other.0).map_err(err)
    }

    fn contains_vector(&self, v: Vec<i64>) -> PyResult<bool> {
        self.0.contains_vector(&v).map_err(err)
    }

    fn cosets(&self) -> Vec<Vec<i64>> {
        self.0.cosets()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Lattice('{}')", self.0)
    }

    fn __eq__(&self, other: &PyLattice) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0.to_string())
    }
}

#[pyclass(name = "ElementaryLink", frozen, skip_from_py_object, module = "periodic_motif")]
#[derive(Clone)]
struct PyLink(motif::ElementaryLink);

#[pymethods]
impl PyLink {
    /// Parses "T0(p,q)", "T1(p,q)", "T2(p,q)" or "T3(p,q,r)" into canonical form.
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyLink).map_err(err)
    }

    #[getter]
    fn family(&self) -> String {
        format!("{:?}", self.0.family())
    }

    #[getter]
    fn params(&self) -> Vec<i64> {
        self.0.params().to_vec()
    }

    #[getter]
    fn ambient(&self) -> &'static str {
        self.0.ambient().name()
    }

    #[getter]
    fn components(&self) -> i64 {
        self.0.components()
    }

    fn homology_classes(&self) -> Vec<Vec<i64>> {
        self.0.homology_classes()
    }

    fn lift(&self, cover: &PyLattice) -> PyResult<PyLink> {
        self.0.lift(&cover.0).map(PyLink).map_err(err)
    }

    fn dehn_twist(&self, matrix: Vec<Vec<i64>>) -> PyResult<PyLink> {
        self.0.dehn_twist(&matrix).map(PyLink).map_err(err)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("ElementaryLink('{}')", self.0)
    }

    fn __eq__(&self, other: &PyLink) -> bool {
        self.0 == other.0
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0)
    }
}

#[pyclass(name = "MotifDescriptor", frozen, skip_from_py_object, module = "periodic_motif")]
#[derive(Clone)]
struct PyDescriptor(motif::MotifDescriptor);

#[pymethods]
impl PyDescriptor {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyDescriptor).map_err(err)
    }

    #[getter]
    fn ambient(&self) -> &'static str {
        self.0.ambient().name()
    }

    fn lift(&self, cover: &PyLattice) -> PyResult<PyDescriptor> {
        lift_descriptor(&self.0, &cover.0).map(PyDescriptor).map_err(err)
    }

    fn equivalent(&self, other: &PyDescriptor) -> PyResult<bool> {
        descriptor_equivalent(&self.0, &other.0).map_err(err)
    }

    /// `(kind, value)` with kind "finite", "unbounded" or "unknown".
    fn degree_bound(&self) -> (&'static str, Option<u64>) {
        match cover_degree_bound(&self.0) {
            DegreeBound::Finite(n) => ("finite", Some(n)),
            DegreeBound::Unbounded => ("unbounded", None),
            DegreeBound::Unknown => ("unknown", None),
        }
    }

    fn bound_rules(&self) -> Vec<(&'static str, u64)> {
        degree_bound_rules(&self.0).into_iter().map(|r| (r.rule, r.value)).collect()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("MotifDescriptor('{}')", self.0)
    }
}

#[pyclass(name = "TorusDiagram", frozen, skip_from_py_object, module = "periodic_motif")]
#[derive(Clone)]
struct PyDiagram(motif::diagram::TorusDiagram);

#[pymethods]
impl PyDiagram {
    /// Reads the JSON diagram format.
    #[new]
    fn new(json: &str) -> PyResult<Self> {
        motif::diagram::TorusDiagram::from_json(json).map(PyDiagram).map_err(err)
    }

    #[staticmethod]
    fn from_loops(loops: Vec<[i64; 2]>) -> PyDiagram {
        PyDiagram(motif::diagram::TorusDiagram::from_loops(&loops))
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn crossing_count(&self) -> usize {
        self.0.crossing_count()
    }

    fn validate(&self) -> Vec<String> {
        self.0.validate()
    }

    fn components(&self) -> PyResult<usize> {
        self.0.components().map_err(err)
    }

    fn homology_multiset(&self) -> PyResult<Vec<[i64; 2]>> {
        self.0.homology_multiset().map_err(err)
    }

    fn linking_matrix(&self) -> PyResult<Vec<Vec<i64>>> {
        self.0.linking_matrix().map_err(err)
    }

    fn canonical_hash(&self) -> String {
        self.0.canonical_hash()
    }

    fn lift(&self, cover: &PyLattice) -> PyResult<PyDiagram> {
        self.0.lift(&cover.0).map(PyDiagram).map_err(err)
    }

    fn dehn_twist(&self, matrix: Vec<Vec<i64>>) -> PyResult<PyDiagram> {
        self.0.dehn_twist(&matrix).map(PyDiagram).map_err(err)
    }

    fn to_dot(&self) -> String {
        self.0.to_dot()
    }

    fn __repr__(&self) -> String {
        format!("TorusDiagram({} crossings, {} loops)", self.0.crossing_count(), self.0.loops().len())
    }

    fn __eq__(&self, other: &PyDiagram) -> bool {
        self.0.canonical_hash() == other.0.canonical_hash()
    }

    fn __hash__(&self) -> u64 {
        hash_of(&self.0.canonical_hash())
    }
}

fn separation<'py>(py: Python<'py>, d: &Bound<'py, PyDict>, s: &Separation) -> PyResult<()> {
    let sep = PyDict::new(py);
    sep.set_item("invariant", &s.invariant)?;
    sep.set_item("left", &s.left)?;
    sep.set_item("right", &s.right)?;
    d.set_item("separation", sep)
}

/// Common-cover decision for two elementary links. Returns a dict with
/// "verdict" ("yes", "no", "unknown") and either "degrees", "covers" and
/// "common", or "separation".
#[pyfunction]
#[pyo3(signature = (a, b, bound = 12))]
fn scale_equivalent<'py>(py: Python<'py>, a: &PyLink, b: &PyLink, bound: i64) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match elementary::scale_equivalent(&a.0, &b.0, bound).map_err(err)? {
        ScaleVerdict::Yes(w) => {
            d.set_item("verdict", "yes")?;
            d.set_item("degrees", w.degrees())?;
            d.set_item("covers", (w.cover0.to_string(), w.cover1.to_string()))?;
            d.set_item("twists", (w.twist0.clone(), w.twist1.clone()))?;
            d.set_item("common", w.common.to_string())?;
        }
        ScaleVerdict::No(s) => {
            d.set_item("verdict", "no")?;
            separation(py, &d, &s)?;
        }
        ScaleVerdict::Unknown => d.set_item("verdict", "unknown")?,
    }
    Ok(d)
}

/// `(link, status, candidates)` with status "exact", "best_known" or "not_unique".
#[pyfunction]
fn minimal_motif(e: &PyLink) -> PyResult<(PyLink, &'static str, Vec<PyLink>)> {
    let m = elementary::minimal_motif(&e.0).map_err(err)?;
    Ok(match m.status {
        MinimalStatus::Unique => (PyLink(m.link), "exact", vec![]),
        MinimalStatus::BestKnown => (PyLink(m.link), "best_known", vec![]),
        MinimalStatus::NotUnique(c) => (PyLink(m.link), "not_unique", c.into_iter().map(PyLink).collect()),
    })
}

/// Bounded search for a move sequence. Yes verdicts carry the certificate as
/// JSON and whether it replayed.
#[pyfunction]
#[pyo3(signature = (d0, d1, allow_twists = false, max_depth = 12, max_crossings = None, max_states = 200_000))]
fn equivalence<'py>(
    py: Python<'py>,
    d0: &PyDiagram,
    d1: &PyDiagram,
    allow_twists: bool,
    max_depth: usize,
    max_crossings: Option<usize>,
    max_states: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let cfg = SearchConfig { max_crossings, max_depth, allow_twists, max_states };
    let (a, b) = (d0.0.clone(), d1.0.clone());
    let verdict = py.detach(move || equivalence_search(&a, &b, &cfg)).map_err(err)?;
    let d = PyDict::new(py);
    match verdict {
        SearchVerdict::Yes(c) => {
            d.set_item("verdict", "yes")?;
            d.set_item("moves", c.len())?;
            d.set_item("replayed", c.replay(&d0.0, &d1.0).map_err(err)?)?;
            let json = serde_json::to_string(&c).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
            d.set_item("certificate", json)?;
        }
        SearchVerdict::No(s) => {
            d.set_item("verdict", "no")?;
            separation(py, &d, &s)?;
        }
        SearchVerdict::Unknown { explored } => {
            d.set_item("verdict", "unknown")?;
            d.set_item("explored", explored)?;
        }
    }
    Ok(d)
}

/// `(admissible, reason, exception)` for a Seifert symbol such as "M(0,1; 1/2, 1/3)".
#[pyfunction]
fn jsj_admissible(symbol: &str, ambient: &str) -> PyResult<(bool, String, Option<String>)> {
    let s = symbol.parse().map_err(err)?;
    let ambient: Ambient = ambient.parse().map_err(err)?;
    let a = is_jsj_admissible(&s, ambient);
    Ok((a.admissible, a.reason, a.exception))
}

#[pymodule]
fn periodic_motif(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyLattice>()?;
    m.add_class::<PyLink>()?;
    m.add_class::<PyDescriptor>()?;
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(scale_equivalent, m)?)?;
    m.add_function(wrap_pyfunction!(minimal_motif, m)?)?;
    m.add_function(wrap_pyfunction!(equivalence, m)?)?;
    m.add_function(wrap_pyfunction!(jsj_admissible, m)?)?;
    m.add("NotAdmissibleError", m.py().get_type::<NotAdmissibleError>())?;
    Ok(())
}
