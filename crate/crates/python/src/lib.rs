//! Python bindings: `import mintrans`.

use std::collections::HashMap;

use mintrans_core::cli::{parse_hypergraph, render_hypergraph};
use mintrans_core::domination::{count_minimal_dominating_sets, Graph};
use mintrans_core::oracle::{enumerate_btr, gen_beta_acyclic, GeneratorConfig};
use mintrans_core::{
    find_elimination_ordering, BigCount, Counter, Edge, EngineOptions, Error, FillMode, VertexId,
    VertexSet,
};
use pyo3::create_exception;
use pyo3::exceptions::{PyKeyError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;

create_exception!(
    mintrans,
    NotBetaAcyclicError,
    PyValueError,
    "The hypergraph has no beta-elimination ordering."
);

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::NotBetaAcyclic => NotBetaAcyclicError::new_err("not beta-acyclic"),
        Error::InvalidOrdering | Error::TooLarge { .. } => PyValueError::new_err(e.to_string()),
        Error::InternalInvariantViolation(_) => PyRuntimeError::new_err(e.to_string()),
    }
}

fn fill_mode(fill: &str) -> PyResult<FillMode> {
    match fill {
        "lazy" => Ok(FillMode::Lazy),
        "eager" => Ok(FillMode::Eager),
        other => Err(PyValueError::new_err(format!(
            "fill must be 'lazy' or 'eager', not {other:?}"
        ))),
    }
}

/// A hypergraph whose vertices are named by strings.
#[pyclass(name = "Hypergraph", module = "mintrans", frozen)]
#[derive(Clone)]
struct PyHypergraph {
    inner: mintrans_core::Hypergraph,
    names: Vec<String>,
}

impl PyHypergraph {
    fn from_named<I, E>(edges: I) -> Self
    where
        I: IntoIterator<Item = E>,
        E: IntoIterator<Item = String>,
    {
        let mut names = Vec::new();
        let mut ids: HashMap<String, VertexId> = HashMap::new();
        let edges: Vec<Edge> = edges
            .into_iter()
            .map(|e| {
                e.into_iter()
                    .map(|name| {
                        *ids.entry(name.clone()).or_insert_with(|| {
                            names.push(name);
                            VertexId(names.len() as u32 - 1)
                        })
                    })
                    .collect()
            })
            .collect();
        PyHypergraph {
            inner: mintrans_core::Hypergraph::new(edges),
            names,
        }
    }

    fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    fn lookup(&self, name: &str) -> PyResult<VertexId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|k| VertexId(k as u32))
            .ok_or_else(|| PyKeyError::new_err(name.to_string()))
    }

    fn lookup_all(&self, names: Option<Vec<String>>) -> PyResult<Option<VertexSet>> {
        names
            .map(|ns| ns.iter().map(|n| self.lookup(n)).collect())
            .transpose()
    }

    fn named(&self, set: &VertexSet) -> Vec<String> {
        set.iter().map(|&v| self.name(v).to_string()).collect()
    }
}

#[pymethods]
impl PyHypergraph {
    /// Builds a hypergraph from an iterable of edges; each edge is an iterable
    /// of vertex names (any value, converted with `str`).
    #[new]
    fn new(edges: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<Self> {
        let edges = edges
            .into_iter()
            .map(|e| {
                e.iter()
                    .map(|v| Ok(v.str()?.to_string()))
                    .collect::<PyResult<Vec<_>>>()
            })
            .collect::<PyResult<Vec<_>>>()?;
        Ok(Self::from_named(edges))
    }

    /// Parses the line-per-edge text format (`#` comments, `!` for the empty edge).
    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let parsed = parse_hypergraph(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(PyHypergraph {
            inner: parsed.hypergraph,
            names: parsed.names,
        })
    }

    /// A random beta-acyclic hypergraph with vertices named `v0`, `v1`, ...
    #[staticmethod]
    #[pyo3(signature = (n, m, seed = 0, density = 0.3))]
    fn generate(n: usize, m: usize, seed: u64, density: f64) -> PyResult<Self> {
        if !(density > 0.0 && density <= 1.0) {
            return Err(PyValueError::new_err("density must be in (0, 1]"));
        }
        let h = gen_beta_acyclic(&GeneratorConfig::new(n, m, seed).with_density(density));
        Self::from_text(&render_hypergraph(&h, None))
    }

    fn to_text(&self) -> String {
        render_hypergraph(&self.inner, Some(&self.names))
    }

    fn edges(&self) -> Vec<Vec<String>> {
        self.inner
            .edges()
            .iter()
            .map(|e| e.iter().map(|v| self.name(v).to_string()).collect())
            .collect()
    }

    fn vertices(&self) -> Vec<String> {
        self.named(&self.inner.vertices())
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Hypergraph({} vertices, {} edges)",
            self.inner.vertices().len(),
            self.inner.len()
        )
    }

    fn is_beta_acyclic(&self) -> bool {
        find_elimination_ordering(&self.inner).is_ok()
    }

    /// A beta-elimination ordering; raises `NotBetaAcyclicError` if none exists.
    fn elimination_ordering(&self) -> PyResult<Vec<String>> {
        let ord = find_elimination_ordering(&self.inner).map_err(to_py_err)?;
        Ok(ord
            .order()
            .iter()
            .map(|&v| self.name(v).to_string())
            .collect())
    }

    /// Exact number of minimal transversals.
    #[pyo3(signature = (fill = "lazy", check = false))]
    fn count_minimal_transversals(
        &self,
        py: Python<'_>,
        fill: &str,
        check: bool,
    ) -> PyResult<BigCount> {
        let options = EngineOptions {
            mode: fill_mode(fill)?,
            check_invariants: check,
            record_trace: false,
        };
        let h = self.inner.clone();
        py.detach(move || Counter::new(options).count(&h))
            .map(|r| r.count)
            .map_err(to_py_err)
    }

    /// Exact number of minimal transversals containing `vertex`.
    fn count_containing(&self, py: Python<'_>, vertex: &str) -> PyResult<BigCount> {
        let x = self.lookup(vertex)?;
        let h = self.inner.clone();
        py.detach(move || Counter::default().count_containing(&h, x))
            .map_err(to_py_err)
    }

    /// Lists (blocked) minimal transversals by brute force; small inputs only.
    #[pyo3(signature = (blocked = None, within = None))]
    fn enumerate_minimal_transversals(
        &self,
        blocked: Option<Vec<String>>,
        within: Option<Vec<String>>,
    ) -> PyResult<Vec<Vec<String>>> {
        let b = self.lookup_all(blocked)?.unwrap_or_default();
        let s = self
            .lookup_all(within)?
            .unwrap_or_else(|| self.inner.vertices());
        let family = enumerate_btr(&self.inner, &b, &s).map_err(to_py_err)?;
        Ok(family.iter().map(|t| self.named(t)).collect())
    }
}

/// Number of minimal transversals of a hypergraph given as a list of edges.
#[pyfunction]
fn count_mtr(py: Python<'_>, edges: Vec<Vec<Bound<'_, PyAny>>>) -> PyResult<BigCount> {
    PyHypergraph::new(edges)?.count_minimal_transversals(py, "lazy", false)
}

/// Number of minimal dominating sets of the graph on `0..n` with the given edges.
#[pyfunction]
fn count_mds(py: Python<'_>, n: usize, edges: Vec<(usize, usize)>) -> PyResult<BigCount> {
    let mut g = Graph::new(n);
    for (u, v) in edges {
        g.add_edge(u, v)
            .map_err(|e| PyValueError::new_err(e.to_string()))?;
    }
    py.detach(move || count_minimal_dominating_sets(&g))
        .map_err(to_py_err)
}

#[pymodule]
fn mintrans(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHypergraph>()?;
    m.add_function(wrap_pyfunction!(count_mtr, m)?)?;
    m.add_function(wrap_pyfunction!(count_mds, m)?)?;
    m.add(
        "NotBetaAcyclicError",
        m.py().get_type::<NotBetaAcyclicError>(),
    )?;
    Ok(())
}
