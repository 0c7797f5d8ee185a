//! Python bindings. Reports come back as plain dicts with the same layout as
//! the command-line documents.

use pyo3::create_exception;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

use tomolink::connectivity::{check_conditions, Method};
use tomolink::construction::{
    classify_link, find_cycle_pair, verify_certificate, SearchLimits, SearchOrder, DEFAULT_CEILING,
};
use tomolink::document::{parse_network, parse_rational, serialize_network};
use tomolink::measurement::{
    enumerate_simple_paths, identify, lemma1_transform, MeasurementMatrix, DEFAULT_PATH_CAP,
};
use tomolink::report::{
    CertificateDocument, ClassificationDocument, ConditionsDocument, IdentifyDocument,
    RoundTripDocument, TransformDocument,
};
use tomolink::simulation::{random_network, round_trip};

create_exception!(pytomolink, TomolinkError, PyValueError);

/// `TomolinkError.args` is `(kind, message, exit_code)`.
fn err(e: tomolink::Error) -> PyErr {
    TomolinkError::new_err((e.kind(), e.to_string(), e.exit_code()))
}

fn to_py<'py, T: Serialize>(py: Python<'py>, doc: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(doc).expect("documents serialize");
    py.import("json")?.call_method1("loads", (text,))
}

#[pyclass(name = "Network", module = "pytomolink", frozen)]
struct PyNetwork {
    inner: tomolink::Network,
}

impl PyNetwork {
    fn link(&self, label: &str) -> PyResult<tomolink::Link> {
        self.inner.parse_link(label).map_err(err)
    }
}

#[pymethods]
impl PyNetwork {
    /// Parses and validates a graph document.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        Ok(PyNetwork {
            inner: parse_network(text).map_err(err)?,
        })
    }

    #[staticmethod]
    #[pyo3(signature = (n, extra_links, seed))]
    fn random(n: usize, extra_links: usize, seed: u64) -> PyResult<Self> {
        Ok(PyNetwork {
            inner: random_network(n, extra_links, seed).map_err(err)?,
        })
    }

    fn to_json(&self) -> String {
        serialize_network(&self.inner)
    }

    #[getter]
    fn nodes(&self) -> Vec<String> {
        self.inner.names().to_vec()
    }

    #[getter]
    fn links(&self) -> Vec<(String, String)> {
        self.inner
            .links()
            .into_iter()
            .map(|l| {
                let (a, b) = l.endpoints();
                (self.inner.name(a).to_owned(), self.inner.name(b).to_owned())
            })
            .collect()
    }

    #[getter]
    fn monitors(&self) -> (String, String) {
        let (a, b) = self.inner.monitors();
        (self.inner.name(a).to_owned(), self.inner.name(b).to_owned())
    }

    #[pyo3(signature = (brute_force = false))]
    fn check_conditions<'py>(
        &self,
        py: Python<'py>,
        brute_force: bool,
    ) -> PyResult<Bound<'py, PyAny>> {
        let method = if brute_force {
            Method::BruteForce
        } else {
            Method::Characterization
        };
        let report = check_conditions(&self.inner, method).map_err(err)?;
        to_py(py, &ConditionsDocument::new(&self.inner, &report))
    }

    #[pyo3(signature = (cap = DEFAULT_PATH_CAP))]
    fn simple_paths(&self, cap: usize) -> PyResult<Vec<Vec<String>>> {
        let paths = enumerate_simple_paths(&self.inner, cap).map_err(err)?;
        Ok(paths
            .iter()
            .map(|p| self.inner.node_names(p.nodes()))
            .collect())
    }

    #[pyo3(signature = (cap = DEFAULT_PATH_CAP))]
    fn transform<'py>(&self, py: Python<'py>, cap: usize) -> PyResult<Bound<'py, PyAny>> {
        let m = MeasurementMatrix::for_network(&self.inner, cap).map_err(err)?;
        let t = lemma1_transform(&m, &self.inner).map_err(err)?;
        to_py(py, &TransformDocument::new(&self.inner, &m, &t))
    }

    /// Measurements may be ints or `"p/q"` strings, in path order.
    #[pyo3(signature = (measurements = None, cap = DEFAULT_PATH_CAP))]
    fn identify<'py>(
        &self,
        py: Python<'py>,
        measurements: Option<Vec<Bound<'py, PyAny>>>,
        cap: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let values = measurements
            .map(|ms| {
                ms.iter()
                    .map(|m| parse_rational(&m.str()?.to_string()).map_err(err))
                    .collect::<PyResult<Vec<_>>>()
            })
            .transpose()?;
        let report = identify(&self.inner, cap, values.as_deref()).map_err(err)?;
        to_py(py, &IdentifyDocument::new(&self.inner, &report))
    }

    #[pyo3(signature = (link, ceiling = DEFAULT_CEILING))]
    fn find_cycle_pair<'py>(
        &self,
        py: Python<'py>,
        link: &str,
        ceiling: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let l = self.link(link)?;
        let cert = find_cycle_pair(
            &self.inner,
            l,
            &SearchLimits::new(ceiling),
            SearchOrder::Canonical,
        )
        .map_err(err)?;
        let verdicts = verify_certificate(&self.inner, &cert).map_err(err)?;
        to_py(py, &CertificateDocument::new(&self.inner, &cert, &verdicts))
    }

    #[pyo3(signature = (link, ceiling = DEFAULT_CEILING))]
    fn classify_link<'py>(
        &self,
        py: Python<'py>,
        link: &str,
        ceiling: usize,
    ) -> PyResult<Bound<'py, PyAny>> {
        let l = self.link(link)?;
        let c = classify_link(
            &self.inner,
            l,
            &SearchLimits::new(ceiling),
            SearchOrder::Canonical,
        )
        .map_err(err)?;
        to_py(py, &ClassificationDocument::new(&self.inner, &c))
    }

    fn round_trip<'py>(&self, py: Python<'py>, seed: u64) -> PyResult<Bound<'py, PyAny>> {
        let r = round_trip(&self.inner, seed).map_err(err)?;
        to_py(py, &RoundTripDocument::new(&self.inner, &r))
    }

    fn to_dot(&self) -> String {
        tomolink::dot::render(&self.inner, None)
    }

    fn __repr__(&self) -> String {
        let (m1, m2) = self.monitors();
        format!(
            "Network({} nodes, {} links, monitors {m1}, {m2})",
            self.inner.node_count(),
            self.inner.links().len()
        )
    }
}

/// One of the reference networks: `"k4"`, `"path"` or `"wheel"`.
#[pyfunction]
fn fixture(name: &str) -> PyResult<PyNetwork> {
    let inner = match name {
        "k4" => tomolink::fixtures::k4(),
        "path" => tomolink::fixtures::path(),
        "wheel" => tomolink::fixtures::wheel(),
        _ => return Err(PyValueError::new_err(format!("unknown fixture `{name}`"))),
    };
    Ok(PyNetwork { inner })
}

/// Checks an output document against its schema and returns the schema id.
#[pyfunction]
fn validate_document(text: &str) -> PyResult<&'static str> {
    tomolink::document::validate_document(text)
        .map(|k| k.schema())
        .map_err(err)
}

#[pymodule]
fn pytomolink(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyNetwork>()?;
    m.add_function(wrap_pyfunction!(fixture, m)?)?;
    m.add_function(wrap_pyfunction!(validate_document, m)?)?;
    m.add("TomolinkError", m.py().get_type::<TomolinkError>())?;
    Ok(())
}
