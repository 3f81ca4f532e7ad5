use fanodefect::field::FieldDescriptor;
use fanodefect::fibration;
use fanodefect::fixture::Fixture;
use fanodefect::ideals::{self, GbBudget, MonomialOrder};
use fanodefect::mmp::{self, ClosedFormVariant, MmpFlags, StartSpec};
use fanodefect::parse;
use fanodefect::pipeline::{cmd_analyze, Config};
use fanodefect::poly::Ring;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use std::sync::Arc;

fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyResult<PyObject> {
    Ok(match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_py(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py(py)
            }
        }
        serde_json::Value::String(s) => s.into_py(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py(py)
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (k, item) in map {
                dict.set_item(k, json_to_py(py, item)?)?;
            }
            dict.into_py(py)
        }
    })
}

fn report_to_py<T: serde::Serialize>(py: Python<'_>, value: &T) -> PyResult<PyObject> {
    let v = serde_json::to_value(value).map_err(|e| PyRuntimeError::new_err(e.to_string()))?;
    json_to_py(py, &v)
}

fn ring_of(vars: Vec<String>) -> Arc<Ring> {
    Ring::from_names(FieldDescriptor::Rational, vars)
}

fn val(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Run the full quartic-with-a-plane pipeline on fixture text.
/// Returns the analysis report as nested dicts; raises ValueError when a
/// stage fails (the partial report is attached as the second argument).
#[pyfunction]
#[pyo3(signature = (fixture_text, primes=None, jobs=None))]
fn analyze(
    py: Python<'_>,
    fixture_text: &str,
    primes: Option<Vec<u64>>,
    jobs: Option<usize>,
) -> PyResult<PyObject> {
    let fixture = Fixture::parse_str(fixture_text).map_err(val)?;
    let mut config = Config::default();
    if let Some(p) = primes {
        config.primes = p;
    }
    if let Some(j) = jobs {
        config.jobs = j;
    }
    config.validate().map_err(val)?;
    let (report, err) = cmd_analyze(&fixture, &config);
    let doc = report_to_py(py, &report)?;
    match err {
        None => Ok(doc),
        Some(stage) => Err(PyValueError::new_err((stage.to_string(), doc))),
    }
}

/// Contraction-chain bound certificate for a genus-g plane-containing start.
#[pyfunction]
#[pyo3(signature = (genus, no_quadric=false))]
fn mmp_bound(py: Python<'_>, genus: i64, no_quadric: bool) -> PyResult<PyObject> {
    let flags = MmpFlags { no_quadric, ..MmpFlags::default() };
    let cert = mmp::enumerate_bound(StartSpec::Genus(genus), flags).map_err(val)?;
    let variant = if no_quadric { ClosedFormVariant::Cor1 } else { ClosedFormVariant::Cor2 };
    let closed = mmp::closed_form(genus, variant).map_err(val)?;
    let doc = report_to_py(py, &cert)?;
    let dict = doc.downcast_bound::<PyDict>(py)?;
    dict.set_item("closed_form_defect_bound", closed)?;
    Ok(doc)
}

/// Picard-rank bound certificate for an index-2 start of degree d.
#[pyfunction]
fn mmp_bound_index2(py: Python<'_>, degree: i64) -> PyResult<PyObject> {
    let cert =
        mmp::enumerate_bound(StartSpec::Index2Degree(degree), MmpFlags::default()).map_err(val)?;
    let closed = mmp::closed_form_index2(degree).map_err(val)?;
    let doc = report_to_py(py, &cert)?;
    let dict = doc.downcast_bound::<PyDict>(py)?;
    dict.set_item("closed_form_picard_bound", closed)?;
    Ok(doc)
}

/// Reduced Groebner basis of string generators over Q.
#[pyfunction]
#[pyo3(signature = (variables, generators, order="grevlex", max_pairs=None))]
fn groebner_basis(
    py: Python<'_>,
    variables: Vec<String>,
    generators: Vec<String>,
    order: &str,
    max_pairs: Option<usize>,
) -> PyResult<PyObject> {
    let ring = ring_of(variables);
    let gens: Vec<_> = generators
        .iter()
        .map(|g| parse::parse(g, &ring))
        .collect::<Result<_, _>>()
        .map_err(val)?;
    let order = match order {
        "grevlex" => MonomialOrder::Grevlex,
        "lex" => MonomialOrder::Lex,
        other => return Err(PyValueError::new_err(format!("unknown order {other:?}"))),
    };
    let mut budget = GbBudget::default();
    if let Some(m) = max_pairs {
        budget.max_pairs = m;
    }
    let gb = ideals::buchberger(&gens, order, budget).map_err(val)?;
    let dim = ideals::krull_dimension(&gb);
    let dict = PyDict::new_bound(py);
    dict.set_item("basis", gb.generators.iter().map(|g| g.render()).collect::<Vec<_>>())?;
    dict.set_item("krull_dimension", dim)?;
    Ok(dict.into_py(py))
}

/// Modular singular-point scan of a quartic given as a string over Q.
#[pyfunction]
#[pyo3(signature = (variables, quartic, primes=None))]
fn singular_scan(
    py: Python<'_>,
    variables: Vec<String>,
    quartic: &str,
    primes: Option<Vec<u64>>,
) -> PyResult<PyObject> {
    let ring = ring_of(variables);
    let q = parse::parse(quartic, &ring).map_err(val)?;
    let primes = primes.unwrap_or_else(|| fibration::DEFAULT_PRIMES.to_vec());
    let scan = fibration::singular_scan(&q, &primes).map_err(val)?;
    report_to_py(py, &scan)
}

#[pymodule]
fn fanodefect_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(mmp_bound, m)?)?;
    m.add_function(wrap_pyfunction!(mmp_bound_index2, m)?)?;
    m.add_function(wrap_pyfunction!(groebner_basis, m)?)?;
    m.add_function(wrap_pyfunction!(singular_scan, m)?)?;
    Ok(())
}
