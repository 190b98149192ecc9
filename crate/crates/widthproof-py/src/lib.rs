//! Python bindings. Results cross the boundary as JSON strings so the
//! Python side needs nothing beyond `json.loads`.

use std::time::Duration;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde_json::json;

use widthproof::graph::MultiGraph;
use widthproof::propfile::{reed_formula, PropertyFormula};
use widthproof::search::{Mode, SearchConfig, Strategy};
use widthproof::{oracles, prove, Term};

/// Runs a search and returns the outcome as JSON.
pub fn prove_json(
    property: &str,
    width: usize,
    mode: &str,
    strategy: &str,
    max_states: Option<usize>,
    timeout_secs: Option<f64>,
) -> Result<String, String> {
    let pf = PropertyFormula::load(property, false).map_err(|e| e.to_string())?;
    let comb = pf.to_combination().map_err(|e| e.to_string())?;
    let mode: Mode = mode.parse()?;
    let strategy: Strategy = strategy.parse()?;
    let mut cfg = SearchConfig::new(width, mode, strategy);
    if let Some(n) = max_states {
        cfg.limits.max_states = n;
    }
    if let Some(t) = timeout_secs {
        cfg.limits.timeout = (t > 0.0).then(|| Duration::from_secs_f64(t));
    }
    let out = prove(&comb, &cfg).map_err(|e| e.to_string())?;
    let v = json!({
        "verdict": out.result.verdict,
        "stats": out.result.stats,
        "counterexample": out.counterexample,
    });
    Ok(v.to_string())
}

/// Component flags and formula value of a term, as JSON.
pub fn eval_json(term: &str, property: &str, width: usize) -> Result<String, String> {
    let pf = PropertyFormula::load(property, false).map_err(|e| e.to_string())?;
    let comb = pf.to_combination().map_err(|e| e.to_string())?;
    let term: Term = term.parse().map_err(|e: widthproof::itd::ItdError| e.to_string())?;
    let st = comb.dynamize(&term, width).map_err(|e| e.to_string())?;
    let flags = comb.flags(&st);
    let names: Vec<&str> = pf.bindings.iter().map(|b| b.name.as_str()).collect();
    Ok(json!({ "names": names, "flags": flags, "value": comb.combo_final(&st) }).to_string())
}

/// Chromatic number of a graph in adjacency-list text form.
pub fn chromatic_number_of(adjacency: &str) -> Result<u32, String> {
    let g = MultiGraph::from_adjacency_text(adjacency).map_err(|e| e.to_string())?;
    Ok(oracles::chromatic_number(&g))
}

fn value_err(e: String) -> PyErr {
    PyValueError::new_err(e)
}

/// prove(property, width, mode="pw", strategy="iso-bfs-premise", max_states=None, timeout=None) -> str
#[pyfunction(name = "prove")]
#[pyo3(signature = (property, width, mode="pw", strategy="iso-bfs-premise", max_states=None, timeout=None))]
fn py_prove(
    py: Python<'_>,
    property: &str,
    width: usize,
    mode: &str,
    strategy: &str,
    max_states: Option<usize>,
    timeout: Option<f64>,
) -> PyResult<String> {
    let (property, mode, strategy) = (property.to_owned(), mode.to_owned(), strategy.to_owned());
    py.detach(move || prove_json(&property, width, &mode, &strategy, max_states, timeout)).map_err(value_err)
}

/// eval(term, property, width) -> str
#[pyfunction(name = "eval")]
fn py_eval(term: &str, property: &str, width: usize) -> PyResult<String> {
    eval_json(term, property, width).map_err(value_err)
}

/// Property text for the degree-bounded colouring statement at degree bound `s`.
#[pyfunction]
fn reed_property(s: u32) -> String {
    reed_formula(s).to_string()
}

#[pyfunction]
fn chromatic_number(adjacency: &str) -> PyResult<u32> {
    chromatic_number_of(adjacency).map_err(value_err)
}

#[pymodule]
fn widthproof_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(py_prove, m)?)?;
    m.add_function(wrap_pyfunction!(py_eval, m)?)?;
    m.add_function(wrap_pyfunction!(reed_property, m)?)?;
    m.add_function(wrap_pyfunction!(chromatic_number, m)?)?;
    Ok(())
}
