//! Reconstructs a witness term from a refuting search trace and validates
//! it independently of the search.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::Relabeling;
use crate::dpcore::Combination;
use crate::graph::{MultiGraph, VertexId};
use crate::itd::{ItdError, Term};
use crate::labels::Label;
use crate::oracles;
use crate::search::{search, Mode, Rule, SearchConfig, SearchError, SearchResult, TraceEntry, Verdict};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("trace index {0} out of range")]
    BadIndex(usize),
    #[error("no free label for a forgotten vertex at trace index {0}")]
    NoFreeLabel(usize),
    #[error("relabeling at trace index {0} does not cover its bag")]
    BadRelabeling(usize),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ValidationError {
    #[error("term is not legal: {0}")]
    Illegal(#[from] ItdError),
    #[error("term width {width} exceeds {k}")]
    TooWide { width: usize, k: usize },
    #[error("replaying the term gives a consistent state; no counterexample")]
    ReplayConsistent,
    #[error("replayed state differs from the trace's final state")]
    ReplayMismatch,
    #[error("component {index} ({name}): transitions say {dp}, direct check says {oracle}")]
    OracleMismatch { index: usize, name: String, dp: bool, oracle: bool },
    #[error("direct check says the graph satisfies the formula")]
    OracleConsistent,
    #[error("pathwidth witness contains a join")]
    JoinInPathwidth,
    #[error("decomposition check failed: {0}")]
    Decomposition(String),
}

/// Term of trace entry `i` whose dynamization is `g · state_i`.
fn build(trace: &[TraceEntry], k: usize, i: usize, g: &Relabeling) -> Result<Term, ExtractError> {
    let e = trace.get(i).ok_or(ExtractError::BadIndex(i))?;
    let h = g.compose(&e.relabel).ok_or(ExtractError::BadRelabeling(i))?;
    let parent_bag = |p: usize| trace.get(p).map(|t| t.state.bag).ok_or(ExtractError::BadIndex(p));
    Ok(match &e.rule {
        Rule::Init => Term::Leaf,
        Rule::IntroVertex { parent, label } => {
            let sub = h.restrict(parent_bag(*parent)?);
            let hu = h.get(*label).ok_or(ExtractError::BadRelabeling(i))?;
            Term::intro_vertex(hu, build(trace, k, *parent, &sub)?)
        }
        Rule::ForgetVertex { parent, label } => {
            let ext = h.extend_smallest(*label, (k + 1) as Label).ok_or(ExtractError::NoFreeLabel(i))?;
            let hu = ext.apply(*label);
            Term::forget_vertex(hu, build(trace, k, *parent, &ext)?)
        }
        Rule::IntroEdge { parent, u, v } => {
            let (a, b) = (h.get(*u), h.get(*v));
            let (Some(a), Some(b)) = (a, b) else { return Err(ExtractError::BadRelabeling(i)) };
            Term::intro_edge(a, b, build(trace, k, *parent, &h)?)
        }
        Rule::Join { left, right, perm } => {
            let hr = h.compose(perm).ok_or(ExtractError::BadRelabeling(i))?;
            Term::join(build(trace, k, *left, &h)?, build(trace, k, *right, &hr)?)
        }
    })
}

/// Witness term for the last trace entry, labelled as stored.
pub fn extract(trace: &[TraceEntry], k: usize) -> Result<Term, ExtractError> {
    let last = trace.len().checked_sub(1).ok_or(ExtractError::BadIndex(0))?;
    build(trace, k, last, &Relabeling::identity(trace[last].state.bag))
}

/// A validated counterexample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub term: String,
    pub width: usize,
    pub graph: MultiGraph,
    pub flags: Vec<bool>,
    /// Path bags (pathwidth) or preorder node bags with parents (treewidth).
    pub bags: Vec<Vec<VertexId>>,
    pub parents: Vec<Option<usize>>,
}

/// Replay, direct-check and decomposition validation of a witness term.
pub fn validate(comb: &Combination, term: &Term, k: usize, mode: Mode) -> Result<Counterexample, ValidationError> {
    let width = term.width(k)?;
    if width > k {
        return Err(ValidationError::TooWide { width, k });
    }
    let replay = comb.dynamize(term, k)?;
    if comb.combo_final(&replay) {
        return Err(ValidationError::ReplayConsistent);
    }
    let dp_flags = comb.flags(&replay);
    let dec = term.tree_decomposition(k)?;
    let g = dec.graph.clone();
    let (oracle_flags, value) = oracles::evaluate_combination(comb, &g);
    for (i, (&dp, &or)) in dp_flags.iter().zip(&oracle_flags).enumerate() {
        // the clique core only claims correctness on simple graphs
        let applies = g.is_simple() || !comb.cores[i].requires_simple_mask();
        if applies && dp != or {
            return Err(ValidationError::OracleMismatch { index: i, name: comb.names[i].clone(), dp, oracle: or });
        }
    }
    if value {
        return Err(ValidationError::OracleConsistent);
    }
    let (bags, parents) = match mode {
        Mode::Pathwidth => {
            let Some(bags) = term.path_bags(k)? else { return Err(ValidationError::JoinInPathwidth) };
            oracles::check_path_decomposition(&g, &bags, k).map_err(ValidationError::Decomposition)?;
            let parents = (0..bags.len()).map(|i| i.checked_sub(1)).collect();
            (bags, parents)
        }
        Mode::Treewidth => {
            oracles::check_tree_decomposition(&g, &dec.parent, &dec.bags, k).map_err(ValidationError::Decomposition)?;
            (dec.bags, dec.parent)
        }
    };
    Ok(Counterexample { term: term.to_string(), width, graph: g, flags: oracle_flags, bags, parents })
}

#[derive(Debug, Error)]
pub enum ProveError {
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("extraction failed: {0}")]
    Extract(#[from] ExtractError),
    #[error("refutation failed validation: {0}")]
    Validation(#[from] ValidationError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProveOutcome {
    pub result: SearchResult,
    pub counterexample: Option<Counterexample>,
}

/// Search, and for a refutation extract and validate the witness before
/// reporting it. A refutation that fails validation is an error.
pub fn prove(comb: &Combination, cfg: &SearchConfig) -> Result<ProveOutcome, ProveError> {
    let result = search(comb, cfg)?;
    let counterexample = if result.verdict == Verdict::Refuted {
        let term = extract(&result.trace, cfg.k)?;
        let last = &result.trace[result.trace.len() - 1].state;
        if comb.dynamize(&term, cfg.k).map_err(ValidationError::from)? != *last {
            return Err(ValidationError::ReplayMismatch.into());
        }
        Some(validate(comb, &term, cfg.k, cfg.mode)?)
    } else {
        None
    };
    Ok(ProveOutcome { result, counterexample })
}
