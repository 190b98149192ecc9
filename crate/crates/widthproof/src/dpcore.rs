//! Witness sets, lifted transitions, dynamization and Boolean combinations
//! of DP-cores.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cores::Core;
use crate::itd::{ItdError, Term};
use crate::labels::{Label, LabelSet};

/// A local witness in its canonical byte encoding. Byte order is the total
/// order used everywhere (sets, canonization, seen keys).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Witness(pub Vec<u8>);

impl fmt::Debug for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W{:?}", self.0)
    }
}

/// Sorted, duplicate-free collection of witnesses of one core.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WitnessSet(Vec<Witness>);

impl WitnessSet {
    pub fn new(mut v: Vec<Witness>) -> WitnessSet {
        v.sort_unstable();
        v.dedup();
        WitnessSet(v)
    }

    pub fn empty() -> WitnessSet {
        WitnessSet(Vec::new())
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Witness> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, w: &Witness) -> bool {
        self.0.binary_search(w).is_ok()
    }

    pub fn as_slice(&self) -> &[Witness] {
        &self.0
    }
}

impl fmt::Debug for WitnessSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// A (bag, one witness set per component) pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct State {
    pub bag: LabelSet,
    pub sets: Vec<WitnessSet>,
}

/// Union lifting of a unary transition.
pub fn lift_unary<F: Fn(&Witness) -> Vec<Witness>>(s: &WitnessSet, t: F) -> WitnessSet {
    WitnessSet::new(s.iter().flat_map(t).collect())
}

/// Union lifting of the join transition over all pairs.
pub fn lift_join(core: &Core, a: &WitnessSet, b: &WitnessSet) -> WitnessSet {
    if let Core::ChromaticAtMost(_) = core {
        // join keeps a witness exactly when both sides hold it
        return WitnessSet(a.iter().filter(|w| b.contains(w)).cloned().collect());
    }
    let mut out = Vec::new();
    for x in a.iter() {
        for y in b.iter() {
            out.extend(core.join_bytes(&x.0, &y.0).map(Witness));
        }
    }
    WitnessSet::new(out)
}

impl Core {
    pub fn leaf_set(&self) -> WitnessSet {
        WitnessSet::new(self.leaf())
    }

    pub fn lift_intro_vertex(&self, s: &WitnessSet, u: Label) -> WitnessSet {
        lift_unary(s, |w| self.intro_vertex(w, u))
    }

    pub fn lift_forget_vertex(&self, s: &WitnessSet, u: Label) -> WitnessSet {
        lift_unary(s, |w| self.forget_vertex(w, u))
    }

    pub fn lift_intro_edge(&self, s: &WitnessSet, u: Label, v: Label) -> WitnessSet {
        lift_unary(s, |w| self.intro_edge(w, u, v))
    }

    pub fn lift_join(&self, a: &WitnessSet, b: &WitnessSet) -> WitnessSet {
        lift_join(self, a, b)
    }

    /// Relabels every witness of a set. Panics when a witness mentions a
    /// label outside the relabeling's domain, which means the set was not
    /// well formed.
    pub fn act_set(&self, f: &crate::canon::Relabeling, s: &WitnessSet) -> WitnessSet {
        WitnessSet::new(
            s.iter()
                .map(|w| self.act(f, w).expect("witness support outside relabeling domain"))
                .collect(),
        )
    }

    pub fn has_final(&self, s: &WitnessSet) -> bool {
        s.iter().any(|w| self.is_final(w))
    }

    /// Union of label supports.
    pub fn labels_of_set(&self, s: &WitnessSet) -> LabelSet {
        s.iter().fold(LabelSet::EMPTY, |acc, w| acc.union(self.labels_of(w)))
    }

    /// Bottom-up evaluation of the lifted transitions on a term (identity
    /// cleaning).
    pub fn dynamize(&self, t: &Term, k: usize) -> Result<WitnessSet, ItdError> {
        t.check_legal(k)?;
        Ok(self.dynamize_unchecked(t))
    }

    pub(crate) fn dynamize_unchecked(&self, t: &Term) -> WitnessSet {
        match t {
            Term::Leaf => self.leaf_set(),
            Term::IntroVertex(u, c) => self.lift_intro_vertex(&self.dynamize_unchecked(c), *u),
            Term::ForgetVertex(u, c) => self.lift_forget_vertex(&self.dynamize_unchecked(c), *u),
            Term::IntroEdge(u, v, c) => self.lift_intro_edge(&self.dynamize_unchecked(c), *u, *v),
            Term::Join(a, b) => self.lift_join(&self.dynamize_unchecked(a), &self.dynamize_unchecked(b)),
        }
    }

    /// True iff the dynamization contains a final witness.
    pub fn accepts(&self, t: &Term, k: usize) -> Result<bool, ItdError> {
        Ok(self.has_final(&self.dynamize(t, k)?))
    }
}

/// Boolean formula over component indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Formula {
    Var(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn eval(&self, flags: &[bool]) -> bool {
        match self {
            Formula::Var(i) => flags[*i],
            Formula::Not(a) => !a.eval(flags),
            Formula::And(a, b) => a.eval(flags) && b.eval(flags),
            Formula::Or(a, b) => a.eval(flags) || b.eval(flags),
            Formula::Implies(a, b) => !a.eval(flags) || b.eval(flags),
        }
    }

    pub fn vars(&self, out: &mut Vec<usize>) {
        match self {
            Formula::Var(i) => out.push(*i),
            Formula::Not(a) => a.vars(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }

    /// Flattened operands of a maximal AND chain (a single operand when the
    /// node is not an AND).
    pub fn conjuncts(&self) -> Vec<&Formula> {
        match self {
            Formula::And(a, b) => {
                let mut v = a.conjuncts();
                v.extend(b.conjuncts());
                v
            }
            other => vec![other],
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombineError {
    #[error("formula references component {0}, but only {1} components exist")]
    UnboundVar(usize, usize),
}

/// Components driven in lockstep plus the Boolean formula combining their
/// acceptance flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Combination {
    pub names: Vec<String>,
    pub cores: Vec<Core>,
    pub formula: Formula,
}

impl Combination {
    pub fn new(names: Vec<String>, cores: Vec<Core>, formula: Formula) -> Result<Combination, CombineError> {
        let mut vs = Vec::new();
        formula.vars(&mut vs);
        if let Some(&bad) = vs.iter().find(|&&i| i >= cores.len()) {
            return Err(CombineError::UnboundVar(bad, cores.len()));
        }
        Ok(Combination { names, cores, formula })
    }

    /// Premise and conclusion, when the root is an implication.
    pub fn split(&self) -> Option<(&Formula, &Formula)> {
        match &self.formula {
            Formula::Implies(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn premise(&self) -> Option<&Formula> {
        self.split().map(|(p, _)| p)
    }

    pub fn initial_state(&self) -> State {
        State { bag: LabelSet::EMPTY, sets: self.cores.iter().map(|c| c.leaf_set()).collect() }
    }

    pub fn flags(&self, st: &State) -> Vec<bool> {
        self.cores.iter().zip(&st.sets).map(|(c, s)| c.has_final(s)).collect()
    }

    /// Formula value on the per-component acceptance flags. A state is
    /// inconsistent iff this is false.
    pub fn combo_final(&self, st: &State) -> bool {
        self.formula.eval(&self.flags(st))
    }

    /// Premise value; `true` when there is no top-level implication.
    pub fn combo_premise(&self, st: &State) -> bool {
        match self.premise() {
            Some(p) => p.eval(&self.flags(st)),
            None => true,
        }
    }

    /// Per-component dynamization of a term.
    pub fn dynamize(&self, t: &Term, k: usize) -> Result<State, ItdError> {
        let bag = t.check_legal(k)?;
        Ok(State { bag, sets: self.cores.iter().map(|c| c.dynamize_unchecked(t)).collect() })
    }

    /// Syntactic certificate that the premise is closed under subgraphs.
    pub fn certify_premise(&self) -> bool {
        self.premise().is_some_and(|p| certify_subgraph_closed(p, &self.cores))
    }
}

/// Syntactic closure-under-subgraphs certificate: atoms flagged closed,
/// negations of monotone-increasing atoms, and AND/OR of certified parts.
pub fn certify_subgraph_closed(f: &Formula, cores: &[Core]) -> bool {
    match f {
        Formula::Var(i) => cores.get(*i).is_some_and(|c| c.subgraph_closed()),
        Formula::Not(a) => match a.as_ref() {
            Formula::Var(i) => cores.get(*i).is_some_and(|c| c.monotone_increasing()),
            _ => false,
        },
        Formula::And(a, b) | Formula::Or(a, b) => {
            certify_subgraph_closed(a, cores) && certify_subgraph_closed(b, cores)
        }
        Formula::Implies(..) => false,
    }
}
