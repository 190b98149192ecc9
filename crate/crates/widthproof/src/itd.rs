//! Instructive tree decompositions: terms over the alphabet
//! `Leaf | IntroVertex(u) | ForgetVertex(u) | IntroEdge(u,v) | Join`,
//! their legality check and their graph semantics.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{MultiGraph, VertexId};
use crate::labels::{Label, LabelSet};

/// A single symbol of the alphabet, without its children.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Instruction {
    Leaf,
    IntroVertex(Label),
    ForgetVertex(Label),
    IntroEdge(Label, Label),
    Join,
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Leaf => write!(f, "Leaf"),
            Instruction::IntroVertex(u) => write!(f, "IntroVertex({u})"),
            Instruction::ForgetVertex(u) => write!(f, "ForgetVertex({u})"),
            Instruction::IntroEdge(u, v) => write!(f, "IntroEdge({u},{v})"),
            Instruction::Join => write!(f, "Join"),
        }
    }
}

/// An ordered rooted term. `Join(a, b)` and `Join(b, a)` are different terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Leaf,
    IntroVertex(Label, Box<Term>),
    ForgetVertex(Label, Box<Term>),
    IntroEdge(Label, Label, Box<Term>),
    Join(Box<Term>, Box<Term>),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ItdError {
    #[error("node {node} ({instr}): label {label} outside 1..={max}")]
    LabelRange { node: usize, instr: Instruction, label: Label, max: Label },
    #[error("node {node} ({instr}): label {label} is already active")]
    AlreadyActive { node: usize, instr: Instruction, label: Label },
    #[error("node {node} ({instr}): label {label} is not active")]
    NotActive { node: usize, instr: Instruction, label: Label },
    #[error("node {node} (IntroEdge({label},{label})): endpoints must differ")]
    LoopEdge { node: usize, label: Label },
    #[error("node {node} (Join): child bags {left} and {right} differ")]
    BagMismatch { node: usize, left: LabelSet, right: LabelSet },
    #[error("term syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
}

impl Term {
    pub fn intro_vertex(u: Label, t: Term) -> Term {
        Term::IntroVertex(u, Box::new(t))
    }
    pub fn forget_vertex(u: Label, t: Term) -> Term {
        Term::ForgetVertex(u, Box::new(t))
    }
    pub fn intro_edge(u: Label, v: Label, t: Term) -> Term {
        Term::IntroEdge(u, v, Box::new(t))
    }
    pub fn join(a: Term, b: Term) -> Term {
        Term::Join(Box::new(a), Box::new(b))
    }

    pub fn instruction(&self) -> Instruction {
        match self {
            Term::Leaf => Instruction::Leaf,
            Term::IntroVertex(u, _) => Instruction::IntroVertex(*u),
            Term::ForgetVertex(u, _) => Instruction::ForgetVertex(*u),
            Term::IntroEdge(u, v, _) => Instruction::IntroEdge(*u, *v),
            Term::Join(..) => Instruction::Join,
        }
    }

    pub fn children(&self) -> Vec<&Term> {
        match self {
            Term::Leaf => vec![],
            Term::IntroVertex(_, t) | Term::ForgetVertex(_, t) | Term::IntroEdge(_, _, t) => vec![t],
            Term::Join(a, b) => vec![a, b],
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Builds a join-free term from a bottom-up instruction list
    /// (the first entry is applied to `Leaf`). `Leaf`/`Join` entries are rejected.
    pub fn from_linear(steps: &[Instruction]) -> Option<Term> {
        let mut t = Term::Leaf;
        for s in steps {
            t = match *s {
                Instruction::IntroVertex(u) => Term::intro_vertex(u, t),
                Instruction::ForgetVertex(u) => Term::forget_vertex(u, t),
                Instruction::IntroEdge(u, v) => Term::intro_edge(u, v, t),
                Instruction::Leaf | Instruction::Join => return None,
            };
        }
        Some(t)
    }

    /// Inverse of `from_linear` for join-free terms.
    pub fn to_linear(&self) -> Option<Vec<Instruction>> {
        let mut out = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Term::Leaf => break,
                Term::Join(..) => return None,
                Term::IntroVertex(_, t) | Term::ForgetVertex(_, t) | Term::IntroEdge(_, _, t) => {
                    out.push(cur.instruction());
                    cur = t;
                }
            }
        }
        out.reverse();
        Some(out)
    }

    pub fn is_join_free(&self) -> bool {
        match self {
            Term::Leaf => true,
            Term::Join(..) => false,
            Term::IntroVertex(_, t) | Term::ForgetVertex(_, t) | Term::IntroEdge(_, _, t) => t.is_join_free(),
        }
    }

    /// Largest label mentioned anywhere in the term.
    pub fn max_label(&self) -> Label {
        let own = match self.instruction() {
            Instruction::IntroVertex(u) | Instruction::ForgetVertex(u) => u,
            Instruction::IntroEdge(u, v) => u.max(v),
            _ => 0,
        };
        self.children().iter().map(|c| c.max_label()).fold(own, Label::max)
    }

    /// Simulates the legality automaton bottom-up and returns the root bag.
    pub fn check_legal(&self, k: usize) -> Result<LabelSet, ItdError> {
        let mut counter = 0;
        check_rec(self, k, &mut counter)
    }

    /// Bag at every node, in preorder.
    pub fn bags_preorder(&self, k: usize) -> Result<Vec<LabelSet>, ItdError> {
        self.check_legal(k)?;
        let mut out = Vec::new();
        fn go(t: &Term, out: &mut Vec<LabelSet>) -> LabelSet {
            let slot = out.len();
            out.push(LabelSet::EMPTY);
            let b = match t {
                Term::Leaf => LabelSet::EMPTY,
                Term::IntroVertex(u, c) => go(c, out).with(*u),
                Term::ForgetVertex(u, c) => go(c, out).without(*u),
                Term::IntroEdge(_, _, c) => go(c, out),
                Term::Join(a, b) => {
                    let x = go(a, out);
                    go(b, out);
                    x
                }
            };
            out[slot] = b;
            b
        }
        go(self, &mut out);
        Ok(out)
    }

    /// Maximum bag size minus one over all nodes; 0 when every bag is empty.
    pub fn width(&self, k: usize) -> Result<usize, ItdError> {
        let bags = self.bags_preorder(k)?;
        Ok(bags.iter().map(|b| b.len()).max().unwrap_or(0).saturating_sub(1))
    }

    /// Graph, bag and interface map of the term.
    pub fn semantics(&self, k: usize) -> Result<InterfaceState, ItdError> {
        self.check_legal(k)?;
        Ok(semantics_rec(self))
    }

    /// For join-free terms: the interface vertex set after each step,
    /// bottom-up, consecutive duplicates removed. This is a path
    /// decomposition of the constructed graph.
    pub fn path_bags(&self, k: usize) -> Result<Option<Vec<Vec<VertexId>>>, ItdError> {
        self.check_legal(k)?;
        let Some(steps) = self.to_linear() else { return Ok(None) };
        let mut st = InterfaceState::leaf();
        let mut out: Vec<Vec<VertexId>> = Vec::new();
        for s in steps {
            st.apply_unary(s);
            let bag: Vec<VertexId> = {
                let mut v: Vec<VertexId> = st.map.values().copied().collect();
                v.sort_unstable();
                v
            };
            if !bag.is_empty() && out.last() != Some(&bag) {
                out.push(bag);
            }
        }
        Ok(Some(out))
    }

    /// Tree rendering: every node with its parent index (preorder) and its
    /// interface vertex set.
    pub fn node_bags(&self, k: usize) -> Result<Vec<NodeBag>, ItdError> {
        self.check_legal(k)?;
        let mut out = Vec::new();
        node_bags_rec(self, None, &mut out);
        Ok(out)
    }
}

impl Term {
    /// Node bags expressed in the vertex ids of the final graph, with
    /// parent links in preorder. For a legal term this is a tree
    /// decomposition of `semantics(k).graph`.
    pub fn tree_decomposition(&self, k: usize) -> Result<TreeDecomposition, ItdError> {
        self.check_legal(k)?;
        let mut parent = Vec::new();
        let mut bags = Vec::new();
        let st = decomp_rec(self, None, &mut parent, &mut bags);
        Ok(TreeDecomposition { graph: st.graph, parent, bags })
    }
}

impl Term {
    /// Join-free term realising `g` from a path decomposition: each step
    /// forgets vertices leaving the bag, then introduces entering vertices
    /// with the smallest free label together with their edges to active
    /// neighbours. `None` when the bags are too wide or miss an edge.
    pub fn from_path_decomposition(g: &MultiGraph, bags: &[Vec<VertexId>], k: usize) -> Option<Term> {
        let mut steps = Vec::new();
        let mut active: BTreeMap<VertexId, Label> = BTreeMap::new();
        let mut done: std::collections::BTreeSet<VertexId> = Default::default();
        let mut added = 0usize;
        for bag in bags {
            let leaving: Vec<VertexId> = active.keys().copied().filter(|v| !bag.contains(v)).collect();
            for v in leaving {
                steps.push(Instruction::ForgetVertex(active.remove(&v)?));
                done.insert(v);
            }
            for &v in bag {
                if active.contains_key(&v) {
                    continue;
                }
                if done.contains(&v) || !g.has_vertex(v) {
                    return None;
                }
                let used: LabelSet = active.values().copied().collect();
                let label = (1..=(k + 1) as Label).find(|l| !used.contains(*l))?;
                steps.push(Instruction::IntroVertex(label));
                for (_, a, b) in g.edges() {
                    let other = if a == v { b } else if b == v { a } else { continue };
                    if let Some(&lo) = active.get(&other) {
                        steps.push(Instruction::IntroEdge(lo, label));
                        added += 1;
                    }
                }
                active.insert(v, label);
            }
        }
        if added != g.edge_count() || active.len() + done.len() != g.vertex_count() {
            return None;
        }
        Term::from_linear(&steps)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    pub graph: MultiGraph,
    pub parent: Vec<Option<usize>>,
    pub bags: Vec<Vec<VertexId>>,
}

fn decomp_rec(
    t: &Term,
    up: Option<usize>,
    parent: &mut Vec<Option<usize>>,
    bags: &mut Vec<Vec<VertexId>>,
) -> InterfaceState {
    let index = parent.len();
    parent.push(up);
    bags.push(vec![]);
    let st = match t {
        Term::Leaf => InterfaceState::leaf(),
        Term::IntroVertex(_, c) | Term::ForgetVertex(_, c) | Term::IntroEdge(_, _, c) => {
            let mut st = decomp_rec(c, Some(index), parent, bags);
            st.apply_unary(t.instruction());
            st
        }
        Term::Join(a, b) => {
            let start_l = parent.len();
            let l = decomp_rec(a, Some(index), parent, bags);
            let start_r = parent.len();
            let r = decomp_rec(b, Some(index), parent, bags);
            let glue: BTreeMap<VertexId, VertexId> =
                l.map.iter().map(|(u, &x)| (2 * r.map[u] + 1, 2 * x)).collect();
            for bag in &mut bags[start_l..start_r] {
                for x in bag.iter_mut() {
                    *x *= 2;
                }
            }
            for bag in &mut bags[start_r..] {
                for y in bag.iter_mut() {
                    let odd = 2 * *y + 1;
                    *y = glue.get(&odd).copied().unwrap_or(odd);
                }
                bag.sort_unstable();
            }
            InterfaceState::join(&l, &r)
        }
    };
    let mut vs: Vec<VertexId> = st.map.values().copied().collect();
    vs.sort_unstable();
    bags[index] = vs;
    st
}

/// One row of the tree rendering produced by [`Term::node_bags`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NodeBag {
    pub index: usize,
    pub parent: Option<usize>,
    pub instruction: String,
    pub labels: LabelSet,
    pub vertices: Vec<VertexId>,
}

fn node_bags_rec(t: &Term, parent: Option<usize>, out: &mut Vec<NodeBag>) -> InterfaceState {
    let index = out.len();
    out.push(NodeBag {
        index,
        parent,
        instruction: t.instruction().to_string(),
        labels: LabelSet::EMPTY,
        vertices: vec![],
    });
    let st = match t {
        Term::Leaf => InterfaceState::leaf(),
        Term::IntroVertex(_, c) | Term::ForgetVertex(_, c) | Term::IntroEdge(_, _, c) => {
            let mut st = node_bags_rec(c, Some(index), out);
            st.apply_unary(t.instruction());
            st
        }
        Term::Join(a, b) => {
            let l = node_bags_rec(a, Some(index), out);
            let r = node_bags_rec(b, Some(index), out);
            InterfaceState::join(&l, &r)
        }
    };
    out[index].labels = st.bag;
    let mut vs: Vec<VertexId> = st.map.values().copied().collect();
    vs.sort_unstable();
    out[index].vertices = vs;
    st
}

fn check_rec(t: &Term, k: usize, counter: &mut usize) -> Result<LabelSet, ItdError> {
    // postorder numbering keeps "first offending node" meaningful bottom-up
    let max = (k + 1) as Label;
    let instr = t.instruction();
    let range = |node: usize, label: Label| {
        if label == 0 || label > max {
            Err(ItdError::LabelRange { node, instr, label, max })
        } else {
            Ok(())
        }
    };
    match t {
        Term::Leaf => {
            *counter += 1;
            Ok(LabelSet::EMPTY)
        }
        Term::IntroVertex(u, c) => {
            let b = check_rec(c, k, counter)?;
            let node = *counter;
            *counter += 1;
            range(node, *u)?;
            if b.contains(*u) {
                return Err(ItdError::AlreadyActive { node, instr, label: *u });
            }
            Ok(b.with(*u))
        }
        Term::ForgetVertex(u, c) => {
            let b = check_rec(c, k, counter)?;
            let node = *counter;
            *counter += 1;
            range(node, *u)?;
            if !b.contains(*u) {
                return Err(ItdError::NotActive { node, instr, label: *u });
            }
            Ok(b.without(*u))
        }
        Term::IntroEdge(u, v, c) => {
            let b = check_rec(c, k, counter)?;
            let node = *counter;
            *counter += 1;
            range(node, *u)?;
            range(node, *v)?;
            if u == v {
                return Err(ItdError::LoopEdge { node, label: *u });
            }
            for w in [*u, *v] {
                if !b.contains(w) {
                    return Err(ItdError::NotActive { node, instr, label: w });
                }
            }
            Ok(b)
        }
        Term::Join(a, bt) => {
            let l = check_rec(a, k, counter)?;
            let r = check_rec(bt, k, counter)?;
            let node = *counter;
            *counter += 1;
            if l != r {
                return Err(ItdError::BagMismatch { node, left: l, right: r });
            }
            Ok(l)
        }
    }
}

/// Graph, active bag and injective interface map of a (legal) term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterfaceState {
    pub graph: MultiGraph,
    pub bag: LabelSet,
    pub map: BTreeMap<Label, VertexId>,
}

impl InterfaceState {
    pub fn leaf() -> Self {
        InterfaceState { graph: MultiGraph::empty(), bag: LabelSet::EMPTY, map: BTreeMap::new() }
    }

    fn apply_unary(&mut self, instr: Instruction) {
        match instr {
            Instruction::IntroVertex(u) => {
                let x = self.graph.add_vertex();
                self.bag.insert(u);
                self.map.insert(u, x);
            }
            Instruction::ForgetVertex(u) => {
                self.bag.remove(u);
                self.map.remove(&u);
            }
            Instruction::IntroEdge(u, v) => {
                self.graph
                    .add_edge(self.map[&u], self.map[&v])
                    .expect("legal term: endpoints active and distinct");
            }
            Instruction::Leaf | Instruction::Join => unreachable!("not unary"),
        }
    }

    /// Glues along the shared bag: right interface vertex `2θ₂(u)+1` becomes
    /// `2θ₁(u)`; edge ids are kept from the disjoint union.
    pub fn join(l: &InterfaceState, r: &InterfaceState) -> InterfaceState {
        let h = l.graph.disjoint_union(&r.graph);
        let mu: BTreeMap<VertexId, VertexId> =
            l.map.iter().map(|(u, &x)| (2 * r.map[u] + 1, 2 * x)).collect();
        let graph = h.rename_vertices(&mu);
        let map = l.map.iter().map(|(&u, &x)| (u, 2 * x)).collect();
        InterfaceState { graph, bag: l.bag, map }
    }
}

fn semantics_rec(t: &Term) -> InterfaceState {
    match t {
        Term::Leaf => InterfaceState::leaf(),
        Term::IntroVertex(_, c) | Term::ForgetVertex(_, c) | Term::IntroEdge(_, _, c) => {
            let mut st = semantics_rec(c);
            st.apply_unary(t.instruction());
            st
        }
        Term::Join(a, b) => InterfaceState::join(&semantics_rec(a), &semantics_rec(b)),
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Leaf => write!(f, "Leaf"),
            Term::IntroVertex(u, c) => write!(f, "IntroVertex({u})({c})"),
            Term::ForgetVertex(u, c) => write!(f, "ForgetVertex({u})({c})"),
            Term::IntroEdge(u, v, c) => write!(f, "IntroEdge({u},{v})({c})"),
            Term::Join(a, b) => write!(f, "Join({a}, {b})"),
        }
    }
}

impl std::str::FromStr for Term {
    type Err = ItdError;
    fn from_str(s: &str) -> Result<Term, ItdError> {
        let mut p = TermParser { src: s.as_bytes(), pos: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }
}

struct TermParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TermParser<'_> {
    fn err(&self, msg: &str) -> ItdError {
        ItdError::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_whitespace() {
                self.pos += 1;
            } else if c == b'#' {
                while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                    self.pos += 1;
                }
            } else {
                break;
            }
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ItdError> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn ident(&mut self) -> Result<&str, ItdError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an instruction name"));
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn label(&mut self) -> Result<Label, ItdError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| ItdError::Syntax { pos: start, msg: "expected a label".into() })
    }

    fn child(&mut self) -> Result<Term, ItdError> {
        self.expect(b'(')?;
        let t = self.term()?;
        self.expect(b')')?;
        Ok(t)
    }

    fn term(&mut self) -> Result<Term, ItdError> {
        let start = self.pos;
        let name = self.ident()?.to_string();
        match name.as_str() {
            "Leaf" => Ok(Term::Leaf),
            "IntroVertex" | "ForgetVertex" => {
                self.expect(b'(')?;
                let u = self.label()?;
                self.expect(b')')?;
                let c = self.child()?;
                Ok(if name == "IntroVertex" { Term::intro_vertex(u, c) } else { Term::forget_vertex(u, c) })
            }
            "IntroEdge" => {
                self.expect(b'(')?;
                let u = self.label()?;
                self.expect(b',')?;
                let v = self.label()?;
                self.expect(b')')?;
                let c = self.child()?;
                Ok(Term::intro_edge(u, v, c))
            }
            "Join" => {
                self.expect(b'(')?;
                let a = self.term()?;
                self.expect(b',')?;
                let b = self.term()?;
                self.expect(b')')?;
                Ok(Term::join(a, b))
            }
            _ => Err(ItdError::Syntax { pos: start, msg: format!("unknown instruction {name}") }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Term {
        Term::intro_edge(1, 2, Term::intro_vertex(2, Term::intro_vertex(1, Term::Leaf)))
    }

    #[test]
    fn leaf_is_legal_with_empty_bag() {
        assert_eq!(Term::Leaf.check_legal(0), Ok(LabelSet::EMPTY));
        assert_eq!(Term::Leaf.width(0), Ok(0));
        assert!(Term::Leaf.is_join_free());
    }

    #[test]
    fn double_intro_rejected() {
        let t = Term::intro_vertex(1, Term::intro_vertex(1, Term::Leaf));
        assert!(matches!(t.check_legal(1), Err(ItdError::AlreadyActive { label: 1, .. })));
    }

    #[test]
    fn join_bags_must_match() {
        let t = Term::join(Term::intro_vertex(1, Term::Leaf), Term::Leaf);
        assert!(matches!(t.check_legal(1), Err(ItdError::BagMismatch { .. })));
        assert!(!Term::join(Term::Leaf, Term::Leaf).is_join_free());
    }

    #[test]
    fn label_range_enforced() {
        let t = Term::intro_vertex(3, Term::Leaf);
        assert!(matches!(t.check_legal(1), Err(ItdError::LabelRange { .. })));
        assert!(t.check_legal(2).is_ok());
    }

    #[test]
    fn p2_semantics() {
        let st = p2().semantics(1).unwrap();
        assert_eq!(st.graph.vertex_count(), 2);
        assert_eq!(st.graph.edge_count(), 1);
        assert_eq!(st.bag.to_vec(), vec![1, 2]);
        assert_eq!(p2().width(1), Ok(1));
    }

    #[test]
    fn join_of_p2_copies_gives_parallel_edges() {
        let st = Term::join(p2(), p2()).semantics(1).unwrap();
        assert_eq!(st.graph.vertices().collect::<Vec<_>>(), vec![2, 4]);
        assert_eq!(st.graph.edges().collect::<Vec<_>>(), vec![(2, 2, 4), (3, 2, 4)]);
        assert!(!st.graph.is_simple());
        assert_eq!(st.map[&1], 2);
        assert_eq!(st.map[&2], 4);
    }

    #[test]
    fn join_keeps_forgotten_vertices_apart() {
        // one active vertex with a forgotten pendant neighbour
        let side = Term::forget_vertex(
            2,
            Term::intro_edge(1, 2, Term::intro_vertex(2, Term::intro_vertex(1, Term::Leaf))),
        );
        let st = Term::join(side.clone(), side).semantics(1).unwrap();
        assert_eq!(st.graph.vertex_count(), 3);
        assert_eq!(st.graph.edge_count(), 2);
        let hub = st.map[&1];
        for (_, a, b) in st.graph.edges() {
            assert!(a == hub || b == hub);
        }
    }

    #[test]
    fn text_round_trip() {
        let t = Term::join(p2(), Term::forget_vertex(1, Term::forget_vertex(2, p2())));
        let s = t.to_string();
        let back: Term = s.parse().unwrap();
        assert_eq!(back, t);
        let spaced: Term = " Join ( IntroVertex(1)( Leaf ) ,\n IntroVertex(1)(Leaf) ) ".parse().unwrap();
        assert_eq!(spaced.check_legal(0), Ok(LabelSet::from_iter([1])));
        assert!("Frob(Leaf)".parse::<Term>().is_err());
    }

    #[test]
    fn linear_round_trip_and_bags() {
        let t = p2();
        let steps = t.to_linear().unwrap();
        assert_eq!(Term::from_linear(&steps).unwrap(), t);
        let bags = t.path_bags(1).unwrap().unwrap();
        assert_eq!(bags, vec![vec![1], vec![1, 2]]);
    }

    #[test]
    fn width_of_three_label_bag() {
        let t = Term::intro_vertex(3, Term::intro_vertex(2, Term::intro_vertex(1, Term::Leaf)));
        assert_eq!(t.width(2), Ok(2));
    }
}
