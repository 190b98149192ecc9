//! `ChromaticNumber_AtMost(r)`: witnesses are partitions of the active
//! labels into at most `r` colour classes.

use crate::canon::Relabeling;
use crate::labels::{Label, LabelSet};

/// Cells sorted by their minimum element; every cell nonempty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition(pub Vec<LabelSet>);

impl Partition {
    pub fn new(mut cells: Vec<LabelSet>) -> Partition {
        cells.retain(|c| !c.is_empty());
        cells.sort_by_key(|c| c.iter().next());
        Partition(cells)
    }

    pub fn support(&self) -> LabelSet {
        self.0.iter().fold(LabelSet::EMPTY, |a, &c| a.union(c))
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut out = vec![1];
        for c in &self.0 {
            out.push(c.len() as u8);
            out.extend(c.iter());
        }
        out
    }

    pub fn decode(b: &[u8]) -> Partition {
        assert_eq!(b.first(), Some(&1), "not a partition encoding");
        let mut cells = Vec::new();
        let mut i = 1;
        while i < b.len() {
            let n = b[i] as usize;
            cells.push(b[i + 1..i + 1 + n].iter().copied().collect());
            i += 1 + n;
        }
        Partition(cells)
    }
}

pub fn leaf() -> Vec<Partition> {
    vec![Partition(vec![])]
}

pub fn intro_vertex(r: u32, w: &Partition, u: Label) -> Vec<Partition> {
    if w.support().contains(u) {
        return vec![];
    }
    let mut out = Vec::new();
    if (w.0.len() as u32) < r {
        let mut cells = w.0.clone();
        cells.push(LabelSet::EMPTY.with(u));
        out.push(Partition::new(cells));
    }
    for i in 0..w.0.len() {
        let mut cells = w.0.clone();
        cells[i].insert(u);
        out.push(Partition::new(cells));
    }
    out
}

/// Removes `u`, dropping its cell if it becomes empty. No witness when
/// `u` is in no cell.
pub fn forget_vertex(w: &Partition, u: Label) -> Vec<Partition> {
    if !w.support().contains(u) {
        return vec![];
    }
    vec![Partition::new(w.0.iter().map(|c| c.without(u)).collect())]
}

pub fn intro_edge(w: &Partition, u: Label, v: Label) -> Vec<Partition> {
    if w.0.iter().any(|c| c.contains(u) && c.contains(v)) {
        vec![]
    } else {
        vec![w.clone()]
    }
}

pub fn join(a: &Partition, b: &Partition) -> Vec<Partition> {
    if a == b {
        vec![a.clone()]
    } else {
        vec![]
    }
}

pub fn act(f: &Relabeling, w: &Partition) -> Option<Partition> {
    if !w.support().is_subset(f.domain()) {
        return None;
    }
    Some(Partition::new(w.0.iter().map(|&c| f.apply_set(c)).collect()))
}
