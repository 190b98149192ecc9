//! `MaximumDegree_AtLeast(d)`: active degrees below `d`, or a flag once
//! some vertex reaches degree `d`.

use std::collections::BTreeMap;

use crate::canon::Relabeling;
use crate::labels::{Label, LabelSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DegreeWitness {
    Found,
    Degrees(BTreeMap<Label, u32>),
}

use DegreeWitness::*;

impl DegreeWitness {
    pub fn support(&self) -> LabelSet {
        match self {
            Found => LabelSet::EMPTY,
            Degrees(m) => m.keys().copied().collect(),
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        match self {
            Found => vec![0],
            Degrees(m) => {
                let mut out = vec![1];
                for (&u, &x) in m {
                    out.push(u);
                    out.push(x as u8);
                }
                out
            }
        }
    }

    pub fn decode(b: &[u8]) -> DegreeWitness {
        match b.first() {
            Some(0) => Found,
            Some(1) => Degrees(b[1..].chunks(2).map(|c| (c[0], c[1] as u32)).collect()),
            _ => panic!("not a degree witness encoding"),
        }
    }
}

pub fn leaf() -> Vec<DegreeWitness> {
    vec![Degrees(BTreeMap::new())]
}

pub fn intro_vertex(w: &DegreeWitness, u: Label) -> Vec<DegreeWitness> {
    match w {
        Found => vec![Found],
        Degrees(m) if m.contains_key(&u) => vec![],
        Degrees(m) => {
            let mut m = m.clone();
            m.insert(u, 0);
            vec![Degrees(m)]
        }
    }
}

/// Restriction; a label outside the domain leaves the map unchanged.
pub fn forget_vertex(w: &DegreeWitness, u: Label) -> Vec<DegreeWitness> {
    match w {
        Found => vec![Found],
        Degrees(m) => {
            let mut m = m.clone();
            m.remove(&u);
            vec![Degrees(m)]
        }
    }
}

pub fn intro_edge(d: u32, w: &DegreeWitness, u: Label, v: Label) -> Vec<DegreeWitness> {
    match w {
        Found => vec![Found],
        Degrees(m) => match (m.get(&u), m.get(&v)) {
            (Some(&a), Some(&b)) => {
                if a + 1 == d || b + 1 == d {
                    vec![Found]
                } else {
                    let mut m = m.clone();
                    m.insert(u, a + 1);
                    m.insert(v, b + 1);
                    vec![Degrees(m)]
                }
            }
            _ => vec![],
        },
    }
}

pub fn join(d: u32, a: &DegreeWitness, b: &DegreeWitness) -> Vec<DegreeWitness> {
    match (a, b) {
        (Found, _) | (_, Found) => vec![Found],
        (Degrees(x), Degrees(y)) => {
            if !x.keys().eq(y.keys()) {
                return vec![];
            }
            let sum: BTreeMap<Label, u32> = x.iter().map(|(&u, &p)| (u, p + y[&u])).collect();
            if sum.values().any(|&s| s >= d) {
                vec![Found]
            } else {
                vec![Degrees(sum)]
            }
        }
    }
}

pub fn is_final(w: &DegreeWitness) -> bool {
    matches!(w, Found)
}

pub fn act(f: &Relabeling, w: &DegreeWitness) -> Option<DegreeWitness> {
    match w {
        Found => Some(Found),
        Degrees(m) => {
            let mut out = BTreeMap::new();
            for (&u, &x) in m {
                out.insert(f.get(u)?, x);
            }
            Some(Degrees(out))
        }
    }
}
