//! `SimpleCliqueNumber_AtLeast(ω)`: guesses a partial clique, tracking the
//! in-clique degree of its active members and its total size. Correct on
//! simple graphs only.

use std::collections::BTreeMap;

use crate::canon::Relabeling;
use crate::labels::{Label, LabelSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliqueWitness {
    Found,
    /// Active selected labels with their degree inside the selection, and
    /// the selection size including forgotten members.
    Partial { degrees: BTreeMap<Label, u32>, size: u32 },
}

use CliqueWitness::*;

impl CliqueWitness {
    pub fn support(&self) -> LabelSet {
        match self {
            Found => LabelSet::EMPTY,
            Partial { degrees, .. } => degrees.keys().copied().collect(),
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        match self {
            Found => vec![0],
            Partial { degrees, size } => {
                let mut out = vec![1, *size as u8];
                for (&u, &x) in degrees {
                    out.push(u);
                    out.push(x as u8);
                }
                out
            }
        }
    }

    pub fn decode(b: &[u8]) -> CliqueWitness {
        match b.first() {
            Some(0) => Found,
            Some(1) => Partial {
                size: b[1] as u32,
                degrees: b[2..].chunks(2).map(|c| (c[0], c[1] as u32)).collect(),
            },
            _ => panic!("not a clique witness encoding"),
        }
    }
}

fn complete(omega: u32, degrees: &BTreeMap<Label, u32>, size: u32) -> bool {
    size == omega && degrees.values().all(|&x| x == omega - 1)
}

pub fn leaf() -> Vec<CliqueWitness> {
    vec![Partial { degrees: BTreeMap::new(), size: 0 }]
}

pub fn intro_vertex(omega: u32, w: &CliqueWitness, u: Label) -> Vec<CliqueWitness> {
    match w {
        Found => vec![Found],
        Partial { degrees, .. } if degrees.contains_key(&u) => vec![],
        Partial { size, .. } if *size == omega => vec![w.clone()],
        Partial { degrees, size } if *size as usize == degrees.len() => {
            let mut with = degrees.clone();
            with.insert(u, 0);
            vec![w.clone(), Partial { degrees: with, size: size + 1 }]
        }
        Partial { .. } => vec![w.clone()],
    }
}

pub fn forget_vertex(omega: u32, w: &CliqueWitness, u: Label) -> Vec<CliqueWitness> {
    match w {
        Found => vec![Found],
        Partial { degrees, .. } if !degrees.contains_key(&u) => vec![w.clone()],
        Partial { size, .. } if *size < omega => vec![],
        Partial { degrees, size } => {
            if degrees[&u] != omega - 1 {
                return vec![];
            }
            let mut rest = degrees.clone();
            rest.remove(&u);
            vec![Partial { degrees: rest, size: *size }]
        }
    }
}

pub fn intro_edge(omega: u32, w: &CliqueWitness, u: Label, v: Label) -> Vec<CliqueWitness> {
    match w {
        Found => vec![Found],
        Partial { degrees, size } => match (degrees.get(&u), degrees.get(&v)) {
            (Some(&a), Some(&b)) => {
                if a == omega - 1 || b == omega - 1 {
                    return vec![];
                }
                let mut next = degrees.clone();
                next.insert(u, a + 1);
                next.insert(v, b + 1);
                if complete(omega, &next, *size) {
                    vec![Found]
                } else {
                    vec![Partial { degrees: next, size: *size }]
                }
            }
            _ => vec![w.clone()],
        },
    }
}

pub fn join(omega: u32, a: &CliqueWitness, b: &CliqueWitness) -> Vec<CliqueWitness> {
    match (a, b) {
        (Found, _) | (_, Found) => vec![Found],
        (Partial { degrees: x, size: s }, Partial { degrees: y, size: t }) => {
            if (x.len() as u32) < *s && (y.len() as u32) < *t {
                return vec![];
            }
            if !x.keys().eq(y.keys()) {
                return vec![];
            }
            let sum: BTreeMap<Label, u32> = x.iter().map(|(&u, &p)| (u, p + y[&u])).collect();
            if sum.values().any(|&z| z > omega - 1) {
                return vec![];
            }
            let size = s + t - x.len() as u32;
            if complete(omega, &sum, size) {
                vec![Found]
            } else {
                vec![Partial { degrees: sum, size }]
            }
        }
    }
}

pub fn is_final(w: &CliqueWitness) -> bool {
    matches!(w, Found)
}

pub fn act(f: &Relabeling, w: &CliqueWitness) -> Option<CliqueWitness> {
    match w {
        Found => Some(Found),
        Partial { degrees, size } => {
            let mut out = BTreeMap::new();
            for (&u, &x) in degrees {
                out.insert(f.get(u)?, x);
            }
            Some(Partial { degrees: out, size: *size })
        }
    }
}
