//! `HasMultipleEdges`: label pairs joined by an edge, or a flag once two
//! edges share endpoints.

use std::collections::BTreeSet;

use crate::canon::Relabeling;
use crate::labels::{Label, LabelSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiEdgeWitness {
    Found,
    /// Pairs stored as (smaller, larger).
    Pairs(BTreeSet<(Label, Label)>),
}

use MultiEdgeWitness::*;

fn pair(u: Label, v: Label) -> (Label, Label) {
    (u.min(v), u.max(v))
}

impl MultiEdgeWitness {
    pub fn support(&self) -> LabelSet {
        match self {
            Found => LabelSet::EMPTY,
            Pairs(p) => p.iter().flat_map(|&(a, b)| [a, b]).collect(),
        }
    }

    pub fn encode(&self) -> Vec<u8> {
        match self {
            Found => vec![0],
            Pairs(p) => {
                let mut out = vec![1];
                for &(a, b) in p {
                    out.push(a);
                    out.push(b);
                }
                out
            }
        }
    }

    pub fn decode(b: &[u8]) -> MultiEdgeWitness {
        match b.first() {
            Some(0) => Found,
            Some(1) => Pairs(b[1..].chunks(2).map(|c| (c[0], c[1])).collect()),
            _ => panic!("not a multi-edge witness encoding"),
        }
    }
}

pub fn leaf() -> Vec<MultiEdgeWitness> {
    vec![Pairs(BTreeSet::new())]
}

pub fn intro_vertex(w: &MultiEdgeWitness) -> Vec<MultiEdgeWitness> {
    vec![w.clone()]
}

pub fn forget_vertex(w: &MultiEdgeWitness, u: Label) -> Vec<MultiEdgeWitness> {
    match w {
        Found => vec![Found],
        Pairs(p) => vec![Pairs(p.iter().copied().filter(|&(a, b)| a != u && b != u).collect())],
    }
}

pub fn intro_edge(w: &MultiEdgeWitness, u: Label, v: Label) -> Vec<MultiEdgeWitness> {
    match w {
        Found => vec![Found],
        Pairs(p) if p.contains(&pair(u, v)) => vec![Found],
        Pairs(p) => {
            let mut p = p.clone();
            p.insert(pair(u, v));
            vec![Pairs(p)]
        }
    }
}

pub fn join(a: &MultiEdgeWitness, b: &MultiEdgeWitness) -> Vec<MultiEdgeWitness> {
    match (a, b) {
        (Found, _) | (_, Found) => vec![Found],
        (Pairs(x), Pairs(y)) => {
            if x.intersection(y).next().is_some() {
                vec![Found]
            } else {
                vec![Pairs(x.union(y).copied().collect())]
            }
        }
    }
}

pub fn is_final(w: &MultiEdgeWitness) -> bool {
    matches!(w, Found)
}

pub fn act(f: &Relabeling, w: &MultiEdgeWitness) -> Option<MultiEdgeWitness> {
    match w {
        Found => Some(Found),
        Pairs(p) => {
            let mut out = BTreeSet::new();
            for &(a, b) in p {
                out.insert(pair(f.get(a)?, f.get(b)?));
            }
            Some(Pairs(out))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(p: &[(Label, Label)]) -> MultiEdgeWitness {
        Pairs(p.iter().map(|&(a, b)| pair(a, b)).collect())
    }

    #[test]
    fn repeated_pair_flags() {
        assert_eq!(intro_edge(&ps(&[(1, 2)]), 2, 1), vec![Found]);
        assert_eq!(intro_edge(&ps(&[]), 1, 2), vec![ps(&[(1, 2)])]);
    }

    #[test]
    fn forget_drops_incident_pairs() {
        assert_eq!(forget_vertex(&ps(&[(1, 2), (2, 3)]), 1), vec![ps(&[(2, 3)])]);
    }

    #[test]
    fn join_union_or_flag() {
        assert_eq!(join(&ps(&[(1, 2)]), &ps(&[(2, 3)])), vec![ps(&[(1, 2), (2, 3)])]);
        assert_eq!(join(&ps(&[(1, 2)]), &ps(&[(1, 2)])), vec![Found]);
    }

    #[test]
    fn relabel_reorders_pairs() {
        let f = Relabeling::from_pairs([(1, 3), (3, 1)]).unwrap();
        assert_eq!(act(&f, &ps(&[(1, 3)])), Some(ps(&[(1, 3)])));
        let g = Relabeling::from_pairs([(1, 5), (2, 4)]).unwrap();
        assert_eq!(act(&g, &ps(&[(1, 2)])), Some(ps(&[(4, 5)])));
    }

    #[test]
    fn encoding_round_trip() {
        for w in [Found, ps(&[]), ps(&[(1, 2), (2, 4)])] {
            assert_eq!(MultiEdgeWitness::decode(&w.encode()), w);
        }
    }
}
