//! Brute-force reference implementations on concrete graphs, used to test
//! the cores and to validate extracted counterexamples.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::cores::Core;
use crate::dpcore::Combination;
use crate::graph::{MultiGraph, VertexId};

/// Simple-graph neighbourhoods (parallel edges collapsed).
fn neighbours(g: &MultiGraph) -> BTreeMap<VertexId, BTreeSet<VertexId>> {
    let mut out: BTreeMap<VertexId, BTreeSet<VertexId>> = g.vertices().map(|v| (v, BTreeSet::new())).collect();
    for (_, a, b) in g.edges() {
        out.get_mut(&a).unwrap().insert(b);
        out.get_mut(&b).unwrap().insert(a);
    }
    out
}

/// Backtracking proper colouring with at most `r` colours.
pub fn chromatic_at_most(g: &MultiGraph, r: u32) -> bool {
    let adj = neighbours(g);
    // highest degree first keeps the search shallow
    let mut order: Vec<VertexId> = adj.keys().copied().collect();
    order.sort_by_key(|v| std::cmp::Reverse(adj[v].len()));
    let mut colour: HashMap<VertexId, u32> = HashMap::new();
    fn go(i: usize, order: &[VertexId], adj: &BTreeMap<VertexId, BTreeSet<VertexId>>, r: u32, colour: &mut HashMap<VertexId, u32>) -> bool {
        let Some(&v) = order.get(i) else { return true };
        // symmetry: never open more than one new colour at a time
        let used = colour.values().copied().max().map_or(0, |m| m + 1);
        for c in 0..r.min(used + 1) {
            if adj[&v].iter().all(|n| colour.get(n) != Some(&c)) {
                colour.insert(v, c);
                if go(i + 1, order, adj, r, colour) {
                    return true;
                }
                colour.remove(&v);
            }
        }
        false
    }
    go(0, &order, &adj, r, &mut colour)
}

/// Smallest `r` with a proper `r`-colouring.
pub fn chromatic_number(g: &MultiGraph) -> u32 {
    (0..).find(|&r| chromatic_at_most(g, r)).unwrap()
}

/// Degree counts parallel edges separately.
pub fn max_degree_at_least(g: &MultiGraph, d: u32) -> bool {
    g.max_degree() >= d as usize
}

/// Clique number of the underlying simple graph.
pub fn clique_number(g: &MultiGraph) -> usize {
    let adj = neighbours(g);
    let mut best = 0;
    fn grow(clique: &mut Vec<VertexId>, cand: Vec<VertexId>, adj: &BTreeMap<VertexId, BTreeSet<VertexId>>, best: &mut usize) {
        *best = (*best).max(clique.len());
        if clique.len() + cand.len() <= *best {
            return;
        }
        for (i, &v) in cand.iter().enumerate() {
            let next: Vec<VertexId> = cand[i + 1..].iter().copied().filter(|w| adj[&v].contains(w)).collect();
            clique.push(v);
            grow(clique, next, adj, best);
            clique.pop();
        }
    }
    grow(&mut Vec::new(), adj.keys().copied().collect(), &adj, &mut best);
    best
}

pub fn has_clique(g: &MultiGraph, omega: u32) -> bool {
    clique_number(g) >= omega as usize
}

pub fn has_multi_edge(g: &MultiGraph) -> bool {
    !g.is_simple()
}

pub fn triangle_free(g: &MultiGraph) -> bool {
    !has_clique(g, 3)
}

/// Reference truth value of a core's property on a graph.
pub fn evaluate(core: &Core, g: &MultiGraph) -> bool {
    match *core {
        Core::ChromaticAtMost(r) => chromatic_at_most(g, r),
        Core::MaxDegreeAtLeast(d) => max_degree_at_least(g, d),
        Core::SimpleCliqueAtLeast(w) => has_clique(g, w),
        Core::HasMultipleEdges => has_multi_edge(g),
    }
}

/// Reference flags and formula value of a combination on a graph.
pub fn evaluate_combination(comb: &Combination, g: &MultiGraph) -> (Vec<bool>, bool) {
    let flags: Vec<bool> = comb.cores.iter().map(|c| evaluate(c, g)).collect();
    let value = comb.formula.eval(&flags);
    (flags, value)
}

/// Checks that `bags` (a sequence) is a path decomposition of `g` of width
/// at most `k`. Returns a description of the first violation.
pub fn check_path_decomposition(g: &MultiGraph, bags: &[Vec<VertexId>], k: usize) -> Result<(), String> {
    let parent: Vec<Option<usize>> = (0..bags.len()).map(|i| i.checked_sub(1)).collect();
    check_tree_decomposition(g, &parent, bags, k)
}

/// Checks that `bags` with tree structure `parent` is a tree decomposition
/// of `g` of width at most `k`.
pub fn check_tree_decomposition(
    g: &MultiGraph,
    parent: &[Option<usize>],
    bags: &[Vec<VertexId>],
    k: usize,
) -> Result<(), String> {
    if parent.len() != bags.len() {
        return Err("parent and bag lists differ in length".into());
    }
    if parent.iter().filter(|p| p.is_none()).count() > 1 {
        return Err("more than one root".into());
    }
    for (i, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            if *p >= bags.len() || *p == i {
                return Err(format!("node {i} has bad parent {p}"));
            }
        }
    }
    if let Some((i, b)) = bags.iter().enumerate().find(|(_, b)| b.len() > k + 1) {
        return Err(format!("bag {i} has {} vertices, more than {}", b.len(), k + 1));
    }
    for v in g.vertices() {
        let holders: Vec<usize> = (0..bags.len()).filter(|&i| bags[i].contains(&v)).collect();
        if holders.is_empty() {
            return Err(format!("vertex {v} is in no bag"));
        }
        // connected iff exactly one holder has its parent outside the holder set
        let tops = holders.iter().filter(|&&i| parent[i].is_none_or(|p| !bags[p].contains(&v))).count();
        if tops != 1 {
            return Err(format!("bags containing vertex {v} are not connected"));
        }
    }
    for (e, a, b) in g.edges() {
        if !bags.iter().any(|bag| bag.contains(&a) && bag.contains(&b)) {
            return Err(format!("edge {e} = {{{a},{b}}} is in no bag"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u64) -> MultiGraph {
        let mut g = MultiGraph::empty();
        for v in 1..=n {
            g.insert_vertex(v);
        }
        for v in 1..=n {
            g.add_edge(v, v % n + 1).unwrap();
        }
        g
    }

    fn complete(n: u64) -> MultiGraph {
        let mut g = MultiGraph::empty();
        for v in 1..=n {
            g.insert_vertex(v);
        }
        for a in 1..=n {
            for b in a + 1..=n {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    #[test]
    fn colouring() {
        assert_eq!(chromatic_number(&MultiGraph::empty()), 0);
        assert_eq!(chromatic_number(&cycle(4)), 2);
        assert_eq!(chromatic_number(&cycle(5)), 3);
        assert_eq!(chromatic_number(&complete(5)), 5);
    }

    #[test]
    fn cliques_and_degrees() {
        assert_eq!(clique_number(&cycle(5)), 2);
        assert_eq!(clique_number(&complete(4)), 4);
        assert!(triangle_free(&cycle(4)));
        let mut g = cycle(3);
        assert!(!has_multi_edge(&g));
        g.add_edge(1, 2).unwrap();
        assert!(has_multi_edge(&g));
        assert!(max_degree_at_least(&g, 3));
        assert_eq!(clique_number(&g), 3);
    }

    #[test]
    fn decomposition_checks() {
        let g = cycle(4);
        let good = vec![vec![1, 2, 4], vec![2, 3, 4]];
        assert!(check_path_decomposition(&g, &good, 2).is_ok());
        assert!(check_path_decomposition(&g, &good, 1).is_err());
        let missing_edge = vec![vec![1, 2], vec![2, 3, 4]];
        assert!(check_path_decomposition(&g, &missing_edge, 2).is_err());
        let split = vec![vec![1, 2, 4], vec![2, 3], vec![3, 4]];
        assert!(check_path_decomposition(&g, &split, 2).unwrap_err().contains("not connected"));
    }
}
