#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use widthproof::itd::Term;
use widthproof::labels::{Label, LabelSet};

/// Random legal term over labels `1..=k+1` with roughly `budget` nodes.
pub fn random_term(seed: u64, k: usize, budget: usize, allow_join: bool) -> Term {
    let mut rng = StdRng::seed_from_u64(seed);
    gen(&mut rng, k, budget.max(1), allow_join).0
}

/// Like [`random_term`], retried until the constructed graph is simple.
pub fn random_simple_term(seed: u64, k: usize, budget: usize, allow_join: bool) -> Term {
    (0..)
        .map(|i| random_term(seed.wrapping_mul(31).wrapping_add(i), k, budget, allow_join))
        .find(|t| t.semantics(k).unwrap().graph.is_simple())
        .unwrap()
}

fn pick(rng: &mut StdRng, s: LabelSet) -> Label {
    let v = s.to_vec();
    v[rng.random_range(0..v.len())]
}

fn gen(rng: &mut StdRng, k: usize, budget: usize, allow_join: bool) -> (Term, LabelSet) {
    if budget <= 1 {
        return (Term::Leaf, LabelSet::EMPTY);
    }
    let all = LabelSet::range(k + 1);
    if allow_join && budget >= 6 && rng.random_bool(0.15) {
        let left_budget = rng.random_range(2..budget - 1);
        let (l, lb) = gen(rng, k, left_budget, allow_join);
        let (mut r, rb) = gen(rng, k, budget - 1 - left_budget, allow_join);
        // align the right bag with the left one
        for u in rb.difference(lb).iter() {
            r = Term::forget_vertex(u, r);
        }
        for u in lb.difference(rb).iter() {
            r = Term::intro_vertex(u, r);
        }
        return (Term::join(l, r), lb);
    }
    let (c, b) = gen(rng, k, budget - 1, allow_join);
    let free = all.difference(b);
    let choice = rng.random_range(0..10);
    if b.len() >= 2 && choice < 6 {
        let u = pick(rng, b);
        let v = pick(rng, b.without(u));
        (Term::intro_edge(u, v, c), b)
    } else if !b.is_empty() && (choice < 7 || free.is_empty()) {
        let u = pick(rng, b);
        (Term::forget_vertex(u, c), b.without(u))
    } else {
        let u = pick(rng, free);
        (Term::intro_vertex(u, c), b.with(u))
    }
}

/// Random injection from `dom` into `1..=k+1`.
pub fn random_injection(seed: u64, dom: LabelSet, k: usize) -> widthproof::canon::Relabeling {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut targets: Vec<Label> = (1..=(k + 1) as Label).collect();
    let mut pairs = Vec::new();
    for u in dom.iter() {
        let i = rng.random_range(0..targets.len());
        pairs.push((u, targets.swap_remove(i)));
    }
    widthproof::canon::Relabeling::from_pairs(pairs).unwrap()
}

/// Two random terms with equal root bags.
pub fn random_pair(seed: u64, k: usize, budget: usize) -> (Term, Term) {
    let mut rng = StdRng::seed_from_u64(seed);
    let (l, lb) = gen(&mut rng, k, budget, true);
    let (mut r, rb) = gen(&mut rng, k, budget, true);
    for u in rb.difference(lb).iter() {
        r = Term::forget_vertex(u, r);
    }
    for u in lb.difference(rb).iter() {
        r = Term::intro_vertex(u, r);
    }
    (l, r)
}

pub fn test_cores() -> Vec<widthproof::Core> {
    use widthproof::Core::*;
    vec![
        ChromaticAtMost(1),
        ChromaticAtMost(2),
        ChromaticAtMost(3),
        MaxDegreeAtLeast(1),
        MaxDegreeAtLeast(2),
        MaxDegreeAtLeast(3),
        SimpleCliqueAtLeast(2),
        SimpleCliqueAtLeast(3),
        HasMultipleEdges,
    ]
}
