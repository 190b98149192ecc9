mod common;

use proptest::prelude::*;

use common::{random_injection, random_pair, random_simple_term, random_term, test_cores};
use widthproof::canon::{act_state, canonize, canonize_reference, Relabeling};
use widthproof::dpcore::{Combination, Formula, WitnessSet};
use widthproof::graph::MultiGraph;
use widthproof::itd::Term;
use widthproof::labels::LabelSet;
use widthproof::search::{Mode, SearchConfig, Strategy, Verdict};
use widthproof::{oracles, prove, Core};

fn act(core: &Core, f: &Relabeling, s: &WitnessSet) -> WitnessSet {
    core.act_set(f, s)
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, failure_persistence: None, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn action_axioms(seed in any::<u64>(), k in 1usize..=3, budget in 1usize..12) {
        let t = random_term(seed, k, budget, true);
        let bag = t.check_legal(k).unwrap();
        for core in test_cores() {
            let set = core.dynamize(&t, k).unwrap();
            let f = random_injection(seed ^ 0x9e37, bag, k);
            let g = random_injection(seed ^ 0x51ed, f.image(), k);
            for w in set.iter() {
                let fw = core.act(&f, w).expect("supported");
                // finality invariance
                prop_assert_eq!(core.is_final(w), core.is_final(&fw));
                // support transport
                prop_assert_eq!(core.labels_of(&fw), f.apply_set(core.labels_of(w)));
                // inverse
                prop_assert_eq!(&core.act(&f.inverse(), &fw).unwrap(), w);
                // composition
                let gf = g.compose(&f).unwrap();
                prop_assert_eq!(core.act(&gf, w).unwrap(), core.act(&g, &fw).unwrap());
                // extension invariance: restricting to the support changes nothing
                let small = f.restrict(core.labels_of(w));
                prop_assert_eq!(core.act(&small, w).unwrap(), fw.clone());
                // undefined outside the support
                if let Some(u) = core.labels_of(w).iter().next() {
                    prop_assert!(core.act(&f.restrict(bag.without(u)), w).is_none());
                }
                // byte-level action agrees
                let mut out = Vec::new();
                core.act_bytes(f.table(), &w.0, &mut out);
                prop_assert_eq!(out, fw.0.clone());
            }
        }
    }

    #[test]
    fn transition_equivariance(seed in any::<u64>(), k in 1usize..=3, budget in 1usize..10) {
        let (l, r) = random_pair(seed, k, budget);
        let bag = l.check_legal(k).unwrap();
        let free = LabelSet::range(k + 1).difference(bag);
        for core in test_cores() {
            let s = core.dynamize(&l, k).unwrap();
            let s2 = core.dynamize(&r, k).unwrap();
            let f = random_injection(seed ^ 1, bag, k);
            if let Some(u) = free.iter().next() {
                let fu = random_injection(seed ^ 2, bag.with(u), k);
                prop_assert_eq!(
                    act(&core, &fu, &core.lift_intro_vertex(&s, u)),
                    core.lift_intro_vertex(&act(&core, &fu, &s), fu.apply(u))
                );
            }
            for u in bag.iter() {
                prop_assert_eq!(
                    act(&core, &f, &core.lift_forget_vertex(&s, u)),
                    core.lift_forget_vertex(&act(&core, &f, &s), f.apply(u))
                );
                for v in bag.iter().filter(|&v| v != u) {
                    prop_assert_eq!(
                        act(&core, &f, &core.lift_intro_edge(&s, u, v)),
                        core.lift_intro_edge(&act(&core, &f, &s), f.apply(u), f.apply(v))
                    );
                }
            }
            prop_assert_eq!(
                act(&core, &f, &core.lift_join(&s, &s2)),
                core.lift_join(&act(&core, &f, &s), &act(&core, &f, &s2))
            );
        }
    }

    #[test]
    fn canonize_is_orbit_invariant(seed in any::<u64>(), k in 1usize..=3, budget in 1usize..14) {
        let comb = widthproof::reed_formula(2).to_combination().unwrap();
        let t = random_term(seed, k, budget, true);
        let st = comb.dynamize(&t, k).unwrap();
        let (c, f) = canonize(&comb.cores, &st);
        prop_assert_eq!(&act_state(&comb.cores, &f, &st), &c);
        prop_assert_eq!(&canonize(&comb.cores, &c).0, &c);
        prop_assert_eq!(c.bag, LabelSet::range(st.bag.len()));
        prop_assert_eq!(comb.flags(&c), comb.flags(&st));
        let (rc, rf) = canonize_reference(&comb.cores, &st);
        prop_assert_eq!(&rc, &c);
        prop_assert_eq!(rf, f);
        let g = random_injection(seed ^ 7, st.bag, k);
        prop_assert_eq!(canonize(&comb.cores, &act_state(&comb.cores, &g, &st)).0, c);
    }
}

proptest! {
    #![proptest_config(config(500))]

    #[test]
    fn cores_agree_with_oracles(seed in any::<u64>(), k in 1usize..=3, budget in 1usize..=12) {
        let t = random_term(seed, k, budget, true);
        let simple = random_simple_term(seed, k, budget, true);
        for core in test_cores() {
            let term = if core.requires_simple_mask() { &simple } else { &t };
            let g = term.semantics(k).unwrap().graph;
            prop_assert_eq!(core.accepts(term, k).unwrap(), oracles::evaluate(&core, &g), "{} on {}", core, term);
        }
    }

    // larger terms reach triangles and odd cycles far more often
    #[test]
    fn cores_agree_with_oracles_on_larger_terms(seed in any::<u64>(), k in 2usize..=3, budget in 13usize..=30) {
        let t = random_term(seed, k, budget, true);
        let simple = random_simple_term(seed, k, budget, true);
        for core in test_cores() {
            let term = if core.requires_simple_mask() { &simple } else { &t };
            let g = term.semantics(k).unwrap().graph;
            prop_assert_eq!(core.accepts(term, k).unwrap(), oracles::evaluate(&core, &g), "{} on {}", core, term);
        }
    }
}

/// Edge and vertex bookkeeping of one join step.
fn check_join_step(l: &Term, r: &Term, k: usize) -> Result<(), TestCaseError> {
    let ls = l.semantics(k).unwrap();
    let rs = r.semantics(k).unwrap();
    let js = Term::join(l.clone(), r.clone()).semantics(k).unwrap();
    let g: &MultiGraph = &js.graph;
    prop_assert_eq!(g.vertex_count(), ls.graph.vertex_count() + rs.graph.vertex_count() - ls.bag.len());
    prop_assert_eq!(g.edge_count(), ls.graph.edge_count() + rs.graph.edge_count());
    let right_img = |y: u64| {
        rs.map.iter().find(|(_, &v)| v == y).map_or(2 * y + 1, |(u, _)| 2 * ls.map[u])
    };
    for (e, a, b) in ls.graph.edges() {
        prop_assert_eq!(g.endpoints(2 * e), Some((2 * a, 2 * b)));
    }
    for (e, a, b) in rs.graph.edges() {
        let (x, y) = (right_img(a), right_img(b));
        prop_assert_eq!(g.endpoints(2 * e + 1), Some((x.min(y), x.max(y))));
    }
    let interface: Vec<u64> = js.map.values().copied().collect();
    for (_, a, b) in g.edges() {
        // a private left vertex (even, not in the interface) never meets an odd one
        let left_private = |v: u64| v.is_multiple_of(2) && !interface.contains(&v);
        prop_assert!(!(left_private(a) && b % 2 == 1) && !(left_private(b) && a % 2 == 1));
    }
    Ok(())
}

fn check_embedding(t: &Term, k: usize) -> Result<(), TestCaseError> {
    match t {
        Term::Leaf => Ok(()),
        Term::Join(l, r) => {
            check_join_step(l, r, k)?;
            check_embedding(l, k)?;
            check_embedding(r, k)
        }
        Term::IntroVertex(_, c) | Term::ForgetVertex(_, c) | Term::IntroEdge(_, _, c) => {
            let outer = t.semantics(k).unwrap().graph;
            let inner = c.semantics(k).unwrap().graph;
            for v in inner.vertices() {
                prop_assert!(outer.has_vertex(v));
            }
            for (e, a, b) in inner.edges() {
                prop_assert_eq!(outer.endpoints(e), Some((a, b)));
            }
            check_embedding(c, k)
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    #[test]
    fn join_structure(seed in any::<u64>(), k in 1usize..=3, budget in 1usize..10) {
        let (l, r) = random_pair(seed, k, budget);
        check_join_step(&l, &r, k)?;
        let t = random_term(seed, k, 14, true);
        check_embedding(&t, k)?;
    }
}

fn var(i: usize) -> Formula {
    Formula::Var(i)
}
fn not(f: Formula) -> Formula {
    Formula::Not(Box::new(f))
}
fn and(a: Formula, b: Formula) -> Formula {
    Formula::And(Box::new(a), Box::new(b))
}
fn implies(a: Formula, b: Formula) -> Formula {
    Formula::Implies(Box::new(a), Box::new(b))
}

/// Every refutation the search reports has passed extraction and
/// validation; this drives several small refutable properties through all
/// strategies and modes.
#[test]
fn refutations_replay() {
    let names = |n: usize| (0..n).map(|i| format!("c{i}")).collect::<Vec<_>>();
    let cases: Vec<(Vec<Core>, Formula, usize, bool)> = vec![
        (vec![Core::HasMultipleEdges], not(var(0)), 1, false),
        (vec![Core::MaxDegreeAtLeast(2)], not(var(0)), 2, false),
        (vec![Core::ChromaticAtMost(2)], var(0), 2, false),
        (
            vec![Core::SimpleCliqueAtLeast(3), Core::HasMultipleEdges, Core::ChromaticAtMost(2)],
            implies(and(not(var(0)), not(var(1))), var(2)),
            2,
            true,
        ),
        (
            vec![Core::MaxDegreeAtLeast(3), Core::ChromaticAtMost(2)],
            implies(not(var(0)), var(1)),
            2,
            true,
        ),
    ];
    let mut refuted = 0;
    for (cores, formula, k, premise) in cases {
        let comb = Combination::new(names(cores.len()), cores, formula).unwrap();
        for strategy in Strategy::ALL {
            if strategy.prunes() && !premise {
                continue;
            }
            for mode in [Mode::Pathwidth, Mode::Treewidth] {
                let out = prove(&comb, &SearchConfig::new(k, mode, strategy)).unwrap();
                assert_eq!(out.result.verdict, Verdict::Refuted, "{strategy} {mode:?} {:?}", comb.formula);
                let cx = out.counterexample.expect("validated counterexample");
                let term: Term = cx.term.parse().unwrap();
                assert!(!comb.combo_final(&comb.dynamize(&term, k).unwrap()));
                if mode == Mode::Pathwidth {
                    assert!(term.is_join_free());
                }
                refuted += 1;
            }
        }
    }
    assert_eq!(refuted, 2 * (3 * 2 + 2 * 4));
}
