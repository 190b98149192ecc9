//! Breadth-first exploration of combination states: plain, canonized
//! (ISO), premise-pruned, and both, in treewidth or pathwidth mode.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonize, enumerate_permutations, Relabeling};
use crate::dpcore::{Combination, State, WitnessSet};
use crate::labels::{Label, LabelSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Bfs,
    IsoBfs,
    BfsPremise,
    IsoBfsPremise,
}

impl Strategy {
    pub const ALL: [Strategy; 4] = [Strategy::Bfs, Strategy::IsoBfs, Strategy::BfsPremise, Strategy::IsoBfsPremise];

    pub fn canonizes(self) -> bool {
        matches!(self, Strategy::IsoBfs | Strategy::IsoBfsPremise)
    }

    pub fn prunes(self) -> bool {
        matches!(self, Strategy::BfsPremise | Strategy::IsoBfsPremise)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::Bfs => "bfs",
            Strategy::IsoBfs => "iso-bfs",
            Strategy::BfsPremise => "bfs-premise",
            Strategy::IsoBfsPremise => "iso-bfs-premise",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Strategy::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| format!("unknown strategy {s} (expected bfs, iso-bfs, bfs-premise, iso-bfs-premise)"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Join successors enabled.
    Treewidth,
    /// Join successors omitted.
    Pathwidth,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Treewidth => "tw",
            Mode::Pathwidth => "pw",
        }
    }
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tw" | "treewidth" => Ok(Mode::Treewidth),
            "pw" | "pathwidth" => Ok(Mode::Pathwidth),
            _ => Err(format!("unknown mode {s} (expected tw or pw)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_states: usize,
    pub timeout: Option<Duration>,
    /// Rough cap on the bytes held by seen states and the trace.
    pub max_memory_bytes: Option<usize>,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 10_000_000, timeout: Some(Duration::from_secs(3600)), max_memory_bytes: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub k: usize,
    pub mode: Mode,
    pub strategy: Strategy,
    pub limits: Limits,
    /// Worker threads for successor canonization; 1 runs inline.
    pub threads: usize,
    /// Progress lines on standard error.
    pub verbose: bool,
}

impl SearchConfig {
    pub fn new(k: usize, mode: Mode, strategy: Strategy) -> Self {
        SearchConfig { k, mode, strategy, limits: Limits::default(), threads: 1, verbose: false }
    }
}

/// How a trace state was produced from earlier trace states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Rule {
    Init,
    IntroVertex { parent: usize, label: Label },
    ForgetVertex { parent: usize, label: Label },
    IntroEdge { parent: usize, u: Label, v: Label },
    /// `Join(left, perm · right)`
    Join { left: usize, right: usize, perm: Relabeling },
}

impl Rule {
    pub fn parents(&self) -> Vec<usize> {
        match self {
            Rule::Init => vec![],
            Rule::IntroVertex { parent, .. } | Rule::ForgetVertex { parent, .. } | Rule::IntroEdge { parent, .. } => {
                vec![*parent]
            }
            Rule::Join { left, right, .. } => vec![*left, *right],
        }
    }
}

/// A dequeued state with its provenance. `relabel` maps the raw successor
/// onto the stored (canonical) state; it is the identity without
/// canonization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub state: State,
    pub rule: Rule,
    pub relabel: Relabeling,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    InclusionHolds,
    Refuted,
    Indeterminate,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Stats {
    /// States whose successors were generated: with premise pruning, the
    /// dequeued states satisfying the premise; otherwise every dequeued
    /// state. This is the figure reported as "states".
    pub states: usize,
    /// Distinct states inserted into the seen set, the initial one included.
    pub seen: usize,
    /// States dequeued.
    pub processed: usize,
    /// Per component: largest lifted transition output over the run.
    pub multiplicity: Vec<usize>,
    pub peak_frontier: usize,
    pub seconds: f64,
    /// Set when a limit stopped the run.
    pub limit_hit: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub verdict: Verdict,
    pub trace: Vec<TraceEntry>,
    pub stats: Stats,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("strategy {0} needs a formula of the form PREMISE IMPLIES CONCLUSION")]
    NoPremise(Strategy),
    #[error("premise is not certified closed under subgraphs; premise pruning is unsound for it")]
    PremiseNotClosed,
    #[error("width {0} exceeds the supported label range")]
    WidthTooLarge(usize),
}

struct Pending {
    state: State,
    rule: Rule,
    relabel: Relabeling,
}

fn approx_bytes(st: &State) -> usize {
    64 + st.sets.iter().map(|s| 24 + s.iter().map(|w| w.0.len() + 24).sum::<usize>()).sum::<usize>()
}

/// Runs one exploration. Refutations are returned unvalidated; see
/// [`crate::extract::prove`] for the validated entry point.
pub fn search(comb: &Combination, cfg: &SearchConfig) -> Result<SearchResult, SearchError> {
    if cfg.k + 1 > crate::labels::MAX_LABEL as usize {
        return Err(SearchError::WidthTooLarge(cfg.k));
    }
    if cfg.strategy.prunes() {
        if comb.split().is_none() {
            return Err(SearchError::NoPremise(cfg.strategy));
        }
        if !comb.certify_premise() {
            return Err(SearchError::PremiseNotClosed);
        }
    }
    let pool = if cfg.threads > 1 {
        Some(rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build().expect("thread pool"))
    } else {
        None
    };
    let mut ex = Explorer {
        comb,
        cfg,
        seen: HashSet::new(),
        queue: VecDeque::new(),
        trace: Vec::new(),
        by_bag: HashMap::new(),
        stats: Stats { multiplicity: vec![0; comb.cores.len()], ..Stats::default() },
        bytes: 0,
        pool,
    };
    let start = Instant::now();
    let verdict = ex.run(start);
    ex.stats.seconds = start.elapsed().as_secs_f64();
    Ok(SearchResult { verdict, trace: ex.trace, stats: ex.stats })
}

struct Explorer<'a> {
    comb: &'a Combination,
    cfg: &'a SearchConfig,
    seen: HashSet<State>,
    queue: VecDeque<Pending>,
    trace: Vec<TraceEntry>,
    /// Join partners: trace indices by bag (premise-satisfying only when pruning).
    by_bag: HashMap<LabelSet, Vec<usize>>,
    stats: Stats,
    bytes: usize,
    pool: Option<rayon::ThreadPool>,
}

impl Explorer<'_> {
    fn run(&mut self, start: Instant) -> Verdict {
        let init = self.comb.initial_state();
        let (init, relabel) = if self.cfg.strategy.canonizes() {
            canonize(&self.comb.cores, &init)
        } else {
            (init, Relabeling::identity(LabelSet::EMPTY))
        };
        self.insert(Pending { state: init, rule: Rule::Init, relabel });
        let mut last_report = Instant::now();
        while let Some(p) = self.queue.pop_front() {
            let idx = self.trace.len();
            self.trace.push(TraceEntry { state: p.state, rule: p.rule, relabel: p.relabel });
            self.stats.processed += 1;
            let st = &self.trace[idx].state;
            if !self.comb.combo_final(st) {
                return Verdict::Refuted;
            }
            if self.cfg.strategy.prunes() && !self.comb.combo_premise(st) {
                continue;
            }
            self.by_bag.entry(st.bag).or_default().push(idx);
            self.stats.states += 1;
            self.expand(idx);
            if let Some(reason) = self.limit_reason(start) {
                self.stats.limit_hit = Some(reason);
                return Verdict::Indeterminate;
            }
            if self.cfg.verbose && last_report.elapsed() > Duration::from_secs(2) {
                last_report = Instant::now();
                eprintln!(
                    "[search] states={} seen={} processed={} frontier={} {:.0} seen/s",
                    self.stats.states,
                    self.stats.seen,
                    self.stats.processed,
                    self.queue.len(),
                    self.stats.seen as f64 / start.elapsed().as_secs_f64().max(1e-9)
                );
            }
        }
        Verdict::InclusionHolds
    }

    fn limit_reason(&self, start: Instant) -> Option<String> {
        let l = &self.cfg.limits;
        if self.stats.seen > l.max_states {
            return Some(format!("state cap {} exceeded", l.max_states));
        }
        if let Some(t) = l.timeout {
            if start.elapsed() > t {
                return Some(format!("time cap {:.0}s exceeded", t.as_secs_f64()));
            }
        }
        if let Some(m) = l.max_memory_bytes {
            if self.bytes > m {
                return Some(format!("memory estimate {} bytes exceeds cap {}", self.bytes, m));
            }
        }
        None
    }

    fn insert(&mut self, p: Pending) {
        if self.seen.contains(&p.state) {
            return;
        }
        self.bytes += 2 * approx_bytes(&p.state);
        self.seen.insert(p.state.clone());
        self.stats.seen += 1;
        self.queue.push_back(p);
        self.stats.peak_frontier = self.stats.peak_frontier.max(self.queue.len());
    }

    fn note(&mut self, sets: &[WitnessSet]) {
        for (m, s) in self.stats.multiplicity.iter_mut().zip(sets) {
            *m = (*m).max(s.len());
        }
    }

    /// Raw successors in the fixed order, then canonization, then seen
    /// insertion in that same order.
    fn expand(&mut self, idx: usize) {
        let k = self.cfg.k;
        let cores = &self.comb.cores;
        let st = self.trace[idx].state.clone();
        let all = LabelSet::range(k + 1);
        let mut raw: Vec<(State, Rule)> = Vec::new();

        for u in all.difference(st.bag).iter() {
            let sets = cores.iter().zip(&st.sets).map(|(c, s)| c.lift_intro_vertex(s, u)).collect();
            raw.push((State { bag: st.bag.with(u), sets }, Rule::IntroVertex { parent: idx, label: u }));
        }
        for u in st.bag.iter() {
            let sets = cores.iter().zip(&st.sets).map(|(c, s)| c.lift_forget_vertex(s, u)).collect();
            raw.push((State { bag: st.bag.without(u), sets }, Rule::ForgetVertex { parent: idx, label: u }));
        }
        let labels = st.bag.to_vec();
        for (i, &u) in labels.iter().enumerate() {
            for &v in &labels[i + 1..] {
                let sets = cores.iter().zip(&st.sets).map(|(c, s)| c.lift_intro_edge(s, u, v)).collect();
                raw.push((State { bag: st.bag, sets }, Rule::IntroEdge { parent: idx, u, v }));
            }
        }
        if self.cfg.mode == Mode::Treewidth {
            let perms = if self.cfg.strategy.canonizes() {
                enumerate_permutations(st.bag)
            } else {
                vec![Relabeling::identity(st.bag)]
            };
            let partners = self.by_bag.get(&st.bag).cloned().unwrap_or_default();
            for j in partners {
                let other = &self.trace[j].state;
                for pi in &perms {
                    let moved: Vec<WitnessSet> = cores.iter().zip(&other.sets).map(|(c, s)| c.act_set(pi, s)).collect();
                    let sets = cores.iter().zip(&st.sets).zip(&moved).map(|((c, a), b)| c.lift_join(a, b)).collect();
                    raw.push((State { bag: st.bag, sets }, Rule::Join { left: idx, right: j, perm: *pi }));
                    let mine: Vec<WitnessSet> = cores.iter().zip(&st.sets).map(|(c, s)| c.act_set(pi, s)).collect();
                    let sets = cores.iter().zip(&other.sets).zip(&mine).map(|((c, a), b)| c.lift_join(a, b)).collect();
                    raw.push((State { bag: st.bag, sets }, Rule::Join { left: j, right: idx, perm: *pi }));
                }
            }
        }
        for (s, _) in &raw {
            self.note(&s.sets);
        }
        // equal raw successors canonize identically; only the first can be new
        let mut local: HashSet<&State> = HashSet::with_capacity(raw.len());
        // seen states are canonical, so a raw hit is rejected after canonizing too
        let keep: Vec<bool> = raw.iter().map(|(s, _)| local.insert(s) && !self.seen.contains(s)).collect();
        drop(local);
        let mut it = keep.into_iter();
        raw.retain(|_| it.next().unwrap());
        let finish = |(s, rule): (State, Rule)| -> Pending {
            if self.cfg.strategy.canonizes() {
                let (c, f) = canonize(cores, &s);
                Pending { state: c, rule, relabel: f }
            } else {
                let bag = s.bag;
                Pending { state: s, rule, relabel: Relabeling::identity(bag) }
            }
        };
        let done: Vec<Pending> = match &self.pool {
            Some(pool) if self.cfg.strategy.canonizes() => pool.install(|| raw.into_par_iter().map(finish).collect()),
            _ => raw.into_iter().map(finish).collect(),
        };
        for p in done {
            self.insert(p);
        }
    }
}
