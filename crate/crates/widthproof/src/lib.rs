//! Width-based theorem proving over graph properties given as dynamic
//! programming cores.
//!
//! A property is a Boolean combination of cores. [`search`] explores every
//! state reachable by instructive tree (or path) decompositions of bounded
//! width and either proves the property holds for all graphs of that width
//! or yields a counterexample term, which [`extract`] reconstructs and
//! checks against brute-force [`oracles`].

pub mod canon;
pub mod cores;
pub mod dpcore;
pub mod extract;
pub mod fixtures;
pub mod graph;
pub mod itd;
pub mod labels;
pub mod oracles;
pub mod propfile;
pub mod search;

pub use cores::Core;
pub use dpcore::{Combination, Formula, State, Witness, WitnessSet};
pub use extract::{prove, validate, Counterexample, ProveOutcome};
pub use graph::MultiGraph;
pub use itd::Term;
pub use propfile::{reed_formula, PropertyFormula};
pub use search::{search, Limits, Mode, SearchConfig, Strategy, Verdict};
