//! Injective relabelings, bag permutations and state canonization.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cores::Core;
use crate::dpcore::{State, WitnessSet};
use crate::labels::{Label, LabelSet, MAX_LABEL};

/// An injective map from a label set into labels.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Relabeling {
    img: [Label; MAX_LABEL as usize + 1],
    dom: LabelSet,
}

impl Relabeling {
    pub fn identity(bag: LabelSet) -> Relabeling {
        Self::from_pairs(bag.iter().map(|u| (u, u))).unwrap()
    }

    /// Fails when the pairs are not a function or not injective.
    pub fn from_pairs<I: IntoIterator<Item = (Label, Label)>>(pairs: I) -> Option<Relabeling> {
        let mut f = Relabeling { img: [0; MAX_LABEL as usize + 1], dom: LabelSet::EMPTY };
        let mut image = LabelSet::EMPTY;
        for (a, b) in pairs {
            if a == 0 || b == 0 || a > MAX_LABEL || b > MAX_LABEL {
                return None;
            }
            if f.dom.contains(a) {
                if f.img[a as usize] == b {
                    continue;
                }
                return None;
            }
            if image.contains(b) {
                return None;
            }
            f.dom.insert(a);
            image.insert(b);
            f.img[a as usize] = b;
        }
        Some(f)
    }

    /// Image lookup table indexed by label; entries outside the domain are 0.
    pub fn table(&self) -> &[Label; MAX_LABEL as usize + 1] {
        &self.img
    }

    pub fn domain(&self) -> LabelSet {
        self.dom
    }

    pub fn image(&self) -> LabelSet {
        self.dom.iter().map(|u| self.img[u as usize]).collect()
    }

    pub fn get(&self, u: Label) -> Option<Label> {
        if self.dom.contains(u) {
            Some(self.img[u as usize])
        } else {
            None
        }
    }

    /// Image of a label known to be in the domain.
    #[inline]
    pub fn apply(&self, u: Label) -> Label {
        debug_assert!(self.dom.contains(u), "label {u} outside relabeling domain");
        self.img[u as usize]
    }

    pub fn apply_set(&self, s: LabelSet) -> LabelSet {
        s.iter().map(|u| self.apply(u)).collect()
    }

    pub fn pairs(&self) -> Vec<(Label, Label)> {
        self.dom.iter().map(|u| (u, self.img[u as usize])).collect()
    }

    pub fn inverse(&self) -> Relabeling {
        Self::from_pairs(self.pairs().into_iter().map(|(a, b)| (b, a))).unwrap()
    }

    /// `self ∘ g`: first `g`, then `self`. Defined where `g`'s image lies in
    /// `self`'s domain.
    pub fn compose(&self, g: &Relabeling) -> Option<Relabeling> {
        let mut pairs = Vec::new();
        for (a, b) in g.pairs() {
            pairs.push((a, self.get(b)?));
        }
        Self::from_pairs(pairs)
    }

    pub fn restrict(&self, s: LabelSet) -> Relabeling {
        Self::from_pairs(self.pairs().into_iter().filter(|(a, _)| s.contains(*a))).unwrap()
    }

    /// Extends the map to `u` using the smallest label of `1..=max` not
    /// already in the image. No-op when `u` is already mapped.
    pub fn extend_smallest(&self, u: Label, max: Label) -> Option<Relabeling> {
        if self.dom.contains(u) {
            return Some(*self);
        }
        let image = self.image();
        let free = (1..=max).find(|&l| !image.contains(l))?;
        let mut pairs = self.pairs();
        pairs.push((u, free));
        Self::from_pairs(pairs)
    }

    pub fn is_identity(&self) -> bool {
        self.dom.iter().all(|u| self.img[u as usize] == u)
    }
}

impl fmt::Debug for Relabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.pairs()).finish()
    }
}

impl Serialize for Relabeling {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Relabeling {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs: Vec<(Label, Label)> = Vec::deserialize(d)?;
        Relabeling::from_pairs(pairs).ok_or_else(|| serde::de::Error::custom("relabeling is not injective"))
    }
}

/// Every injection `bag -> 1..=k+1`, ordered lexicographically by the
/// image vector (images listed in ascending domain order).
pub fn enumerate_relabelings(bag: LabelSet, k: usize) -> Vec<Relabeling> {
    let dom = bag.to_vec();
    let targets: Vec<Label> = (1..=(k + 1) as Label).collect();
    let mut out = Vec::new();
    injections(&dom, &targets, &mut Vec::new(), &mut out);
    out
}

/// Every bijection `bag -> bag`, ordered lexicographically by image vector.
pub fn enumerate_permutations(bag: LabelSet) -> Vec<Relabeling> {
    let dom = bag.to_vec();
    let mut out = Vec::new();
    injections(&dom, &dom, &mut Vec::new(), &mut out);
    out
}

fn injections(dom: &[Label], targets: &[Label], cur: &mut Vec<Label>, out: &mut Vec<Relabeling>) {
    if cur.len() == dom.len() {
        out.push(Relabeling::from_pairs(dom.iter().copied().zip(cur.iter().copied())).unwrap());
        return;
    }
    for &t in targets {
        if !cur.contains(&t) {
            cur.push(t);
            injections(dom, targets, cur, out);
            cur.pop();
        }
    }
}

/// Applies a relabeling to every component of a state.
pub fn act_state(cores: &[Core], f: &Relabeling, st: &State) -> State {
    State {
        bag: f.apply_set(st.bag),
        sets: cores.iter().zip(&st.sets).map(|(c, s)| c.act_set(f, s)).collect(),
    }
}

/// Key order: sorted bag vector, then each component's sorted set.
pub fn compare_states(a: &State, b: &State) -> Ordering {
    a.bag
        .to_vec()
        .cmp(&b.bag.to_vec())
        .then_with(|| a.sets.cmp(&b.sets))
}

/// Minimum of `f·state` over all injections `f` with domain `bag`, together
/// with the first minimizing `f` in enumeration order.
///
/// Only injections onto `{1..|bag|}` can reach the minimal bag vector, so the
/// enumeration is restricted to those; their relative order in the full
/// enumeration is unchanged, hence so is the tie-break. Candidates are
/// relabeled at the byte level into flat buffers and abandoned as soon as a
/// component compares greater than the best so far.
pub fn canonize(cores: &[Core], st: &State) -> (State, Relabeling) {
    let dom = st.bag.to_vec();
    let target = LabelSet::range(dom.len());
    let perms = enumerate_permutations_onto(&dom, target);
    let mut best: Vec<FlatSet> = cores.iter().map(|_| FlatSet::default()).collect();
    let mut cand: Vec<FlatSet> = cores.iter().map(|_| FlatSet::default()).collect();
    let mut best_f: Option<usize> = None;
    for (pi, f) in perms.iter().enumerate() {
        let mut ord = if best_f.is_some() { Ordering::Equal } else { Ordering::Less };
        for (i, (c, s)) in cores.iter().zip(&st.sets).enumerate() {
            cand[i].fill(c, f, s);
            if ord == Ordering::Equal {
                ord = cand[i].cmp_with(&best[i]);
                if ord == Ordering::Greater {
                    break;
                }
            }
        }
        if ord == Ordering::Less {
            std::mem::swap(&mut best, &mut cand);
            best_f = Some(pi);
        }
    }
    let f = perms[best_f.expect("at least one bijection exists")];
    let sets = best.iter().map(FlatSet::to_set).collect();
    (State { bag: target, sets }, f)
}

/// A relabeled witness set held as one byte buffer plus sorted spans.
#[derive(Default)]
struct FlatSet {
    bytes: Vec<u8>,
    spans: Vec<(u32, u32)>,
}

impl FlatSet {
    fn fill(&mut self, core: &Core, f: &Relabeling, s: &WitnessSet) {
        self.bytes.clear();
        self.spans.clear();
        for w in s.iter() {
            let start = self.bytes.len() as u32;
            core.act_bytes(f.table(), &w.0, &mut self.bytes);
            self.spans.push((start, self.bytes.len() as u32));
        }
        let bytes = &self.bytes;
        self.spans.sort_unstable_by(|a, b| bytes[a.0 as usize..a.1 as usize].cmp(&bytes[b.0 as usize..b.1 as usize]));
        // witness actions are injective on a set, so no duplicates arise
    }

    fn get(&self, i: usize) -> &[u8] {
        let (a, b) = self.spans[i];
        &self.bytes[a as usize..b as usize]
    }

    fn cmp_with(&self, other: &FlatSet) -> Ordering {
        (0..self.spans.len()).map(|i| self.get(i)).cmp((0..other.spans.len()).map(|i| other.get(i)))
    }

    fn to_set(&self) -> WitnessSet {
        WitnessSet::new((0..self.spans.len()).map(|i| crate::dpcore::Witness(self.get(i).to_vec())).collect())
    }
}

/// Straightforward version of [`canonize`] on decoded witness sets; kept as
/// the reference the fast path is tested against.
///
/// Only injections onto `{1..|bag|}` can reach the minimal bag vector, so the
/// enumeration is restricted to those; their relative order in the full
/// enumeration is unchanged, hence so is the tie-break.
pub fn canonize_reference(cores: &[Core], st: &State) -> (State, Relabeling) {
    let dom = st.bag.to_vec();
    let target = LabelSet::range(dom.len());
    let mut best: Option<(State, Relabeling)> = None;
    for f in enumerate_permutations_onto(&dom, target) {
        // components are compared one at a time so losing candidates stop early
        let cand_bag = target;
        let mut sets: Vec<WitnessSet> = Vec::with_capacity(cores.len());
        let mut ord = Ordering::Equal;
        for (i, (c, s)) in cores.iter().zip(&st.sets).enumerate() {
            let acted = c.act_set(&f, s);
            if let Some((b, _)) = &best {
                if ord == Ordering::Equal {
                    ord = acted.cmp(&b.sets[i]);
                    if ord == Ordering::Greater {
                        break;
                    }
                }
            }
            sets.push(acted);
        }
        if ord == Ordering::Greater {
            continue;
        }
        if best.is_none() || ord == Ordering::Less {
            best = Some((State { bag: cand_bag, sets }, f));
        }
    }
    best.expect("at least one bijection exists")
}

fn enumerate_permutations_onto(dom: &[Label], target: LabelSet) -> Vec<Relabeling> {
    let mut out = Vec::new();
    injections(dom, &target.to_vec(), &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabeling_counts() {
        assert_eq!(enumerate_relabelings(LabelSet::EMPTY, 3).len(), 1);
        assert_eq!(enumerate_relabelings(LabelSet::from_iter([1]), 1).len(), 2);
        assert_eq!(enumerate_relabelings(LabelSet::from_iter([1, 2]), 2).len(), 6);
        assert_eq!(enumerate_permutations(LabelSet::EMPTY).len(), 1);
        assert_eq!(enumerate_permutations(LabelSet::from_iter([1, 2])).len(), 2);
        assert_eq!(enumerate_permutations(LabelSet::range(6)).len(), 720);
    }

    #[test]
    fn relabeling_algebra() {
        let f = Relabeling::from_pairs([(2, 1), (4, 2)]).unwrap();
        assert_eq!(f.apply(4), 2);
        assert_eq!(f.inverse().apply(1), 2);
        assert!(f.inverse().compose(&f).unwrap().is_identity());
        assert!(Relabeling::from_pairs([(1, 2), (3, 2)]).is_none());
        let g = f.extend_smallest(5, 4).unwrap();
        assert_eq!(g.apply(5), 3);
        assert_eq!(f.restrict(LabelSet::from_iter([2])).pairs(), vec![(2, 1)]);
    }
}
