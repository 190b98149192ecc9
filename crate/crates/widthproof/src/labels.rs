//! Interface labels and label sets (bags).

use std::fmt;

use serde::{Deserialize, Serialize};

/// An interface label in `1..=k+1`.
pub type Label = u8;

/// Largest supported label. Bags are bitmasks over `1..=MAX_LABEL`.
pub const MAX_LABEL: Label = 31;

/// A set of labels, stored as a bitmask (bit `u` for label `u`).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Label>", try_from = "Vec<Label>")]
pub struct LabelSet(u32);

impl LabelSet {
    pub const EMPTY: LabelSet = LabelSet(0);

    /// `{1, ..., n}`
    pub fn range(n: usize) -> LabelSet {
        assert!(n <= MAX_LABEL as usize);
        LabelSet(((1u64 << (n + 1)) - 2) as u32)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, u: Label) -> bool {
        (1..=MAX_LABEL).contains(&u) && self.0 & (1 << u) != 0
    }

    pub fn insert(&mut self, u: Label) {
        assert!((1..=MAX_LABEL).contains(&u), "label {u} out of range");
        self.0 |= 1 << u;
    }

    pub fn remove(&mut self, u: Label) {
        if (1..=MAX_LABEL).contains(&u) {
            self.0 &= !(1 << u);
        }
    }

    pub fn with(mut self, u: Label) -> LabelSet {
        self.insert(u);
        self
    }

    pub fn without(mut self, u: Label) -> LabelSet {
        self.remove(u);
        self
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: LabelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 | other.0)
    }

    pub fn intersection(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & other.0)
    }

    pub fn difference(self, other: LabelSet) -> LabelSet {
        LabelSet(self.0 & !other.0)
    }

    /// Ascending iteration.
    pub fn iter(self) -> impl Iterator<Item = Label> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let u = bits.trailing_zeros() as Label;
                bits &= bits - 1;
                Some(u)
            }
        })
    }

    pub fn to_vec(self) -> Vec<Label> {
        self.iter().collect()
    }

    pub fn max(self) -> Option<Label> {
        if self.0 == 0 {
            None
        } else {
            Some(31 - self.0.leading_zeros() as Label)
        }
    }
}

impl FromIterator<Label> for LabelSet {
    fn from_iter<I: IntoIterator<Item = Label>>(iter: I) -> Self {
        let mut s = LabelSet::EMPTY;
        for u in iter {
            s.insert(u);
        }
        s
    }
}

impl From<LabelSet> for Vec<Label> {
    fn from(s: LabelSet) -> Self {
        s.to_vec()
    }
}

impl TryFrom<Vec<Label>> for LabelSet {
    type Error = String;
    fn try_from(v: Vec<Label>) -> Result<Self, Self::Error> {
        if let Some(&u) = v.iter().find(|&&u| u == 0 || u > MAX_LABEL) {
            return Err(format!("label {u} out of range"));
        }
        Ok(v.into_iter().collect())
    }
}

impl fmt::Debug for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|u| u.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let s: LabelSet = [3, 1].into_iter().collect();
        assert_eq!(s.to_vec(), vec![1, 3]);
        assert!(s.contains(3) && !s.contains(2));
        assert_eq!(s.len(), 2);
        assert_eq!(LabelSet::range(3).to_vec(), vec![1, 2, 3]);
        assert_eq!(LabelSet::range(0), LabelSet::EMPTY);
        assert_eq!(s.max(), Some(3));
        assert_eq!(s.without(3).with(2).to_vec(), vec![1, 2]);
        assert_eq!(format!("{s}"), "{1,3}");
    }
}
