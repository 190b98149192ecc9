//! The four concrete DP-cores and the registry mapping property-file names
//! to them.

pub mod chromatic;
pub mod clique;
pub mod degree;
pub mod multiedge;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::Relabeling;
use crate::dpcore::Witness;
use crate::labels::{Label, LabelSet};

use chromatic::Partition;
use clique::CliqueWitness;
use degree::DegreeWitness;
use multiedge::MultiEdgeWitness;

pub const CHROMATIC: &str = "ChromaticNumber_AtMost";
pub const MAX_DEGREE: &str = "MaximumDegree_AtLeast";
pub const SIMPLE_CLIQUE: &str = "SimpleCliqueNumber_AtLeast";
pub const MULTI_EDGE: &str = "HasMultipleEdges";

/// Registry names in a fixed order.
pub const REGISTRY: [&str; 4] = [CHROMATIC, MAX_DEGREE, SIMPLE_CLIQUE, MULTI_EDGE];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("unknown core {0}")]
    Unknown(String),
    #[error("{name} takes {expected} argument(s), got {got}")]
    Arity { name: String, expected: usize, got: usize },
    #[error("{name}: {msg}")]
    Parameter { name: String, msg: String },
}

/// A DP-core instance. Witnesses are handled as canonical byte strings;
/// each variant decodes them into its typed witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Core {
    ChromaticAtMost(u32),
    MaxDegreeAtLeast(u32),
    SimpleCliqueAtLeast(u32),
    HasMultipleEdges,
}

enum Typed {
    C(Partition),
    D(DegreeWitness),
    Q(CliqueWitness),
    M(MultiEdgeWitness),
}

impl Core {
    /// Looks up a registry name with integer arguments and validates them.
    pub fn from_name(name: &str, args: &[i64]) -> Result<Core, CoreError> {
        let arity = |expected: usize| {
            if args.len() != expected {
                Err(CoreError::Arity { name: name.to_string(), expected, got: args.len() })
            } else {
                Ok(())
            }
        };
        let param = |lo: i64, hi: i64| -> Result<u32, CoreError> {
            let x = args[0];
            if x < lo || x > hi {
                Err(CoreError::Parameter {
                    name: name.to_string(),
                    msg: format!("argument {x} outside {lo}..={hi}"),
                })
            } else {
                Ok(x as u32)
            }
        };
        match name {
            CHROMATIC => {
                arity(1)?;
                Ok(Core::ChromaticAtMost(param(1, 32)?))
            }
            MAX_DEGREE => {
                arity(1)?;
                Ok(Core::MaxDegreeAtLeast(param(1, 255)?))
            }
            SIMPLE_CLIQUE => {
                arity(1)?;
                Ok(Core::SimpleCliqueAtLeast(param(2, 255)?))
            }
            MULTI_EDGE => {
                arity(0)?;
                Ok(Core::HasMultipleEdges)
            }
            _ => Err(CoreError::Unknown(name.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Core::ChromaticAtMost(_) => CHROMATIC,
            Core::MaxDegreeAtLeast(_) => MAX_DEGREE,
            Core::SimpleCliqueAtLeast(_) => SIMPLE_CLIQUE,
            Core::HasMultipleEdges => MULTI_EDGE,
        }
    }

    pub fn params(&self) -> Vec<i64> {
        match *self {
            Core::ChromaticAtMost(x) | Core::MaxDegreeAtLeast(x) | Core::SimpleCliqueAtLeast(x) => vec![x as i64],
            Core::HasMultipleEdges => vec![],
        }
    }

    /// Every transition output has at most one witness.
    pub fn deterministic(&self) -> bool {
        matches!(self, Core::MaxDegreeAtLeast(_) | Core::HasMultipleEdges)
    }

    /// The property is preserved when passing to supergraphs.
    pub fn monotone_increasing(&self) -> bool {
        !matches!(self, Core::ChromaticAtMost(_))
    }

    /// The property is preserved when passing to subgraphs.
    pub fn subgraph_closed(&self) -> bool {
        matches!(self, Core::ChromaticAtMost(_))
    }

    /// Correct only on graphs without parallel edges.
    pub fn requires_simple_mask(&self) -> bool {
        matches!(self, Core::SimpleCliqueAtLeast(_))
    }

    fn decode(&self, w: &Witness) -> Typed {
        match self {
            Core::ChromaticAtMost(_) => Typed::C(Partition::decode(&w.0)),
            Core::MaxDegreeAtLeast(_) => Typed::D(DegreeWitness::decode(&w.0)),
            Core::SimpleCliqueAtLeast(_) => Typed::Q(CliqueWitness::decode(&w.0)),
            Core::HasMultipleEdges => Typed::M(MultiEdgeWitness::decode(&w.0)),
        }
    }

    pub fn leaf(&self) -> Vec<Witness> {
        match self {
            Core::ChromaticAtMost(_) => enc(chromatic::leaf(), Partition::encode),
            Core::MaxDegreeAtLeast(_) => enc(degree::leaf(), DegreeWitness::encode),
            Core::SimpleCliqueAtLeast(_) => enc(clique::leaf(), CliqueWitness::encode),
            Core::HasMultipleEdges => enc(multiedge::leaf(), MultiEdgeWitness::encode),
        }
    }

    pub fn intro_vertex(&self, w: &Witness, u: Label) -> Vec<Witness> {
        match (self, self.decode(w)) {
            (Core::ChromaticAtMost(r), Typed::C(p)) => enc(chromatic::intro_vertex(*r, &p, u), Partition::encode),
            (Core::MaxDegreeAtLeast(_), Typed::D(x)) => enc(degree::intro_vertex(&x, u), DegreeWitness::encode),
            (Core::SimpleCliqueAtLeast(o), Typed::Q(x)) => enc(clique::intro_vertex(*o, &x, u), CliqueWitness::encode),
            (Core::HasMultipleEdges, Typed::M(x)) => enc(multiedge::intro_vertex(&x), MultiEdgeWitness::encode),
            _ => unreachable!(),
        }
    }

    pub fn forget_vertex(&self, w: &Witness, u: Label) -> Vec<Witness> {
        match (self, self.decode(w)) {
            (Core::ChromaticAtMost(_), Typed::C(p)) => enc(chromatic::forget_vertex(&p, u), Partition::encode),
            (Core::MaxDegreeAtLeast(_), Typed::D(x)) => enc(degree::forget_vertex(&x, u), DegreeWitness::encode),
            (Core::SimpleCliqueAtLeast(o), Typed::Q(x)) => enc(clique::forget_vertex(*o, &x, u), CliqueWitness::encode),
            (Core::HasMultipleEdges, Typed::M(x)) => enc(multiedge::forget_vertex(&x, u), MultiEdgeWitness::encode),
            _ => unreachable!(),
        }
    }

    pub fn intro_edge(&self, w: &Witness, u: Label, v: Label) -> Vec<Witness> {
        match (self, self.decode(w)) {
            (Core::ChromaticAtMost(_), Typed::C(p)) => enc(chromatic::intro_edge(&p, u, v), Partition::encode),
            (Core::MaxDegreeAtLeast(d), Typed::D(x)) => enc(degree::intro_edge(*d, &x, u, v), DegreeWitness::encode),
            (Core::SimpleCliqueAtLeast(o), Typed::Q(x)) => enc(clique::intro_edge(*o, &x, u, v), CliqueWitness::encode),
            (Core::HasMultipleEdges, Typed::M(x)) => enc(multiedge::intro_edge(&x, u, v), MultiEdgeWitness::encode),
            _ => unreachable!(),
        }
    }

    pub fn join(&self, a: &Witness, b: &Witness) -> Vec<Witness> {
        match (self, self.decode(a), self.decode(b)) {
            (Core::ChromaticAtMost(_), Typed::C(x), Typed::C(y)) => enc(chromatic::join(&x, &y), Partition::encode),
            (Core::MaxDegreeAtLeast(d), Typed::D(x), Typed::D(y)) => enc(degree::join(*d, &x, &y), DegreeWitness::encode),
            (Core::SimpleCliqueAtLeast(o), Typed::Q(x), Typed::Q(y)) => enc(clique::join(*o, &x, &y), CliqueWitness::encode),
            (Core::HasMultipleEdges, Typed::M(x), Typed::M(y)) => enc(multiedge::join(&x, &y), MultiEdgeWitness::encode),
            _ => unreachable!(),
        }
    }

    pub fn is_final(&self, w: &Witness) -> bool {
        match self.decode(w) {
            Typed::C(_) => true,
            Typed::D(x) => degree::is_final(&x),
            Typed::Q(x) => clique::is_final(&x),
            Typed::M(x) => multiedge::is_final(&x),
        }
    }

    /// Labels mentioned by a witness.
    pub fn labels_of(&self, w: &Witness) -> LabelSet {
        match self.decode(w) {
            Typed::C(x) => x.support(),
            Typed::D(x) => x.support(),
            Typed::Q(x) => x.support(),
            Typed::M(x) => x.support(),
        }
    }

    /// Witness action; `None` when the support is not inside `dom(f)`.
    pub fn act(&self, f: &Relabeling, w: &Witness) -> Option<Witness> {
        Some(Witness(match self.decode(w) {
            Typed::C(x) => chromatic::act(f, &x)?.encode(),
            Typed::D(x) => degree::act(f, &x)?.encode(),
            Typed::Q(x) => clique::act(f, &x)?.encode(),
            Typed::M(x) => multiedge::act(f, &x)?.encode(),
        }))
    }

    /// Byte-level witness action used on the canonization hot path: appends
    /// the encoding of `f·w` to `out`, where `img[u]` is the image of label
    /// `u`. Every label of `w` must be mapped. Agrees with [`Core::act`].
    pub fn act_bytes(&self, img: &[Label; 32], w: &[u8], out: &mut Vec<u8>) {
        if w[0] == 0 {
            out.push(0);
            return;
        }
        match self {
            Core::ChromaticAtMost(_) => {
                let mut cells = [0u32; 32];
                let mut n = 0;
                let mut i = 1;
                while i < w.len() {
                    let len = w[i] as usize;
                    let mut m = 0u32;
                    for &u in &w[i + 1..i + 1 + len] {
                        m |= 1 << img[u as usize];
                    }
                    cells[n] = m;
                    n += 1;
                    i += 1 + len;
                }
                // lowest bit = cell minimum
                cells[..n].sort_unstable_by_key(|m| m.trailing_zeros());
                out.push(1);
                for &m in &cells[..n] {
                    out.push(m.count_ones() as u8);
                    let mut x = m;
                    while x != 0 {
                        out.push(x.trailing_zeros() as u8);
                        x &= x - 1;
                    }
                }
            }
            Core::MaxDegreeAtLeast(_) | Core::SimpleCliqueAtLeast(_) => {
                let head = if matches!(self, Core::SimpleCliqueAtLeast(_)) { 2 } else { 1 };
                let mut vals = [0u8; 32];
                let mut present = 0u32;
                for p in w[head..].chunks_exact(2) {
                    let t = img[p[0] as usize];
                    present |= 1 << t;
                    vals[t as usize] = p[1];
                }
                out.extend_from_slice(&w[..head]);
                while present != 0 {
                    let t = present.trailing_zeros() as usize;
                    out.push(t as u8);
                    out.push(vals[t]);
                    present &= present - 1;
                }
            }
            Core::HasMultipleEdges => {
                let mut pairs = [(0u8, 0u8); 64];
                let mut n = 0;
                for p in w[1..].chunks_exact(2) {
                    let (a, b) = (img[p[0] as usize], img[p[1] as usize]);
                    if n == pairs.len() {
                        // more pairs than fit on the stack: fall back
                        out.extend(self.act_fallback(img, w));
                        return;
                    }
                    pairs[n] = (a.min(b), a.max(b));
                    n += 1;
                }
                pairs[..n].sort_unstable();
                out.push(1);
                for &(a, b) in &pairs[..n] {
                    out.push(a);
                    out.push(b);
                }
            }
        }
    }

    /// Byte-level join with the same result as [`Core::join`], for the
    /// lifted join's inner loop. Not used for the chromatic core, whose
    /// lifted join is a set intersection.
    pub fn join_bytes(&self, a: &[u8], b: &[u8]) -> Option<Vec<u8>> {
        match self {
            Core::ChromaticAtMost(_) => (a == b).then(|| a.to_vec()),
            Core::HasMultipleEdges => {
                if a[0] == 0 || b[0] == 0 {
                    return Some(vec![0]);
                }
                self.join(&Witness(a.to_vec()), &Witness(b.to_vec())).pop().map(|w| w.0)
            }
            Core::MaxDegreeAtLeast(d) => {
                if a[0] == 0 || b[0] == 0 {
                    return Some(vec![0]);
                }
                if a.len() != b.len() {
                    return None;
                }
                let mut out = Vec::with_capacity(a.len());
                out.push(1);
                let mut found = false;
                for (p, q) in a[1..].chunks_exact(2).zip(b[1..].chunks_exact(2)) {
                    if p[0] != q[0] {
                        return None;
                    }
                    let sum = p[1] as u32 + q[1] as u32;
                    found |= sum >= *d;
                    out.push(p[0]);
                    out.push(sum as u8);
                }
                Some(if found { vec![0] } else { out })
            }
            Core::SimpleCliqueAtLeast(omega) => {
                if a[0] == 0 || b[0] == 0 {
                    return Some(vec![0]);
                }
                if a.len() != b.len() {
                    return None;
                }
                let n = (a.len() - 2) / 2;
                let (s, t) = (a[1] as u32, b[1] as u32);
                if (n as u32) < s && (n as u32) < t {
                    return None;
                }
                let size = s + t - n as u32;
                let mut out = Vec::with_capacity(a.len());
                out.push(1);
                out.push(size as u8);
                let mut all_full = true;
                for (p, q) in a[2..].chunks_exact(2).zip(b[2..].chunks_exact(2)) {
                    if p[0] != q[0] {
                        return None;
                    }
                    let sum = p[1] as u32 + q[1] as u32;
                    if sum > omega - 1 {
                        return None;
                    }
                    all_full &= sum == omega - 1;
                    out.push(p[0]);
                    out.push(sum as u8);
                }
                Some(if size == *omega && all_full { vec![0] } else { out })
            }
        }
    }

    fn act_fallback(&self, img: &[Label; 32], w: &[u8]) -> Vec<u8> {
        let f = Relabeling::from_pairs(self.labels_of(&Witness(w.to_vec())).iter().map(|u| (u, img[u as usize])))
            .expect("injective image table");
        self.act(&f, &Witness(w.to_vec())).expect("labels mapped").0
    }

    /// Human-readable witness rendering.
    pub fn describe(&self, w: &Witness) -> String {
        match self.decode(w) {
            Typed::C(x) => {
                let cells: Vec<String> = x.0.iter().map(|c| c.to_string()).collect();
                format!("{{{}}}", cells.join(","))
            }
            Typed::D(DegreeWitness::Found) | Typed::Q(CliqueWitness::Found) | Typed::M(MultiEdgeWitness::Found) => {
                "found".to_string()
            }
            Typed::D(DegreeWitness::Degrees(m)) => format!("{m:?}"),
            Typed::Q(CliqueWitness::Partial { degrees, size }) => format!("({degrees:?}, {size})"),
            Typed::M(MultiEdgeWitness::Pairs(p)) => format!("{p:?}"),
        }
    }
}

fn enc<T>(v: Vec<T>, f: fn(&T) -> Vec<u8>) -> Vec<Witness> {
    v.iter().map(|x| Witness(f(x))).collect()
}

impl fmt::Display for Core {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.params().iter().map(|a| a.to_string()).collect();
        write!(f, "{}({})", self.name(), args.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn byte_join_matches_typed_join() {
        use std::collections::BTreeMap;
        let q = |d: &[(u8, u32)], size: u32| {
            Witness(CliqueWitness::Partial { degrees: d.iter().copied().collect::<BTreeMap<_, _>>(), size }.encode())
        };
        let core = Core::SimpleCliqueAtLeast(3);
        let ws = [
            q(&[], 0),
            q(&[(1, 0)], 1),
            q(&[(1, 1), (2, 1)], 2),
            q(&[(1, 1), (2, 1)], 3),
            q(&[(1, 0), (2, 0)], 2),
            q(&[(1, 2)], 3),
            Witness(vec![0]),
        ];
        for a in &ws {
            for b in &ws {
                assert_eq!(core.join_bytes(&a.0, &b.0), core.join(a, b).pop().map(|w| w.0), "{a:?} {b:?}");
            }
        }
        let core = Core::MaxDegreeAtLeast(3);
        let dw = |d: &[(u8, u32)]| Witness(DegreeWitness::Degrees(d.iter().copied().collect()).encode());
        let ws = [dw(&[]), dw(&[(1, 0)]), dw(&[(1, 2)]), dw(&[(1, 1), (2, 0)]), dw(&[(2, 1)]), Witness(vec![0])];
        for a in &ws {
            for b in &ws {
                assert_eq!(core.join_bytes(&a.0, &b.0), core.join(a, b).pop().map(|w| w.0), "{a:?} {b:?}");
            }
        }
    }

    #[test]
    fn registry_lookup() {
        assert_eq!(Core::from_name("ChromaticNumber_AtMost", &[3]), Ok(Core::ChromaticAtMost(3)));
        assert_eq!(Core::from_name("HasMultipleEdges", &[]), Ok(Core::HasMultipleEdges));
        assert!(matches!(Core::from_name("HasMultipleEdges", &[1]), Err(CoreError::Arity { .. })));
        assert!(matches!(Core::from_name("SimpleCliqueNumber_AtLeast", &[1]), Err(CoreError::Parameter { .. })));
        assert!(matches!(Core::from_name("Connected", &[]), Err(CoreError::Unknown(_))));
        for name in REGISTRY {
            let args: Vec<i64> = if name == MULTI_EDGE { vec![] } else { vec![3] };
            assert_eq!(Core::from_name(name, &args).unwrap().name(), name);
        }
    }

    #[test]
    fn flags_sort_before_structured_witnesses() {
        for c in [Core::MaxDegreeAtLeast(2), Core::SimpleCliqueAtLeast(3), Core::HasMultipleEdges] {
            let flag = Witness(vec![0]);
            assert!(c.is_final(&flag));
            assert!(c.leaf().iter().all(|w| flag < *w && !c.is_final(w)));
        }
        assert!(Core::ChromaticAtMost(1).leaf().iter().all(|w| Core::ChromaticAtMost(1).is_final(w)));
    }

    #[test]
    fn display() {
        assert_eq!(Core::MaxDegreeAtLeast(4).to_string(), "MaximumDegree_AtLeast(4)");
        assert_eq!(Core::HasMultipleEdges.to_string(), "HasMultipleEdges()");
    }
}
