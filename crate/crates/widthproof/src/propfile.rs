//! Property files: named core instantiations followed by a Boolean formula.
//!
//! ```text
//! x := MaximumDegree_AtLeast(4)
//! y := SimpleCliqueNumber_AtLeast(3)
//! z := HasMultipleEdges()
//! w := ChromaticNumber_AtMost(3)
//! Formula
//! NOT x AND NOT y AND NOT z IMPLIES w
//! ```
//!
//! Precedence is NOT > AND > OR > IMPLIES; IMPLIES associates to the right.

use std::fmt;

use thiserror::Error;

use crate::cores::{Core, CoreError};
use crate::dpcore::{Combination, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Var(String),
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Implies(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn var(s: &str) -> Expr {
        Expr::Var(s.to_string())
    }
    #[allow(clippy::should_implement_trait)]
    pub fn not(e: Expr) -> Expr {
        Expr::Not(Box::new(e))
    }
    pub fn and(a: Expr, b: Expr) -> Expr {
        Expr::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: Expr, b: Expr) -> Expr {
        Expr::Or(Box::new(a), Box::new(b))
    }
    pub fn implies(a: Expr, b: Expr) -> Expr {
        Expr::Implies(Box::new(a), Box::new(b))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Implies(..) => 0,
            Expr::Or(..) => 1,
            Expr::And(..) => 2,
            Expr::Not(_) | Expr::Var(_) => 3,
        }
    }

    fn names<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Expr::Var(v) => out.push(v),
            Expr::Not(a) => a.names(out),
            Expr::And(a, b) | Expr::Or(a, b) | Expr::Implies(a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Var(v) => f.write_str(v),
            Expr::Not(a) => {
                f.write_str("NOT ")?;
                wrap(f, a, 3)
            }
            Expr::And(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(" AND ")?;
                wrap(f, b, 3)
            }
            Expr::Or(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" OR ")?;
                wrap(f, b, 2)
            }
            Expr::Implies(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(" IMPLIES ")?;
                wrap(f, b, 0)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Binding {
    pub name: String,
    pub core: Core,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFormula {
    pub bindings: Vec<Binding>,
    pub formula: Expr,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PropError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}: {source}")]
    Core { line: usize, source: CoreError },
    #[error("line {line}: identifier {name} bound twice")]
    Duplicate { line: usize, name: String },
    #[error("missing `Formula` line")]
    MissingFormula,
    #[error("unbound identifier {0}")]
    Unbound(String),
    #[error(
        "{0} is a simple-graph-only property; conjoin NOT of a HasMultipleEdges atom in its scope or pass the override"
    )]
    Unmasked(String),
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> PropError {
    PropError::Syntax { line, col, msg: msg.into() }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|x| x.is_ascii_alphabetic() || x == '_') && c.all(|x| x.is_ascii_alphanumeric() || x == '_')
}

fn parse_binding(lineno: usize, raw: &str) -> Result<Binding, PropError> {
    let text = strip_comment(raw);
    let col_of = |s: &str| s.as_ptr() as usize - raw.as_ptr() as usize + 1;
    let Some((lhs, rhs)) = text.split_once(":=") else {
        let first = text.trim_start();
        return Err(syntax(lineno, col_of(first), "expected `ident := Core(args)` or `Formula`"));
    };
    let name = lhs.trim();
    if !is_ident(name) {
        return Err(syntax(lineno, col_of(lhs.trim_start()), format!("bad identifier {name:?}")));
    }
    let rhs_t = rhs.trim();
    let open = rhs_t.find('(').ok_or_else(|| syntax(lineno, col_of(rhs_t), "expected `(` after core name"))?;
    let core_name = rhs_t[..open].trim();
    if !rhs_t.ends_with(')') {
        return Err(syntax(lineno, col_of(rhs_t) + rhs_t.len(), "expected `)`"));
    }
    let inner = &rhs_t[open + 1..rhs_t.len() - 1];
    let mut args = Vec::new();
    if !inner.trim().is_empty() {
        for a in inner.split(',') {
            let t = a.trim();
            let v: i64 = t
                .parse()
                .map_err(|_| syntax(lineno, col_of(a.trim_start()), format!("bad integer {t:?}")))?;
            args.push(v);
        }
    }
    let core = Core::from_name(core_name, &args).map_err(|source| PropError::Core { line: lineno, source })?;
    Ok(Binding { name: name.to_string(), core })
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    LParen,
    RParen,
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(lines: &[(usize, &str)]) -> Result<Vec<Lexed>, PropError> {
    let mut out = Vec::new();
    for &(line, raw) in lines {
        let text = strip_comment(raw);
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            let c = bytes[i] as char;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            let col = i + 1;
            if c == '(' || c == ')' {
                out.push(Lexed { tok: if c == '(' { Tok::LParen } else { Tok::RParen }, line, col });
                i += 1;
                continue;
            }
            if c.is_ascii_alphanumeric() || c == '_' {
                let start = i;
                while i < bytes.len() && ((bytes[i] as char).is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "NOT" => Tok::Not,
                    "AND" => Tok::And,
                    "OR" => Tok::Or,
                    "IMPLIES" => Tok::Implies,
                    w if is_ident(w) => Tok::Ident(w.to_string()),
                    w => return Err(syntax(line, col, format!("bad identifier {w:?}"))),
                };
                out.push(Lexed { tok, line, col });
                continue;
            }
            return Err(syntax(line, col, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Lexed>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|l| &l.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks.get(self.pos).map_or(self.end, |l| (l.line, l.col))
    }

    fn err(&self, msg: impl Into<String>) -> PropError {
        let (l, c) = self.here();
        syntax(l, c, msg)
    }

    fn implies(&mut self) -> Result<Expr, PropError> {
        let lhs = self.or()?;
        if self.peek() == Some(&Tok::Implies) {
            self.pos += 1;
            let rhs = self.implies()?;
            return Ok(Expr::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Expr, PropError> {
        let mut e = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            e = Expr::or(e, self.and()?);
        }
        Ok(e)
    }

    fn and(&mut self) -> Result<Expr, PropError> {
        let mut e = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            e = Expr::and(e, self.unary()?);
        }
        Ok(e)
    }

    fn unary(&mut self) -> Result<Expr, PropError> {
        match self.peek().cloned() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Expr::not(self.unary()?))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.implies()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(self.err("expected `)`"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(Expr::Var(name))
            }
            Some(t) => Err(self.err(format!("unexpected {t:?}"))),
            None => Err(self.err("unexpected end of formula")),
        }
    }
}

/// Parses a formula expression on its own (positions are 1-based columns on
/// line 1).
pub fn parse_expr(text: &str) -> Result<Expr, PropError> {
    let lines: Vec<(usize, &str)> = text.lines().enumerate().map(|(i, l)| (i + 1, l)).collect();
    parse_expr_lines(&lines)
}

fn parse_expr_lines(lines: &[(usize, &str)]) -> Result<Expr, PropError> {
    let toks = lex(lines)?;
    let end = lines.last().map_or((1, 1), |&(l, s)| (l, strip_comment(s).len() + 1));
    let mut p = Parser { toks, pos: 0, end };
    let e = p.implies()?;
    if p.pos < p.toks.len() {
        return Err(p.err("trailing input after formula"));
    }
    Ok(e)
}

impl PropertyFormula {
    /// Parses and checks binding/identifier consistency. The simple-graph
    /// mask rule is checked separately by [`PropertyFormula::check_mask`].
    pub fn parse(text: &str) -> Result<PropertyFormula, PropError> {
        let mut bindings: Vec<Binding> = Vec::new();
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let mut found = false;
        for (no, raw) in lines.by_ref() {
            let t = strip_comment(raw).trim();
            if t.is_empty() {
                continue;
            }
            if t == "Formula" {
                found = true;
                break;
            }
            let b = parse_binding(no, raw)?;
            if bindings.iter().any(|x| x.name == b.name) {
                return Err(PropError::Duplicate { line: no, name: b.name });
            }
            bindings.push(b);
        }
        if !found {
            return Err(PropError::MissingFormula);
        }
        let rest: Vec<(usize, &str)> = lines.collect();
        let formula = parse_expr_lines(&rest)?;
        let pf = PropertyFormula { bindings, formula };
        let mut names = Vec::new();
        pf.formula.names(&mut names);
        if let Some(n) = names.iter().find(|n| pf.index_of(n).is_none()) {
            return Err(PropError::Unbound(n.to_string()));
        }
        Ok(pf)
    }

    /// Parse plus the simple-graph mask check unless `allow_unmasked`.
    pub fn load(text: &str, allow_unmasked: bool) -> Result<PropertyFormula, PropError> {
        let pf = Self::parse(text)?;
        if !allow_unmasked {
            pf.check_mask()?;
        }
        Ok(pf)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.bindings.iter().position(|b| b.name == name)
    }

    /// Every occurrence of a simple-graph-only atom must sit under an AND
    /// chain (or a top-level premise) that conjoins `NOT m` for some
    /// HasMultipleEdges atom `m`.
    pub fn check_mask(&self) -> Result<(), PropError> {
        let is_mask = |e: &Expr| match e {
            Expr::Not(a) => match a.as_ref() {
                Expr::Var(v) => self.index_of(v).is_some_and(|i| self.bindings[i].core == Core::HasMultipleEdges),
                _ => false,
            },
            _ => false,
        };
        fn conjuncts(e: &Expr) -> Vec<&Expr> {
            match e {
                Expr::And(a, b) => {
                    let mut v = conjuncts(a);
                    v.extend(conjuncts(b));
                    v
                }
                other => vec![other],
            }
        }
        let mut root_masked = false;
        if let Expr::Implies(p, _) = &self.formula {
            root_masked = conjuncts(p).into_iter().any(is_mask);
        }
        fn walk<'a>(
            e: &'a Expr,
            masked: bool,
            pf: &PropertyFormula,
            is_mask: &dyn Fn(&Expr) -> bool,
        ) -> Result<(), PropError> {
            match e {
                Expr::Var(v) => {
                    let i = pf.index_of(v).ok_or_else(|| PropError::Unbound(v.clone()))?;
                    if pf.bindings[i].core.requires_simple_mask() && !masked {
                        return Err(PropError::Unmasked(v.clone()));
                    }
                    Ok(())
                }
                Expr::Not(a) => walk(a, masked, pf, is_mask),
                Expr::And(..) => {
                    let cs = conjuncts(e);
                    let m = masked || cs.iter().any(|c| is_mask(c));
                    cs.into_iter().try_for_each(|c| walk(c, m, pf, is_mask))
                }
                Expr::Or(a, b) | Expr::Implies(a, b) => {
                    walk(a, masked, pf, is_mask)?;
                    walk(b, masked, pf, is_mask)
                }
            }
        }
        walk(&self.formula, root_masked, self, &is_mask)
    }

    pub fn to_combination(&self) -> Result<Combination, PropError> {
        fn conv(e: &Expr, pf: &PropertyFormula) -> Result<Formula, PropError> {
            Ok(match e {
                Expr::Var(v) => Formula::Var(pf.index_of(v).ok_or_else(|| PropError::Unbound(v.clone()))?),
                Expr::Not(a) => Formula::Not(Box::new(conv(a, pf)?)),
                Expr::And(a, b) => Formula::And(Box::new(conv(a, pf)?), Box::new(conv(b, pf)?)),
                Expr::Or(a, b) => Formula::Or(Box::new(conv(a, pf)?), Box::new(conv(b, pf)?)),
                Expr::Implies(a, b) => Formula::Implies(Box::new(conv(a, pf)?), Box::new(conv(b, pf)?)),
            })
        }
        let f = conv(&self.formula, self)?;
        let names = self.bindings.iter().map(|b| b.name.clone()).collect();
        let cores = self.bindings.iter().map(|b| b.core).collect();
        Ok(Combination::new(names, cores, f).expect("identifiers resolved to binding indices"))
    }
}

impl fmt::Display for PropertyFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bindings {
            let args: Vec<String> = b.core.params().iter().map(|a| a.to_string()).collect();
            writeln!(f, "{} := {}({})", b.name, b.core.name(), args.join(","))?;
        }
        writeln!(f, "Formula")?;
        writeln!(f, "{}", self.formula)
    }
}

/// Reed's bound at maximum degree below `s + 1`: no vertex of degree
/// `s + 1`, triangle-free and simple imply `ceil((s+3)/2)`-colourable.
pub fn reed_formula(s: u32) -> PropertyFormula {
    let bindings = vec![
        Binding { name: "x".into(), core: Core::MaxDegreeAtLeast(s + 1) },
        Binding { name: "y".into(), core: Core::SimpleCliqueAtLeast(3) },
        Binding { name: "z".into(), core: Core::HasMultipleEdges },
        Binding { name: "w".into(), core: Core::ChromaticAtMost((s + 3).div_ceil(2)) },
    ];
    let premise = Expr::and(Expr::and(Expr::not(Expr::var("x")), Expr::not(Expr::var("y"))), Expr::not(Expr::var("z")));
    PropertyFormula { bindings, formula: Expr::implies(premise, Expr::var("w")) }
}

/// Triangle-free simple graphs are `r`-colourable.
pub fn triangle_free_formula(r: u32) -> PropertyFormula {
    let bindings = vec![
        Binding { name: "y".into(), core: Core::SimpleCliqueAtLeast(3) },
        Binding { name: "z".into(), core: Core::HasMultipleEdges },
        Binding { name: "w".into(), core: Core::ChromaticAtMost(r) },
    ];
    let premise = Expr::and(Expr::not(Expr::var("y")), Expr::not(Expr::var("z")));
    PropertyFormula { bindings, formula: Expr::implies(premise, Expr::var("w")) }
}

#[cfg(test)]
mod tests {
    use super::*;

    const CONCLUSION: &str = "x := MaximumDegree_AtLeast(4)
y := SimpleCliqueNumber_AtLeast(3)
z := HasMultipleEdges()
w := ChromaticNumber_AtMost(3)
Formula
NOT x AND NOT y AND NOT z IMPLIES w
";

    #[test]
    fn parses_reed_block() {
        let pf = PropertyFormula::load(CONCLUSION, false).unwrap();
        assert_eq!(pf.bindings.len(), 4);
        assert_eq!(pf, reed_formula(3));
        assert_eq!(pf.to_string(), CONCLUSION);
    }

    #[test]
    fn unbound_identifier() {
        let e = PropertyFormula::parse("Formula\nx\n").unwrap_err();
        assert_eq!(e.to_string(), "unbound identifier x");
    }

    #[test]
    fn single_atom() {
        let pf = PropertyFormula::parse("x := HasMultipleEdges()\nFormula\nNOT x\n").unwrap();
        assert_eq!(pf.formula, Expr::not(Expr::var("x")));
        assert!(pf.to_combination().unwrap().split().is_none());
    }

    #[test]
    fn precedence_and_associativity() {
        let e = parse_expr("a OR b AND NOT c IMPLIES d IMPLIES e").unwrap();
        let want = Expr::implies(
            Expr::or(Expr::var("a"), Expr::and(Expr::var("b"), Expr::not(Expr::var("c")))),
            Expr::implies(Expr::var("d"), Expr::var("e")),
        );
        assert_eq!(e, want);
        assert_eq!(parse_expr(&want.to_string()).unwrap(), want);
        let g = parse_expr("(a IMPLIES b) IMPLIES NOT (c OR d)").unwrap();
        assert_eq!(parse_expr(&g.to_string()).unwrap(), g);
    }

    #[test]
    fn positioned_errors() {
        match parse_expr("a AND").unwrap_err() {
            PropError::Syntax { line: 1, col: 6, .. } => {}
            e => panic!("{e:?}"),
        }
        match parse_expr("a & b").unwrap_err() {
            PropError::Syntax { line: 1, col: 3, .. } => {}
            e => panic!("{e:?}"),
        }
        let e = PropertyFormula::parse("x := Bogus(1)\nFormula\nx").unwrap_err();
        assert!(matches!(e, PropError::Core { line: 1, .. }));
        let e = PropertyFormula::parse("x := HasMultipleEdges(2)\nFormula\nx").unwrap_err();
        assert!(matches!(e, PropError::Core { source: CoreError::Arity { .. }, .. }));
    }

    #[test]
    fn comments_and_blank_lines() {
        let t = "# header\n\nx := HasMultipleEdges() # multi\nFormula # here\n  NOT x # done\n";
        assert_eq!(PropertyFormula::parse(t).unwrap().formula, Expr::not(Expr::var("x")));
    }

    #[test]
    fn mask_rule() {
        let bare = "y := SimpleCliqueNumber_AtLeast(3)\nw := ChromaticNumber_AtMost(3)\nFormula\nNOT y IMPLIES w\n";
        assert!(matches!(PropertyFormula::load(bare, false), Err(PropError::Unmasked(_))));
        assert!(PropertyFormula::load(bare, true).is_ok());
        assert!(triangle_free_formula(3).check_mask().is_ok());
        let conclusion_side = "y := SimpleCliqueNumber_AtLeast(3)\nz := HasMultipleEdges()\nFormula\nNOT z IMPLIES y\n";
        assert!(PropertyFormula::load(conclusion_side, false).is_ok());
    }

    #[test]
    fn reed_family() {
        let chrom = |s| reed_formula(s).bindings[3].core;
        assert_eq!(chrom(2), Core::ChromaticAtMost(3));
        assert_eq!(chrom(3), Core::ChromaticAtMost(3));
        assert_eq!(chrom(4), Core::ChromaticAtMost(4));
        for s in 0..8 {
            assert!(reed_formula(s).to_combination().unwrap().certify_premise());
        }
    }
}
