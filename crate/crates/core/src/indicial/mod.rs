//! Abstract-index manipulation. Tensors are opaque symbols carrying index
//! lists; all rules are formal.
//!
//! An indexed object is written `T([a,-b],[c],d)`: the first list holds
//! indices in order, with a minus sign marking contravariant ones; the
//! second list holds contravariant indices in the legacy two-list style;
//! trailing labels are partial derivatives. An object whose second list
//! is empty keeps slot order through contractions. One with a non-empty
//! second list follows the legacy rules, where a raised or lowered index
//! moves to the front of the list for its new variance.

mod calculus;
mod canon;
mod contract;
mod forms;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::symkernel::{ratsimp, render, Expr};

pub use parse::{parse_index_expr, parse_tensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Variance {
    Co,
    Contra,
}

impl Variance {
    pub fn flip(self) -> Variance {
        match self {
            Variance::Co => Variance::Contra,
            Variance::Contra => Variance::Co,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Index {
    pub label: String,
    pub var: Variance,
}

impl Index {
    pub fn co(label: &str) -> Index {
        Index { label: label.to_string(), var: Variance::Co }
    }

    pub fn contra(label: &str) -> Index {
        Index { label: label.to_string(), var: Variance::Contra }
    }
}

/// An index label with an optional minus mark, as written in a list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signed {
    pub label: String,
    pub minus: bool,
}

impl Signed {
    pub fn parse(s: &str) -> Signed {
        match s.trim().strip_prefix('-') {
            Some(l) => Signed { label: l.trim().to_string(), minus: true },
            None => Signed { label: s.trim().to_string(), minus: false },
        }
    }
}

/// Unmarked labels and marked labels, each in order.
pub fn split_indices(l: &[Signed]) -> (Vec<String>, Vec<String>) {
    let plus = l.iter().filter(|s| !s.minus).map(|s| s.label.clone()).collect();
    let minus = l.iter().filter(|s| s.minus).map(|s| s.label.clone()).collect();
    (plus, minus)
}

/// Indexed object. Legacy objects keep all covariant slots ahead of the
/// contravariant ones.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tensor {
    pub name: String,
    pub slots: Vec<Index>,
    pub ordered: bool,
    pub deriv: Vec<String>,
}

impl Tensor {
    /// Build from the written lists. `first` entries may carry a leading
    /// minus.
    pub fn new(name: &str, first: &[&str], second: &[&str], deriv: &[&str]) -> Tensor {
        let first: Vec<Signed> = first.iter().map(|s| Signed::parse(s)).collect();
        let second: Vec<String> = second.iter().map(|s| s.trim().to_string()).collect();
        let deriv: Vec<String> = deriv.iter().map(|s| s.trim().to_string()).collect();
        Tensor::from_lists(name, &first, &second, &deriv)
    }

    pub fn from_lists(name: &str, first: &[Signed], second: &[String], deriv: &[String]) -> Tensor {
        let mut deriv = deriv.to_vec();
        deriv.sort();
        if second.is_empty() {
            let slots = first
                .iter()
                .map(|s| if s.minus { Index::contra(&s.label) } else { Index::co(&s.label) })
                .collect();
            return Tensor { name: name.to_string(), slots, ordered: true, deriv };
        }
        let (plus, minus) = split_indices(first);
        let slots = plus
            .iter()
            .map(|l| Index::co(l))
            .chain(minus.iter().chain(second).map(|l| Index::contra(l)))
            .collect();
        Tensor { name: name.to_string(), slots, ordered: false, deriv }
    }

    pub fn scalar(name: &str) -> Tensor {
        Tensor { name: name.to_string(), slots: vec![], ordered: true, deriv: vec![] }
    }

    pub fn covariant_indices(&self) -> Vec<String> {
        self.slots.iter().filter(|i| i.var == Variance::Co).map(|i| i.label.clone()).collect()
    }

    pub fn contravariant_indices(&self) -> Vec<String> {
        self.slots.iter().filter(|i| i.var == Variance::Contra).map(|i| i.label.clone()).collect()
    }

    fn ncov(&self) -> usize {
        self.slots.iter().filter(|i| i.var == Variance::Co).count()
    }

    /// Add a partial derivative index.
    pub fn differentiate(&self, k: &str) -> Tensor {
        let mut t = self.clone();
        t.deriv.push(k.to_string());
        t.deriv.sort();
        t
    }

    /// Put `new` into slot `s`. Ordered objects keep the slot; legacy
    /// objects move the index to the front of the list for its variance.
    pub(crate) fn replace_slot(&mut self, s: usize, new: Index) {
        if self.ordered {
            self.slots[s] = new;
            return;
        }
        self.slots.remove(s);
        let at = match new.var {
            Variance::Co => 0,
            Variance::Contra => self.ncov(),
        };
        self.slots.insert(at, new);
    }

    pub(crate) fn labels(&self) -> impl Iterator<Item = &str> {
        self.slots.iter().map(|i| i.label.as_str()).chain(self.deriv.iter().map(|s| s.as_str()))
    }

    fn relabel(&self, map: &dyn Fn(&str) -> Option<String>) -> Tensor {
        let f = |l: &String| map(l).unwrap_or_else(|| l.clone());
        let mut t = Tensor {
            name: self.name.clone(),
            slots: self.slots.iter().map(|i| Index { label: f(&i.label), var: i.var }).collect(),
            ordered: self.ordered,
            deriv: self.deriv.iter().map(f).collect(),
        };
        t.deriv.sort();
        t
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.is_empty() && self.deriv.is_empty() {
            return f.write_str(&self.name);
        }
        let list = |v: Vec<String>| v.join(",");
        let (first, second) = if self.ordered {
            let first = self
                .slots
                .iter()
                .map(|i| match i.var {
                    Variance::Co => i.label.clone(),
                    Variance::Contra => format!("-{}", i.label),
                })
                .collect();
            (first, vec![])
        } else {
            (self.covariant_indices(), self.contravariant_indices())
        };
        write!(f, "{}([{}],[{}]", self.name, list(first), list(second))?;
        for d in &self.deriv {
            write!(f, ",{d}")?;
        }
        f.write_str(")")
    }
}

/// Constant coefficient times a product of indexed objects.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coeff: Expr,
    pub factors: Vec<Tensor>,
}

impl Term {
    pub fn new(coeff: Expr, factors: Vec<Tensor>) -> Term {
        Term { coeff, factors }
    }

    pub fn of(t: Tensor) -> Term {
        Term::new(Expr::one(), vec![t])
    }

    fn label_counts(&self) -> BTreeMap<&str, usize> {
        let mut m = BTreeMap::new();
        for t in &self.factors {
            for l in t.labels() {
                *m.entry(l).or_insert(0) += 1;
            }
        }
        m
    }

    /// Labels occurring once, with their variance, in order of appearance.
    pub fn free_indices(&self) -> Vec<Index> {
        let counts = self.label_counts();
        let mut out = vec![];
        for t in &self.factors {
            for i in &t.slots {
                if counts[i.label.as_str()] == 1 {
                    out.push(i.clone());
                }
            }
            for d in &t.deriv {
                if counts[d.as_str()] == 1 {
                    out.push(Index::co(d));
                }
            }
        }
        out
    }

    pub fn labels(&self) -> BTreeSet<String> {
        self.factors.iter().flat_map(|t| t.labels().map(str::to_string)).collect()
    }

    /// Each label at most twice, and a repeated label once up, once down.
    pub fn validate(&self) -> Result<(), IndexError> {
        let mut seen: BTreeMap<&str, Vec<Variance>> = BTreeMap::new();
        for t in &self.factors {
            for i in &t.slots {
                seen.entry(&i.label).or_default().push(i.var);
            }
            for d in &t.deriv {
                seen.entry(d).or_default().push(Variance::Co);
            }
        }
        for (l, v) in seen {
            if v.len() > 2 || (v.len() == 2 && v[0] == v[1]) {
                return Err(IndexError::Conflict(l.to_string()));
            }
        }
        Ok(())
    }

    fn relabel(&self, map: &dyn Fn(&str) -> Option<String>) -> Term {
        Term::new(self.coeff.clone(), self.factors.iter().map(|t| t.relabel(map)).collect())
    }
}

/// Sum of terms.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct IndexExpr {
    pub terms: Vec<Term>,
}

impl IndexExpr {
    pub fn zero() -> IndexExpr {
        IndexExpr { terms: vec![] }
    }

    pub fn constant(c: Expr) -> IndexExpr {
        IndexExpr { terms: vec![Term::new(c, vec![])] }
    }

    pub fn tensor(t: Tensor) -> IndexExpr {
        IndexExpr { terms: vec![Term::of(t)] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &IndexExpr) -> IndexExpr {
        IndexExpr { terms: self.terms.iter().chain(&o.terms).cloned().collect() }
    }

    pub fn sub(&self, o: &IndexExpr) -> IndexExpr {
        self.add(&o.scale(&Expr::int(-1)))
    }

    pub fn scale(&self, c: &Expr) -> IndexExpr {
        IndexExpr {
            terms: self.terms.iter().map(|t| Term::new(ratsimp(&(c.clone() * t.coeff.clone())), t.factors.clone())).collect(),
        }
    }

    /// Product; dummies of `o` are renamed away from the labels of `self`.
    pub fn mul(&self, o: &IndexExpr) -> IndexExpr {
        let mut terms = vec![];
        for a in &self.terms {
            for b in &o.terms {
                let b = rename_dummies_away(b, &a.labels());
                let mut f = a.factors.clone();
                f.extend(b.factors.iter().cloned());
                terms.push(Term::new(ratsimp(&(a.coeff.clone() * b.coeff.clone())), f));
            }
        }
        IndexExpr { terms }
    }

    /// Free indices of the first term; every term must agree as a set.
    pub fn free_indices(&self) -> Result<Vec<Index>, IndexError> {
        let Some(first) = self.terms.first() else { return Ok(vec![]) };
        let f = first.free_indices();
        let key = |v: &[Index]| v.iter().cloned().collect::<BTreeSet<_>>();
        for t in &self.terms[1..] {
            if key(&t.free_indices()) != key(&f) {
                return Err(IndexError::FreeMismatch(t.to_string()));
            }
        }
        Ok(f)
    }

    pub fn validate(&self) -> Result<(), IndexError> {
        for t in &self.terms {
            t.validate()?;
        }
        self.free_indices().map(|_| ())
    }

    fn relabel(&self, map: &dyn Fn(&str) -> Option<String>) -> IndexExpr {
        IndexExpr { terms: self.terms.iter().map(|t| t.relabel(map)).collect() }
    }

    pub fn labels(&self) -> BTreeSet<String> {
        self.terms.iter().flat_map(|t| t.labels()).collect()
    }
}

impl From<Tensor> for IndexExpr {
    fn from(t: Tensor) -> IndexExpr {
        IndexExpr::tensor(t)
    }
}

fn fmt_coeff(c: &Expr) -> String {
    let s = render(c);
    if matches!(c.node(), crate::symkernel::Node::Add(_)) {
        format!("({s})")
    } else {
        s
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factors: Vec<String> = self.factors.iter().map(|t| t.to_string()).collect();
        if factors.is_empty() {
            return f.write_str(&fmt_coeff(&self.coeff));
        }
        if self.coeff == Expr::int(-1) {
            f.write_str("-")?;
        } else if !self.coeff.is_one() {
            write!(f, "{}*", fmt_coeff(&self.coeff))?;
        }
        f.write_str(&factors.join("*"))
    }
}

impl fmt::Display for IndexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, t) in self.terms.iter().enumerate() {
            let s = t.to_string();
            if n == 0 {
                f.write_str(&s)?;
            } else if let Some(rest) = s.strip_prefix('-') {
                write!(f, " - {rest}")?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

/// Fresh label `%n` not in `used`.
pub(crate) fn fresh(used: &BTreeSet<String>) -> String {
    (1..).map(|n| format!("%{n}")).find(|l| !used.contains(l)).unwrap()
}

pub(crate) fn rename_dummies_away(t: &Term, avoid: &BTreeSet<String>) -> Term {
    let counts = t.label_counts();
    let mut used: BTreeSet<String> = avoid.iter().cloned().chain(t.labels()).collect();
    let mut map = BTreeMap::new();
    for (l, c) in counts {
        if c == 2 && avoid.contains(l) {
            let n = fresh(&used);
            used.insert(n.clone());
            map.insert(l.to_string(), n);
        }
    }
    if map.is_empty() {
        return t.clone();
    }
    t.relabel(&|l| map.get(l).cloned())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymKind {
    Sym,
    Anti,
}

/// A symmetry group over 1-based positions; `None` means all of them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: SymKind,
    pub positions: Option<Vec<usize>>,
}

impl GroupSpec {
    pub fn sym_all() -> GroupSpec {
        GroupSpec { kind: SymKind::Sym, positions: None }
    }

    pub fn anti_all() -> GroupSpec {
        GroupSpec { kind: SymKind::Anti, positions: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Group {
    kind: SymKind,
    pos: Vec<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct SymDecl {
    cov: Vec<Group>,
    contra: Vec<Group>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IndexFlags {
    pub frame: bool,
    pub torsion: bool,
    pub nonmetricity: bool,
    pub geometric_wedge: bool,
}

/// Symmetry declarations, metrics and vectors, plus mode flags. Plain
/// data: clone it to branch.
#[derive(Debug, Clone, Default)]
pub struct IndexContext {
    syms: BTreeMap<(String, usize, usize), SymDecl>,
    metrics: BTreeSet<String>,
    metric: Option<String>,
    vectors: BTreeSet<String>,
    pub flags: IndexFlags,
}

pub const TORSION: &str = "itr";
pub const NONMETRICITY: &str = "inm";

impl IndexContext {
    pub fn new() -> IndexContext {
        IndexContext::default()
    }

    /// Context with `g` as the metric and the Christoffel symbols declared
    /// symmetric in their first two indices.
    pub fn with_metric(name: &str) -> IndexContext {
        let mut c = IndexContext::new();
        c.imetric(name);
        c
    }

    /// Register `name` as the metric: it contracts, and it is symmetric in
    /// every index placement.
    pub fn imetric(&mut self, name: &str) {
        self.metrics.insert(name.to_string());
        self.metric = Some(name.to_string());
        let s = || vec![GroupSpec::sym_all()];
        self.decsym(name, 2, 0, &s(), &[]).unwrap();
        self.decsym(name, 0, 2, &[], &s()).unwrap();
        let first_two = || vec![GroupSpec { kind: SymKind::Sym, positions: Some(vec![1, 2]) }];
        self.decsym("ichr1", 3, 0, &first_two(), &[]).unwrap();
        self.decsym("ichr2", 2, 1, &first_two(), &[]).unwrap();
    }

    pub fn metric_name(&self) -> &str {
        self.metric.as_deref().unwrap_or("g")
    }

    pub fn is_metric(&self, name: &str) -> bool {
        self.metrics.contains(name)
    }

    pub fn declare_vector(&mut self, name: &str) {
        self.vectors.insert(name.to_string());
    }

    /// Declare symmetries of `name` with `ncov` covariant and `ncontra`
    /// contravariant indices. For an object written entirely in the first
    /// list, the (n, 0) declaration covers every variance mixture.
    pub fn decsym(
        &mut self,
        name: &str,
        ncov: usize,
        ncontra: usize,
        cov: &[GroupSpec],
        contra: &[GroupSpec],
    ) -> Result<(), IndexError> {
        let build = |gs: &[GroupSpec], n: usize| -> Result<Vec<Group>, IndexError> {
            let mut used = BTreeSet::new();
            let mut out = vec![];
            for g in gs {
                let pos: Vec<usize> = match &g.positions {
                    None => (0..n).collect(),
                    Some(p) => p.iter().map(|&x| x.wrapping_sub(1)).collect(),
                };
                for &p in &pos {
                    if p >= n || !used.insert(p) {
                        return Err(IndexError::Declaration(format!("bad or overlapping position {} for {name}", p + 1)));
                    }
                }
                if pos.len() > 1 {
                    out.push(Group { kind: g.kind, pos });
                }
            }
            Ok(out)
        };
        let d = SymDecl { cov: build(cov, ncov)?, contra: build(contra, ncontra)? };
        self.syms.insert((name.to_string(), ncov, ncontra), d);
        Ok(())
    }

    pub(crate) fn decl(&self, name: &str, ncov: usize, ncontra: usize) -> Option<&SymDecl> {
        self.syms.get(&(name.to_string(), ncov, ncontra))
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IndexError {
    #[error("index {0} occurs with the same variance twice or more than twice")]
    Conflict(String),
    #[error("derivative label {0} is already used in the expression")]
    Collision(String),
    #[error("{0} is not a declared vector")]
    NotVector(String),
    #[error("not a form: {0}")]
    NotForm(String),
    #[error("{name} takes {want} indices, got {got}")]
    IndexCount { name: String, want: usize, got: usize },
    #[error("symmetry declaration: {0}")]
    Declaration(String),
    #[error("free indices differ in term {0}")]
    FreeMismatch(String),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

pub use calculus::{covdiff, expand_connections, ichr1, ichr2, idiff, liediff};
pub use canon::canform;
pub use contract::contract;
pub use forms::{extdiff, inner, wedge};
