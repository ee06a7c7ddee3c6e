//! Abstract tensor algebras: words in basis vectors `v1..vn` reduced by the
//! (anti)commutation rule of the algebra type.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::symkernel::{ratsimp, render, Expr, Node};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgebraType {
    Universal,
    Grassmann,
    Clifford,
    Symmetric,
    Symplectic,
    LieEnvelop,
}

impl FromStr for AlgebraType {
    type Err = AlgebraError;
    fn from_str(s: &str) -> Result<Self, AlgebraError> {
        Ok(match s {
            "universal" => AlgebraType::Universal,
            "grassmann" => AlgebraType::Grassmann,
            "clifford" => AlgebraType::Clifford,
            "symmetric" => AlgebraType::Symmetric,
            "symplectic" => AlgebraType::Symplectic,
            "lie_envelop" => AlgebraType::LieEnvelop,
            _ => return Err(AlgebraError::UnknownType(s.to_string())),
        })
    }
}

impl fmt::Display for AlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AlgebraType::Universal => "universal",
            AlgebraType::Grassmann => "grassmann",
            AlgebraType::Clifford => "clifford",
            AlgebraType::Symmetric => "symmetric",
            AlgebraType::Symplectic => "symplectic",
            AlgebraType::LieEnvelop => "lie_envelop",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AlgebraError {
    #[error("unknown algebra type {0}")]
    UnknownType(String),
    #[error("invalid dimensions {dims:?} for {kind}")]
    Dims { kind: AlgebraType, dims: Vec<usize> },
    #[error("{op} is not defined for {kind}")]
    TypeMismatch { op: &'static str, kind: AlgebraType },
    #[error("basis index {0} out of range")]
    Index(usize),
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("multiplication table needs 1 to 4 basis vectors, have {0}")]
    TableSize(usize),
}

/// Algebra type with its `aform` matrix. `adim` of 0 leaves the basis
/// unbounded (only for the types without a matrix).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraConfig {
    pub kind: AlgebraType,
    pub dims: Vec<usize>,
    pub adim: usize,
    pub aform: Vec<Vec<Expr>>,
}

fn perm_sign(p: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                s = -s;
            }
        }
    }
    s
}

/// Configure an algebra. Clifford takes up to three counts (positive,
/// degenerate, negative), symplectic up to two (regular, degenerate),
/// lie_envelop exactly one, the others at most one basis size.
pub fn init_atensor(kind: AlgebraType, dims: &[usize]) -> Result<AlgebraConfig, AlgebraError> {
    let bad = || AlgebraError::Dims { kind, dims: dims.to_vec() };
    let max = match kind {
        AlgebraType::Clifford => 3,
        AlgebraType::Symplectic => 2,
        _ => 1,
    };
    if dims.len() > max || (kind == AlgebraType::LieEnvelop && (dims.len() != 1 || dims[0] == 0)) {
        return Err(bad());
    }
    let adim: usize = match kind {
        AlgebraType::Clifford | AlgebraType::Symplectic => dims.iter().sum(),
        _ => dims.first().copied().unwrap_or(0),
    };
    let z = |n: usize| vec![vec![Expr::zero(); n]; n];
    let aform = match kind {
        AlgebraType::Clifford => {
            let mut a = z(adim);
            let (p, d) = (dims.first().copied().unwrap_or(0), dims.get(1).copied().unwrap_or(0));
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = Expr::int(if i < p { 1 } else if i < p + d { 0 } else { -1 });
            }
            a
        }
        AlgebraType::Symplectic => {
            let n = dims.first().copied().unwrap_or(0);
            let mut a = z(adim);
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        a[i][j] = Expr::int(if i < j { 1 } else { -1 });
                    }
                }
            }
            a
        }
        AlgebraType::LieEnvelop => {
            let n = adim as i64;
            let mut a = z(adim);
            for i in 1..=n {
                for j in 1..=n {
                    if i == j {
                        continue;
                    }
                    let mut p = vec![i as usize, j as usize];
                    p.extend((1..=adim).filter(|&k| k as i64 != i && k as i64 != j));
                    let v = ((2 * n + 2 - i - j).rem_euclid(n) + 1) * perm_sign(&p);
                    a[i as usize - 1][j as usize - 1] = Expr::int(v);
                }
            }
            a
        }
        _ => vec![],
    };
    Ok(AlgebraConfig { kind, dims: dims.to_vec(), adim, aform })
}

/// Scalar-weighted sum of basis words; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MVec {
    pub terms: BTreeMap<Vec<usize>, Expr>,
}

impl MVec {
    pub fn zero() -> MVec {
        MVec::default()
    }

    pub fn scalar(c: Expr) -> MVec {
        MVec::term(vec![], c)
    }

    pub fn basis(i: usize) -> MVec {
        MVec::term(vec![i], Expr::one())
    }

    pub fn word(w: &[usize]) -> MVec {
        MVec::term(w.to_vec(), Expr::one())
    }

    fn term(w: Vec<usize>, c: Expr) -> MVec {
        let mut m = MVec::zero();
        m.push(w, c);
        m
    }

    fn push(&mut self, w: Vec<usize>, c: Expr) {
        let v = match self.terms.remove(&w) {
            Some(old) => ratsimp(&(old + c)),
            None => ratsimp(&c),
        };
        if !v.is_zero() {
            self.terms.insert(w, v);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &MVec) -> MVec {
        let mut m = self.clone();
        for (w, c) in &o.terms {
            m.push(w.clone(), c.clone());
        }
        m
    }

    pub fn sub(&self, o: &MVec) -> MVec {
        self.add(&o.scale(&Expr::int(-1)))
    }

    pub fn scale(&self, k: &Expr) -> MVec {
        let mut m = MVec::zero();
        for (w, c) in &self.terms {
            m.push(w.clone(), k.clone() * c.clone());
        }
        m
    }

    /// Concatenation product, unreduced.
    pub fn mul(&self, o: &MVec) -> MVec {
        let mut m = MVec::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mut w = a.clone();
                w.extend(b);
                m.push(w, x.clone() * y.clone());
            }
        }
        m
    }

    /// Commutator u.v - v.u, unreduced.
    pub fn commutator(&self, o: &MVec) -> MVec {
        self.mul(o).sub(&o.mul(self))
    }
}

impl fmt::Display for MVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut keys: Vec<&Vec<usize>> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        for (n, w) in keys.into_iter().enumerate() {
            let c = &self.terms[w];
            let word = w.iter().map(|i| format!("v{i}")).collect::<Vec<_>>().join(".");
            let mut s = if word.is_empty() {
                render(c)
            } else if c.is_one() {
                word
            } else if *c == Expr::int(-1) {
                format!("-{word}")
            } else if matches!(c.node(), Node::Add(_)) {
                format!("({})*{word}", render(c))
            } else {
                format!("{}*{word}", render(c))
            };
            if n > 0 {
                s = match s.strip_prefix('-') {
                    Some(r) => format!(" - {r}"),
                    None => format!(" + {s}"),
                };
            }
            f.write_str(&s)?;
        }
        Ok(())
    }
}

impl AlgebraConfig {
    fn entry(&self, u: usize, v: usize) -> Result<&Expr, AlgebraError> {
        for i in [u, v] {
            if i == 0 || i > self.adim {
                return Err(AlgebraError::Index(i));
            }
        }
        Ok(&self.aform[u - 1][v - 1])
    }

    /// Symmetric scalar form of a Clifford algebra.
    pub fn sf(&self, u: usize, v: usize) -> Result<Expr, AlgebraError> {
        if self.kind != AlgebraType::Clifford {
            return Err(AlgebraError::TypeMismatch { op: "sf", kind: self.kind });
        }
        self.entry(u, v).cloned()
    }

    /// Antisymmetric scalar form of a symplectic algebra.
    pub fn af(&self, u: usize, v: usize) -> Result<Expr, AlgebraError> {
        if self.kind != AlgebraType::Symplectic {
            return Err(AlgebraError::TypeMismatch { op: "af", kind: self.kind });
        }
        self.entry(u, v).cloned()
    }

    /// Antisymmetric vector form of a Lie enveloping algebra: the entry is
    /// a signed basis index.
    pub fn av(&self, u: usize, v: usize) -> Result<MVec, AlgebraError> {
        if self.kind != AlgebraType::LieEnvelop {
            return Err(AlgebraError::TypeMismatch { op: "av", kind: self.kind });
        }
        let a = self.entry(u, v)?;
        let n = a.as_num().and_then(|q| if q.is_integer() { num_traits::ToPrimitive::to_i64(q.numer()) } else { None });
        Ok(match n {
            Some(0) | None => MVec::zero(),
            Some(k) => MVec::basis(k.unsigned_abs() as usize).scale(&Expr::int(k.signum())),
        })
    }

    fn check(&self, e: &MVec) -> Result<(), AlgebraError> {
        if self.adim == 0 {
            return Ok(());
        }
        match e.terms.keys().flatten().find(|&&i| i == 0 || i > self.adim) {
            Some(&i) => Err(AlgebraError::Index(i)),
            None => Ok(()),
        }
    }

    /// Rewrite of the first reducible adjacent pair of `w`, as (replacement
    /// terms), or `None` if the word is canonical.
    fn rewrite(&self, w: &[usize]) -> Option<Vec<(Vec<usize>, Expr)>> {
        use AlgebraType::*;
        let at = (0..w.len().saturating_sub(1)).find(|&i| {
            let (u, v) = (w[i], w[i + 1]);
            u > v || (u == v && matches!(self.kind, Grassmann | Clifford))
        })?;
        let (u, v) = (w[at], w[at + 1]);
        let splice = |mid: &[usize]| {
            let mut x = w[..at].to_vec();
            x.extend(mid);
            x.extend(&w[at + 2..]);
            x
        };
        let two = Expr::int(2);
        let out = match self.kind {
            Universal => return None,
            Grassmann if u == v => vec![],
            Grassmann => vec![(splice(&[v, u]), Expr::int(-1))],
            Clifford if u == v => vec![(splice(&[]), self.aform[u - 1][u - 1].clone())],
            Clifford => vec![(splice(&[v, u]), Expr::int(-1)), (splice(&[]), two * self.aform[u - 1][v - 1].clone())],
            Symmetric => vec![(splice(&[v, u]), Expr::one())],
            Symplectic => vec![(splice(&[v, u]), Expr::one()), (splice(&[]), two * self.aform[u - 1][v - 1].clone())],
            LieEnvelop => {
                let mut out = vec![(splice(&[v, u]), Expr::one())];
                for (x, c) in self.av(u, v).ok()?.terms {
                    out.push((splice(&x), two.clone() * c));
                }
                out
            }
        };
        Some(out)
    }
}

/// Reduce every word to non-decreasing basis order, applying the algebra's
/// rule to each adjacent out-of-order (or, where the rule fixes it, equal)
/// pair, and collect terms.
pub fn atensimp(cfg: &AlgebraConfig, e: &MVec) -> Result<MVec, AlgebraError> {
    cfg.check(e)?;
    let mut out = MVec::zero();
    let mut todo: Vec<(Vec<usize>, Expr)> = e.terms.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
    while let Some((w, c)) = todo.pop() {
        match cfg.rewrite(&w) {
            None => out.push(w, c),
            Some(r) => todo.extend(r.into_iter().map(|(x, k)| (x, k * c.clone()))),
        }
    }
    Ok(out)
}

/// Basis of the algebra: the unit, then increasing words by length.
pub fn basis_words(adim: usize) -> Vec<Vec<usize>> {
    let mut all: Vec<Vec<usize>> = (0u32..1 << adim)
        .map(|m| (1..=adim).filter(|i| m & (1 << (i - 1)) != 0).collect())
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    all
}

/// Reduced products of all pairs of basis words.
pub fn multiplication_table(cfg: &AlgebraConfig) -> Result<Vec<Vec<MVec>>, AlgebraError> {
    if cfg.adim == 0 || cfg.adim > 4 {
        return Err(AlgebraError::TableSize(cfg.adim));
    }
    let b = basis_words(cfg.adim);
    b.iter()
        .map(|x| b.iter().map(|y| atensimp(cfg, &MVec::word(x).mul(&MVec::word(y)))).collect())
        .collect()
}

/// Parse sums of products such as `2*v1.v2 - v2.v1 + a*v3`; `.` and `*`
/// both multiply, names other than `v<n>` are scalar symbols.
pub fn parse_mvec(src: &str) -> Result<MVec, AlgebraError> {
    struct P<'a> {
        s: &'a [u8],
        i: usize,
    }
    type R<T> = Result<T, AlgebraError>;
    impl P<'_> {
        fn err<T>(&self, msg: &str) -> R<T> {
            Err(AlgebraError::Parse { pos: self.i, msg: msg.into() })
        }
        fn peek(&mut self) -> Option<u8> {
            while self.s.get(self.i).is_some_and(|c| c.is_ascii_whitespace()) {
                self.i += 1;
            }
            self.s.get(self.i).copied()
        }
        fn eat(&mut self, c: u8) -> bool {
            let hit = self.peek() == Some(c);
            if hit {
                self.i += 1;
            }
            hit
        }
        fn span(&mut self, ok: impl Fn(u8) -> bool) -> String {
            let st = self.i;
            while self.s.get(self.i).is_some_and(|&c| ok(c)) {
                self.i += 1;
            }
            String::from_utf8_lossy(&self.s[st..self.i]).into_owned()
        }
        fn atom(&mut self) -> R<MVec> {
            match self.peek() {
                Some(b'-') => {
                    self.i += 1;
                    Ok(self.atom()?.scale(&Expr::int(-1)))
                }
                Some(b'(') => {
                    self.i += 1;
                    let e = self.sum()?;
                    if !self.eat(b')') {
                        return self.err("expected ')'");
                    }
                    Ok(e)
                }
                Some(c) if c.is_ascii_digit() => {
                    let t = self.span(|c| c.is_ascii_digit());
                    let n: i64 = t.parse().or_else(|_| self.err("bad number"))?;
                    Ok(MVec::scalar(Expr::int(n)))
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let t = self.span(|c| c.is_ascii_alphanumeric() || c == b'_');
                    match t.strip_prefix('v').and_then(|d| d.parse::<usize>().ok()) {
                        Some(k) => Ok(MVec::basis(k)),
                        None => Ok(MVec::scalar(Expr::sym(&t))),
                    }
                }
                _ => self.err("expected a term"),
            }
        }
        fn product(&mut self) -> R<MVec> {
            let mut e = self.atom()?;
            loop {
                if self.eat(b'.') || self.eat(b'*') {
                    e = e.mul(&self.atom()?);
                } else if self.eat(b'/') {
                    let t = self.span(|c| c.is_ascii_digit());
                    match t.parse::<i64>() {
                        Ok(n) if n != 0 => e = e.scale(&Expr::rational(1, n)),
                        _ => return self.err("expected a nonzero integer divisor"),
                    }
                } else {
                    return Ok(e);
                }
            }
        }
        fn sum(&mut self) -> R<MVec> {
            self.eat(b'+');
            let mut e = self.product()?;
            loop {
                if self.eat(b'+') {
                    e = e.add(&self.product()?);
                } else if self.eat(b'-') {
                    e = e.sub(&self.product()?);
                } else {
                    return Ok(e);
                }
            }
        }
    }
    let mut p = P { s: src.as_bytes(), i: 0 };
    let e = p.sum()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}
