use std::cmp::Ordering;
use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Elementary functions understood by the kernel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Sinh,
    Cosh,
    Tanh,
    Exp,
    Log,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 10] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Sinh,
        Func::Cosh,
        Func::Tanh,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
            Func::Tanh => "tanh",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.iter().copied().find(|f| f.name() == s)
    }

    /// f(-x) = -f(x)
    pub fn is_odd(self) -> bool {
        matches!(self, Func::Sin | Func::Tan | Func::Sinh | Func::Tanh)
    }

    /// f(-x) = f(x)
    pub fn is_even(self) -> bool {
        matches!(self, Func::Cos | Func::Cosh | Func::Abs)
    }
}

#[derive(Debug, Clone)]
pub enum Node {
    Num(BigRational),
    Sym(Arc<str>),
    I,
    Add(Vec<Expr>),
    Mul(Vec<Expr>),
    Pow(Expr, i64),
    Apply(Func, Expr),
}

#[derive(Debug)]
struct Inner {
    node: Node,
    hash: u64,
    height: u32,
    // one bit per symbol name, hashed; used to skip subtrees in `depends_on`
    symmask: u64,
}

/// Immutable, canonicalized scalar expression. Cloning is cheap.
#[derive(Clone)]
pub struct Expr(Arc<Inner>);

fn sym_bit(name: &str) -> u64 {
    let mut h = DefaultHasher::new();
    name.hash(&mut h);
    1u64 << (h.finish() % 64)
}

impl Expr {
    fn build(node: Node) -> Expr {
        let mut h = DefaultHasher::new();
        let (height, symmask) = match &node {
            Node::Num(q) => {
                0u8.hash(&mut h);
                q.hash(&mut h);
                (0, 0)
            }
            Node::Sym(s) => {
                1u8.hash(&mut h);
                s.hash(&mut h);
                (1, sym_bit(s))
            }
            Node::I => {
                2u8.hash(&mut h);
                (1, 0)
            }
            Node::Add(xs) | Node::Mul(xs) => {
                (if matches!(node, Node::Add(_)) { 3u8 } else { 4u8 }).hash(&mut h);
                let mut ht = 0;
                let mut m = 0;
                for x in xs {
                    x.0.hash.hash(&mut h);
                    ht = ht.max(x.0.height);
                    m |= x.0.symmask;
                }
                (ht + 1, m)
            }
            Node::Pow(b, n) => {
                5u8.hash(&mut h);
                b.0.hash.hash(&mut h);
                n.hash(&mut h);
                (b.0.height + 1, b.0.symmask)
            }
            Node::Apply(f, a) => {
                6u8.hash(&mut h);
                f.hash(&mut h);
                a.0.hash.hash(&mut h);
                (a.0.height + 1, a.0.symmask)
            }
        };
        Expr(Arc::new(Inner {
            node,
            hash: h.finish(),
            height,
            symmask,
        }))
    }

    pub fn node(&self) -> &Node {
        &self.0.node
    }

    pub fn height(&self) -> u32 {
        self.0.height
    }

    pub fn hash_value(&self) -> u64 {
        self.0.hash
    }

    pub fn ptr_eq(&self, other: &Expr) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
    }

    // ---- atoms ----

    pub fn num(q: BigRational) -> Expr {
        Expr::build(Node::Num(q))
    }

    pub fn int(n: i64) -> Expr {
        Expr::num(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn bigint(n: BigInt) -> Expr {
        Expr::num(BigRational::from_integer(n))
    }

    pub fn rational(n: i64, d: i64) -> Expr {
        Expr::num(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn zero() -> Expr {
        Expr::int(0)
    }

    pub fn one() -> Expr {
        Expr::int(1)
    }

    pub fn sym(name: &str) -> Expr {
        Expr::build(Node::Sym(Arc::from(name)))
    }

    pub fn i() -> Expr {
        Expr::build(Node::I)
    }

    pub fn pi() -> Expr {
        Expr::sym("%pi")
    }

    // ---- queries ----

    pub fn as_num(&self) -> Option<&BigRational> {
        match self.node() {
            Node::Num(q) => Some(q),
            _ => None,
        }
    }

    pub fn as_sym(&self) -> Option<&str> {
        match self.node() {
            Node::Sym(s) => Some(s),
            _ => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.as_num().is_some_and(|q| q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.as_num().is_some_and(|q| q.is_one())
    }

    pub fn is_num(&self) -> bool {
        self.as_num().is_some()
    }

    /// True if the symbol `name` may occur in this expression.
    pub fn depends_on(&self, name: &str) -> bool {
        if self.0.symmask & sym_bit(name) == 0 {
            return false;
        }
        match self.node() {
            Node::Num(_) | Node::I => false,
            Node::Sym(s) => &**s == name,
            Node::Add(xs) | Node::Mul(xs) => xs.iter().any(|x| x.depends_on(name)),
            Node::Pow(b, _) => b.depends_on(name),
            Node::Apply(_, a) => a.depends_on(name),
        }
    }

    /// Symbols occurring in the expression, sorted.
    pub fn symbols(&self) -> Vec<String> {
        fn go(e: &Expr, out: &mut Vec<String>) {
            match e.node() {
                Node::Sym(s) => out.push(s.to_string()),
                Node::Add(xs) | Node::Mul(xs) => xs.iter().for_each(|x| go(x, out)),
                Node::Pow(b, _) => go(b, out),
                Node::Apply(_, a) => go(a, out),
                _ => {}
            }
        }
        let mut out = Vec::new();
        go(self, &mut out);
        out.sort();
        out.dedup();
        out
    }

    /// Split into numeric coefficient and remaining factor: `3*x*y` gives `(3, x*y)`.
    pub fn split_coeff(&self) -> (BigRational, Expr) {
        match self.node() {
            Node::Num(q) => (q.clone(), Expr::one()),
            Node::Mul(xs) => {
                if let Some(q) = xs[0].as_num() {
                    let rest: Vec<Expr> = xs[1..].to_vec();
                    let rest = if rest.len() == 1 {
                        rest.into_iter().next().unwrap()
                    } else {
                        Expr::build(Node::Mul(rest))
                    };
                    (q.clone(), rest)
                } else {
                    (BigRational::one(), self.clone())
                }
            }
            _ => (BigRational::one(), self.clone()),
        }
    }

    /// Syntactic negativity: a negative number or a product led by one.
    pub fn looks_negative(&self) -> bool {
        match self.node() {
            Node::Num(q) => q.is_negative(),
            Node::Mul(xs) => xs[0].as_num().is_some_and(|q| q.is_negative()),
            _ => false,
        }
    }

    // ---- smart constructors ----

    pub fn add(terms: Vec<Expr>) -> Expr {
        let mut coeff = BigRational::zero();
        let mut acc: BTreeMap<Expr, BigRational> = BTreeMap::new();
        let mut stack = terms;
        while let Some(t) = stack.pop() {
            match t.node() {
                Node::Num(q) => coeff += q,
                Node::Add(xs) => stack.extend(xs.iter().cloned()),
                _ => {
                    let (c, rest) = t.split_coeff();
                    if let Node::Add(xs) = rest.node() {
                        // c*(a+b) is distributed
                        for x in xs {
                            stack.push(Expr::mul(vec![Expr::num(c.clone()), x.clone()]));
                        }
                        continue;
                    }
                    *acc.entry(rest).or_insert_with(BigRational::zero) += c;
                }
            }
        }
        let mut out: Vec<Expr> = Vec::with_capacity(acc.len() + 1);
        if !coeff.is_zero() {
            out.push(Expr::num(coeff));
        }
        for (rest, c) in acc {
            if c.is_zero() {
                continue;
            }
            if c.is_one() {
                out.push(rest);
            } else {
                out.push(Expr::mul_raw(Expr::num(c), rest));
            }
        }
        match out.len() {
            0 => Expr::zero(),
            1 => out.pop().unwrap(),
            _ => {
                out.sort();
                Expr::build(Node::Add(out))
            }
        }
    }

    // c * rest where rest is already a canonical non-numeric factor
    fn mul_raw(c: Expr, rest: Expr) -> Expr {
        let mut v = vec![c];
        match rest.node() {
            Node::Mul(xs) => v.extend(xs.iter().cloned()),
            _ => v.push(rest),
        }
        Expr::build(Node::Mul(v))
    }

    pub fn mul(factors: Vec<Expr>) -> Expr {
        let mut coeff = BigRational::one();
        let mut powers: BTreeMap<Expr, i64> = BTreeMap::new();
        let mut stack = factors;
        while let Some(f) = stack.pop() {
            match f.node() {
                Node::Num(q) => {
                    if q.is_zero() {
                        return Expr::zero();
                    }
                    coeff *= q;
                }
                Node::Mul(xs) => stack.extend(xs.iter().cloned()),
                Node::Pow(b, n) => *powers.entry(b.clone()).or_insert(0) += *n,
                _ => *powers.entry(f.clone()).or_insert(0) += 1,
            }
        }
        let mut out: Vec<Expr> = Vec::with_capacity(powers.len());
        let mut redo: Vec<Expr> = Vec::new();
        for (b, n) in powers {
            if n == 0 {
                continue;
            }
            let p = Expr::pow(b.clone(), n);
            let simple = match p.node() {
                Node::Pow(pb, _) => pb.ptr_eq(&b),
                _ => p.ptr_eq(&b),
            };
            if simple {
                out.push(p);
            } else {
                // i^2, sqrt(a)^2 and friends produce new factors
                redo.push(p);
            }
        }
        if !redo.is_empty() {
            redo.extend(out);
            redo.push(Expr::num(coeff));
            return Expr::mul(redo);
        }
        out.sort();
        if out.is_empty() {
            return Expr::num(coeff);
        }
        if coeff.is_one() {
            if out.len() == 1 {
                return out.pop().unwrap();
            }
        } else {
            if out.len() == 1 && matches!(out[0].node(), Node::Add(_)) {
                // numeric factors are distributed over a lone sum
                let sum = out.pop().unwrap();
                return Expr::add(vec![Expr::mul_raw(Expr::num(coeff), sum)]);
            }
            out.insert(0, Expr::num(coeff));
        }
        Expr::build(Node::Mul(out))
    }

    pub fn pow(base: Expr, n: i64) -> Expr {
        if n == 0 {
            return Expr::one();
        }
        if n == 1 {
            return base;
        }
        match base.node() {
            Node::Num(q) => {
                if q.is_zero() {
                    if n < 0 {
                        // inert; the parser reports division by zero before this point
                        return Expr::build(Node::Pow(base, n));
                    }
                    return Expr::zero();
                }
                Expr::num(pow_rational(q, n))
            }
            Node::I => match n.rem_euclid(4) {
                0 => Expr::one(),
                1 => Expr::i(),
                2 => Expr::int(-1),
                _ => Expr::mul(vec![Expr::int(-1), Expr::i()]),
            },
            Node::Pow(b, m) => Expr::pow(b.clone(), m * n),
            Node::Mul(xs) => Expr::mul(xs.iter().map(|x| Expr::pow(x.clone(), n)).collect()),
            Node::Apply(Func::Sqrt, a) => {
                let q = n.div_euclid(2);
                let r = n.rem_euclid(2);
                if q == 0 {
                    return Expr::build(Node::Pow(base, n));
                }
                let mut v = vec![Expr::pow(a.clone(), q)];
                if r == 1 {
                    v.push(base.clone());
                }
                Expr::mul(v)
            }
            _ => Expr::build(Node::Pow(base, n)),
        }
    }

    pub fn neg(e: Expr) -> Expr {
        Expr::mul(vec![Expr::int(-1), e])
    }

    pub fn sub(a: Expr, b: Expr) -> Expr {
        Expr::add(vec![a, Expr::neg(b)])
    }

    pub fn div(a: Expr, b: Expr) -> Expr {
        Expr::mul(vec![a, Expr::pow(b, -1)])
    }

    pub fn apply(f: Func, arg: Expr) -> Expr {
        if let Some(q) = arg.as_num() {
            if let Some(v) = fold_numeric(f, q) {
                return v;
            }
        }
        if arg.looks_negative() {
            if f.is_odd() {
                return Expr::neg(Expr::apply(f, Expr::neg(arg)));
            }
            if f.is_even() {
                return Expr::apply(f, Expr::neg(arg));
            }
        }
        if f == Func::Abs {
            if let Node::Mul(xs) = arg.node() {
                if let Some(q) = xs[0].as_num() {
                    let rest = Expr::mul(xs[1..].to_vec());
                    return Expr::mul(vec![Expr::num(q.abs()), Expr::apply(Func::Abs, rest)]);
                }
            }
        }
        Expr::build(Node::Apply(f, arg))
    }

    /// `base^(p/2)`, used for half-integer exponents.
    pub fn pow_half(base: Expr, p: i64) -> Expr {
        Expr::pow(Expr::apply(Func::Sqrt, base), p)
    }

    /// Rebuild through the smart constructors. Idempotent on canonical input.
    pub fn canonical(&self) -> Expr {
        match self.node() {
            Node::Num(_) | Node::Sym(_) | Node::I => self.clone(),
            Node::Add(xs) => Expr::add(xs.iter().map(|x| x.canonical()).collect()),
            Node::Mul(xs) => Expr::mul(xs.iter().map(|x| x.canonical()).collect()),
            Node::Pow(b, n) => Expr::pow(b.canonical(), *n),
            Node::Apply(f, a) => Expr::apply(*f, a.canonical()),
        }
    }

    /// Replace symbols by expressions.
    pub fn subst(&self, map: &dyn Fn(&str) -> Option<Expr>) -> Expr {
        match self.node() {
            Node::Num(_) | Node::I => self.clone(),
            Node::Sym(s) => map(s).unwrap_or_else(|| self.clone()),
            Node::Add(xs) => Expr::add(xs.iter().map(|x| x.subst(map)).collect()),
            Node::Mul(xs) => Expr::mul(xs.iter().map(|x| x.subst(map)).collect()),
            Node::Pow(b, n) => Expr::pow(b.subst(map), *n),
            Node::Apply(f, a) => Expr::apply(*f, a.subst(map)),
        }
    }

    fn rank(&self) -> u8 {
        match self.node() {
            Node::Num(_) => 0,
            Node::I => 1,
            Node::Sym(_) => 2,
            Node::Pow(..) => 3,
            Node::Mul(_) => 4,
            Node::Apply(..) => 5,
            Node::Add(_) => 6,
        }
    }
}

pub(crate) fn pow_rational(q: &BigRational, n: i64) -> BigRational {
    let k = n.unsigned_abs();
    let k = u32::try_from(k).expect("exponent too large");
    let p = BigRational::new(
        num_traits::pow(q.numer().clone(), k as usize),
        num_traits::pow(q.denom().clone(), k as usize),
    );
    if n < 0 {
        p.recip()
    } else {
        p
    }
}

/// Exact integer square root if `n` is a perfect square.
pub(crate) fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

fn fold_numeric(f: Func, q: &BigRational) -> Option<Expr> {
    let zero = q.is_zero();
    match f {
        Func::Sin | Func::Tan | Func::Sinh | Func::Tanh if zero => Some(Expr::zero()),
        Func::Cos | Func::Cosh | Func::Exp if zero => Some(Expr::one()),
        Func::Log if q.is_one() => Some(Expr::zero()),
        Func::Abs => Some(Expr::num(q.abs())),
        Func::Sqrt => {
            let a = q.abs();
            let n = exact_isqrt(a.numer())?;
            let d = exact_isqrt(a.denom())?;
            let v = Expr::num(BigRational::new(n, d));
            if q.is_negative() {
                Some(Expr::mul(vec![v, Expr::i()]))
            } else {
                Some(v)
            }
        }
        _ => None,
    }
}

impl PartialEq for Expr {
    fn eq(&self, other: &Expr) -> bool {
        if self.ptr_eq(other) {
            return true;
        }
        if self.0.hash != other.0.hash || self.0.height != other.0.height {
            return false;
        }
        structural_cmp(self, other) == Ordering::Equal
    }
}

impl Eq for Expr {}

impl Hash for Expr {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash.hash(state);
    }
}

impl PartialOrd for Expr {
    fn partial_cmp(&self, other: &Expr) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Structural order used to sort operands of sums and products.
impl Ord for Expr {
    fn cmp(&self, other: &Expr) -> Ordering {
        structural_cmp(self, other)
    }
}

fn split_pow(e: &Expr) -> (&Expr, i64) {
    match e.node() {
        Node::Pow(b, n) => (b, *n),
        _ => (e, 1),
    }
}

// Powers of one base sort next to each other: x < x^2 < y.
fn structural_cmp(a: &Expr, b: &Expr) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    let (ab, an) = split_pow(a);
    let (bb, bn) = split_pow(b);
    node_cmp(ab, bb).then(an.cmp(&bn))
}

fn node_cmp(a: &Expr, b: &Expr) -> Ordering {
    if a.ptr_eq(b) {
        return Ordering::Equal;
    }
    let c = a.rank().cmp(&b.rank());
    if c != Ordering::Equal {
        return c;
    }
    match (a.node(), b.node()) {
        (Node::Num(x), Node::Num(y)) => x.cmp(y),
        (Node::Sym(x), Node::Sym(y)) => x.cmp(y),
        (Node::Add(xs), Node::Add(ys)) | (Node::Mul(xs), Node::Mul(ys)) => {
            // most significant operand last
            for (x, y) in xs.iter().rev().zip(ys.iter().rev()) {
                let c = structural_cmp(x, y);
                if c != Ordering::Equal {
                    return c;
                }
            }
            xs.len().cmp(&ys.len())
        }
        (Node::Pow(x, m), Node::Pow(y, n)) => structural_cmp(x, y).then(m.cmp(n)),
        (Node::Apply(f, x), Node::Apply(g, y)) => f.cmp(g).then_with(|| structural_cmp(x, y)),
        _ => Ordering::Equal,
    }
}

/// Kernel order: cheap total order by (height, hash), structural on ties.
#[derive(Clone, Debug)]
pub struct Kernel(pub Expr);

impl PartialEq for Kernel {
    fn eq(&self, o: &Kernel) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Kernel {}
impl Hash for Kernel {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0 .0.hash.hash(state);
    }
}
impl PartialOrd for Kernel {
    fn partial_cmp(&self, o: &Kernel) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Kernel {
    fn cmp(&self, o: &Kernel) -> Ordering {
        if self.0.ptr_eq(&o.0) {
            return Ordering::Equal;
        }
        self.0
             .0
            .height
            .cmp(&o.0 .0.height)
            .then(self.0 .0.hash.cmp(&o.0 .0.hash))
            .then_with(|| structural_cmp(&self.0, &o.0))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<i64> for Expr {
    fn from(n: i64) -> Expr {
        Expr::int(n)
    }
}

impl std::ops::Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        Expr::add(vec![self, o])
    }
}

impl std::ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        Expr::sub(self, o)
    }
}

impl std::ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        Expr::mul(vec![self, o])
    }
}

impl std::ops::Div for Expr {
    type Output = Expr;
    fn div(self, o: Expr) -> Expr {
        Expr::div(self, o)
    }
}

impl std::ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        Expr::neg(self)
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // scale down huge values before converting
            let bits = q.numer().bits().max(q.denom().bits()) as i64 - 1000;
            let shift = bits.max(0) as usize;
            let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}
