use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::expr::{exact_isqrt, Expr, Func, Kernel, Node};
use super::gcd::poly_gcd;
use super::poly::{Mono, Poly};
use super::SymError;

/// Quotient of two polynomials over kernels. The denominator has a
/// positive leading coefficient; common factors are cancelled.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn zero() -> RatFun {
        RatFun::from_poly(Poly::zero())
    }

    pub fn one() -> RatFun {
        RatFun::from_poly(Poly::one())
    }

    pub fn from_poly(p: Poly) -> RatFun {
        RatFun { num: p, den: Poly::one() }
    }

    pub fn int(n: i64) -> RatFun {
        RatFun::from_poly(Poly::from_i64(n))
    }

    pub fn rational(q: &BigRational) -> RatFun {
        RatFun {
            num: Poly::constant(q.numer().clone()),
            den: Poly::constant(q.denom().clone()),
        }
    }

    pub fn var(k: Kernel) -> RatFun {
        RatFun::from_poly(Poly::var(k))
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.num.is_zero() {
            return Some(BigRational::zero());
        }
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n.clone(), d.clone()))
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn depends_on(&self, x: &str) -> bool {
        let dep = |p: &Poly| p.terms().any(|(m, _)| m.factors().iter().any(|(k, _)| k.0.depends_on(x)));
        dep(&self.num) || dep(&self.den)
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

/// Arithmetic context for [`RatFun`]: knows the algebraic relations of
/// kernels (`%i^2 = -1`, `sqrt(p)^2 = p`, `abs(p)^2 = p^2`) and, in trig
/// mode, `sin(u)^2 = 1 - cos(u)^2` and `cosh(u)^2 = 1 + sinh(u)^2`.
///
/// Caches live in the context, so a context is cheap to reuse and not `Sync`.
pub struct RatCtx {
    trig: bool,
    relations: RefCell<HashMap<Kernel, Option<Poly>>>,
    memo: RefCell<HashMap<Expr, RatFun>>,
    derivs: RefCell<HashMap<(Kernel, String), RatFun>>,
}

impl Default for RatCtx {
    fn default() -> Self {
        RatCtx::new(true)
    }
}

impl RatCtx {
    pub fn new(trig: bool) -> RatCtx {
        RatCtx {
            trig,
            relations: RefCell::new(HashMap::new()),
            memo: RefCell::new(HashMap::new()),
            derivs: RefCell::new(HashMap::new()),
        }
    }

    /// Plain rational normal form; only `%i`, `sqrt` and `abs` relations.
    pub fn rational() -> RatCtx {
        RatCtx::new(false)
    }

    /// Rational normal form with the Pythagorean closure.
    pub fn trig() -> RatCtx {
        RatCtx::new(true)
    }

    pub fn is_trig(&self) -> bool {
        self.trig
    }

    pub fn sym(&self, name: &str) -> RatFun {
        RatFun::var(Kernel(Expr::sym(name)))
    }

    // ---- conversion ----

    pub fn from_expr(&self, e: &Expr) -> Result<RatFun, SymError> {
        match e.node() {
            Node::Num(q) => return Ok(RatFun::rational(q)),
            Node::Sym(_) => return Ok(RatFun::var(Kernel(e.clone()))),
            Node::I => return Ok(RatFun::var(Kernel(e.clone()))),
            _ => {}
        }
        if let Some(r) = self.memo.borrow().get(e) {
            return Ok(r.clone());
        }
        let r = match e.node() {
            Node::Add(xs) => {
                let mut acc = RatFun::zero();
                for x in xs {
                    acc = self.add(&acc, &self.from_expr(x)?);
                }
                acc
            }
            Node::Mul(xs) => {
                let mut acc = RatFun::one();
                for x in xs {
                    acc = self.mul(&acc, &self.from_expr(x)?);
                }
                acc
            }
            Node::Pow(b, n) => {
                let rb = self.from_expr(b)?;
                self.pow(&rb, *n)?
            }
            Node::Apply(f, a) => self.func(*f, a)?,
            _ => unreachable!(),
        };
        self.memo.borrow_mut().insert(e.clone(), r.clone());
        Ok(r)
    }

    pub fn to_expr(&self, r: &RatFun) -> Expr {
        if r.den.is_one() {
            return r.num.to_expr();
        }
        Expr::div(r.num.to_expr(), r.den.to_expr())
    }

    // ---- arithmetic ----

    pub fn add(&self, a: &RatFun, b: &RatFun) -> RatFun {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        if a.den.is_one() && b.den.is_one() {
            return RatFun::from_poly(a.num.add(&b.num));
        }
        if a.den == b.den {
            let num = a.num.add(&b.num);
            return self.cancel(num, a.den.clone());
        }
        let g = poly_gcd(&a.den, &b.den);
        let ad = a.den.exact_div(&g).unwrap();
        let bd = b.den.exact_div(&g).unwrap();
        let num = a.num.mul(&bd).add(&b.num.mul(&ad));
        let den = ad.mul(&b.den);
        if num.is_zero() {
            return RatFun::zero();
        }
        if self.has_algebraic(&den) {
            return self.normalize(num, den);
        }
        if g.is_one() {
            return self.finish(num, den);
        }
        let g2 = poly_gcd(&num, &g);
        if g2.is_one() {
            return self.finish(num, den);
        }
        self.finish(num.exact_div(&g2).unwrap(), den.exact_div(&g2).unwrap())
    }

    pub fn sub(&self, a: &RatFun, b: &RatFun) -> RatFun {
        self.add(a, &b.neg())
    }

    pub fn mul(&self, a: &RatFun, b: &RatFun) -> RatFun {
        if a.is_zero() || b.is_zero() {
            return RatFun::zero();
        }
        if a.is_one() {
            return b.clone();
        }
        if b.is_one() {
            return a.clone();
        }
        let (an, bd) = cross_cancel(&a.num, &b.den);
        let (bn, ad) = cross_cancel(&b.num, &a.den);
        let num = an.mul(&bn);
        let den = ad.mul(&bd);
        let reduced = self.reduce(&num);
        if reduced == num && !self.has_algebraic(&den) {
            return self.finish(num, den);
        }
        self.normalize(reduced, den)
    }

    pub fn inv(&self, a: &RatFun) -> Result<RatFun, SymError> {
        if a.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        Ok(self.normalize(a.den.clone(), a.num.clone()))
    }

    pub fn div(&self, a: &RatFun, b: &RatFun) -> Result<RatFun, SymError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &RatFun, n: i64) -> Result<RatFun, SymError> {
        if n < 0 {
            let inv = self.inv(a)?;
            return self.pow(&inv, -n);
        }
        let mut result = RatFun::one();
        let mut base = a.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = self.mul(&result, &base);
            }
            n >>= 1;
            if n > 0 {
                base = self.mul(&base, &base);
            }
        }
        Ok(result)
    }

    pub fn scale(&self, a: &RatFun, q: &BigRational) -> RatFun {
        self.mul(a, &RatFun::rational(q))
    }

    pub fn is_zero(&self, a: &RatFun) -> bool {
        a.is_zero()
    }

    // ---- normal form ----

    // den positive, no common content left to find beyond `num`/`den` themselves
    fn finish(&self, mut num: Poly, mut den: Poly) -> RatFun {
        if den.normalize_sign() {
            num = num.neg();
        }
        RatFun { num, den }
    }

    fn cancel(&self, num: Poly, den: Poly) -> RatFun {
        if num.is_zero() {
            return RatFun::zero();
        }
        let g = poly_gcd(&num, &den);
        if g.is_one() {
            return self.finish(num, den);
        }
        self.finish(num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
    }

    /// Reduce algebraic powers, rationalize the denominator and cancel.
    fn normalize(&self, num: Poly, den: Poly) -> RatFun {
        assert!(!den.is_zero(), "zero denominator");
        let mut num = self.reduce(&num);
        let mut den = self.reduce(&den);
        if num.is_zero() {
            return RatFun::zero();
        }
        let mut skip: Vec<Kernel> = Vec::new();
        for _ in 0..64 {
            let k = den
                .vars()
                .into_iter()
                .rev()
                .find(|k| !skip.contains(k) && self.relation(k).is_some());
            let Some(k) = k else { break };
            let cs = den.coeffs(&k);
            if cs.len() != 2 {
                // degree above one survives only without a relation
                skip.push(k);
                continue;
            }
            let conj = cs[0].sub(&Poly::var(k.clone()).mul(&cs[1]));
            let nd = self.reduce(&den.mul(&conj));
            if nd.is_zero() || nd.contains_var(&k) {
                skip.push(k);
                continue;
            }
            den = nd;
            num = self.reduce(&num.mul(&conj));
        }
        self.cancel(num, den)
    }

    fn has_algebraic(&self, p: &Poly) -> bool {
        p.vars().iter().any(|k| self.is_algebraic(k))
    }

    fn is_algebraic(&self, k: &Kernel) -> bool {
        match k.0.node() {
            Node::I => true,
            Node::Apply(Func::Sqrt | Func::Abs, _) => true,
            Node::Apply(Func::Sin | Func::Cosh, _) => self.trig,
            _ => false,
        }
    }

    /// `k^2` in terms of other kernels, if `k` is algebraic.
    fn relation(&self, k: &Kernel) -> Option<Poly> {
        if !self.is_algebraic(k) {
            return None;
        }
        if let Some(r) = self.relations.borrow().get(k) {
            return r.clone();
        }
        let rel = match k.0.node() {
            Node::I => Some(Poly::from_i64(-1)),
            Node::Apply(Func::Sqrt, a) => match self.from_expr(a) {
                Ok(r) if r.den.is_one() => Some(r.num),
                _ => None,
            },
            Node::Apply(Func::Abs, a) => match self.from_expr(a) {
                Ok(r) if r.den.is_one() && !r.num.vars().iter().any(|v| matches!(v.0.node(), Node::I)) => {
                    Some(r.num.mul(&r.num))
                }
                _ => None,
            },
            Node::Apply(Func::Sin, u) => {
                let c = Kernel(Expr::apply(Func::Cos, u.clone()));
                Some(Poly::one().sub(&Poly::var(c).pow(2)))
            }
            Node::Apply(Func::Cosh, u) => {
                let s = Kernel(Expr::apply(Func::Sinh, u.clone()));
                Some(Poly::one().add(&Poly::var(s).pow(2)))
            }
            _ => None,
        };
        self.relations.borrow_mut().insert(k.clone(), rel.clone());
        rel
    }

    /// Rewrite every algebraic kernel to degree at most one.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let mut p = p.clone();
        loop {
            let mut target: Option<Kernel> = None;
            for (m, _) in p.terms() {
                for (k, e) in m.factors() {
                    if *e >= 2 && target.as_ref().is_none_or(|t| k > t) && self.is_algebraic(k) {
                        target = Some(k.clone());
                    }
                }
            }
            let Some(k) = target else { return p };
            let Some(rel) = self.relation(&k) else {
                // algebraic by shape but without a usable relation
                self.relations.borrow_mut().insert(k.clone(), None);
                return self.reduce_skipping(p, &k);
            };
            p = substitute_square(&p, &k, &rel);
        }
    }

    // rare path: an algebraic-looking kernel that has no relation
    fn reduce_skipping(&self, p: Poly, skip: &Kernel) -> Poly {
        let mut p = p;
        loop {
            let target = p
                .vars()
                .into_iter()
                .rev()
                .find(|k| k != skip && p.degree(k) >= 2 && self.relation(k).is_some());
            let Some(k) = target else { return p };
            let rel = self.relation(&k).unwrap();
            p = substitute_square(&p, &k, &rel);
        }
    }

    // ---- kernels ----

    fn func(&self, f: Func, a: &Expr) -> Result<RatFun, SymError> {
        match f {
            Func::Sqrt => return self.sqrt_of(a),
            Func::Abs => return self.abs_of(a),
            Func::Tan if self.trig => {
                let s = self.func(Func::Sin, a)?;
                let c = self.func(Func::Cos, a)?;
                return self.div(&s, &c);
            }
            Func::Tanh if self.trig => {
                let s = self.func(Func::Sinh, a)?;
                let c = self.func(Func::Cosh, a)?;
                return self.div(&s, &c);
            }
            _ => {}
        }
        let mut r = self.from_expr(a)?;
        let mut negate = false;
        if (f.is_odd() || f.is_even()) && r.num.leading_coeff().is_negative() {
            r = r.neg();
            negate = f.is_odd();
        }
        if f == Func::Log && r.num.is_zero() {
            return Err(SymError::DivisionByZero);
        }
        let e = Expr::apply(f, self.to_expr(&r));
        let out = match e.node() {
            Node::Apply(..) => RatFun::var(Kernel(e)),
            _ => self.from_expr(&e)?,
        };
        Ok(if negate { out.neg() } else { out })
    }

    fn sqrt_of(&self, a: &Expr) -> Result<RatFun, SymError> {
        match a.node() {
            Node::Mul(xs) => {
                let mut acc = RatFun::one();
                for x in xs {
                    acc = self.mul(&acc, &self.sqrt_of(x)?);
                }
                Ok(acc)
            }
            Node::Pow(b, n) => {
                let s = self.sqrt_of(b)?;
                self.pow(&s, *n)
            }
            _ => {
                let r = self.from_expr(a)?;
                self.sqrt_rat(&r)
            }
        }
    }

    // sqrt(n/d) = sqrt(n)*sqrt(d)/d
    fn sqrt_rat(&self, r: &RatFun) -> Result<RatFun, SymError> {
        let sn = self.sqrt_poly(&r.num);
        if r.den.is_one() {
            return Ok(sn);
        }
        let sd = self.sqrt_poly(&r.den);
        let q = self.mul(&sn, &sd);
        self.div(&q, &RatFun::from_poly(r.den.clone()))
    }

    fn sqrt_poly(&self, p: &Poly) -> RatFun {
        if p.is_zero() {
            return RatFun::zero();
        }
        if let Some(c) = p.as_constant() {
            return self.sqrt_int(c);
        }
        let mut p = p.clone();
        let mut out = RatFun::one();
        if p.normalize_sign() {
            out = RatFun::var(Kernel(Expr::i()));
        }
        let c = p.content();
        if !c.is_one() {
            out = self.mul(&out, &self.sqrt_int(&c));
            p = p.exact_div(&Poly::constant(c)).unwrap();
        }
        let m = p.mono_content();
        if !m.is_one() {
            for (k, e) in m.factors() {
                let half = Poly::monomial(Mono::var(k.clone(), e / 2), BigInt::one());
                out = self.mul(&out, &RatFun::from_poly(half));
                if e % 2 == 1 {
                    out = self.mul(&out, &self.sqrt_kernel(Poly::var(k.clone())));
                }
            }
            p = p.div_mono(&m);
        }
        if !p.is_one() {
            out = self.mul(&out, &self.sqrt_kernel(p));
        }
        out
    }

    fn sqrt_kernel(&self, p: Poly) -> RatFun {
        let e = Expr::apply(Func::Sqrt, p.to_expr());
        match e.node() {
            Node::Apply(..) => {
                let k = Kernel(e);
                self.relations.borrow_mut().entry(k.clone()).or_insert(Some(p));
                RatFun::var(k)
            }
            // numeric folds
            _ => self.from_expr(&e).expect("numeric sqrt"),
        }
    }

    fn sqrt_int(&self, c: &BigInt) -> RatFun {
        if c.is_negative() {
            let s = self.sqrt_int(&-c);
            return self.mul(&s, &RatFun::var(Kernel(Expr::i())));
        }
        let (s, f) = split_square(c);
        let mut out = RatFun::from_poly(Poly::constant(s));
        if !f.is_one() {
            out = self.mul(&out, &self.sqrt_kernel(Poly::constant(f)));
        }
        out
    }

    fn abs_of(&self, a: &Expr) -> Result<RatFun, SymError> {
        match a.node() {
            Node::Num(q) => Ok(RatFun::rational(&q.abs())),
            Node::I => Ok(RatFun::one()),
            Node::Mul(xs) => {
                let mut acc = RatFun::one();
                for x in xs {
                    acc = self.mul(&acc, &self.abs_of(x)?);
                }
                Ok(acc)
            }
            Node::Pow(b, n) => {
                let s = self.abs_of(b)?;
                self.pow(&s, *n)
            }
            _ => {
                let r = self.from_expr(a)?;
                let n = self.abs_poly(&r.num);
                if r.den.is_one() {
                    return Ok(n);
                }
                let d = self.abs_poly(&r.den);
                self.div(&n, &d)
            }
        }
    }

    fn abs_poly(&self, p: &Poly) -> RatFun {
        if p.is_zero() {
            return RatFun::zero();
        }
        if let Some(c) = p.as_constant() {
            return RatFun::from_poly(Poly::constant(c.abs()));
        }
        let mut p = p.clone();
        p.normalize_sign();
        let c = p.content();
        let mut out = RatFun::from_poly(Poly::constant(c.clone()));
        p = p.exact_div(&Poly::constant(c)).unwrap();
        let m = p.mono_content();
        if !m.is_one() {
            for (k, e) in m.factors() {
                let even = Poly::monomial(Mono::var(k.clone(), e - e % 2), BigInt::one());
                out = self.mul(&out, &RatFun::from_poly(even));
                if e % 2 == 1 {
                    out = self.mul(&out, &self.abs_kernel(Poly::var(k.clone())));
                }
            }
            p = p.div_mono(&m);
        }
        if !p.is_one() {
            out = self.mul(&out, &self.abs_kernel(p));
        }
        out
    }

    fn abs_kernel(&self, p: Poly) -> RatFun {
        if p.vars().iter().any(|v| matches!(v.0.node(), Node::I)) {
            return RatFun::var(Kernel(Expr::apply(Func::Abs, p.to_expr())));
        }
        let e = Expr::apply(Func::Abs, p.to_expr());
        match e.node() {
            Node::Apply(..) => {
                let k = Kernel(e);
                let sq = p.mul(&p);
                self.relations.borrow_mut().entry(k.clone()).or_insert(Some(sq));
                RatFun::var(k)
            }
            _ => self.from_expr(&e).expect("numeric abs"),
        }
    }

    // ---- differentiation ----

    /// Partial derivative with respect to the symbol `x`.
    pub fn diff(&self, r: &RatFun, x: &str) -> RatFun {
        if !r.depends_on(x) {
            return RatFun::zero();
        }
        let dn = self.diff_poly(&r.num, x);
        if r.den.is_one() {
            return dn;
        }
        let dd = self.diff_poly(&r.den, x);
        let top = self.sub(&dn, &self.mul(r, &dd));
        self.div(&top, &RatFun::from_poly(r.den.clone())).expect("nonzero denominator")
    }

    fn diff_poly(&self, p: &Poly, x: &str) -> RatFun {
        let mut acc = RatFun::zero();
        for k in p.vars() {
            if !k.0.depends_on(x) {
                continue;
            }
            let dk = self.kernel_deriv(&k, x);
            if dk.is_zero() {
                continue;
            }
            let part = RatFun::from_poly(p.partial(&k));
            acc = self.add(&acc, &self.mul(&part, &dk));
        }
        acc
    }

    fn kernel_deriv(&self, k: &Kernel, x: &str) -> RatFun {
        let key = (k.clone(), x.to_string());
        if let Some(d) = self.derivs.borrow().get(&key) {
            return d.clone();
        }
        let d = self.kernel_deriv_uncached(k, x);
        self.derivs.borrow_mut().insert(key, d.clone());
        d
    }

    fn kernel_deriv_uncached(&self, k: &Kernel, x: &str) -> RatFun {
        let (f, a) = match k.0.node() {
            Node::Sym(s) => return if &**s == x { RatFun::one() } else { RatFun::zero() },
            Node::Apply(f, a) => (*f, a),
            _ => return RatFun::zero(),
        };
        let ar = self.from_expr(a).expect("kernel argument");
        let da = self.diff(&ar, x);
        if da.is_zero() {
            return RatFun::zero();
        }
        let kv = RatFun::var(k.clone());
        let of = |g: Func| self.from_expr(&Expr::apply(g, a.clone())).expect("kernel");
        let outer = match f {
            Func::Sin => of(Func::Cos),
            Func::Cos => of(Func::Sin).neg(),
            Func::Tan => self.add(&RatFun::one(), &self.mul(&kv, &kv)),
            Func::Sinh => of(Func::Cosh),
            Func::Cosh => of(Func::Sinh),
            Func::Tanh => self.sub(&RatFun::one(), &self.mul(&kv, &kv)),
            Func::Exp => kv,
            Func::Log => self.inv(&ar).expect("log argument"),
            Func::Sqrt => {
                let two_k = self.mul(&RatFun::int(2), &kv);
                self.inv(&two_k).expect("sqrt kernel")
            }
            Func::Abs => self.div(&kv, &ar).expect("abs argument"),
        };
        self.mul(&outer, &da)
    }
}

// p with k^2 replaced by rel everywhere
fn substitute_square(p: &Poly, k: &Kernel, rel: &Poly) -> Poly {
    let cs = p.coeffs(k);
    let kv = Poly::var(k.clone());
    let mut out = Poly::zero();
    let mut relpow = Poly::one();
    for (j, c) in cs.iter().enumerate() {
        if j >= 2 && j % 2 == 0 {
            relpow = relpow.mul(rel);
        }
        if c.is_zero() {
            continue;
        }
        let mut t = c.mul(&relpow);
        if j % 2 == 1 {
            t = t.mul(&kv);
        }
        out = out.add(&t);
    }
    out
}

// (a/g, b/g) with g = gcd(a, b)
fn cross_cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    if b.is_one() || a.is_one() {
        return (a.clone(), b.clone());
    }
    let g = poly_gcd(a, b);
    if g.is_one() {
        return (a.clone(), b.clone());
    }
    (a.exact_div(&g).unwrap(), b.exact_div(&g).unwrap())
}

/// c = s^2 * f with f free of small square factors; c > 0.
fn split_square(c: &BigInt) -> (BigInt, BigInt) {
    if let Some(r) = exact_isqrt(c) {
        return (r, BigInt::one());
    }
    let mut s = BigInt::one();
    let mut f = BigInt::one();
    let mut rest = c.clone();
    let mut p = BigInt::from(2);
    let limit = BigInt::from(10_000);
    while p <= limit && &p * &p <= rest {
        let pp = &p * &p;
        while (&rest % &pp).is_zero() {
            rest /= &pp;
            s *= &p;
        }
        if (&rest % &p).is_zero() {
            rest /= &p;
            f *= &p;
        }
        p += 1;
    }
    if let Some(r) = exact_isqrt(&rest) {
        s *= r;
    } else {
        f *= rest;
    }
    debug_assert!(&s * &s * &f == *c);
    (s, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::parse;

    fn rf(ctx: &RatCtx, s: &str) -> RatFun {
        ctx.from_expr(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn cancels_common_factor() {
        let ctx = RatCtx::rational();
        assert_eq!(rf(&ctx, "(x^2 - 1)/(x - 1)"), rf(&ctx, "x + 1"));
    }

    #[test]
    fn common_denominator() {
        let ctx = RatCtx::rational();
        let a = rf(&ctx, "a/b + c/d");
        assert_eq!(a.den(), rf(&ctx, "b*d").num());
    }

    #[test]
    fn imaginary_unit() {
        let ctx = RatCtx::rational();
        assert_eq!(rf(&ctx, "1/(1 + %i)"), rf(&ctx, "(1 - %i)/2"));
    }

    #[test]
    fn sqrt_relation_and_rationalization() {
        let ctx = RatCtx::rational();
        assert_eq!(rf(&ctx, "sqrt(x)^2"), rf(&ctx, "x"));
        assert_eq!(rf(&ctx, "1/sqrt(x)"), rf(&ctx, "sqrt(x)/x"));
        assert_eq!(rf(&ctx, "sqrt(8*x^3)"), rf(&ctx, "2*x*sqrt(2)*sqrt(x)"));
        assert!(rf(&ctx, "sqrt((r - 2*m)/r)^2 - (r - 2*m)/r").is_zero());
        assert!(rf(&ctx, "sqrt(-x)^2 + x").is_zero());
    }

    #[test]
    fn pythagorean_closure() {
        let ctx = RatCtx::trig();
        assert!(rf(&ctx, "sin(x)^2 + cos(x)^2 - 1").is_zero());
        assert!(rf(&ctx, "cosh(u)^2 - sinh(u)^2 - 1").is_zero());
        assert_eq!(rf(&ctx, "(1 - cos(t)^2)/sin(t)"), rf(&ctx, "sin(t)"));
        assert!(rf(&ctx, "tan(x)*cos(x) - sin(x)").is_zero());
        assert!(rf(&ctx, "sin(x - y) + sin(y - x)").is_zero());
        assert!(!rf(&RatCtx::rational(), "sin(x)^2 + cos(x)^2 - 1").is_zero());
    }

    #[test]
    fn derivative() {
        let ctx = RatCtx::trig();
        let g = rf(&ctx, "1/(cosh(v) - cos(u))^2");
        let d = ctx.diff(&g, "u");
        let want = rf(&ctx, "-2*sin(u)/(cosh(v) - cos(u))^3");
        assert!(ctx.sub(&d, &want).is_zero());
        let s = rf(&ctx, "sqrt(r^2 + a^2)");
        let ds = ctx.diff(&s, "r");
        assert!(ctx.sub(&ds, &rf(&ctx, "r/sqrt(r^2 + a^2)")).is_zero());
    }

    #[test]
    fn squares() {
        assert_eq!(split_square(&BigInt::from(72)), (BigInt::from(6), BigInt::from(2)));
        assert_eq!(split_square(&BigInt::from(49)), (BigInt::from(7), BigInt::from(1)));
        assert_eq!(split_square(&BigInt::from(30)), (BigInt::from(1), BigInt::from(30)));
    }
}
