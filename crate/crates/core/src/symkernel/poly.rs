use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::expr::{Expr, Kernel};

/// Power product of kernels, variables sorted in decreasing kernel order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Mono(SmallVec<[(Kernel, u32); 4]>);

impl Mono {
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    pub fn var(k: Kernel, e: u32) -> Mono {
        if e == 0 {
            return Mono::one();
        }
        let mut v = SmallVec::new();
        v.push((k, e));
        Mono(v)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Kernel, u32)] {
        &self.0
    }

    pub fn degree(&self, k: &Kernel) -> u32 {
        self.0.iter().find(|(v, _)| v == k).map_or(0, |(_, e)| *e)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut out: SmallVec<[(Kernel, u32); 4]> = SmallVec::with_capacity(self.0.len() + o.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < o.0.len() {
            match self.0[i].0.cmp(&o.0[j].0) {
                Ordering::Greater => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(o.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + o.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.0[i..].iter().cloned());
        out.extend(o.0[j..].iter().cloned());
        Mono(out)
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut out: SmallVec<[(Kernel, u32); 4]> = SmallVec::with_capacity(self.0.len());
        let mut j = 0;
        for (k, e) in &self.0 {
            if j < o.0.len() && o.0[j].0 == *k {
                let f = o.0[j].1;
                if f > *e {
                    return None;
                }
                if f < *e {
                    out.push((k.clone(), e - f));
                }
                j += 1;
            } else if j < o.0.len() && o.0[j].0 > *k {
                return None;
            } else {
                out.push((k.clone(), *e));
            }
        }
        if j < o.0.len() {
            return None;
        }
        Some(Mono(out))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut out: SmallVec<[(Kernel, u32); 4]> = SmallVec::new();
        for (k, e) in &self.0 {
            let f = o.degree(k);
            if f > 0 {
                out.push((k.clone(), (*e).min(f)));
            }
        }
        Mono(out)
    }

    /// Remove `k`, returning its exponent and the rest.
    pub fn split(&self, k: &Kernel) -> (u32, Mono) {
        let mut e = 0;
        let mut out: SmallVec<[(Kernel, u32); 4]> = SmallVec::with_capacity(self.0.len());
        for (v, x) in &self.0 {
            if v == k {
                e = *x;
            } else {
                out.push((v.clone(), *x));
            }
        }
        (e, Mono(out))
    }

    pub fn to_expr(&self) -> Expr {
        Expr::mul(self.0.iter().map(|(k, e)| Expr::pow(k.0.clone(), *e as i64)).collect())
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, o: &Mono) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

/// Lexicographic order with the larger kernel more significant.
impl Ord for Mono {
    fn cmp(&self, o: &Mono) -> Ordering {
        let mut i = 0;
        loop {
            match (self.0.get(i), o.0.get(i)) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ka, ea)), Some((kb, eb))) => match ka.cmp(kb) {
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                    }
                    c => return c,
                },
            }
            i += 1;
        }
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}

/// Sparse multivariate polynomial with integer coefficients over kernels.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Mono, BigInt>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        Poly { terms }
    }

    pub fn from_i64(c: i64) -> Poly {
        Poly::constant(BigInt::from(c))
    }

    pub fn var(k: Kernel) -> Poly {
        Poly::monomial(Mono::var(k, 1), BigInt::one())
    }

    pub fn monomial(m: Mono, c: BigInt) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly { terms }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<&BigInt> {
        match self.terms.len() {
            0 => None,
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                if m.is_one() {
                    Some(c)
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.is_zero() || self.as_constant().is_some()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> BigInt {
        self.leading().map_or_else(BigInt::zero, |(_, c)| c.clone())
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (big, small) = if self.len() >= o.len() { (self, o) } else { (o, self) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        if k.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono, k: &BigInt) -> Poly {
        if k.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(n, c)| (n.mul(m), c * k)).collect(),
        }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if let Some(c) = self.as_constant() {
            return o.scale(c);
        }
        if let Some(c) = o.as_constant() {
            return self.scale(c);
        }
        let mut r = Poly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> Poly {
        let mut result = Poly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = result.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if let Some(c) = d.as_constant() {
            let mut terms = BTreeMap::new();
            for (m, x) in &self.terms {
                let (q, r) = x.div_rem(c);
                if !r.is_zero() {
                    return None;
                }
                terms.insert(m.clone(), q);
            }
            return Some(Poly { terms });
        }
        let (lm_d, lc_d) = d.leading().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let mut r = self.clone();
        let mut q = Poly::zero();
        while let Some((lm_r, lc_r)) = r.leading() {
            let m = lm_r.div(&lm_d)?;
            let (c, rem) = lc_r.div_rem(&lc_d);
            if !rem.is_zero() {
                return None;
            }
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&m), -(&c * dc));
            }
            q.add_term(m, c);
        }
        Some(q)
    }

    pub fn vars(&self) -> BTreeSet<Kernel> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for (k, _) in m.factors() {
                s.insert(k.clone());
            }
        }
        s
    }

    pub fn contains_var(&self, k: &Kernel) -> bool {
        self.terms.keys().any(|m| m.degree(k) > 0)
    }

    pub fn degree(&self, k: &Kernel) -> u32 {
        self.terms.keys().map(|m| m.degree(k)).max().unwrap_or(0)
    }

    /// Coefficients with respect to `k`, index = power.
    pub fn coeffs(&self, k: &Kernel) -> Vec<Poly> {
        let d = self.degree(k) as usize;
        let mut out = vec![Poly::zero(); d + 1];
        for (m, c) in &self.terms {
            let (e, rest) = m.split(k);
            out[e as usize].add_term(rest, c.clone());
        }
        out
    }

    pub fn from_coeffs(k: &Kernel, cs: &[Poly]) -> Poly {
        let mut r = Poly::zero();
        for (e, c) in cs.iter().enumerate() {
            let m = Mono::var(k.clone(), e as u32);
            for (n, x) in &c.terms {
                r.add_term(n.mul(&m), x.clone());
            }
        }
        r
    }

    /// Positive gcd of the integer coefficients.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.keys();
        let mut g = match it.next() {
            Some(m) => m.clone(),
            None => return Mono::one(),
        };
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    pub fn div_mono(&self, m: &Mono) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            terms: self.terms.iter().map(|(n, c)| (n.div(m).expect("monomial divides"), c.clone())).collect(),
        }
    }

    /// Make the leading coefficient positive; returns whether the sign flipped.
    pub fn normalize_sign(&mut self) -> bool {
        if self.leading_coeff().is_negative() {
            *self = self.neg();
            true
        } else {
            false
        }
    }

    pub fn partial(&self, k: &Kernel) -> Poly {
        let mut r = Poly::zero();
        for (m, c) in &self.terms {
            let (e, rest) = m.split(k);
            if e == 0 {
                continue;
            }
            let m2 = rest.mul(&Mono::var(k.clone(), e - 1));
            r.add_term(m2, c * BigInt::from(e));
        }
        r
    }

    /// Evaluate modulo a prime with kernel values supplied by `val`.
    pub fn eval_mod(&self, p: u64, val: &mut dyn FnMut(&Kernel) -> u64) -> u64 {
        let pb = BigInt::from(p);
        let mut acc: u128 = 0;
        for (m, c) in &self.terms {
            let cm = c.mod_floor(&pb);
            let mut t: u128 = u64::try_from(&cm).unwrap() as u128;
            for (k, e) in m.factors() {
                t = t * powmod(val(k), *e as u64, p) as u128 % p as u128;
            }
            acc = (acc + t) % p as u128;
        }
        acc as u64
    }

    pub fn to_expr(&self) -> Expr {
        Expr::add(
            self.terms
                .iter()
                .map(|(m, c)| Expr::mul(vec![Expr::bigint(c.clone()), m.to_expr()]))
                .collect(),
        )
    }

    /// Substitute `k -> value` for every power of `k`.
    pub fn substitute(&self, k: &Kernel, value: &Poly) -> Poly {
        let cs = self.coeffs(k);
        // Horner
        let mut r = Poly::zero();
        for c in cs.iter().rev() {
            r = r.mul(value).add(c);
        }
        r
    }
}

pub(crate) fn powmod(b: u64, e: u64, p: u64) -> u64 {
    let mut r: u128 = 1;
    let mut b = (b % p) as u128;
    let mut e = e;
    let p = p as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r as u64
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_expr())
    }
}
