use std::collections::BTreeMap;

use super::{fresh, IndexContext, IndexExpr, SymKind, Tensor, Term};
use crate::symkernel::{ratsimp, Expr};

// Relabelings tried exhaustively up to this many dummies; beyond it the
// dummies are named in order of first appearance.
const EXHAUSTIVE: usize = 6;

/// Sort `v` and return the parity of the sorting permutation, or `None`
/// if two entries are equal.
fn sort_parity<T: Ord + Clone>(v: &mut [T]) -> (i32, bool) {
    let mut sign = 1;
    let mut dup = false;
    // insertion sort, counting swaps
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] >= v[j] {
            if v[j - 1] == v[j] {
                dup = true;
                break;
            }
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (sign, dup)
}

/// Apply declared symmetries to one object. `None` when it vanishes.
pub(crate) fn symmetrize(ctx: &IndexContext, t: &Tensor) -> Option<(Tensor, i32)> {
    let mut t = t.clone();
    t.deriv.sort();
    let n = t.slots.len();
    let ncov = t.ncov();
    let mut sign = 1;
    let mut apply = |slots: &mut [super::Index], groups: &[super::Group]| -> bool {
        for g in groups {
            let mut v: Vec<_> = g.pos.iter().map(|&p| slots[p].clone()).collect();
            let (s, dup) = sort_parity(&mut v);
            if g.kind == SymKind::Anti {
                if dup {
                    return false;
                }
                sign *= s;
            }
            for (k, &p) in g.pos.iter().enumerate() {
                slots[p] = v[k].clone();
            }
        }
        true
    };
    if t.ordered {
        let decl = ctx.decl(&t.name, n, 0).map(|d| &d.cov).or_else(|| {
            if ncov == 0 {
                ctx.decl(&t.name, 0, n).map(|d| &d.contra)
            } else {
                None
            }
        });
        if let Some(groups) = decl {
            if !apply(&mut t.slots, groups) {
                return None;
            }
        }
    } else if let Some(d) = ctx.decl(&t.name, ncov, n - ncov) {
        let (c, k) = t.slots.split_at_mut(ncov);
        if !apply(c, &d.cov) || !apply(k, &d.contra) {
            return None;
        }
    }
    Some((t, sign))
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = vec![];
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

/// Canonical factors and sign of one term, or `None` if it vanishes.
fn canon_factors(ctx: &IndexContext, term: &Term) -> Option<(Vec<Tensor>, i32)> {
    let counts = term.label_counts();
    let mut dummies: Vec<String> = vec![];
    for t in &term.factors {
        for l in t.labels() {
            if counts[l] == 2 && !dummies.iter().any(|d| d == l) {
                dummies.push(l.to_string());
            }
        }
    }
    let free: std::collections::BTreeSet<String> =
        counts.iter().filter(|(_, &c)| c != 2).map(|(l, _)| l.to_string()).collect();
    let mut names = vec![];
    let mut used = free.clone();
    for _ in &dummies {
        let n = fresh(&used);
        used.insert(n.clone());
        names.push(n);
    }
    let attempt = |perm: &[usize]| -> Option<(Vec<Tensor>, i32)> {
        let map: BTreeMap<&str, &str> =
            dummies.iter().enumerate().map(|(i, d)| (d.as_str(), names[perm[i]].as_str())).collect();
        let t = term.relabel(&|l| map.get(l).map(|s| s.to_string()));
        let mut sign = 1;
        let mut out = vec![];
        for f in &t.factors {
            let (g, s) = symmetrize(ctx, f)?;
            sign *= s;
            out.push(g);
        }
        out.sort();
        Some((out, sign))
    };
    if dummies.len() <= EXHAUSTIVE {
        let mut best: Option<(Vec<Tensor>, i32)> = None;
        for p in permutations(dummies.len()) {
            let r = attempt(&p)?;
            if best.as_ref().is_none_or(|b| r.0 < b.0) {
                best = Some(r);
            }
        }
        best
    } else {
        // name dummies by first appearance after a dummy-blind sort
        let mut t = term.clone();
        let mask = |x: &Tensor| x.relabel(&|l| if counts.get(l) == Some(&2) { Some("%".into()) } else { None });
        t.factors.sort_by_key(|f| mask(f));
        let canon = Term::new(t.coeff.clone(), t.factors);
        let mut order: Vec<String> = vec![];
        for f in &canon.factors {
            for l in f.labels() {
                if counts[l] == 2 && !order.iter().any(|d| d == l) {
                    order.push(l.to_string());
                }
            }
        }
        let perm: Vec<usize> = dummies.iter().map(|d| order.iter().position(|o| o == d).unwrap()).collect();
        attempt(&perm)
    }
}

/// Canonical form: declared symmetries applied, dummies renamed to
/// `%1, %2, ...`, factors sorted, equal terms merged and zeros dropped.
pub fn canform(ctx: &IndexContext, e: &IndexExpr) -> IndexExpr {
    let mut acc: Vec<(Vec<Tensor>, Expr)> = vec![];
    for t in &e.terms {
        if t.coeff.is_zero() {
            continue;
        }
        let Some((f, s)) = canon_factors(ctx, t) else { continue };
        let c = if s < 0 { -t.coeff.clone() } else { t.coeff.clone() };
        match acc.iter_mut().find(|(g, _)| *g == f) {
            Some((_, k)) => *k = k.clone() + c,
            None => acc.push((f, c)),
        }
    }
    let mut terms: Vec<Term> = acc
        .into_iter()
        .map(|(f, c)| Term::new(ratsimp(&c), f))
        .filter(|t| !t.coeff.is_zero())
        .collect();
    terms.sort_by(|a, b| a.factors.cmp(&b.factors));
    IndexExpr { terms }
}
