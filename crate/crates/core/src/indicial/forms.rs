use std::collections::{BTreeMap, BTreeSet};

use super::canon::permutations;
use super::{canform, idiff, rename_dummies_away, IndexContext, IndexError, IndexExpr, Tensor, Variance};
use crate::symkernel::Expr;

fn parity(p: &[usize]) -> i64 {
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

fn factorial(n: usize) -> i64 {
    (1..=n as i64).product()
}

/// Free labels of a form, all covariant.
fn form_indices(e: &IndexExpr) -> Result<Vec<String>, IndexError> {
    let f = e.free_indices()?;
    if f.iter().any(|i| i.var != Variance::Co) {
        return Err(IndexError::NotForm(e.to_string()));
    }
    Ok(f.into_iter().map(|i| i.label).collect())
}

fn away(e: &IndexExpr, avoid: &BTreeSet<String>) -> IndexExpr {
    IndexExpr { terms: e.terms.iter().map(|t| rename_dummies_away(t, avoid)).collect() }
}

fn rename(e: &IndexExpr, from: &[String], to: &[&String]) -> IndexExpr {
    let m: BTreeMap<&str, String> = from.iter().map(|s| s.as_str()).zip(to.iter().map(|s| s.to_string())).collect();
    e.relabel(&|l| m.get(l).cloned())
}

/// Exterior product. The tensorial convention divides the alternating sum
/// by (p+q)!, the geometric one by p!q!.
pub fn wedge(ctx: &IndexContext, a: &IndexExpr, b: &IndexExpr) -> Result<IndexExpr, IndexError> {
    let fa = form_indices(a)?;
    let fb = form_indices(b)?;
    if let Some(x) = fa.iter().find(|x| fb.contains(x)) {
        return Err(IndexError::Conflict(x.clone()));
    }
    let all: Vec<String> = fa.iter().chain(&fb).cloned().collect();
    let avoid: BTreeSet<String> = all.iter().cloned().collect();
    let (a, b) = (away(a, &avoid), away(b, &avoid));
    let (p, q) = (fa.len(), fb.len());
    let mut out = IndexExpr::zero();
    for s in permutations(p + q) {
        let to: Vec<&String> = s.iter().map(|&i| &all[i]).collect();
        let t = rename(&a, &fa, &to[..p]).mul(&rename(&b, &fb, &to[p..]));
        out = out.add(&t.scale(&Expr::int(parity(&s))));
    }
    let d = if ctx.flags.geometric_wedge { factorial(p) * factorial(q) } else { factorial(p + q) };
    Ok(canform(ctx, &out.scale(&Expr::rational(1, d))))
}

/// Exterior derivative, with `k` as the new first index.
pub fn extdiff(ctx: &IndexContext, a: &IndexExpr, k: &str) -> Result<IndexExpr, IndexError> {
    let fa = form_indices(a)?;
    if a.labels().contains(k) {
        return Err(IndexError::Collision(k.to_string()));
    }
    let all: Vec<String> = std::iter::once(k.to_string()).chain(fa.iter().cloned()).collect();
    let avoid: BTreeSet<String> = all.iter().cloned().collect();
    let a = away(a, &avoid);
    let p = fa.len();
    let mut out = IndexExpr::zero();
    for s in permutations(p + 1) {
        let to: Vec<&String> = s.iter().map(|&i| &all[i]).collect();
        let t = idiff(&rename(&a, &fa, &to[1..]), to[0]);
        out = out.add(&t.scale(&Expr::int(parity(&s))));
    }
    let d = if ctx.flags.geometric_wedge { factorial(p) } else { factorial(p + 1) };
    Ok(canform(ctx, &out.scale(&Expr::rational(1, d))))
}

/// Interior product: `v` contracted into the first slot.
pub fn inner(ctx: &IndexContext, v: &str, a: &IndexExpr) -> Result<IndexExpr, IndexError> {
    if !ctx.vectors.contains(v) {
        return Err(IndexError::NotVector(v.to_string()));
    }
    let fa = form_indices(a)?;
    let Some(first) = fa.first() else {
        return Err(IndexError::NotForm(a.to_string()));
    };
    let vt = IndexExpr::tensor(Tensor::new(v, &[], &[first], &[]));
    Ok(canform(ctx, &vt.mul(a)))
}
