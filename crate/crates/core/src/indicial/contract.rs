use super::{canform, Variance, IndexContext, IndexError, IndexExpr, Term};
use crate::symkernel::Expr;

/// One metric contraction in `t`, if any applies.
fn step(ctx: &IndexContext, t: &mut Term) -> bool {
    for i in 0..t.factors.len() {
        let g = &t.factors[i];
        if !ctx.is_metric(&g.name) || !g.deriv.is_empty() || g.slots.len() != 2 {
            continue;
        }
        let mixed = g.slots[0].var != g.slots[1].var;
        if mixed && g.slots[0].label == g.slots[1].label {
            // trace of the identity
            t.factors.remove(i);
            t.coeff = t.coeff.clone() * Expr::sym("dim");
            return true;
        }
        for s in 0..2 {
            let (mine, other) = (g.slots[s].clone(), g.slots[1 - s].clone());
            for j in 0..t.factors.len() {
                if j == i {
                    continue;
                }
                let p = &t.factors[j];
                // a pure metric passes no index through a partial derivative
                if !mixed && !p.deriv.is_empty() {
                    continue;
                }
                let mut p = p.clone();
                if let Some(at) = p.slots.iter().position(|x| x.label == mine.label && x.var != mine.var) {
                    p.replace_slot(at, other);
                } else if let Some(at) = p.deriv.iter().position(|d| mixed && mine.var == Variance::Contra && *d == mine.label) {
                    p.deriv[at] = other.label;
                    p.deriv.sort();
                } else {
                    continue;
                }
                t.factors[j] = p;
                t.factors.remove(i);
                return true;
            }
        }
    }
    false
}

/// Contract metrics against the other factors. A metric is consumed and
/// its free index is put into the partner's slot.
pub fn contract(ctx: &IndexContext, e: &IndexExpr) -> Result<IndexExpr, IndexError> {
    e.validate()?;
    let e = canform(ctx, e);
    let mut out = IndexExpr::zero();
    for t in &e.terms {
        let mut t = t.clone();
        while step(ctx, &mut t) {}
        out.terms.push(t);
    }
    Ok(canform(ctx, &out))
}

