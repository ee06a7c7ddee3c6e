use std::collections::BTreeSet;

use super::{contract, fresh, Index, IndexContext, IndexError, IndexExpr, Tensor, Term, Variance, NONMETRICITY, TORSION};
use crate::symkernel::Expr;

fn t(name: &str, first: &[&str], second: &[&str]) -> Tensor {
    Tensor::new(name, first, second, &[])
}

fn half() -> Expr {
    Expr::rational(1, 2)
}

fn lin(parts: Vec<(Expr, Vec<Tensor>)>) -> IndexExpr {
    IndexExpr { terms: parts.into_iter().map(|(c, f)| Term::new(c, f)).collect() }
}

/// Partial derivative by `k`, by the product rule.
pub fn idiff(e: &IndexExpr, k: &str) -> IndexExpr {
    let mut out = IndexExpr::zero();
    for term in &e.terms {
        for n in 0..term.factors.len() {
            let mut f = term.factors.clone();
            f[n] = f[n].differentiate(k);
            out.terms.push(Term::new(term.coeff.clone(), f));
        }
    }
    out
}

/// Christoffel symbol of the first kind in metric derivatives.
pub fn ichr1(ctx: &IndexContext, h: &str, k: &str, l: &str) -> IndexExpr {
    let g = ctx.metric_name();
    let d = |a: &str, b: &str, c: &str| Tensor::new(g, &[a, b], &[], &[c]);
    lin(vec![
        (half(), vec![d(k, l, h)]),
        (half(), vec![d(l, h, k)]),
        (-half(), vec![d(h, k, l)]),
    ])
}

/// Christoffel symbol of the second kind, `g^{jl} ichr1(h,k,l)`, then
/// differentiated by each of `deriv`.
pub fn ichr2(ctx: &IndexContext, h: &str, k: &str, j: &str, deriv: &[&str]) -> IndexExpr {
    let used: BTreeSet<String> = [h, k, j].iter().chain(deriv).map(|s| s.to_string()).collect();
    let l = fresh(&used);
    let up = IndexExpr::tensor(t(ctx.metric_name(), &[], &[j, &l]));
    let mut e = up.mul(&ichr1(ctx, h, k, &l));
    for d in deriv {
        e = idiff(&e, d);
    }
    e
}

fn connection(ctx: &IndexContext) -> &'static str {
    let f = ctx.flags;
    if f.frame || f.torsion || f.nonmetricity {
        "icc2"
    } else {
        "ichr2"
    }
}

/// Covariant derivative by `k`: the partial derivative plus one
/// connection term per index. Derivative indices count as covariant.
pub fn covdiff(ctx: &IndexContext, e: &IndexExpr, k: &str) -> Result<IndexExpr, IndexError> {
    e.validate()?;
    if e.labels().contains(k) {
        return Err(IndexError::Collision(k.to_string()));
    }
    let gam = connection(ctx);
    let mut out = IndexExpr::zero();
    for term in &e.terms {
        let mut used = term.labels();
        used.insert(k.to_string());
        let m = fresh(&used);
        for n in 0..term.factors.len() {
            let f = &term.factors[n];
            let mut push = |coeff: Expr, new: Tensor, extra: Option<Tensor>| {
                let mut fs = term.factors.clone();
                fs[n] = new;
                fs.extend(extra);
                out.terms.push(Term::new(coeff, fs));
            };
            push(term.coeff.clone(), f.differentiate(k), None);
            for (s, ix) in f.slots.iter().enumerate() {
                let mut g = f.clone();
                g.slots[s] = Index { label: m.clone(), var: ix.var };
                match ix.var {
                    Variance::Contra => push(term.coeff.clone(), g, Some(t(gam, &[&m, k], &[&ix.label]))),
                    Variance::Co => push(-term.coeff.clone(), g, Some(t(gam, &[&ix.label, k], &[&m]))),
                }
            }
            for (s, d) in f.deriv.iter().enumerate() {
                let mut g = f.clone();
                g.deriv[s] = m.clone();
                g.deriv.sort();
                push(-term.coeff.clone(), g, Some(t(gam, &[d, k], &[&m])));
            }
        }
    }
    Ok(out)
}

/// Lie derivative along the declared vector `v`.
pub fn liediff(ctx: &IndexContext, e: &IndexExpr, v: &str) -> Result<IndexExpr, IndexError> {
    if !ctx.vectors.contains(v) {
        return Err(IndexError::NotVector(v.to_string()));
    }
    e.validate()?;
    let mut out = IndexExpr::zero();
    for term in &e.terms {
        let h = fresh(&term.labels());
        let vt = |first: &[&str], second: &[&str], d: &[&str]| Tensor::new(v, first, second, d);
        for n in 0..term.factors.len() {
            let f = &term.factors[n];
            let mut push = |coeff: Expr, new: Tensor, extra: Tensor| {
                let mut fs = term.factors.clone();
                fs[n] = new;
                fs.push(extra);
                out.terms.push(Term::new(coeff, fs));
            };
            push(term.coeff.clone(), f.differentiate(&h), vt(&[], &[&h], &[]));
            for (s, ix) in f.slots.iter().enumerate() {
                let mut g = f.clone();
                g.slots[s] = Index { label: h.clone(), var: ix.var };
                match ix.var {
                    Variance::Contra => push(-term.coeff.clone(), g, vt(&[], &[&ix.label], &[&h])),
                    Variance::Co => push(term.coeff.clone(), g, vt(&[], &[&h], &[&ix.label])),
                }
            }
            for (s, d) in f.deriv.iter().enumerate() {
                let mut g = f.clone();
                g.deriv[s] = h.clone();
                g.deriv.sort();
                push(term.coeff.clone(), g, vt(&[], &[&h], &[d]));
            }
        }
    }
    Ok(out)
}

/// Expansion of one connection-type object (without its derivative
/// indices), with fresh dummies drawn against `used`.
fn expand_one(ctx: &IndexContext, f: &Tensor, used: &BTreeSet<String>) -> Option<IndexExpr> {
    let cov = f.covariant_indices();
    let con = f.contravariant_indices();
    let g = ctx.metric_name();
    let l = fresh(used);
    let raise = |inner: &str, a: &str, b: &str, c: &str| {
        lin(vec![(Expr::one(), vec![t(g, &[], &[c, &l]), t(inner, &[a, b, &l], &[])])])
    };
    let e = match (f.name.as_str(), cov.len(), con.len()) {
        ("ichr1", 3, 0) => ichr1(ctx, &cov[0], &cov[1], &cov[2]),
        ("ichr2", 2, 1) => raise("ichr1", &cov[0], &cov[1], &con[0]),
        ("ikt2", 2, 1) => raise("ikt1", &cov[0], &cov[1], &con[0]),
        ("inmc2", 2, 1) => raise("inmc1", &cov[0], &cov[1], &con[0]),
        ("icc2", 2, 1) => {
            let (a, b, c) = (cov[0].as_str(), cov[1].as_str(), con[0].as_str());
            let fl = ctx.flags;
            let mut parts = vec![(Expr::one(), vec![t(if fl.frame { "ifc2" } else { "ichr2" }, &[a, b], &[c])])];
            if fl.torsion && !fl.frame {
                parts.push((Expr::int(-1), vec![t("ikt2", &[a, b], &[c])]));
            }
            if fl.nonmetricity {
                parts.push((Expr::int(-1), vec![t("inmc2", &[a, b], &[c])]));
            }
            lin(parts)
        }
        ("ikt1", 3, 0) => {
            let (i, j, k) = (cov[0].as_str(), cov[1].as_str(), cov[2].as_str());
            let m = l.as_str();
            let tr = |a: &str, b: &str| t(TORSION, &[a, b], &[m]);
            let gl = |a: &str| t(g, &[a, m], &[]);
            lin(vec![
                (-half(), vec![tr(i, j), gl(k)]),
                (-half(), vec![tr(k, i), gl(j)]),
                (-half(), vec![tr(k, j), gl(i)]),
            ])
        }
        ("inmc1", 3, 0) => {
            let (i, j, k) = (cov[0].as_str(), cov[1].as_str(), cov[2].as_str());
            let gl = |a: &str, b: &str| t(g, &[a, b], &[]);
            let mu = |a: &str| t(NONMETRICITY, &[a], &[]);
            lin(vec![
                (-half(), vec![gl(i, k), mu(j)]),
                (-half(), vec![gl(j, k), mu(i)]),
                (half(), vec![gl(i, j), mu(k)]),
            ])
        }
        _ => return None,
    };
    Some(e)
}

/// Rewrite connection coefficients, contortion and nonmetricity objects
/// down to the metric, its derivatives, the torsion tensor `itr` and the
/// nonmetricity vector `inm`, then contract.
pub fn expand_connections(ctx: &IndexContext, e: &IndexExpr) -> Result<IndexExpr, IndexError> {
    let mut todo: Vec<Term> = e.terms.clone();
    let mut done = IndexExpr::zero();
    while let Some(term) = todo.pop() {
        let used = term.labels();
        let hit = term.factors.iter().enumerate().find_map(|(n, f)| {
            let bare = Tensor { deriv: vec![], ..f.clone() };
            expand_one(ctx, &bare, &used).map(|x| (n, x))
        });
        let Some((n, mut x)) = hit else {
            done.terms.push(term);
            continue;
        };
        for d in &term.factors[n].deriv {
            x = idiff(&x, d);
        }
        let mut rest = term.clone();
        rest.factors.remove(n);
        for s in x.terms {
            let mut f = rest.factors.clone();
            f.extend(s.factors);
            todo.push(Term::new(rest.coeff.clone() * s.coeff, f));
        }
    }
    contract(ctx, &done)
}
