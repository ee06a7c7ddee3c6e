use num_rational::BigRational;

use super::curvature::cached;
use super::{Array, ComponentError, Components, MetricContext};
use crate::symkernel::{Expr, RatFun};

type R<T> = Result<T, ComponentError>;

impl MetricContext {
    pub(crate) fn frame_bracket_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.frame_bracket, || {
            let fr = self.frame()?;
            let n = self.dim();
            let ctx = &self.ctx;
            let tau = if self.flags.torsion {
                Some(self.torsion.as_ref().ok_or(ComponentError::MissingTorsion)?)
            } else {
                None
            };
            // e_(a)i = eta_ab e^(b)_i
            let elow: Vec<Vec<RatFun>> = (0..n)
                .map(|a| (0..n).map(|i| self.dot((0..n).map(|b| (fr.lfg[a][b].clone(), fr.fri[b][i].clone())))).collect())
                .collect();
            let d = |a: usize, i: usize, k: usize| -> RatFun {
                let v = self.coord(k);
                if elow[a][i].depends_on(v) {
                    ctx.diff(&elow[a][i], v)
                } else {
                    RatFun::zero()
                }
            };
            // f[a][i][k] = e_(a)i,k - e_(a)k,i - tau_ik^m e_(a)m
            let f = Array::from_fn(n, 3, |ix| {
                let (a, i, k) = (ix[0], ix[1], ix[2]);
                if i == k {
                    return RatFun::zero();
                }
                let mut s = ctx.sub(&d(a, i, k), &d(a, k, i));
                if let Some(t) = tau {
                    let tt = self.dot((0..n).map(|m| (t.get(&[i, k, m]).clone(), elow[a][m].clone())));
                    s = ctx.sub(&s, &tt);
                }
                s
            });
            let u = &fr.ufr;
            Ok(Array::from_fn(n, 3, |ix| {
                let (a, b, c) = (ix[0], ix[1], ix[2]);
                if b == c {
                    return RatFun::zero();
                }
                let mut acc = RatFun::zero();
                for i in 0..n {
                    if u[i][b].is_zero() {
                        continue;
                    }
                    let inner = self.dot((0..n).map(|k| (f.get(&[a, i, k]).clone(), u[k][c].clone())));
                    if !inner.is_zero() {
                        acc = ctx.add(&acc, &ctx.mul(&inner, &u[i][b]));
                    }
                }
                acc
            }))
        })
    }

    /// Frame bracket lambda_abc, antisymmetric in b and c.
    pub fn frame_bracket(&self) -> R<Components> {
        Ok(self.export(self.frame_bracket_rat()?))
    }

    pub(crate) fn rotation_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.rotation, || {
            let lam = self.frame_bracket_rat()?;
            let ctx = &self.ctx;
            let h = BigRational::new(1.into(), 2.into());
            Ok(Array::from_fn(self.dim(), 3, |ix| {
                let (a, b, c) = (ix[0], ix[1], ix[2]);
                let s = ctx.sub(&ctx.add(lam.get(&[a, b, c]), lam.get(&[b, c, a])), lam.get(&[c, a, b]));
                ctx.scale(&s, &h)
            }))
        })
    }

    /// Ricci rotation coefficients gamma_abc, antisymmetric in a and b.
    pub fn rotation_coeffs(&self) -> R<Components> {
        Ok(self.export(self.rotation_rat()?))
    }

    pub(crate) fn frame_connection_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.frame_connection, || {
            let g = self.rotation_rat()?;
            if !self.flags.nonmetricity {
                return Ok(g.clone());
            }
            let fr = self.frame()?;
            let mu = self.mu.as_ref().ok_or(ComponentError::MissingNonmetricity)?;
            let n = self.dim();
            let mu_f: Vec<RatFun> =
                (0..n).map(|a| self.dot((0..n).map(|i| (fr.ufr[i][a].clone(), mu[i].clone())))).collect();
            let nu = self.nu_with(&fr.lfg, &mu_f);
            Ok(Array::from_fn(n, 3, |ix| self.ctx.sub(g.get(ix), nu.get(ix))))
        })
    }

    pub(crate) fn riemann_frame_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.riemann_frame, || {
            let n = self.dim();
            let fr = self.frame()?;
            let ctx = &self.ctx;
            let c = self.frame_connection_rat()?;
            // the rotation coefficients enter with their derivative slot
            // first: w(x,y,z) = c_yzx
            let w = |x: usize, y: usize, z: usize| c.get(&[y, z, x]);
            let partial: Vec<Array<RatFun>> = (0..n)
                .map(|i| {
                    let v = self.coord(i);
                    c.map(|e| if e.depends_on(v) { ctx.diff(e, v) } else { RatFun::zero() })
                })
                .collect();
            // dw[a] = e_(a)^i d_i w
            let dw: Vec<Array<RatFun>> = (0..n)
                .map(|a| {
                    Array::from_fn(n, 3, |ix| {
                        self.dot((0..n).map(|i| (fr.ufr[i][a].clone(), partial[i].get(&[ix[1], ix[2], ix[0]]).clone())))
                    })
                })
                .collect();
            let eta = &fr.ufg;
            let mut out = Array::from_fn(n, 4, |_| RatFun::zero());
            for d in 0..n {
                for a in 0..n {
                    for b in 0..n {
                        if b < a {
                            for cc in 0..n {
                                let v = out.get(&[d, b, a, cc]).neg();
                                out.set(&[d, a, b, cc], v);
                            }
                            continue;
                        }
                        if a == b {
                            continue;
                        }
                        for cc in 0..n {
                            let mut s = ctx.sub(dw[a].get(&[b, cc, d]), dw[b].get(&[a, cc, d]));
                            for e in 0..n {
                                for f in 0..n {
                                    if eta[e][f].is_zero() {
                                        continue;
                                    }
                                    let q = self.dot([
                                        (w(a, f, cc).clone(), w(b, e, d).clone()),
                                        (w(b, f, cc).neg(), w(a, e, d).clone()),
                                        (w(a, f, b).clone(), w(e, cc, d).clone()),
                                        (w(b, f, a).neg(), w(e, cc, d).clone()),
                                    ]);
                                    if !q.is_zero() {
                                        s = ctx.add(&s, &ctx.mul(&eta[e][f], &q));
                                    }
                                }
                            }
                            out.set(&[d, a, b, cc], s);
                        }
                    }
                }
            }
            Ok(out)
        })
    }

    /// Frame Riemann tensor R_dabc, antisymmetric in a and b. In terms of
    /// the usual all-lower frame components it is R_dabc = Rstd_{d c a b}.
    pub fn riemann_frame(&self) -> R<Components> {
        Ok(self.export(self.riemann_frame_rat()?))
    }

    pub(crate) fn ricci_frame_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.ricci_frame, || {
            let n = self.dim();
            let rf = self.riemann_frame_rat()?;
            let eta = &self.frame()?.ufg;
            Ok(Array::from_fn(n, 2, |ix| {
                self.dot((0..n).flat_map(|c| {
                    (0..n).map(move |d| (eta[c][d].clone(), rf.get(&[c, d, ix[1], ix[0]]).clone()))
                }))
            }))
        })
    }

    /// Frame components of the Ricci tensor.
    pub fn ricci_frame(&self) -> R<Components> {
        Ok(self.export(self.ricci_frame_rat()?))
    }

    pub fn scalar_frame(&self) -> R<Expr> {
        let n = self.dim();
        let ric = self.ricci_frame_rat()?;
        let eta = &self.frame()?.ufg;
        let s = self.dot((0..n).flat_map(|a| (0..n).map(move |b| (eta[a][b].clone(), ric.get(&[a, b]).clone()))));
        Ok(self.ctx.to_expr(&s))
    }
}
