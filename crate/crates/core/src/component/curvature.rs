use std::cell::OnceCell;

use num_rational::BigRational;

use super::{Array, ComponentError, Components, MetricContext};
use crate::symkernel::{Expr, RatFun};

type R<T> = Result<T, ComponentError>;

pub(crate) fn cached<'a, T>(cell: &'a OnceCell<T>, f: impl FnOnce() -> R<T>) -> R<&'a T> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

impl MetricContext {
    // ---- Christoffel symbols ----

    pub(crate) fn christoffel1_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.christoffel1, || {
            let n = self.dim();
            let ctx = &self.ctx;
            let g = self.rat_lg();
            // dg[c][i][j] = d g_ij / d x^c; zero entries are skipped outright,
            // which is the whole of the diagonal fast path
            let dg: Vec<Vec<Vec<RatFun>>> = (0..n)
                .map(|c| {
                    (0..n)
                        .map(|i| {
                            (0..n)
                                .map(|j| {
                                    if g[i][j].is_zero() || !g[i][j].depends_on(self.coord(c)) {
                                        RatFun::zero()
                                    } else {
                                        ctx.diff(&g[i][j], self.coord(c))
                                    }
                                })
                                .collect()
                        })
                        .collect()
                })
                .collect();
            let h2 = half();
            Ok(Array::from_fn(n, 3, |ix| {
                let (h, k, l) = (ix[0], ix[1], ix[2]);
                let s = ctx.sub(&ctx.add(&dg[h][k][l], &dg[k][l][h]), &dg[l][h][k]);
                ctx.scale(&s, &h2)
            }))
        })
    }

    pub(crate) fn christoffel2_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.christoffel2, || {
            let c1 = self.christoffel1_rat()?;
            Ok(self.raise_last(c1))
        })
    }

    // c_ab^j = g^jl c_abl
    fn raise_last(&self, c: &Array<RatFun>) -> Array<RatFun> {
        let n = self.dim();
        let ug = self.rat_ug();
        Array::from_fn(n, 3, |ix| {
            self.dot((0..n).map(|l| (ug[ix[2]][l].clone(), c.get(&[ix[0], ix[1], l]).clone())))
        })
    }

    /// First kind, Gamma_hkl indexed [h][k][l].
    pub fn christoffel1(&self) -> R<Components> {
        Ok(self.export(self.christoffel1_rat()?))
    }

    /// Second kind, Gamma_hk^j indexed [h][k][j].
    pub fn christoffel2(&self) -> R<Components> {
        Ok(self.export(self.christoffel2_rat()?))
    }

    // ---- torsion and nonmetricity ----

    pub(crate) fn contortion_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.contortion, || {
            let tau = self.torsion.as_ref().ok_or(ComponentError::MissingTorsion)?;
            let n = self.dim();
            let g = self.rat_lg();
            let ctx = &self.ctx;
            let mh = -half();
            Ok(Array::from_fn(n, 3, |ix| {
                let (i, j, k) = (ix[0], ix[1], ix[2]);
                let s = self.dot((0..n).flat_map(|m| {
                    [
                        (tau.get(&[i, j, m]).clone(), g[k][m].clone()),
                        (tau.get(&[k, i, m]).clone(), g[j][m].clone()),
                        (tau.get(&[k, j, m]).clone(), g[i][m].clone()),
                    ]
                }));
                ctx.scale(&s, &mh)
            }))
        })
    }

    /// kappa_ijk = -1/2 (tau_ij^m g_km + tau_ki^m g_jm + tau_kj^m g_im).
    pub fn contortion(&self) -> R<Components> {
        Ok(self.export(self.contortion_rat()?))
    }

    // nu built from a metric and a covector; shared with frame mode
    pub(crate) fn nu_with(&self, g: &[Vec<RatFun>], mu: &[RatFun]) -> Array<RatFun> {
        let ctx = &self.ctx;
        let h2 = half();
        Array::from_fn(self.dim(), 3, |ix| {
            let (i, j, k) = (ix[0], ix[1], ix[2]);
            let s = ctx.sub(
                &ctx.mul(&g[i][j], &mu[k]),
                &ctx.add(&ctx.mul(&g[i][k], &mu[j]), &ctx.mul(&g[j][k], &mu[i])),
            );
            ctx.scale(&s, &h2)
        })
    }

    pub(crate) fn nonmetricity_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.nonmetricity, || {
            let mu = self.mu.as_ref().ok_or(ComponentError::MissingNonmetricity)?;
            Ok(self.nu_with(self.rat_lg(), mu))
        })
    }

    /// nu_ijk = 1/2 (-g_ik mu_j - g_jk mu_i + g_ij mu_k).
    pub fn nonmetricity_coeffs(&self) -> R<Components> {
        Ok(self.export(self.nonmetricity_rat()?))
    }

    /// Connection coefficients c_abc: Gamma - kappa - nu in coordinate
    /// mode, gamma - nu in frame mode. Terms whose flag is off are omitted.
    pub fn connection(&self) -> R<Components> {
        if self.flags.frame {
            return Ok(self.export(self.frame_connection_rat()?));
        }
        Ok(self.export(&self.coord_connection1()?))
    }

    fn coord_connection1(&self) -> R<Array<RatFun>> {
        let mut c = self.christoffel1_rat()?.clone();
        if self.flags.torsion {
            let k = self.contortion_rat()?;
            c = Array::from_fn(self.dim(), 3, |ix| self.ctx.sub(c.get(ix), k.get(ix)));
        }
        if self.flags.nonmetricity {
            let v = self.nonmetricity_rat()?;
            c = Array::from_fn(self.dim(), 3, |ix| self.ctx.sub(c.get(ix), v.get(ix)));
        }
        Ok(c)
    }

    // c_hk^j used by the coordinate Riemann tensor
    pub(crate) fn connection2_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.connection2, || {
            if !self.flags.torsion && !self.flags.nonmetricity {
                return Ok(self.christoffel2_rat()?.clone());
            }
            Ok(self.raise_last(&self.coord_connection1()?))
        })
    }

    fn dconnection(&self) -> R<&Vec<Array<RatFun>>> {
        cached(&self.memo.dconnection, || {
            let c = self.connection2_rat()?;
            Ok((0..self.dim())
                .map(|x| {
                    let v = self.coord(x);
                    c.map(|e| if e.depends_on(v) { self.ctx.diff(e, v) } else { RatFun::zero() })
                })
                .collect())
        })
    }

    // ---- curvature ----

    pub(crate) fn riemann_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.riemann, || {
            let n = self.dim();
            let c = self.connection2_rat()?;
            let dc = self.dconnection()?;
            let ctx = &self.ctx;
            let mut out = Array::from_fn(n, 4, |_| RatFun::zero());
            for h in 0..n {
                for l in 0..n {
                    for k in 0..n {
                        // the formula is antisymmetric in l and k
                        if k < l {
                            for j in 0..n {
                                let v = out.get(&[h, k, l, j]).neg();
                                out.set(&[h, l, k, j], v);
                            }
                            continue;
                        }
                        if k == l {
                            continue;
                        }
                        for j in 0..n {
                            let d = ctx.sub(dc[k].get(&[h, l, j]), dc[l].get(&[h, k, j]));
                            let q = self.dot((0..n).flat_map(|m| {
                                [
                                    (c.get(&[m, k, j]).clone(), c.get(&[h, l, m]).clone()),
                                    (c.get(&[m, l, j]).neg(), c.get(&[h, k, m]).clone()),
                                ]
                            }));
                            out.set(&[h, l, k, j], ctx.add(&d, &q));
                        }
                    }
                }
            }
            log::debug!("riemann done");
            Ok(out)
        })
    }

    /// R_hlk^j indexed [h][l][k][j].
    pub fn riemann(&self) -> R<Components> {
        Ok(self.export(self.riemann_rat()?))
    }

    pub(crate) fn riemann_lower_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.riemann_lower, || {
            let n = self.dim();
            let r = self.riemann_rat()?;
            let g = self.rat_lg();
            Ok(Array::from_fn(n, 4, |ix| {
                self.dot((0..n).map(|m| (r.get(&[ix[0], ix[1], ix[2], m]).clone(), g[m][ix[3]].clone())))
            }))
        })
    }

    /// All-covariant R_ijkl = R_ijk^m g_ml.
    pub fn riemann_lower(&self) -> R<Components> {
        Ok(self.export(self.riemann_lower_rat()?))
    }

    pub(crate) fn ricci_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.ricci, || {
            let n = self.dim();
            let r = self.riemann_rat()?;
            let ctx = &self.ctx;
            Ok(Array::from_fn(n, 2, |ix| {
                (0..n).fold(RatFun::zero(), |acc, k| ctx.add(&acc, r.get(&[ix[0], ix[1], k, k])))
            }))
        })
    }

    /// R_ij = R_ijk^k.
    pub fn ricci(&self) -> R<Components> {
        Ok(self.export(self.ricci_rat()?))
    }

    pub(crate) fn scalar_rat(&self) -> R<&RatFun> {
        cached(&self.memo.scalar, || {
            let n = self.dim();
            let ric = self.ricci_rat()?;
            let ug = self.rat_ug();
            Ok(self.dot((0..n).flat_map(|i| (0..n).map(move |j| (ug[i][j].clone(), ric.get(&[i, j]).clone())))))
        })
    }

    pub fn scalar(&self) -> R<Expr> {
        Ok(self.ctx.to_expr(self.scalar_rat()?))
    }

    /// G_ij = R_ij - R g_ij / 2.
    pub fn einstein(&self) -> R<Components> {
        let n = self.dim();
        let ric = self.ricci_rat()?;
        let rs = self.ctx.scale(self.scalar_rat()?, &half());
        let g = self.rat_lg();
        let a = Array::from_fn(n, 2, |ix| self.ctx.sub(ric.get(ix), &self.ctx.mul(&rs, &g[ix[0]][ix[1]])));
        Ok(self.export(&a))
    }

    pub(crate) fn weyl_rat(&self) -> R<&Array<RatFun>> {
        cached(&self.memo.weyl, || {
            let n = self.dim();
            if n < 3 {
                return Err(ComponentError::Dimension("weyl", 3));
            }
            if n == 3 {
                log::info!("the Weyl tensor vanishes identically in 3 dimensions");
                return Ok(Array::from_fn(n, 4, |_| RatFun::zero()));
            }
            let ctx = &self.ctx;
            let rl = self.riemann_lower_rat()?;
            let ric = self.ricci_rat()?;
            let rs = self.scalar_rat()?;
            let g = self.rat_lg();
            let nn = n as i64;
            // the antisymmetrization halves are folded into the coefficients
            let c1 = ctx.scale(rs, &BigRational::new(1.into(), ((nn - 1) * (nn - 2)).into()));
            let c2 = BigRational::new(1.into(), (nn - 2).into());
            Ok(Array::from_fn(n, 4, |ix| {
                let (i, j, k, l) = (ix[0], ix[1], ix[2], ix[3]);
                let gg = ctx.sub(&ctx.mul(&g[j][i], &g[l][k]), &ctx.mul(&g[j][l], &g[i][k]));
                let t1 = ctx.mul(&c1, &gg);
                let a = ctx.sub(&ctx.mul(&g[k][i], ric.get(&[l, j])), &ctx.mul(&g[k][l], ric.get(&[i, j])));
                let b = ctx.sub(&ctx.mul(&g[j][i], ric.get(&[l, k])), &ctx.mul(&g[j][l], ric.get(&[i, k])));
                let t2 = ctx.scale(&ctx.sub(&a, &b), &c2);
                ctx.add(rl.get(ix), &ctx.add(&t1, &t2))
            }))
        })
    }

    /// W_ijkl from R_ijkl, R_ij and R. Needs dimension 3 or more; in
    /// dimension 3 the result is identically zero.
    pub fn weyl(&self) -> R<Components> {
        Ok(self.export(self.weyl_rat()?))
    }
}
