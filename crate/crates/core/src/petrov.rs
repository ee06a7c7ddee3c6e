//! Newman-Penrose tetrads, Weyl scalars and the Petrov decision tree.

use std::fmt;

use thiserror::Error;

use crate::component::{Components, ComponentError, MetricContext};
use crate::symkernel::{ratsimp, zero_test, Expr, Func, RatCtx, RatFun, ZeroTest};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PetrovType {
    I,
    II,
    III,
    D,
    N,
    /// Conformally flat; printed as "O".
    O,
}

impl fmt::Display for PetrovType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PetrovType::I => "I",
            PetrovType::II => "II",
            PetrovType::III => "III",
            PetrovType::D => "D",
            PetrovType::N => "N",
            PetrovType::O => "O",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PetrovError {
    #[error("Petrov classification needs dimension 4, got {0}")]
    Dimension(usize),
    #[error("frame metric is not a diagonal Lorentzian metric with entries +-1")]
    NotLorentzian,
    #[error("tetrad is not normalized: {0}")]
    NotOrthonormal(String),
    #[error("cannot decide whether {0} vanishes")]
    Unclassifiable(Expr),
    #[error(transparent)]
    Component(#[from] ComponentError),
}

type R<T> = Result<T, PetrovError>;

/// One cell of the decision table: a type, or the number of the branch
/// that settles it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableEntry {
    Type(PetrovType),
    Branch(u8),
}

use PetrovType as P;
use TableEntry::{Branch as B, Type as T};

/// Indexed by `pattern(psi) - 1`.
pub const TABLE: [TableEntry; 32] = [
    T(P::O), T(P::N), T(P::II), T(P::III), T(P::D), T(P::II), T(P::II), B(7),
    T(P::II), T(P::I), T(P::I), B(11), T(P::II), B(13), B(14), B(15),
    T(P::N), T(P::I), T(P::I), B(19), T(P::II), B(21), B(13), B(23),
    T(P::III), B(19), B(11), B(27), B(7), B(23), B(15), B(31),
];

/// Null tetrad with vectors in both index positions. Inner products are
/// taken with `sign * g`, so that k.l = 1 and m.mbar = -1 whichever
/// overall sign the metric carries.
#[derive(Debug, Clone)]
pub struct NpTetrad {
    pub sign: i64,
    pub k: Vec<Expr>,
    pub l: Vec<Expr>,
    pub m: Vec<Expr>,
    pub mbar: Vec<Expr>,
    pub k_low: Vec<Expr>,
    pub l_low: Vec<Expr>,
    pub m_low: Vec<Expr>,
    pub mbar_low: Vec<Expr>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeylScalars {
    pub psi: [Expr; 5],
}

impl WeylScalars {
    pub fn new(psi: [Expr; 5]) -> WeylScalars {
        WeylScalars { psi }
    }

    pub fn zero() -> WeylScalars {
        WeylScalars::new(std::array::from_fn(|_| Expr::zero()))
    }

    pub fn scale(&self, c: &Expr) -> WeylScalars {
        WeylScalars::new(std::array::from_fn(|i| ratsimp(&(c.clone() * self.psi[i].clone()))))
    }
}

struct Vecs {
    up: [Vec<RatFun>; 4],
    low: [Vec<RatFun>; 4],
    sign: i64,
}

// k, l, m, mbar in that order
fn tetrad_rat(ctx: &MetricContext) -> R<Vecs> {
    let n = ctx.dim();
    if n != 4 {
        return Err(PetrovError::Dimension(n));
    }
    let eta = ctx.lfg()?;
    let mut diag = [0i64; 4];
    for (ix, v) in eta.iter() {
        if ix[0] == ix[1] {
            diag[ix[0]] = match v {
                v if *v == Expr::one() => 1,
                v if *v == Expr::int(-1) => -1,
                _ => return Err(PetrovError::NotLorentzian),
            };
        } else if !v.is_zero() {
            return Err(PetrovError::NotLorentzian);
        }
    }
    let plus = diag.iter().filter(|&&s| s == 1).count();
    let (t, sign) = match plus {
        1 => (diag.iter().position(|&s| s == 1).unwrap(), 1),
        3 => (diag.iter().position(|&s| s == -1).unwrap(), -1),
        _ => return Err(PetrovError::NotLorentzian),
    };
    let order: Vec<usize> = std::iter::once(t).chain((0..4).filter(|&a| a != t)).collect();
    let rc = ctx.ratctx();
    let ufr = ctx.ufr()?;
    let conv = |e: &Expr| rc.from_expr(e).map_err(|x| PetrovError::Component(x.into()));
    let e: Vec<Vec<RatFun>> = order
        .iter()
        .map(|&a| (0..4).map(|i| conv(ufr.get(&[a, i]))).collect::<R<Vec<_>>>())
        .collect::<R<_>>()?;
    let h = conv(&(Expr::apply(Func::Sqrt, Expr::int(2)) / Expr::int(2)))?;
    let i = conv(&Expr::i())?;
    let comb = |x: &[RatFun], y: &[RatFun], c: &RatFun| -> Vec<RatFun> {
        (0..4).map(|j| rc.mul(&h, &rc.add(&x[j], &rc.mul(c, &y[j])))).collect()
    };
    let one = RatFun::one();
    let k = comb(&e[0], &e[1], &one);
    let l = comb(&e[0], &e[1], &one.neg());
    let mbar = comb(&e[2], &e[3], &i);
    let m = comb(&e[2], &e[3], &i.neg());
    let g = ctx.lg();
    let gs: Vec<Vec<RatFun>> = (0..4)
        .map(|a| (0..4).map(|b| conv(&(Expr::int(sign) * g.get(&[a, b]).clone()))).collect::<R<Vec<_>>>())
        .collect::<R<_>>()?;
    let lower = |v: &[RatFun]| -> Vec<RatFun> {
        (0..4)
            .map(|a| (0..4).fold(RatFun::zero(), |acc, b| rc.add(&acc, &rc.mul(&gs[a][b], &v[b]))))
            .collect()
    };
    let up = [k, l, m, mbar];
    let low = [lower(&up[0]), lower(&up[1]), lower(&up[2]), lower(&up[3])];
    let names = ["k", "l", "m", "mbar"];
    for a in 0..4 {
        for b in a..4 {
            let want = match (a, b) {
                (0, 1) => RatFun::one(),
                (2, 3) => RatFun::int(-1),
                _ => RatFun::zero(),
            };
            let d = (0..4).fold(want.neg(), |acc, j| rc.add(&acc, &rc.mul(&low[a][j], &up[b][j])));
            if !rc.is_zero(&d) {
                return Err(PetrovError::NotOrthonormal(format!("{}.{} - ({}) = {}", names[a], names[b], rc.to_expr(&want), rc.to_expr(&d))));
            }
        }
    }
    Ok(Vecs { up, low, sign })
}

/// Null tetrad of a four-dimensional context with an orthonormal
/// Lorentzian frame. The timelike frame vector plays the role of e_1; the
/// spacelike ones follow in their frame order.
pub fn np_tetrad(ctx: &MetricContext) -> R<NpTetrad> {
    let v = tetrad_rat(ctx)?;
    let rc = ctx.ratctx();
    let ex = |x: &[RatFun]| x.iter().map(|r| rc.to_expr(r)).collect::<Vec<_>>();
    Ok(NpTetrad {
        sign: v.sign,
        k: ex(&v.up[0]),
        l: ex(&v.up[1]),
        m: ex(&v.up[2]),
        mbar: ex(&v.up[3]),
        k_low: ex(&v.low[0]),
        l_low: ex(&v.low[1]),
        m_low: ex(&v.low[2]),
        mbar_low: ex(&v.low[3]),
    })
}

// psi_n = C(a,b,c,d) A^a B^b C^c D^d with C(a,b,c,d) = w[b][d][c][a]
const SLOTS: [[usize; 4]; 5] = [[0, 2, 0, 2], [0, 1, 0, 2], [0, 2, 3, 1], [0, 1, 3, 1], [3, 1, 3, 1]];

fn contract(rc: &RatCtx, w: &[(Vec<usize>, RatFun)], up: &[Vec<RatFun>; 4], sign: i64) -> [RatFun; 5] {
    std::array::from_fn(|n| {
        let [a, b, c, d] = SLOTS[n];
        let mut acc = RatFun::zero();
        for (ix, x) in w {
            let (h, l, k, j) = (ix[0], ix[1], ix[2], ix[3]);
            let f = [&up[a][j], &up[b][h], &up[c][k], &up[d][l]];
            if f.iter().any(|v| v.is_zero()) {
                continue;
            }
            let t = f.iter().fold(x.clone(), |p, v| rc.mul(&p, v));
            acc = rc.add(&acc, &t);
        }
        if sign < 0 {
            acc.neg()
        } else {
            acc
        }
    })
}

/// Weyl scalars from Weyl components stored like `MetricContext::weyl`.
/// The tetrad's sign is applied to the all-covariant tensor, so the
/// scalars belong to the metric `sign * g`.
pub fn weyl_scalars(w: &Components, t: &NpTetrad) -> R<WeylScalars> {
    if w.dim() != 4 || w.rank() != 4 {
        return Err(PetrovError::Dimension(w.dim()));
    }
    let rc = RatCtx::trig();
    let conv = |e: &Expr| rc.from_expr(e).map_err(|x| PetrovError::Component(x.into()));
    let wr = w.nonzero().map(|(ix, e)| Ok((ix, conv(e)?))).collect::<R<Vec<_>>>()?;
    let vec = |v: &[Expr]| v.iter().map(conv).collect::<R<Vec<_>>>();
    let up = [vec(&t.k)?, vec(&t.l)?, vec(&t.m)?, vec(&t.mbar)?];
    let psi = contract(&rc, &wr, &up, t.sign);
    Ok(WeylScalars::new(std::array::from_fn(|n| rc.to_expr(&psi[n]))))
}

/// Tetrad and Weyl scalars of a context in one pass, without leaving the
/// context's arithmetic.
pub fn weyl_scalars_of(ctx: &MetricContext) -> R<WeylScalars> {
    let v = tetrad_rat(ctx)?;
    let w = ctx.weyl()?;
    let rc = ctx.ratctx();
    let wr = w
        .nonzero()
        .map(|(ix, e)| rc.from_expr(e).map(|r| (ix, r)).map_err(|x| PetrovError::Component(x.into())))
        .collect::<R<Vec<_>>>()?;
    let psi = contract(rc, &wr, &v.up, v.sign);
    Ok(WeylScalars::new(std::array::from_fn(|n| rc.to_expr(&psi[n]))))
}

/// I = psi0 psi4 - 4 psi1 psi3 + 3 psi2^2.
pub fn invariant_i(s: &WeylScalars) -> Expr {
    let p = |i: usize| s.psi[i].clone();
    ratsimp(&(p(0) * p(4) - Expr::int(4) * p(1) * p(3) + Expr::int(3) * Expr::pow(p(2), 2)))
}

/// J, the determinant of the Hankel matrix of the psi.
pub fn invariant_j(s: &WeylScalars) -> Expr {
    let p = |i: usize| s.psi[i].clone();
    let det = p(0) * (p(2) * p(4) - Expr::pow(p(3), 2)) - p(1) * (p(1) * p(4) - p(3) * p(2))
        + p(2) * (p(1) * p(3) - Expr::pow(p(2), 2));
    ratsimp(&det)
}

fn zero(e: &Expr) -> R<bool> {
    match zero_test(e) {
        ZeroTest::Zero => Ok(true),
        ZeroTest::NonZero => Ok(false),
        ZeroTest::Unknown => Err(PetrovError::Unclassifiable(ratsimp(e))),
    }
}

/// 1 + 1*(psi4 != 0) + 2*(psi3 != 0) + 4*(psi2 != 0) + 8*(psi1 != 0) + 16*(psi0 != 0).
pub fn pattern(s: &WeylScalars) -> R<usize> {
    let mut p = 1;
    for (n, w) in [(4, 1), (3, 2), (2, 4), (1, 8), (0, 16)] {
        if !zero(&s.psi[n])? {
            p += w;
        }
    }
    Ok(p)
}

pub fn classify(s: &WeylScalars) -> R<PetrovType> {
    let p = |i: usize| s.psi[i].clone();
    let c = Expr::int;
    let sq = |e: Expr| Expr::pow(e, 2);
    let pick = |cond: bool, yes: PetrovType, no: PetrovType| if cond { yes } else { no };
    let branch = match TABLE[pattern(s)? - 1] {
        T(t) => return Ok(t),
        B(b) => b,
    };
    Ok(match branch {
        7 => pick(zero(&(sq(p(3)) - c(3) * p(2) * p(4)))?, P::D, P::II),
        11 => pick(zero(&(c(27) * sq(p(4)) * p(1) + c(64) * Expr::pow(p(3), 3)))?, P::II, P::I),
        13 => pick(zero(&(sq(p(1)) * p(4) + c(2) * Expr::pow(p(2), 3)))?, P::II, P::I),
        14 => pick(zero(&(c(9) * sq(p(2)) - c(16) * p(1) * p(3)))?, P::II, P::I),
        15 => pick(
            zero(&(c(3) * sq(p(2)) - c(4) * p(1) * p(3)))? && zero(&(p(2) * p(3) - c(3) * p(1) * p(4)))?,
            P::II,
            P::I,
        ),
        19 => pick(zero(&(p(0) * Expr::pow(p(4), 3) - c(27) * Expr::pow(p(3), 4)))?, P::II, P::I),
        // read as a zero test, like every sibling branch
        21 => pick(zero(&(c(9) * sq(p(2)) - sq(p(4))))?, P::D, P::I),
        23 => {
            let i = ratsimp(&(p(0) * p(4) + c(3) * sq(p(2))));
            if zero(&i)? && zero(&(c(4) * p(2) * p(4) - c(3) * sq(p(3))))? {
                P::III
            } else {
                let j = ratsimp(&(c(4) * p(2) * p(4) - c(3) * sq(p(3))));
                let e = p(4) * sq(i.clone()) - c(3) * j.clone() * (p(0) * j - c(2) * p(2) * i);
                pick(zero(&e)?, P::II, P::I)
            }
        }
        27 => {
            if zero(&(p(0) * sq(p(3)) - sq(p(1)) * p(4)))? {
                if zero(&(p(0) * p(4) + c(2) * p(1) * p(3)))? {
                    P::D
                } else {
                    pick(zero(&(p(0) * p(4) - c(16) * p(1) * p(3)))?, P::II, P::I)
                }
            } else {
                let i = ratsimp(&(p(0) * p(4) + c(2) * p(1) * p(3)));
                if zero(&i)? {
                    let j = ratsimp(&(-p(0) * sq(p(3)) - sq(p(1)) * p(4)));
                    if zero(&j)? {
                        P::III
                    } else {
                        pick(zero(&(Expr::pow(i, 3) - c(27) * sq(j)))?, P::II, P::I)
                    }
                } else {
                    P::I
                }
            }
        }
        _ => {
            let h = ratsimp(&(p(0) * p(2) - sq(p(1))));
            if zero(&h)? {
                if zero(&(p(0) * p(3) - p(1) * p(2)))? {
                    pick(zero(&(p(0) * p(4) - sq(p(2))))?, P::N, P::I)
                } else {
                    let e = ratsimp(&(p(0) * p(4) - sq(p(2))));
                    if zero(&e)? {
                        pick(zero(&(c(37) * sq(p(2)) + c(27) * p(1) * p(3)))?, P::II, P::I)
                    } else {
                        let a = ratsimp(&(p(1) * p(3) + sq(p(2))));
                        let i = ratsimp(&(e - c(4) * a.clone()));
                        let inner = p(4) * h - sq(p(3)) * p(0) + p(1) * p(2) * p(3) + p(2) * a;
                        let cond = !zero(&i)? && zero(&(Expr::pow(i, 3) - c(27) * sq(inner)))?;
                        pick(cond, P::II, P::I)
                    }
                }
            } else {
                let i = ratsimp(&(p(0) * p(4) - sq(p(2)) - c(4) * (p(1) * p(3) + sq(p(2)))));
                let jexpr =
                    p(4) * h.clone() - sq(p(3)) * p(0) + p(1) * p(2) * p(3) + p(2) * (p(1) * p(3) + sq(p(2)));
                if zero(&i)? {
                    pick(zero(&jexpr)?, P::III, P::I)
                } else if zero(&(sq(p(0)) * p(3) - p(0) * p(1) * p(2) - c(2) * p(1) * h.clone()))? {
                    if zero(&(sq(p(0)) * i.clone() - c(12) * sq(h.clone())))? {
                        P::D
                    } else {
                        pick(zero(&(sq(p(0)) * i - c(3) * sq(h)))?, P::II, P::I)
                    }
                } else {
                    let j = ratsimp(&jexpr);
                    let cond = !zero(&j)? && zero(&(Expr::pow(i, 3) - c(27) * sq(j)))?;
                    pick(cond, P::II, P::I)
                }
            }
        }
    })
}

/// Weyl tensor, tetrad, scalars and decision tree in sequence.
pub fn petrov_of_metric(ctx: &MetricContext) -> R<PetrovType> {
    classify(&weyl_scalars_of(ctx)?)
}
