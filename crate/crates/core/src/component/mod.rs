//! Component tensor calculus over a coordinate chart.
//!
//! A [`MetricContext`] holds the metric (or a frame base) and computes
//! Christoffel symbols, curvature tensors and frame quantities on demand.
//! Results are memoized; changing flags or inputs drops the memo.

mod array;
mod curvature;
mod frame;

use std::cell::OnceCell;
use std::collections::HashSet;

use thiserror::Error;

pub use array::{Array, Components};

use crate::symkernel::{Expr, RatCtx, RatFun, SymError};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum ComponentError {
    #[error("a chart needs at least 2 coordinates, got {0}")]
    TooFewCoordinates(usize),
    #[error("duplicate coordinate '{0}'")]
    DuplicateCoordinate(String),
    #[error("expected a {want}x{want} matrix, got {got}")]
    Shape { want: usize, got: String },
    #[error("metric is not symmetric at ({0},{1})")]
    Asymmetric(usize, usize),
    #[error("metric is singular")]
    SingularMetric,
    #[error("frame base is singular")]
    SingularFrame,
    #[error("frame metric is not symmetric or singular")]
    BadFrameMetric,
    #[error("no frame base was given")]
    MissingFrame,
    #[error("torsion flag is on but no torsion tensor was given")]
    MissingTorsion,
    #[error("nonmetricity flag is on but no nonmetricity vector was given")]
    MissingNonmetricity,
    #[error("torsion is not antisymmetric in its lower indices at ({0},{1},{2})")]
    TorsionNotAntisymmetric(usize, usize, usize),
    #[error("{0} needs dimension at least {1}")]
    Dimension(&'static str, usize),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Coordinates of a chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chart {
    coords: Vec<String>,
}

impl Chart {
    pub fn new<S: AsRef<str>>(coords: &[S]) -> Result<Chart, ComponentError> {
        if coords.len() < 2 {
            return Err(ComponentError::TooFewCoordinates(coords.len()));
        }
        let mut seen = HashSet::new();
        for c in coords {
            if !seen.insert(c.as_ref()) {
                return Err(ComponentError::DuplicateCoordinate(c.as_ref().to_string()));
            }
        }
        Ok(Chart { coords: coords.iter().map(|c| c.as_ref().to_string()).collect() })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }
}

/// Mode flags. The frame flag is `cframe_flag` in the old terminology.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Flags {
    pub frame: bool,
    pub torsion: bool,
    pub nonmetricity: bool,
}

pub(crate) type Mat = Vec<Vec<RatFun>>;

pub(crate) struct FrameData {
    /// e^(a)_i, rows are frame labels.
    fri: Mat,
    /// e_(a)^i stored as [i][a], the inverse of `fri`.
    ufr: Mat,
    lfg: Mat,
    ufg: Mat,
}

#[derive(Default)]
pub(crate) struct Memo {
    christoffel1: OnceCell<Array<RatFun>>,
    christoffel2: OnceCell<Array<RatFun>>,
    contortion: OnceCell<Array<RatFun>>,
    nonmetricity: OnceCell<Array<RatFun>>,
    connection2: OnceCell<Array<RatFun>>,
    dconnection: OnceCell<Vec<Array<RatFun>>>,
    riemann: OnceCell<Array<RatFun>>,
    riemann_lower: OnceCell<Array<RatFun>>,
    ricci: OnceCell<Array<RatFun>>,
    scalar: OnceCell<RatFun>,
    weyl: OnceCell<Array<RatFun>>,
    frame_bracket: OnceCell<Array<RatFun>>,
    rotation: OnceCell<Array<RatFun>>,
    frame_connection: OnceCell<Array<RatFun>>,
    riemann_frame: OnceCell<Array<RatFun>>,
    ricci_frame: OnceCell<Array<RatFun>>,
}

/// Metric, optional frame, torsion and nonmetricity of a chart, with
/// lazily computed curvature.
///
/// The context owns a caching arithmetic context, so it is single-owner
/// and not `Sync`; build one per thread.
pub struct MetricContext {
    chart: Chart,
    ctx: RatCtx,
    lg: Mat,
    ug: Mat,
    diagonal: bool,
    flags: Flags,
    frame: Option<FrameData>,
    torsion: Option<Array<RatFun>>,
    mu: Option<Vec<RatFun>>,
    memo: Memo,
}

fn check_square<T>(m: &[Vec<T>], n: usize) -> Result<(), ComponentError> {
    if m.len() != n || m.iter().any(|r| r.len() != n) {
        let got = format!("{}x{}", m.len(), m.iter().map(|r| r.len()).max().unwrap_or(0));
        return Err(ComponentError::Shape { want: n, got });
    }
    Ok(())
}

/// Build a context from the covariant metric components.
pub fn setup_metric(chart: Chart, lg: &[Vec<Expr>]) -> Result<MetricContext, ComponentError> {
    MetricContext::from_metric(chart, lg)
}

/// Build a context from covariant frame components `fri` (rows are frame
/// labels) and the frame metric `lfg`. The frame flag is switched on.
pub fn setup_frame(chart: Chart, fri: &[Vec<Expr>], lfg: &[Vec<Expr>]) -> Result<MetricContext, ComponentError> {
    MetricContext::from_frame(chart, fri, lfg)
}

impl MetricContext {
    pub fn from_metric(chart: Chart, lg: &[Vec<Expr>]) -> Result<MetricContext, ComponentError> {
        let n = chart.dim();
        check_square(lg, n)?;
        let ctx = RatCtx::trig();
        let g = to_mat(&ctx, lg)?;
        Self::build(chart, ctx, g, None)
    }

    pub fn from_frame(chart: Chart, fri: &[Vec<Expr>], lfg: &[Vec<Expr>]) -> Result<MetricContext, ComponentError> {
        let n = chart.dim();
        check_square(fri, n)?;
        check_square(lfg, n)?;
        let ctx = RatCtx::trig();
        let e = to_mat(&ctx, fri)?;
        let eta = to_mat(&ctx, lfg)?;
        for (a, row) in eta.iter().enumerate() {
            for b in 0..a {
                if !ctx.sub(&row[b], &eta[b][a]).is_zero() {
                    return Err(ComponentError::BadFrameMetric);
                }
            }
        }
        let ufg = invert(&ctx, &eta).ok_or(ComponentError::BadFrameMetric)?;
        // g_ij = eta_ab e^(a)_i e^(b)_j
        let mut g = vec![vec![RatFun::zero(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut acc = RatFun::zero();
                for a in 0..n {
                    if e[a][i].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        if eta[a][b].is_zero() || e[b][j].is_zero() {
                            continue;
                        }
                        let t = ctx.mul(&ctx.mul(&eta[a][b], &e[a][i]), &e[b][j]);
                        acc = ctx.add(&acc, &t);
                    }
                }
                g[i][j] = acc.clone();
                g[j][i] = acc;
            }
        }
        // det g = det eta (det e)^2, so a regular metric means a regular frame
        let mut m = match Self::build(chart, ctx, g, None) {
            Err(ComponentError::SingularMetric) => return Err(ComponentError::SingularFrame),
            other => other?,
        };
        // e_(a)^i = g^ij eta_ab e^(b)_j, stored [i][a]
        let elow: Mat = (0..n)
            .map(|a| (0..n).map(|j| m.dot((0..n).map(|b| (eta[a][b].clone(), e[b][j].clone())))).collect())
            .collect();
        let ufr: Mat = (0..n)
            .map(|i| (0..n).map(|a| m.dot((0..n).map(|j| (m.ug[i][j].clone(), elow[a][j].clone())))).collect())
            .collect();
        m.frame = Some(FrameData { fri: e, ufr, lfg: eta, ufg });
        m.flags.frame = true;
        Ok(m)
    }

    fn build(chart: Chart, ctx: RatCtx, g: Mat, frame: Option<FrameData>) -> Result<MetricContext, ComponentError> {
        let n = chart.dim();
        for i in 0..n {
            for j in 0..i {
                if !ctx.sub(&g[i][j], &g[j][i]).is_zero() {
                    return Err(ComponentError::Asymmetric(i, j));
                }
            }
        }
        let diagonal = (0..n).all(|i| (0..n).all(|j| i == j || g[i][j].is_zero()));
        let ug = if diagonal {
            let mut u = vec![vec![RatFun::zero(); n]; n];
            for i in 0..n {
                u[i][i] = ctx.inv(&g[i][i]).map_err(|_| ComponentError::SingularMetric)?;
            }
            u
        } else {
            invert(&ctx, &g).ok_or(ComponentError::SingularMetric)?
        };
        log::debug!("metric set up: dim {n}, diagonal {diagonal}");
        Ok(MetricContext {
            chart,
            ctx,
            lg: g,
            ug,
            diagonal,
            flags: Flags::default(),
            frame,
            torsion: None,
            mu: None,
            memo: Memo::default(),
        })
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn is_diagonal(&self) -> bool {
        self.diagonal
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn has_frame(&self) -> bool {
        self.frame.is_some()
    }

    /// The arithmetic context all component values live in.
    pub fn ratctx(&self) -> &RatCtx {
        &self.ctx
    }

    pub fn lg(&self) -> Components {
        self.export2(&self.lg)
    }

    pub fn ug(&self) -> Components {
        self.export2(&self.ug)
    }

    /// Covariant frame components e^(a)_i, indexed [a][i].
    pub fn fri(&self) -> Result<Components, ComponentError> {
        Ok(self.export2(&self.frame()?.fri))
    }

    /// Contravariant frame components e_(a)^i, indexed [a][i].
    pub fn ufr(&self) -> Result<Components, ComponentError> {
        Ok(self.export2(&transpose(&self.frame()?.ufr)))
    }

    pub fn lfg(&self) -> Result<Components, ComponentError> {
        Ok(self.export2(&self.frame()?.lfg))
    }

    pub fn ufg(&self) -> Result<Components, ComponentError> {
        Ok(self.export2(&self.frame()?.ufg))
    }

    pub fn set_flags(&mut self, flags: Flags) -> Result<(), ComponentError> {
        if flags.frame && self.frame.is_none() {
            return Err(ComponentError::MissingFrame);
        }
        if flags != self.flags {
            self.flags = flags;
            self.memo = Memo::default();
        }
        Ok(())
    }

    /// Set the torsion tensor tau_ij^k, indexed [i][j][k]. It must be
    /// antisymmetric in i and j.
    pub fn set_torsion(&mut self, tau: &Components) -> Result<(), ComponentError> {
        let n = self.dim();
        if tau.dim() != n || tau.rank() != 3 {
            return Err(ComponentError::Shape { want: n, got: format!("rank {} dim {}", tau.rank(), tau.dim()) });
        }
        let t = self.import(tau)?;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if !self.ctx.add(t.get(&[i, j, k]), t.get(&[j, i, k])).is_zero() {
                        return Err(ComponentError::TorsionNotAntisymmetric(i, j, k));
                    }
                }
            }
        }
        self.torsion = Some(t);
        self.memo = Memo::default();
        Ok(())
    }

    /// Set the nonmetricity vector mu_k.
    pub fn set_nonmetricity(&mut self, mu: &[Expr]) -> Result<(), ComponentError> {
        let n = self.dim();
        if mu.len() != n {
            return Err(ComponentError::Shape { want: n, got: mu.len().to_string() });
        }
        let m = mu.iter().map(|e| self.ctx.from_expr(e)).collect::<Result<Vec<_>, _>>()?;
        self.mu = Some(m);
        self.memo = Memo::default();
        Ok(())
    }

    // ---- helpers shared by the submodules ----

    pub(crate) fn frame(&self) -> Result<&FrameData, ComponentError> {
        self.frame.as_ref().ok_or(ComponentError::MissingFrame)
    }

    pub(crate) fn rat_lg(&self) -> &Mat {
        &self.lg
    }

    pub(crate) fn rat_ug(&self) -> &Mat {
        &self.ug
    }

    pub(crate) fn coord(&self, i: usize) -> &str {
        &self.chart.coords[i]
    }

    pub(crate) fn export(&self, a: &Array<RatFun>) -> Components {
        a.map(|r| self.ctx.to_expr(r))
    }

    fn export2(&self, m: &Mat) -> Components {
        Array::from_fn(self.dim(), 2, |i| self.ctx.to_expr(&m[i[0]][i[1]]))
    }

    fn import(&self, a: &Components) -> Result<Array<RatFun>, ComponentError> {
        let mut err = None;
        let out = a.map(|e| match self.ctx.from_expr(e) {
            Ok(r) => r,
            Err(x) => {
                err = Some(x);
                RatFun::zero()
            }
        });
        match err {
            Some(e) => Err(e.into()),
            None => Ok(out),
        }
    }

    /// Sum of products, skipping zero factors early.
    pub(crate) fn dot(&self, terms: impl IntoIterator<Item = (RatFun, RatFun)>) -> RatFun {
        let mut acc = RatFun::zero();
        for (a, b) in terms {
            if a.is_zero() || b.is_zero() {
                continue;
            }
            acc = self.ctx.add(&acc, &self.ctx.mul(&a, &b));
        }
        acc
    }
}

fn to_mat(ctx: &RatCtx, m: &[Vec<Expr>]) -> Result<Mat, ComponentError> {
    m.iter()
        .map(|r| r.iter().map(|e| ctx.from_expr(e).map_err(ComponentError::from)).collect())
        .collect()
}

fn transpose(m: &Mat) -> Mat {
    let n = m.len();
    (0..n).map(|i| (0..n).map(|j| m[j][i].clone()).collect()).collect()
}

/// Gauss-Jordan inverse; pivots are chosen among entries that are not
/// provably zero, preferring the simplest.
pub(crate) fn invert(ctx: &RatCtx, m: &Mat) -> Option<Mat> {
    let n = m.len();
    let mut a: Mat = m.to_vec();
    let mut inv: Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { RatFun::one() } else { RatFun::zero() }).collect())
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].num().len() + a[r][col].den().len())?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = ctx.inv(&a[col][col]).ok()?;
        for j in 0..n {
            a[col][j] = ctx.mul(&a[col][j], &p);
            inv[col][j] = ctx.mul(&inv[col][j], &p);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                if !a[col][j].is_zero() {
                    a[r][j] = ctx.sub(&a[r][j], &ctx.mul(&f, &a[col][j]));
                }
                if !inv[col][j].is_zero() {
                    inv[r][j] = ctx.sub(&inv[r][j], &ctx.mul(&f, &inv[col][j]));
                }
            }
        }
    }
    Some(inv)
}
