//! Line-oriented metric definition files.
//!
//! ```text
//! # exterior Schwarzschild
//! [chart]
//! coords = t, r, theta, phi
//! [constants]
//! m : r > 2*m
//! [metric]
//! row = (2*m-r)/r, 0, 0, 0
//! ...
//! [frame]
//! row = sqrt((r-2*m)/r), 0, 0, 0
//! ...
//! frame_metric = diag(-1, 1, 1, 1)
//! [torsion]
//! r, phi, phi = q
//! [nonmetricity]
//! mu = 0, p, 0, 0
//! ```
//!
//! Torsion lines give tau_ij^k by coordinate names; the partner
//! tau_ji^k = -tau_ij^k is filled in when it is not listed.

use std::fmt::Write as _;

use thiserror::Error;

use crate::component::{Array, Chart, ComponentError, Flags, MetricContext};
use crate::symkernel::{parse, render, Expr, SymError};

#[derive(Debug, Clone, Error, PartialEq)]
pub enum MetricFileError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("missing section [{0}]")]
    Missing(&'static str),
    #[error(transparent)]
    Component(#[from] ComponentError),
}

impl MetricFileError {
    fn at(line: usize, col: usize, msg: impl Into<String>) -> Self {
        MetricFileError::Syntax { line, col, msg: msg.into() }
    }
}

/// Parsed content of a metric definition file.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricDef {
    pub comment: Vec<String>,
    pub coords: Vec<String>,
    /// Constant names with an optional free-text constraint.
    pub constants: Vec<(String, Option<String>)>,
    pub metric: Vec<Vec<Expr>>,
    pub frame: Option<Vec<Vec<Expr>>>,
    pub frame_metric: Option<Vec<Vec<Expr>>>,
    /// (i, j, k, value) for tau_ij^k.
    pub torsion: Vec<(usize, usize, usize, Expr)>,
    pub nonmetricity: Option<Vec<Expr>>,
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Chart,
    Constants,
    Metric,
    Frame,
    Torsion,
    Nonmetricity,
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && cs.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

// split on commas outside parentheses, keeping byte offsets
fn split_top(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

fn expr_at(text: &str, line: usize, col: usize) -> Result<Expr, MetricFileError> {
    let trimmed = text.trim_start();
    let lead = text.len() - trimmed.len();
    parse(trimmed.trim_end()).map_err(|e| match e {
        SymError::Syntax { pos, msg } => MetricFileError::at(line, col + lead + pos, msg),
        SymError::UnknownFunction { pos, name } => {
            MetricFileError::at(line, col + lead + pos, format!("unknown function '{name}'"))
        }
        other => MetricFileError::at(line, col + lead, other.to_string()),
    })
}

fn expr_list(text: &str, line: usize, col: usize) -> Result<Vec<Expr>, MetricFileError> {
    split_top(text).into_iter().map(|(off, part)| expr_at(part, line, col + off)).collect()
}

/// `diag(a, b, ...)` or a single row list.
fn diag_or_row(text: &str, line: usize, col: usize) -> Result<Vec<Vec<Expr>>, MetricFileError> {
    let t = text.trim();
    if let Some(inner) = t.strip_prefix("diag(").and_then(|s| s.strip_suffix(')')) {
        let off = col + text.find("diag(").unwrap_or(0) + 5;
        let d = expr_list(inner, line, off)?;
        let n = d.len();
        return Ok((0..n)
            .map(|i| (0..n).map(|j| if i == j { d[i].clone() } else { Expr::zero() }).collect())
            .collect());
    }
    Ok(vec![expr_list(text, line, col)?])
}

impl MetricDef {
    pub fn parse(text: &str) -> Result<MetricDef, MetricFileError> {
        let mut def = MetricDef::default();
        let mut sec = Section::None;
        let mut frame_rows: Vec<Vec<Expr>> = Vec::new();
        let mut fm_rows: Vec<Vec<Expr>> = Vec::new();
        let mut raw_torsion: Vec<(usize, [String; 3], Expr)> = Vec::new();
        for (ln, raw) in text.lines().enumerate() {
            let line = ln + 1;
            let body = match raw.find('#') {
                Some(i) => &raw[..i],
                None => raw,
            };
            if body.trim().is_empty() {
                if let Some(c) = raw.trim().strip_prefix('#') {
                    if sec == Section::None {
                        def.comment.push(c.trim().to_string());
                    }
                }
                continue;
            }
            let t = body.trim();
            if t.starts_with('[') {
                let Some(name) = t.strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
                    return Err(MetricFileError::at(line, 1, "unterminated section header"));
                };
                sec = match name.trim() {
                    "chart" => Section::Chart,
                    "constants" => Section::Constants,
                    "metric" => Section::Metric,
                    "frame" => Section::Frame,
                    "torsion" => Section::Torsion,
                    "nonmetricity" => Section::Nonmetricity,
                    other => return Err(MetricFileError::at(line, 2, format!("unknown section '{other}'"))),
                };
                continue;
            }
            let (key, val, vcol) = match body.find('=') {
                Some(i) => (body[..i].trim(), &body[i + 1..], i + 2),
                None => ("", body, 1),
            };
            match sec {
                Section::None => return Err(MetricFileError::at(line, 1, "content before the first section")),
                Section::Chart => {
                    if key != "coords" {
                        return Err(MetricFileError::at(line, 1, "expected 'coords = ...'"));
                    }
                    def.coords = val.split(',').map(|s| s.trim().to_string()).collect();
                    if let Some(bad) = def.coords.iter().find(|c| !is_ident(c)) {
                        return Err(MetricFileError::at(line, vcol, format!("bad coordinate name '{bad}'")));
                    }
                }
                Section::Constants => {
                    let (name, note) = match t.split_once(':') {
                        Some((n, c)) => (n.trim(), Some(c.trim().to_string())),
                        None => (t, None),
                    };
                    for n in name.split(',') {
                        def.constants.push((n.trim().to_string(), note.clone()));
                    }
                }
                Section::Metric => {
                    if key != "row" {
                        return Err(MetricFileError::at(line, 1, "expected 'row = ...'"));
                    }
                    def.metric.push(expr_list(val, line, vcol)?);
                }
                Section::Frame => match key {
                    "row" => frame_rows.push(expr_list(val, line, vcol)?),
                    "frame_metric" => fm_rows.extend(diag_or_row(val, line, vcol)?),
                    _ => return Err(MetricFileError::at(line, 1, "expected 'row = ...' or 'frame_metric = ...'")),
                },
                Section::Torsion => {
                    let names: Vec<String> = key.split(',').map(|s| s.trim().to_string()).collect();
                    let Ok(ix) = <[String; 3]>::try_from(names) else {
                        return Err(MetricFileError::at(line, 1, "expected 'i, j, k = value'"));
                    };
                    raw_torsion.push((line, ix, expr_at(val, line, vcol)?));
                }
                Section::Nonmetricity => {
                    if key != "mu" {
                        return Err(MetricFileError::at(line, 1, "expected 'mu = ...'"));
                    }
                    def.nonmetricity = Some(expr_list(val, line, vcol)?);
                }
            }
        }
        if def.coords.is_empty() {
            return Err(MetricFileError::Missing("chart"));
        }
        if !frame_rows.is_empty() {
            let n = def.coords.len();
            if fm_rows.is_empty() {
                fm_rows = (0..n).map(|i| (0..n).map(|j| Expr::int((i == j) as i64)).collect()).collect();
            }
            def.frame = Some(frame_rows);
            def.frame_metric = Some(fm_rows);
        }
        if def.metric.is_empty() && def.frame.is_none() {
            return Err(MetricFileError::Missing("metric"));
        }
        for (line, names, v) in raw_torsion {
            let mut ix = [0usize; 3];
            for (slot, nm) in ix.iter_mut().zip(names.iter()) {
                *slot = def
                    .coords
                    .iter()
                    .position(|c| c == nm)
                    .ok_or_else(|| MetricFileError::at(line, 1, format!("unknown coordinate '{nm}'")))?;
            }
            def.torsion.push((ix[0], ix[1], ix[2], v));
        }
        Ok(def)
    }

    pub fn chart(&self) -> Result<Chart, ComponentError> {
        Chart::new(&self.coords)
    }

    /// Build a context. With `use_frame` the frame section defines the
    /// metric; otherwise the metric section does.
    pub fn build(&self, use_frame: bool) -> Result<MetricContext, MetricFileError> {
        let chart = self.chart()?;
        let mut ctx = match (&self.frame, use_frame) {
            (Some(f), true) => MetricContext::from_frame(chart, f, self.frame_metric.as_ref().unwrap())?,
            (None, true) => return Err(ComponentError::MissingFrame.into()),
            _ if self.metric.is_empty() => {
                // only a frame was given: derive the metric from it
                let m = MetricContext::from_frame(chart.clone(), self.frame.as_ref().unwrap(), self.frame_metric.as_ref().unwrap())?;
                let g: Vec<Vec<Expr>> =
                    (0..chart.dim()).map(|i| (0..chart.dim()).map(|j| m.lg().get(&[i, j]).clone()).collect()).collect();
                MetricContext::from_metric(chart, &g)?
            }
            _ => MetricContext::from_metric(chart, &self.metric)?,
        };
        let n = self.coords.len();
        if !self.torsion.is_empty() {
            let mut tau = Array::from_fn(n, 3, |_| Expr::zero());
            for (i, j, k, v) in &self.torsion {
                tau.set(&[*i, *j, *k], v.clone());
            }
            for (i, j, k, v) in &self.torsion {
                if !self.torsion.iter().any(|(a, b, c, _)| (a, b, c) == (j, i, k)) {
                    tau.set(&[*j, *i, *k], -v.clone());
                }
            }
            ctx.set_torsion(&tau)?;
        }
        if let Some(mu) = &self.nonmetricity {
            ctx.set_nonmetricity(mu)?;
        }
        let flags = Flags { frame: use_frame, torsion: !self.torsion.is_empty(), nonmetricity: self.nonmetricity.is_some() };
        ctx.set_flags(flags)?;
        Ok(ctx)
    }

    /// Text in the format accepted by [`MetricDef::parse`].
    pub fn write(&self) -> String {
        let mut s = String::new();
        let row = |r: &[Expr]| r.iter().map(render).collect::<Vec<_>>().join(", ");
        for c in &self.comment {
            let _ = writeln!(s, "# {c}");
        }
        let _ = writeln!(s, "[chart]\ncoords = {}", self.coords.join(", "));
        if !self.constants.is_empty() {
            s.push_str("[constants]\n");
            for (n, note) in &self.constants {
                match note {
                    Some(c) => writeln!(s, "{n} : {c}"),
                    None => writeln!(s, "{n}"),
                }
                .unwrap();
            }
        }
        if !self.metric.is_empty() {
            s.push_str("[metric]\n");
            for r in &self.metric {
                let _ = writeln!(s, "row = {}", row(r));
            }
        }
        if let Some(f) = &self.frame {
            s.push_str("[frame]\n");
            for r in f {
                let _ = writeln!(s, "row = {}", row(r));
            }
            let fm = self.frame_metric.as_ref().unwrap();
            let diag = fm.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, e)| i == j || e.is_zero()));
            if diag {
                let d: Vec<Expr> = (0..fm.len()).map(|i| fm[i][i].clone()).collect();
                let _ = writeln!(s, "frame_metric = diag({})", row(&d));
            } else {
                for r in fm {
                    let _ = writeln!(s, "frame_metric = {}", row(r));
                }
            }
        }
        if !self.torsion.is_empty() {
            s.push_str("[torsion]\n");
            for (i, j, k, v) in &self.torsion {
                let _ = writeln!(s, "{}, {}, {} = {}", self.coords[*i], self.coords[*j], self.coords[*k], render(v));
            }
        }
        if let Some(mu) = &self.nonmetricity {
            let _ = writeln!(s, "[nonmetricity]\nmu = {}", row(mu));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const POLAR: &str = "# polar\n[chart]\ncoords = r, phi\n[metric]\nrow = 1, 0\nrow = 0, r^2\n[frame]\nrow = cos(phi), -r*sin(phi)\nrow = sin(phi), r*cos(phi)\nframe_metric = diag(1, 1)\n";

    #[test]
    fn round_trip() {
        let d = MetricDef::parse(POLAR).unwrap();
        assert_eq!(d.coords, ["r", "phi"]);
        assert_eq!(d.write(), POLAR);
        assert_eq!(MetricDef::parse(&d.write()).unwrap(), d);
    }

    #[test]
    fn error_positions() {
        let e = MetricDef::parse("[chart]\ncoords = x, y\n[metric]\nrow = 1, 0\nrow = 0, 1+*x\n").unwrap_err();
        match e {
            MetricFileError::Syntax { line, col, .. } => {
                assert_eq!(line, 5);
                assert!(col >= 10, "col {col}");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(MetricDef::parse("[metric]\nrow = 1\n").unwrap_err(), MetricFileError::Missing("chart"));
        assert!(matches!(MetricDef::parse("[bogus]\n"), Err(MetricFileError::Syntax { line: 1, .. })));
    }

    #[test]
    fn torsion_partner() {
        let d = MetricDef::parse("[chart]\ncoords = x, y\n[metric]\nrow = 1, 0\nrow = 0, 1\n[torsion]\nx, y, y = q\n").unwrap();
        let c = d.build(false).unwrap();
        assert!(c.flags().torsion);
        assert!(!c.contortion().unwrap().is_all_zero());
    }
}
