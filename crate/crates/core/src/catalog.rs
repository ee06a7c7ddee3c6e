//! Predefined metrics and frames of common coordinate systems.

use thiserror::Error;

use crate::component::MetricContext;
use crate::metricfile::{MetricDef, MetricFileError};
use crate::symkernel::{parse, Expr};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Signature {
    Euclidean,
    /// (-,+,...,+)
    Lorentzian,
}

/// Signature of extra flat dimensions appended on load.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FlatSignature {
    Euclidean,
    Minkowski,
}

#[derive(Debug, Clone, Error, PartialEq)]
pub enum CatalogError {
    #[error("unknown catalog entry '{0}'")]
    Unknown(String),
    #[error("catalog entry '{0}' has no frame")]
    NoFrame(String),
    #[error(transparent)]
    Build(#[from] MetricFileError),
}

/// One tabulated coordinate system.
#[derive(Debug, Clone, Copy)]
pub struct MetricEntry {
    pub name: &'static str,
    pub coords: &'static [&'static str],
    /// (constant, constraint)
    pub constants: &'static [(&'static str, &'static str)],
    pub metric: &'static [&'static [&'static str]],
    pub frame: Option<&'static [&'static [&'static str]]>,
    pub signature: Signature,
}

macro_rules! m {
    ($([$($e:expr),*]),* $(,)?) => { &[$(&[$($e),*]),*] };
}

const ENTRIES: &[MetricEntry] = &[
    MetricEntry {
        name: "cartesian2d",
        coords: &["x", "y"],
        constants: &[],
        metric: m!(["1", "0"], ["0", "1"]),
        frame: Some(m!(["1", "0"], ["0", "1"])),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "polar",
        coords: &["r", "phi"],
        constants: &[],
        metric: m!(["1", "0"], ["0", "r^2"]),
        frame: Some(m!(["cos(phi)", "-r*sin(phi)"], ["sin(phi)", "r*cos(phi)"])),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "elliptic",
        coords: &["u", "v"],
        constants: &[("e", "")],
        metric: m!(["e^2*(cosh(u)^2-cos(v)^2)", "0"], ["0", "e^2*(cosh(u)^2-cos(v)^2)"]),
        frame: Some(m!(
            ["e*sinh(u)*cos(v)", "-e*cosh(u)*sin(v)"],
            ["e*cosh(u)*sin(v)", "e*sinh(u)*cos(v)"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "confocalelliptic",
        coords: &["u", "v"],
        constants: &[("e", "")],
        metric: m!(["e^2*(u^2-v^2)/(u^2-1)", "0"], ["0", "e^2*(v^2-u^2)/(v^2-1)"]),
        frame: Some(m!(
            ["e*v", "e*u"],
            ["e*u*(1-v^2)/sqrt((u^2-1)*(1-v^2))", "e*v*(1-u^2)/sqrt((u^2-1)*(1-v^2))"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "bipolar",
        coords: &["u", "v"],
        constants: &[("e", "")],
        metric: m!(["e^2/(cosh(v)-cos(u))^2", "0"], ["0", "e^2/(cosh(v)-cos(u))^2"]),
        frame: Some(m!(
            ["-e*sin(u)*sinh(v)/(cosh(v)-cos(u))^2", "e*(1-cos(u)*cosh(v))/(cosh(v)-cos(u))^2"],
            ["e*(cos(u)*cosh(v)-1)/(cosh(v)-cos(u))^2", "-e*sin(u)*sinh(v)/(cosh(v)-cos(u))^2"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "parabolic",
        coords: &["u", "v"],
        constants: &[],
        metric: m!(["u^2+v^2", "0"], ["0", "u^2+v^2"]),
        frame: Some(m!(["u", "-v"], ["v", "u"])),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "cartesian3d",
        coords: &["x", "y", "z"],
        constants: &[],
        metric: m!(["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]),
        frame: Some(m!(["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"])),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "polarcylindrical",
        coords: &["r", "theta", "z"],
        constants: &[],
        metric: m!(["1", "0", "0"], ["0", "r^2", "0"], ["0", "0", "1"]),
        frame: Some(m!(["cos(theta)", "-r*sin(theta)", "0"], ["sin(theta)", "r*cos(theta)", "0"], ["0", "0", "1"])),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "ellipticcylindrical",
        coords: &["u", "v", "z"],
        constants: &[("e", "")],
        metric: m!(
            ["e^2*(sin(v)^2+sinh(u)^2)", "0", "0"],
            ["0", "e^2*(sin(v)^2+sinh(u)^2)", "0"],
            ["0", "0", "1"]
        ),
        frame: Some(m!(
            ["e*sinh(u)*cos(v)", "-e*cosh(u)*sin(v)", "0"],
            ["e*cosh(u)*sin(v)", "e*sinh(u)*cos(v)", "0"],
            ["0", "0", "1"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "confocalellipsoidal",
        coords: &["u", "v", "w"],
        constants: &[("e", ""), ("f", ""), ("g", "")],
        metric: m!(
            ["(v-u)*(w-u)/(4*(e^2-u)*(u-f^2)*(u-g^2))", "0", "0"],
            ["0", "(v-u)*(w-v)/(4*(v-e^2)*(v-f^2)*(v-g^2))", "0"],
            ["0", "0", "(w-u)*(w-v)/(4*(e^2-w)*(w-f^2)*(w-g^2))"]
        ),
        frame: Some(m!(
            [
                "-sqrt((e^2-v)*(e^2-w)/(4*(e^2-f^2)*(e^2-g^2)*(e^2-u)))",
                "-sqrt((e^2-u)*(e^2-w)/(4*(e^2-f^2)*(e^2-g^2)*(e^2-v)))",
                "-sqrt((e^2-u)*(e^2-v)/(4*(e^2-f^2)*(e^2-g^2)*(e^2-w)))"
            ],
            [
                "-sqrt((f^2-v)*(w-f^2)/(4*(e^2-f^2)*(f^2-g^2)*(f^2-u)))",
                "-sqrt((f^2-u)*(w-f^2)/(4*(e^2-f^2)*(f^2-g^2)*(f^2-v)))",
                "sqrt((f^2-u)*(f^2-v)/(4*(e^2-f^2)*(f^2-g^2)*(w-f^2)))"
            ],
            [
                "-sqrt((v-g^2)*(w-g^2)/(4*(e^2-g^2)*(f^2-g^2)*(g^2-u)))",
                "sqrt((g^2-u)*(w-g^2)/(4*(e^2-g^2)*(f^2-g^2)*(v-g^2)))",
                "sqrt((g^2-u)*(v-g^2)/(4*(e^2-g^2)*(f^2-g^2)*(w-g^2)))"
            ]
        )),
        signature: Signature::Euclidean,
    },
    // bipolar times a line; the tabulated matrices for this name do not
    // describe a flat chart
    MetricEntry {
        name: "bipolarcylindrical",
        coords: &["u", "v", "z"],
        constants: &[("e", "")],
        metric: m!(
            ["e^2/(cosh(v)-cos(u))^2", "0", "0"],
            ["0", "e^2/(cosh(v)-cos(u))^2", "0"],
            ["0", "0", "1"]
        ),
        frame: Some(m!(
            ["-e*sin(u)*sinh(v)/(cosh(v)-cos(u))^2", "e*(1-cos(u)*cosh(v))/(cosh(v)-cos(u))^2", "0"],
            ["e*(cos(u)*cosh(v)-1)/(cosh(v)-cos(u))^2", "-e*sin(u)*sinh(v)/(cosh(v)-cos(u))^2", "0"],
            ["0", "0", "1"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "paraboliccylindrical",
        coords: &["u", "v", "z"],
        constants: &[],
        metric: m!(["u^2+v^2", "0", "0"], ["0", "u^2+v^2", "0"], ["0", "0", "1"]),
        frame: Some(m!(["u", "-v", "0"], ["v", "u", "0"], ["0", "0", "1"])),
        signature: Signature::Euclidean,
    },
    // matrices are in (phi, u, v) order
    MetricEntry {
        name: "paraboloidal",
        coords: &["phi", "u", "v"],
        constants: &[],
        metric: m!(["u^2*v^2", "0", "0"], ["0", "u^2+v^2", "0"], ["0", "0", "u^2+v^2"]),
        frame: Some(m!(
            ["-u*v*sin(phi)", "v*cos(phi)", "u*cos(phi)"],
            ["u*v*cos(phi)", "v*sin(phi)", "u*sin(phi)"],
            ["0", "u", "-v"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "conical",
        coords: &["u", "v", "w"],
        constants: &[("e", ""), ("f", "")],
        metric: m!(
            ["(v^2-u^2)*w^2/((u^2-e^2)*(u^2-f^2))", "0", "0"],
            ["0", "(u^2-v^2)*w^2/((v^2-e^2)*(v^2-f^2))", "0"],
            ["0", "0", "1"]
        ),
        frame: Some(m!(
            ["v*w/(e*f)", "u*w/(e*f)", "u*v/(e*f)"],
            [
                "-u*w*sqrt(e^2-v^2)/(e*sqrt((e^2-f^2)*(e^2-u^2)))",
                "-v*w*sqrt(e^2-u^2)/(e*sqrt((e^2-f^2)*(e^2-v^2)))",
                "sqrt((e^2-u^2)*(e^2-v^2))/(e*sqrt(e^2-f^2))"
            ],
            [
                "u*w*sqrt(f^2-v^2)/(f*sqrt((e^2-f^2)*(u^2-f^2)))",
                "-v*w*sqrt(u^2-f^2)/(f*sqrt((e^2-f^2)*(f^2-v^2)))",
                "sqrt((u^2-f^2)*(f^2-v^2))/(f*sqrt(e^2-f^2))"
            ]
        )),
        signature: Signature::Euclidean,
    },
    // matrices are in (phi, u, v) order
    MetricEntry {
        name: "toroidal",
        coords: &["phi", "u", "v"],
        constants: &[("e", "")],
        metric: m!(
            ["e^2*sinh(v)^2/(cosh(v)-cos(u))^2", "0", "0"],
            ["0", "e^2/(cosh(v)-cos(u))^2", "0"],
            ["0", "0", "e^2/(cosh(v)-cos(u))^2"]
        ),
        frame: Some(m!(
            [
                "-e*sin(phi)*sinh(v)/(cosh(v)-cos(u))",
                "-e*cos(phi)*sin(u)*sinh(v)/(cosh(v)-cos(u))^2",
                "-e*cos(phi)*(cos(u)*cosh(v)-1)/(cosh(v)-cos(u))^2"
            ],
            [
                "e*cos(phi)*sinh(v)/(cosh(v)-cos(u))",
                "-e*sin(phi)*sin(u)*sinh(v)/(cosh(v)-cos(u))^2",
                "-e*sin(phi)*(cos(u)*cosh(v)-1)/(cosh(v)-cos(u))^2"
            ],
            ["0", "e*(cos(u)*cosh(v)-1)/(cosh(v)-cos(u))^2", "-e*sin(u)*sinh(v)/(cosh(v)-cos(u))^2"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "spherical",
        coords: &["r", "theta", "phi"],
        constants: &[],
        metric: m!(["1", "0", "0"], ["0", "r^2", "0"], ["0", "0", "r^2*sin(theta)^2"]),
        frame: Some(m!(["1", "0", "0"], ["0", "r", "0"], ["0", "0", "r*sin(theta)"])),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "oblatespheroidal",
        coords: &["u", "v", "phi"],
        constants: &[("e", "")],
        metric: m!(
            ["e^2*(sin(v)^2+sinh(u)^2)", "0", "0"],
            ["0", "e^2*(sin(v)^2+sinh(u)^2)", "0"],
            ["0", "0", "e^2*cosh(u)^2*cos(v)^2"]
        ),
        frame: Some(m!(
            ["abs(e)*sqrt(sin(v)^2+sinh(u)^2)", "0", "0"],
            ["0", "abs(e)*sqrt(sin(v)^2+sinh(u)^2)", "0"],
            ["0", "0", "abs(e)*cosh(u)*abs(cos(v))"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "oblatespheroidalsqrt",
        coords: &["u", "v", "phi"],
        constants: &[("e", "")],
        metric: m!(
            ["e^2*(u^2-v^2)/(u^2-1)", "0", "0"],
            ["0", "e^2*(u^2-v^2)/(1-v^2)", "0"],
            ["0", "0", "e^2*u^2*v^2"]
        ),
        frame: Some(m!(
            ["abs(e)*sqrt(u^2-v^2)/sqrt(u^2-1)", "0", "0"],
            ["0", "abs(e)*sqrt(u^2-v^2)/sqrt(1-v^2)", "0"],
            ["0", "0", "abs(e*u*v)"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "prolatespheroidal",
        coords: &["u", "v", "phi"],
        constants: &[("e", "")],
        metric: m!(
            ["e^2*(sin(v)^2+sinh(u)^2)", "0", "0"],
            ["0", "e^2*(sin(v)^2+sinh(u)^2)", "0"],
            ["0", "0", "e^2*sin(v)^2*sinh(u)^2"]
        ),
        frame: Some(m!(
            ["abs(e)*sqrt(sin(v)^2+sinh(u)^2)", "0", "0"],
            ["0", "abs(e)*sqrt(sin(v)^2+sinh(u)^2)", "0"],
            ["0", "0", "abs(e*sinh(u)*sin(v))"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "prolatespheroidalsqrt",
        coords: &["u", "v", "phi"],
        constants: &[("e", "")],
        metric: m!(
            ["e^2*(v^2-u^2)/(1-u^2)", "0", "0"],
            ["0", "e^2*(v^2-u^2)/(v^2-1)", "0"],
            ["0", "0", "e^2*(1-u^2)*(v^2-1)"]
        ),
        frame: Some(m!(
            ["abs(e)*sqrt(v^2-u^2)/sqrt(1-u^2)", "0", "0"],
            ["0", "abs(e)*sqrt(v^2-u^2)/sqrt(v^2-1)", "0"],
            ["0", "0", "abs(e)*sqrt((1-u^2)*(v^2-1))"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "ellipsoidal",
        coords: &["r", "theta", "phi"],
        constants: &[("a", ""), ("b", ""), ("c", "")],
        metric: m!(
            [
                "(a^2*cos(phi)^2+b^2*sin(phi)^2)*sin(theta)^2+c^2*cos(theta)^2",
                "(a^2*cos(phi)^2+b^2*sin(phi)^2-c^2)*r*cos(theta)*sin(theta)",
                "(b^2-a^2)*cos(phi)*sin(phi)*r*sin(theta)^2"
            ],
            [
                "(a^2*cos(phi)^2+b^2*sin(phi)^2-c^2)*r*cos(theta)*sin(theta)",
                "r^2*((a^2*cos(phi)^2+b^2*sin(phi)^2)*cos(theta)^2+c^2*sin(theta)^2)",
                "(b^2-a^2)*cos(phi)*sin(phi)*r^2*cos(theta)*sin(theta)"
            ],
            [
                "(b^2-a^2)*cos(phi)*sin(phi)*r*sin(theta)^2",
                "(b^2-a^2)*cos(phi)*sin(phi)*r^2*cos(theta)*sin(theta)",
                "(a^2*sin(phi)^2+b^2*cos(phi)^2)*r^2*sin(theta)^2"
            ]
        ),
        frame: None,
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "cartesian4d",
        coords: &["x", "y", "z", "t"],
        constants: &[],
        metric: m!(["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"]),
        frame: Some(m!(["1", "0", "0", "0"], ["0", "1", "0", "0"], ["0", "0", "1", "0"], ["0", "0", "0", "1"])),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "spherical4d",
        coords: &["r", "theta", "eta", "phi"],
        constants: &[],
        metric: m!(
            ["1", "0", "0", "0"],
            ["0", "r^2", "0", "0"],
            ["0", "0", "r^2*sin(theta)^2", "0"],
            ["0", "0", "0", "r^2*sin(eta)^2*sin(theta)^2"]
        ),
        frame: Some(m!(
            ["1", "0", "0", "0"],
            ["0", "r", "0", "0"],
            ["0", "0", "r*sin(theta)", "0"],
            ["0", "0", "0", "r*sin(eta)*sin(theta)"]
        )),
        signature: Signature::Euclidean,
    },
    MetricEntry {
        name: "exteriorschwarzschild",
        coords: &["t", "r", "theta", "phi"],
        constants: &[("m", "r > 2*m")],
        metric: m!(
            ["(2*m-r)/r", "0", "0", "0"],
            ["0", "r/(r-2*m)", "0", "0"],
            ["0", "0", "r^2", "0"],
            ["0", "0", "0", "r^2*sin(theta)^2"]
        ),
        frame: Some(m!(
            ["sqrt((r-2*m)/r)", "0", "0", "0"],
            ["0", "sqrt(r/(r-2*m))", "0", "0"],
            ["0", "0", "r", "0"],
            ["0", "0", "0", "r*sin(theta)"]
        )),
        signature: Signature::Lorentzian,
    },
    MetricEntry {
        name: "interiorschwarzschild",
        coords: &["t", "z", "u", "v"],
        constants: &[("m", "t < 2*m")],
        metric: m!(
            ["-t/(2*m-t)", "0", "0", "0"],
            ["0", "(2*m-t)/t", "0", "0"],
            ["0", "0", "t^2", "0"],
            ["0", "0", "0", "t^2*sin(u)^2"]
        ),
        frame: Some(m!(
            ["sqrt(t/(2*m-t))", "0", "0", "0"],
            ["0", "sqrt((2*m-t)/t)", "0", "0"],
            ["0", "0", "t", "0"],
            ["0", "0", "0", "t*sin(u)"]
        )),
        signature: Signature::Lorentzian,
    },
    // tabulated without a charge term
    MetricEntry {
        name: "kerr_newman",
        coords: &["t", "r", "theta", "phi"],
        constants: &[("a", ""), ("m", "")],
        metric: m!(
            [
                "(2*m*r-r^2-a^2*cos(theta)^2)/(r^2+a^2*cos(theta)^2)",
                "0",
                "0",
                "-2*a*m*r*sin(theta)^2/(r^2+a^2*cos(theta)^2)"
            ],
            ["0", "(r^2+a^2*cos(theta)^2)/(a^2-2*m*r+r^2)", "0", "0"],
            ["0", "0", "r^2+a^2*cos(theta)^2", "0"],
            [
                "-2*a*m*r*sin(theta)^2/(r^2+a^2*cos(theta)^2)",
                "0",
                "0",
                "(r^4+2*a^2*r^2+a^4*cos(theta)^2+(2*a^2*m*r-a^2*r^2)*sin(theta)^2)*sin(theta)^2/(r^2+a^2*cos(theta)^2)"
            ]
        ),
        frame: Some(m!(
            [
                "sqrt(a^2-2*m*r+r^2)/sqrt(r^2+a^2*cos(theta)^2)",
                "0",
                "0",
                "-a*sin(theta)^2*sqrt(a^2-2*m*r+r^2)/sqrt(r^2+a^2*cos(theta)^2)"
            ],
            ["0", "sqrt(r^2+a^2*cos(theta)^2)/sqrt(a^2-2*m*r+r^2)", "0", "0"],
            ["0", "0", "sqrt(r^2+a^2*cos(theta)^2)", "0"],
            [
                "-a*sin(theta)/sqrt(r^2+a^2*cos(theta)^2)",
                "0",
                "0",
                "(r^2+a^2)*sin(theta)/sqrt(r^2+a^2*cos(theta)^2)"
            ]
        )),
        signature: Signature::Lorentzian,
    },
];

/// Names of all entries, in table order.
pub fn list_entries() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn entry(name: &str) -> Option<&'static MetricEntry> {
    ENTRIES.iter().find(|e| e.name == name)
}

pub fn entries() -> &'static [MetricEntry] {
    ENTRIES
}

fn rows(m: &[&[&str]]) -> Vec<Vec<Expr>> {
    m.iter().map(|r| r.iter().map(|s| parse(s).expect("catalog expression")).collect()).collect()
}

fn fresh_coord(taken: &[String], k: usize) -> String {
    let mut i = k;
    loop {
        let c = format!("x{i}");
        if !taken.contains(&c) {
            return c;
        }
        i += 1;
    }
}

impl MetricEntry {
    pub fn has_frame(&self) -> bool {
        self.frame.is_some()
    }

    /// The entry as a metric definition, with `extra` flat dimensions
    /// appended as diagonal +1 (Euclidean) or -1 (Minkowski) entries.
    pub fn to_def(&self, extra: Option<(usize, FlatSignature)>) -> MetricDef {
        let mut coords: Vec<String> = self.coords.iter().map(|s| s.to_string()).collect();
        let mut metric = rows(self.metric);
        let mut frame = self.frame.map(rows);
        let n0 = coords.len();
        let mut eta: Vec<Expr> = (0..n0)
            .map(|i| Expr::int(if i == 0 && self.signature == Signature::Lorentzian { -1 } else { 1 }))
            .collect();
        if let Some((k, sig)) = extra {
            let s = Expr::int(if sig == FlatSignature::Minkowski { -1 } else { 1 });
            for j in 0..k {
                let c = fresh_coord(&coords, n0 + j + 1);
                coords.push(c);
            }
            let n = n0 + k;
            let grow = |m: &mut Vec<Vec<Expr>>, d: &Expr| {
                for r in m.iter_mut() {
                    r.resize(n, Expr::zero());
                }
                for i in n0..n {
                    m.push((0..n).map(|j| if i == j { d.clone() } else { Expr::zero() }).collect());
                }
            };
            grow(&mut metric, &s);
            if let Some(f) = frame.as_mut() {
                grow(f, &Expr::one());
            }
            eta.extend(std::iter::repeat_n(s, k));
        }
        let n = coords.len();
        let frame_metric =
            frame.as_ref().map(|_| (0..n).map(|i| (0..n).map(|j| if i == j { eta[i].clone() } else { Expr::zero() }).collect()).collect());
        let sig = match self.signature {
            Signature::Euclidean => "signature (+,...,+)",
            Signature::Lorentzian => "signature (-,+,...,+)",
        };
        MetricDef {
            comment: vec![format!("{}; {}", self.name, sig)],
            coords,
            constants: self
                .constants
                .iter()
                .map(|(c, note)| (c.to_string(), (!note.is_empty()).then(|| note.to_string())))
                .collect(),
            metric,
            frame,
            frame_metric,
            torsion: Vec::new(),
            nonmetricity: None,
        }
    }
}

/// Build a context for a catalog entry. With `use_frame` the frame
/// defines the metric and frame mode is on.
pub fn load(name: &str, extra: Option<(usize, FlatSignature)>, use_frame: bool) -> Result<MetricContext, CatalogError> {
    let e = entry(name).ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
    if use_frame && !e.has_frame() {
        return Err(CatalogError::NoFrame(name.to_string()));
    }
    Ok(e.to_def(extra).build(use_frame)?)
}

/// Metric definition text for an entry.
pub fn show(name: &str) -> Result<String, CatalogError> {
    let e = entry(name).ok_or_else(|| CatalogError::Unknown(name.to_string()))?;
    Ok(e.to_def(None).write())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names() {
        let l = list_entries();
        assert_eq!(l.len(), 26);
        assert!(l.contains(&"polar") && l.contains(&"exteriorschwarzschild"));
        assert!(!l.contains(&"friedmann"));
    }

    #[test]
    fn flat_extension() {
        let c = load("cartesian2d", Some((1, FlatSignature::Minkowski)), false).unwrap();
        assert_eq!(c.chart().coords(), ["x", "y", "x3"]);
        assert_eq!(c.lg().get(&[2, 2]), &Expr::int(-1));
        assert_eq!(c.lg().get(&[0, 0]), &Expr::int(1));
        assert!(matches!(load("ellipsoidal", None, true), Err(CatalogError::NoFrame(_))));
        assert!(matches!(load("nope", None, false), Err(CatalogError::Unknown(_))));
    }
}
