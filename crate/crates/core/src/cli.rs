//! Command-line front end. [`run`] parses arguments, does one job and
//! returns the process exit code: 0 on success, 1 for bad input, 2 when a
//! computation fails.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::atensor::{atensimp, basis_words, init_atensor, multiplication_table, parse_mvec, AlgebraType, MVec};
use crate::catalog::{self, CatalogError, FlatSignature};
use crate::component::{Components, ComponentError, MetricContext};
use crate::indicial::{self, GroupSpec, IndexContext, IndexError, IndexExpr, SymKind};
use crate::metricfile::{MetricDef, MetricFileError};
use crate::petrov::{self, PetrovError};
use crate::symkernel::{render, Expr};

#[derive(Parser, Debug)]
#[command(name = "tenscalc", version, about = "Symbolic tensor calculus")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub cmd: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Curvature tensors of a metric.
    Compute {
        #[command(flatten)]
        src: Source,
        /// Comma-separated: christoffel1, christoffel2, riemann, ricci,
        /// scalar, einstein, weyl, rotation_coeffs, all.
        #[arg(long, default_value = "all", value_delimiter = ',')]
        tensors: Vec<String>,
    },
    /// Petrov type of a 4-dimensional Lorentzian frame.
    Classify {
        #[command(flatten)]
        src: Source,
    },
    /// Predefined metrics.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Products in an abstract tensor algebra.
    Algebra {
        /// universal, grassmann, clifford, symmetric, symplectic or lie_envelop.
        #[arg(long = "type")]
        kind: String,
        #[arg(long, value_delimiter = ',')]
        dims: Vec<usize>,
        #[arg(long)]
        expr: Option<String>,
        /// Print the multiplication table of the basis words.
        #[arg(long)]
        table: bool,
    },
    /// Abstract-index operations.
    Indicial(IndicialArgs),
}

#[derive(Args, Debug)]
pub struct Source {
    /// Metric definition file.
    #[arg(long, conflicts_with = "catalog")]
    pub metric: Option<String>,
    /// Catalog entry name.
    #[arg(long)]
    pub catalog: Option<String>,
    /// Use the frame section (classify does so whenever a frame exists).
    #[arg(long)]
    pub frame: bool,
    /// Extra flat dimensions appended to a catalog entry.
    #[arg(long, default_value_t = 0)]
    pub extra: usize,
    #[arg(long, value_enum, default_value_t = Flat::Euclidean)]
    pub extra_signature: Flat,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Flat {
    Euclidean,
    Minkowski,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    List,
    Show { name: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum IndicialOp {
    Canform,
    Contract,
    Covdiff,
    Liediff,
    Idiff,
    Expand,
    Wedge,
    Extdiff,
    Inner,
}

#[derive(Args, Debug)]
pub struct IndicialArgs {
    #[arg(value_enum)]
    pub op: IndicialOp,
    /// Expression such as `g([a,b],[])*T([],[b,c])`.
    #[arg(long)]
    pub expr: String,
    /// Second operand of wedge.
    #[arg(long)]
    pub other: Option<String>,
    /// Derivative label for covdiff, idiff and extdiff.
    #[arg(long)]
    pub index: Option<String>,
    /// Vector for liediff and inner.
    #[arg(long)]
    pub vector: Option<String>,
    /// Metric name.
    #[arg(long, default_value = "g")]
    pub metric: String,
    /// `name:ncov:ncontra:covgroups:contragroups`, groups separated by
    /// `;`, e.g. `e:2:0:anti(all):`.
    #[arg(long)]
    pub decsym: Vec<String>,
    #[arg(long)]
    pub frame: bool,
    #[arg(long)]
    pub torsion: bool,
    #[arg(long)]
    pub nonmetricity: bool,
    #[arg(long)]
    pub geometric_wedge: bool,
}

/// Failure with its exit code.
#[derive(Debug)]
struct Fail(i32, String);

fn input(e: impl std::fmt::Display) -> Fail {
    Fail(1, e.to_string())
}

fn component(e: ComponentError) -> Fail {
    Fail(2, e.to_string())
}

fn file_err(e: MetricFileError) -> Fail {
    match e {
        MetricFileError::Component(c) => component(c),
        other => input(other),
    }
}

fn catalog_err(e: CatalogError) -> Fail {
    match e {
        CatalogError::Build(b) => file_err(b),
        other => input(other),
    }
}

fn load(src: &Source, frame: bool) -> Result<(MetricContext, Vec<String>), Fail> {
    match (&src.metric, &src.catalog) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path).map_err(|e| input(format!("{path}: {e}")))?;
            let def = MetricDef::parse(&text).map_err(|e| input(format!("{path}: {e}")))?;
            let frame = frame && def.frame.is_some() || src.frame;
            let ctx = def.build(frame).map_err(file_err)?;
            Ok((ctx, def.coords))
        }
        (None, Some(name)) => {
            let extra = match (src.extra, src.extra_signature) {
                (0, _) => None,
                (n, Flat::Euclidean) => Some((n, FlatSignature::Euclidean)),
                (n, Flat::Minkowski) => Some((n, FlatSignature::Minkowski)),
            };
            let e = catalog::entry(name).ok_or_else(|| input(CatalogError::Unknown(name.clone())))?;
            let frame = frame && e.has_frame() || src.frame;
            let ctx = catalog::load(name, extra, frame).map_err(catalog_err)?;
            let coords = ctx.chart().coords().to_vec();
            Ok((ctx, coords))
        }
        _ => Err(input("give exactly one of --metric or --catalog")),
    }
}

const TENSORS: [&str; 8] = ["christoffel1", "christoffel2", "riemann", "ricci", "scalar", "einstein", "weyl", "rotation_coeffs"];

struct Table {
    name: String,
    entries: Vec<(String, String)>,
    zeros: usize,
}

fn table(name: &str, c: &Components, labels: &[String]) -> Table {
    let mut entries = vec![];
    let mut zeros = 0;
    for (ix, v) in c.iter() {
        if v.is_zero() {
            zeros += 1;
        } else {
            let key = ix.iter().map(|&i| labels[i].as_str()).collect::<Vec<_>>().join(",");
            entries.push((key, render(v)));
        }
    }
    Table { name: name.to_string(), entries, zeros }
}

fn scalar_table(name: &str, v: &Expr) -> Table {
    let (entries, zeros) = if v.is_zero() { (vec![], 1) } else { (vec![(String::new(), render(v))], 0) };
    Table { name: name.to_string(), entries, zeros }
}

fn compute(src: &Source, wanted: &[String]) -> Result<Vec<Table>, Fail> {
    let mut names: Vec<&str> = vec![];
    for w in wanted {
        let w = w.trim();
        if w == "all" {
            names.extend(TENSORS.iter().filter(|t| **t != "rotation_coeffs" || src.frame));
        } else if let Some(t) = TENSORS.iter().find(|t| **t == w) {
            names.push(t);
        } else {
            return Err(input(format!("unknown tensor '{w}'")));
        }
    }
    names.dedup();
    let (ctx, coords) = load(src, src.frame)?;
    let frame_labels: Vec<String> = (1..=coords.len()).map(|i| i.to_string()).collect();
    let mut out = vec![];
    for name in names {
        log::debug!("computing {name}");
        let fr = src.frame;
        let t = match name {
            "christoffel1" => table(name, &ctx.christoffel1().map_err(component)?, &coords),
            "christoffel2" => table(name, &ctx.christoffel2().map_err(component)?, &coords),
            "riemann" if fr => table(name, &ctx.riemann_frame().map_err(component)?, &frame_labels),
            "riemann" => table(name, &ctx.riemann().map_err(component)?, &coords),
            "ricci" if fr => table(name, &ctx.ricci_frame().map_err(component)?, &frame_labels),
            "ricci" => table(name, &ctx.ricci().map_err(component)?, &coords),
            "scalar" if fr => scalar_table(name, &ctx.scalar_frame().map_err(component)?),
            "scalar" => scalar_table(name, &ctx.scalar().map_err(component)?),
            "einstein" => table(name, &ctx.einstein().map_err(component)?, &coords),
            "weyl" => table(name, &ctx.weyl().map_err(component)?, &coords),
            _ => table(name, &ctx.rotation_coeffs().map_err(component)?, &frame_labels),
        };
        out.push(t);
    }
    Ok(out)
}

fn emit_tables(fmt: Format, tables: &[Table]) -> String {
    match fmt {
        Format::Text => {
            let mut s = String::new();
            for t in tables {
                s.push_str(&format!("[{}]\n", t.name));
                for (k, v) in &t.entries {
                    if k.is_empty() {
                        s.push_str(&format!("{v}\n"));
                    } else {
                        s.push_str(&format!("{k} = {v}\n"));
                    }
                }
                s.push_str(&format!("# {} nonzero, {} zero\n", t.entries.len(), t.zeros));
            }
            s
        }
        Format::Structured => {
            let mut doc = Map::new();
            let mut summary = Map::new();
            for t in tables {
                let m: Map<String, Value> = t.entries.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect();
                doc.insert(t.name.clone(), Value::Object(m));
                summary.insert(t.name.clone(), json!({ "nonzero": t.entries.len(), "zero": t.zeros }));
            }
            doc.insert("summary".into(), Value::Object(summary));
            format!("{}\n", serde_json::to_string_pretty(&Value::Object(doc)).unwrap())
        }
    }
}

fn classify(fmt: Format, src: &Source) -> Result<String, Fail> {
    let (ctx, _) = load(src, true)?;
    let res = petrov::weyl_scalars_of(&ctx).and_then(|s| petrov::classify(&s).map(|t| (s, t)));
    let (ty, psi, code) = match res {
        Ok((s, t)) => (t.to_string(), Some(s), 0),
        Err(PetrovError::Unclassifiable(e)) => {
            log::debug!("undecided expression: {}", render(&e));
            ("unclassifiable".to_string(), None, 2)
        }
        Err(PetrovError::Component(c)) => return Err(component(c)),
        Err(e) => return Err(Fail(2, e.to_string())),
    };
    let s = match fmt {
        Format::Text => {
            let mut s = format!("petrov_type: {ty}\n");
            if let Some(p) = &psi {
                for (n, v) in p.psi.iter().enumerate() {
                    s.push_str(&format!("psi{n}: {}\n", render(v)));
                }
            }
            s
        }
        Format::Structured => {
            let mut doc = Map::new();
            doc.insert("petrov_type".into(), Value::String(ty.clone()));
            if let Some(p) = &psi {
                let m: Map<String, Value> =
                    p.psi.iter().enumerate().map(|(n, v)| (format!("psi{n}"), Value::String(render(v)))).collect();
                doc.insert("weyl_scalars".into(), Value::Object(m));
            }
            format!("{}\n", serde_json::to_string_pretty(&Value::Object(doc)).unwrap())
        }
    };
    if code != 0 {
        return Err(Fail(code, s.trim_end().to_string()));
    }
    Ok(s)
}

fn algebra(fmt: Format, kind: &str, dims: &[usize], expr: Option<&str>, show_table: bool) -> Result<String, Fail> {
    let kind: AlgebraType = kind.parse().map_err(input)?;
    let cfg = init_atensor(kind, dims).map_err(input)?;
    let mut out = String::new();
    let mut doc = Map::new();
    if let Some(src) = expr {
        let e = parse_mvec(src).map_err(input)?;
        let r = atensimp(&cfg, &e).map_err(input)?;
        out.push_str(&format!("{r}\n"));
        doc.insert("result".into(), Value::String(r.to_string()));
    }
    if show_table {
        let t = multiplication_table(&cfg).map_err(input)?;
        let head: Vec<String> = basis_words(cfg.adim).iter().map(|w| MVec::word(w).to_string()).collect();
        let cells: Vec<Vec<String>> = t.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
        let width = cells.iter().flatten().chain(&head).map(|c| c.len()).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&format!("{}\n", line.join("  ").trim_end()));
        }
        doc.insert("basis".into(), json!(head));
        doc.insert("table".into(), json!(cells));
    }
    if expr.is_none() && !show_table {
        return Err(input("give --expr or --table"));
    }
    Ok(match fmt {
        Format::Text => out,
        Format::Structured => format!("{}\n", serde_json::to_string_pretty(&Value::Object(doc)).unwrap()),
    })
}

fn group(s: &str) -> Result<GroupSpec, Fail> {
    let s = s.trim();
    let (kind, rest) = if let Some(r) = s.strip_prefix("sym(") {
        (SymKind::Sym, r)
    } else if let Some(r) = s.strip_prefix("anti(") {
        (SymKind::Anti, r)
    } else {
        return Err(input(format!("bad symmetry group '{s}'")));
    };
    let inner = rest.strip_suffix(')').ok_or_else(|| input(format!("bad symmetry group '{s}'")))?;
    if inner.trim() == "all" {
        return Ok(GroupSpec { kind, positions: None });
    }
    let pos = inner
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| input(format!("bad position in '{s}'"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupSpec { kind, positions: Some(pos) })
}

fn groups(s: &str) -> Result<Vec<GroupSpec>, Fail> {
    s.split(';').filter(|g| !g.trim().is_empty()).map(group).collect()
}

fn decsym(ctx: &mut IndexContext, spec: &str) -> Result<(), Fail> {
    let f: Vec<&str> = spec.split(':').collect();
    if f.len() < 3 || f.len() > 5 {
        return Err(input(format!("bad --decsym '{spec}'")));
    }
    let n = |s: &str| s.trim().parse::<usize>().map_err(|_| input(format!("bad count in --decsym '{spec}'")));
    let cov = groups(f.get(3).copied().unwrap_or(""))?;
    let con = groups(f.get(4).copied().unwrap_or(""))?;
    ctx.decsym(f[0].trim(), n(f[1])?, n(f[2])?, &cov, &con).map_err(input)
}

fn index_err(e: IndexError) -> Fail {
    match e {
        IndexError::Parse { .. } | IndexError::Declaration(_) | IndexError::FreeMismatch(_) => input(e),
        other => Fail(2, other.to_string()),
    }
}

fn indicial_job(fmt: Format, a: &IndicialArgs) -> Result<String, Fail> {
    let mut ctx = IndexContext::with_metric(&a.metric);
    ctx.flags.frame = a.frame;
    ctx.flags.torsion = a.torsion;
    ctx.flags.nonmetricity = a.nonmetricity;
    ctx.flags.geometric_wedge = a.geometric_wedge;
    for d in &a.decsym {
        decsym(&mut ctx, d)?;
    }
    if let Some(v) = &a.vector {
        ctx.declare_vector(v);
    }
    let e = indicial::parse_index_expr(&a.expr).map_err(input)?;
    let need = |o: &Option<String>, what: &str| o.clone().ok_or_else(|| input(format!("{what} is required")));
    let r: IndexExpr = match a.op {
        IndicialOp::Canform => indicial::canform(&ctx, &e),
        IndicialOp::Contract => indicial::contract(&ctx, &e).map_err(index_err)?,
        IndicialOp::Covdiff => {
            let k = need(&a.index, "--index")?;
            indicial::canform(&ctx, &indicial::covdiff(&ctx, &e, &k).map_err(index_err)?)
        }
        IndicialOp::Idiff => indicial::canform(&ctx, &indicial::idiff(&e, &need(&a.index, "--index")?)),
        IndicialOp::Liediff => {
            let v = need(&a.vector, "--vector")?;
            indicial::canform(&ctx, &indicial::liediff(&ctx, &e, &v).map_err(index_err)?)
        }
        IndicialOp::Expand => indicial::expand_connections(&ctx, &e).map_err(index_err)?,
        IndicialOp::Wedge => {
            let o = indicial::parse_index_expr(&need(&a.other, "--other")?).map_err(input)?;
            indicial::wedge(&ctx, &e, &o).map_err(index_err)?
        }
        IndicialOp::Extdiff => indicial::extdiff(&ctx, &e, &need(&a.index, "--index")?).map_err(index_err)?,
        IndicialOp::Inner => indicial::inner(&ctx, &need(&a.vector, "--vector")?, &e).map_err(index_err)?,
    };
    Ok(match fmt {
        Format::Text => format!("{r}\n"),
        Format::Structured => {
            let doc = json!({ "result": r.to_string(), "terms": r.terms.len() });
            format!("{}\n", serde_json::to_string_pretty(&doc).unwrap())
        }
    })
}

fn job(cli: &Cli) -> Result<String, Fail> {
    match &cli.cmd {
        Command::Compute { src, tensors } => Ok(emit_tables(cli.format, &compute(src, tensors)?)),
        Command::Classify { src } => classify(cli.format, src),
        Command::Catalog { cmd: CatalogCmd::List } => Ok(catalog::list_entries().iter().map(|n| format!("{n}\n")).collect()),
        Command::Catalog { cmd: CatalogCmd::Show { name } } => catalog::show(name).map_err(catalog_err),
        Command::Algebra { kind, dims, expr, table } => algebra(cli.format, kind, dims, expr.as_deref(), *table),
        Command::Indicial(a) => indicial_job(cli.format, a),
    }
}

/// Run with `args` (program name first), writing results to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match job(&cli) {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Err(Fail(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}
