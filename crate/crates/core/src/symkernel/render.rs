use std::fmt::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::expr::{Expr, Node};

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        render_into(self, &mut s);
        f.write_str(&s)
    }
}

/// Plain-text rendering that the parser reads back to the same expression.
pub fn render(e: &Expr) -> String {
    e.to_string()
}

fn render_into(e: &Expr, out: &mut String) {
    match e.node() {
        Node::Num(q) => write_rational(q, out),
        Node::Sym(s) => out.push_str(s),
        Node::I => out.push_str("%i"),
        Node::Add(xs) => render_sum(xs, out),
        Node::Mul(_) | Node::Pow(..) => render_product(e, out),
        Node::Apply(f, a) => {
            out.push_str(f.name());
            out.push('(');
            render_into(a, out);
            out.push(')');
        }
    }
}

fn write_rational(q: &BigRational, out: &mut String) {
    if q.is_integer() {
        write!(out, "{}", q.numer()).unwrap();
    } else {
        write!(out, "{}/{}", q.numer(), q.denom()).unwrap();
    }
}

fn render_sum(xs: &[Expr], out: &mut String) {
    // lead with a positive term when there is one
    let mut order: Vec<&Expr> = xs.iter().filter(|x| !x.looks_negative()).collect();
    order.extend(xs.iter().filter(|x| x.looks_negative()));
    for (k, t) in order.iter().enumerate() {
        if t.looks_negative() {
            out.push_str(if k == 0 { "-" } else { " - " });
            render_into(&Expr::neg((*t).clone()), out);
        } else {
            if k > 0 {
                out.push_str(" + ");
            }
            render_into(t, out);
        }
    }
}

fn render_factor(b: &Expr, n: i64, out: &mut String) {
    let paren = matches!(b.node(), Node::Add(_) | Node::Mul(_) | Node::Num(_) | Node::Pow(..));
    if paren && (n != 1 || matches!(b.node(), Node::Add(_))) {
        out.push('(');
        render_into(b, out);
        out.push(')');
    } else {
        render_into(b, out);
    }
    if n != 1 {
        write!(out, "^{}", n).unwrap();
    }
}

fn render_product(e: &Expr, out: &mut String) {
    let (coeff, rest) = e.split_coeff();
    let factors: Vec<Expr> = match rest.node() {
        Node::Mul(xs) => xs.clone(),
        _ => vec![rest.clone()],
    };
    let mut num: Vec<(Expr, i64)> = Vec::new();
    let mut den: Vec<(Expr, i64)> = Vec::new();
    for f in &factors {
        match f.node() {
            Node::Pow(b, n) if *n < 0 => den.push((b.clone(), -n)),
            Node::Pow(b, n) => num.push((b.clone(), *n)),
            _ => num.push((f.clone(), 1)),
        }
    }
    if coeff.is_negative() {
        out.push('-');
    }
    let p: BigInt = coeff.numer().abs();
    let q: BigInt = coeff.denom().clone();
    let mut first = true;
    if !p.is_one() || num.is_empty() {
        write!(out, "{}", p).unwrap();
        first = false;
    }
    for (b, n) in &num {
        if !first {
            out.push('*');
        }
        render_factor(b, *n, out);
        first = false;
    }
    if den.is_empty() {
        if !q.is_one() {
            write!(out, "/{}", q).unwrap();
        }
        return;
    }
    // "2*(x - 1)" would be re-read as 2*x - 2, so keep the number apart
    let lone_sum = den.len() == 1 && den[0].1 == 1 && matches!(den[0].0.node(), Node::Add(_));
    if !q.is_one() && lone_sum {
        write!(out, "/{}", q).unwrap();
        out.push('/');
        render_factor(&den[0].0, 1, out);
        return;
    }
    let count = den.len() + usize::from(!q.is_one());
    out.push('/');
    if count > 1 {
        out.push('(');
    }
    let mut first = true;
    if !q.is_one() {
        write!(out, "{}", q).unwrap();
        first = false;
    }
    for (b, n) in &den {
        if !first {
            out.push('*');
        }
        render_factor(b, *n, out);
        first = false;
    }
    if count > 1 {
        out.push(')');
    }
}

/// LaTeX rendering for reports.
pub fn render_latex(e: &Expr) -> String {
    let mut s = String::new();
    latex_into(e, &mut s);
    s
}

fn latex_into(e: &Expr, out: &mut String) {
    match e.node() {
        Node::Num(q) => {
            if q.is_integer() {
                write!(out, "{}", q.numer()).unwrap();
            } else {
                if q.is_negative() {
                    out.push('-');
                }
                write!(out, "\\frac{{{}}}{{{}}}", q.numer().abs(), q.denom()).unwrap();
            }
        }
        Node::Sym(s) => match s.as_ref() {
            "%pi" => out.push_str("\\pi"),
            "theta" | "phi" | "eta" | "psi" | "chi" | "rho" | "tau" | "mu" | "nu" | "lambda" => {
                write!(out, "\\{}", s).unwrap()
            }
            _ => out.push_str(s),
        },
        Node::I => out.push('i'),
        Node::Add(xs) => {
            for (k, t) in xs.iter().enumerate() {
                if t.looks_negative() {
                    out.push_str(" - ");
                    latex_into(&Expr::neg(t.clone()), out);
                } else {
                    if k > 0 {
                        out.push_str(" + ");
                    }
                    latex_into(t, out);
                }
            }
        }
        Node::Mul(_) | Node::Pow(..) => {
            let (coeff, rest) = e.split_coeff();
            let factors: Vec<Expr> = match rest.node() {
                Node::Mul(xs) => xs.clone(),
                _ => vec![rest.clone()],
            };
            let mut num = String::new();
            let mut den = String::new();
            let p = coeff.numer().abs();
            let q = coeff.denom().clone();
            if !p.is_one() {
                write!(num, "{}", p).unwrap();
            }
            if !q.is_one() {
                write!(den, "{}", q).unwrap();
            }
            for f in &factors {
                let (b, n) = match f.node() {
                    Node::Pow(b, n) => (b.clone(), *n),
                    _ => (f.clone(), 1),
                };
                let tgt = if n < 0 { &mut den } else { &mut num };
                if !tgt.is_empty() {
                    tgt.push_str(" \\, ");
                }
                let paren = matches!(b.node(), Node::Add(_));
                if paren {
                    tgt.push_str("\\left(");
                }
                latex_into(&b, tgt);
                if paren {
                    tgt.push_str("\\right)");
                }
                if n.abs() != 1 {
                    write!(tgt, "^{{{}}}", n.abs()).unwrap();
                }
            }
            if coeff.is_negative() {
                out.push('-');
            }
            if num.is_empty() {
                num.push('1');
            }
            if den.is_empty() {
                out.push_str(&num);
            } else {
                write!(out, "\\frac{{{}}}{{{}}}", num, den).unwrap();
            }
        }
        Node::Apply(f, a) => {
            if f.name() == "sqrt" {
                out.push_str("\\sqrt{");
                latex_into(a, out);
                out.push('}');
            } else if f.name() == "abs" {
                out.push_str("\\left|");
                latex_into(a, out);
                out.push_str("\\right|");
            } else {
                write!(out, "\\{}\\left(", f.name()).unwrap();
                latex_into(a, out);
                out.push_str("\\right)");
            }
        }
    }
}
