use super::expr::{Expr, Func, Node};

/// Derivative of an expression tree by the chain, product and power rules.
pub fn diff_expr(e: &Expr, x: &str) -> Expr {
    if !e.depends_on(x) {
        return Expr::zero();
    }
    match e.node() {
        Node::Num(_) | Node::I => Expr::zero(),
        Node::Sym(s) => Expr::int(i64::from(&**s == x)),
        Node::Add(xs) => Expr::add(xs.iter().map(|t| diff_expr(t, x)).collect()),
        Node::Mul(xs) => {
            let mut terms = Vec::with_capacity(xs.len());
            for (i, f) in xs.iter().enumerate() {
                let df = diff_expr(f, x);
                if df.is_zero() {
                    continue;
                }
                let mut fs: Vec<Expr> = xs
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != i)
                    .map(|(_, g)| g.clone())
                    .collect();
                fs.push(df);
                terms.push(Expr::mul(fs));
            }
            Expr::add(terms)
        }
        Node::Pow(b, n) => Expr::mul(vec![Expr::int(*n), Expr::pow(b.clone(), n - 1), diff_expr(b, x)]),
        Node::Apply(f, a) => {
            let da = diff_expr(a, x);
            let ap = |g: Func| Expr::apply(g, a.clone());
            let outer = match f {
                Func::Sin => ap(Func::Cos),
                Func::Cos => Expr::neg(ap(Func::Sin)),
                Func::Tan => Expr::add(vec![Expr::one(), Expr::pow(e.clone(), 2)]),
                Func::Sinh => ap(Func::Cosh),
                Func::Cosh => ap(Func::Sinh),
                Func::Tanh => Expr::sub(Expr::one(), Expr::pow(e.clone(), 2)),
                Func::Exp => e.clone(),
                Func::Log => Expr::pow(a.clone(), -1),
                Func::Sqrt => Expr::mul(vec![Expr::rational(1, 2), Expr::pow(e.clone(), -1)]),
                Func::Abs => Expr::div(e.clone(), a.clone()),
            };
            Expr::mul(vec![outer, da])
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::parse;

    #[test]
    fn table() {
        let d = diff_expr(&parse("sin(x)").unwrap(), "x");
        assert_eq!(d, parse("cos(x)").unwrap());
        let d = diff_expr(&parse("r^2").unwrap(), "r");
        assert_eq!(d, parse("2*r").unwrap());
        let d = diff_expr(&parse("x*y + y^3").unwrap(), "x");
        assert_eq!(d, parse("y").unwrap());
    }
}
