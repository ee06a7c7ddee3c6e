use std::collections::HashMap;

use num_complex::Complex64;

use super::expr::{rational_to_f64, Expr, Func, Node};

/// Numeric values for symbols.
pub type Env = HashMap<String, f64>;

/// Complex evaluation with principal branches. `None` when a symbol is
/// unbound; `%pi` defaults to π.
pub fn eval(e: &Expr, env: &Env) -> Option<Complex64> {
    Some(match e.node() {
        Node::Num(q) => Complex64::new(rational_to_f64(q), 0.0),
        Node::I => Complex64::i(),
        Node::Sym(s) => match env.get(&**s) {
            Some(v) => Complex64::new(*v, 0.0),
            None if &**s == "%pi" => Complex64::new(std::f64::consts::PI, 0.0),
            None => return None,
        },
        Node::Add(xs) => {
            let mut acc = Complex64::new(0.0, 0.0);
            for x in xs {
                acc += eval(x, env)?;
            }
            acc
        }
        Node::Mul(xs) => {
            let mut acc = Complex64::new(1.0, 0.0);
            for x in xs {
                acc *= eval(x, env)?;
            }
            acc
        }
        Node::Pow(b, n) => {
            let v = eval(b, env)?;
            match i32::try_from(*n) {
                Ok(k) => v.powi(k),
                Err(_) => v.powf(*n as f64),
            }
        }
        Node::Apply(f, a) => {
            let v = eval(a, env)?;
            match f {
                Func::Sin => v.sin(),
                Func::Cos => v.cos(),
                Func::Tan => v.tan(),
                Func::Sinh => v.sinh(),
                Func::Cosh => v.cosh(),
                Func::Tanh => v.tanh(),
                Func::Exp => v.exp(),
                Func::Log => v.ln(),
                Func::Sqrt => v.sqrt(),
                Func::Abs => Complex64::new(v.norm(), 0.0),
            }
        }
    })
}

/// Real value, if the imaginary part is negligible.
pub fn eval_real(e: &Expr, env: &Env) -> Option<f64> {
    let v = eval(e, env)?;
    if v.im.abs() <= 1e-9 * (1.0 + v.re.abs()) {
        Some(v.re)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::parse;

    #[test]
    fn basics() {
        let mut env = Env::new();
        env.insert("x".into(), 0.5);
        let v = eval_real(&parse("sin(x)^2 + cos(x)^2").unwrap(), &env).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        let z = eval(&parse("sqrt(-4*x)").unwrap(), &env).unwrap();
        assert!((z - Complex64::new(0.0, 2.0f64.sqrt())).norm() < 1e-12);
        assert!(eval(&parse("y").unwrap(), &env).is_none());
    }
}
