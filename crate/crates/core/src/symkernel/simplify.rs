use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::diff::diff_expr;
use super::eval::{eval, Env};
use super::expr::{Expr, Node};
use super::ratfun::RatCtx;

/// Partial derivative by the symbol `x`.
pub fn diff(e: &Expr, x: &str) -> Expr {
    diff_expr(e, x)
}

/// Rational normal form: one quotient of polynomials in kernels with
/// common factors cancelled. Expressions that divide by zero come back as is.
pub fn ratsimp(e: &Expr) -> Expr {
    let ctx = RatCtx::rational();
    match ctx.from_expr(e) {
        Ok(r) => ctx.to_expr(&r),
        Err(_) => e.clone(),
    }
}

/// `ratsimp` with `sin^2 -> 1 - cos^2` and `cosh^2 -> 1 + sinh^2`.
pub fn trigsimp(e: &Expr) -> Expr {
    let ctx = RatCtx::trig();
    match ctx.from_expr(e) {
        Ok(r) => ctx.to_expr(&r),
        Err(_) => e.clone(),
    }
}

/// Exact zero test: the trig normal form has a zero numerator.
pub fn is_zero(e: &Expr) -> bool {
    RatCtx::trig().from_expr(e).is_ok_and(|r| r.is_zero())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZeroTest {
    Zero,
    NonZero,
    Unknown,
}

/// Numeric evidence at `samples` pseudo-random points. `Zero` here is only
/// evidence, never proof.
pub fn numeric_zero_test(e: &Expr, samples: usize) -> ZeroTest {
    if let Some(q) = e.as_num() {
        return if q == &num_rational::BigRational::from_integer(0.into()) {
            ZeroTest::Zero
        } else {
            ZeroTest::NonZero
        };
    }
    let syms = e.symbols();
    let mut rng = StdRng::seed_from_u64(e.hash_value());
    let mut seen = 0;
    for _ in 0..samples {
        let env: Env = syms.iter().map(|s| (s.clone(), rng.gen_range(0.3..2.7))).collect();
        let Some(v) = eval(e, &env) else { return ZeroTest::Unknown };
        if !v.re.is_finite() || !v.im.is_finite() {
            continue;
        }
        let scale = match e.node() {
            Node::Add(xs) => xs.iter().filter_map(|x| eval(x, &env)).map(|t| t.norm()).sum::<f64>(),
            _ => v.norm(),
        };
        if !scale.is_finite() {
            continue;
        }
        seen += 1;
        if v.norm() > 1e-9 * scale.max(1.0) {
            return ZeroTest::NonZero;
        }
    }
    if seen == 0 {
        ZeroTest::Unknown
    } else {
        ZeroTest::Zero
    }
}

/// Exact test first; numeric evidence can only show a nonzero value.
pub fn zero_test(e: &Expr) -> ZeroTest {
    if is_zero(e) {
        return ZeroTest::Zero;
    }
    match numeric_zero_test(e, 8) {
        ZeroTest::NonZero => ZeroTest::NonZero,
        _ => ZeroTest::Unknown,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::parse;

    fn p(s: &str) -> Expr {
        parse(s).unwrap()
    }

    #[test]
    fn ratsimp_examples() {
        assert_eq!(ratsimp(&p("(x^2 - 1)/(x - 1)")), p("x + 1"));
        assert_eq!(ratsimp(&p("a/b + c/d")), p("(a*d + b*c)/(b*d)"));
        let psi = p("psi3^2 - 3*psi2*psi4").subst(&|s| match s {
            "psi3" => Some(Expr::int(3)),
            "psi2" => Some(Expr::int(1)),
            "psi4" => Some(Expr::int(3)),
            _ => None,
        });
        assert!(ratsimp(&psi).is_zero());
    }

    #[test]
    fn trigsimp_examples() {
        assert_eq!(trigsimp(&p("sin(x)^2 + cos(x)^2")), Expr::one());
        assert_eq!(trigsimp(&p("cosh(u)^2 - sinh(u)^2")), Expr::one());
        assert_eq!(trigsimp(&p("(1 - cos(theta)^2)/sin(theta)")), p("sin(theta)"));
    }

    #[test]
    fn zero_tests() {
        assert!(is_zero(&Expr::zero()));
        assert!(is_zero(&p("sin(x)^2 + cos(x)^2 - 1")));
        assert!(!is_zero(&p("x - y")));
        assert_eq!(zero_test(&p("x - y")), ZeroTest::NonZero);
        assert_eq!(zero_test(&p("sin(x)^2 + cos(x)^2 - 1")), ZeroTest::Zero);
    }
}
