use proptest::prelude::*;
use tenscalc::symkernel::{eval_real, parse, Env, Expr, Func};

/// Fixed expression corpus: catalog-style entries and their building
/// blocks, all finite on x, y in [0.3, 2.7].
pub const CORPUS: &[&str] = &[
    "x^2*y - 3*x + 1/2",
    "(x + y)^3/(x - 4)",
    "sin(x)*cos(y) + x*tan(y)",
    "sin(x)^2 + cos(x)^2",
    "exp(2*x)*log(y)",
    "sqrt(x*y)/(1 + x^2)",
    "sqrt(1 + y^2/x^2)",
    "(1 - x/(2*y))^(-1)",
    "x^2*sin(y)^2",
    "sinh(x)^2 - cosh(y)",
    "tanh(x*y)/exp(y)",
    "log(x^2 + y^2)",
    "abs(x - 3)*y",
    "(x^2 - y^2)*sqrt(x^2 + 1)",
    "cos(x*y)^3 - x/sin(y)",
    "(y - x^2)/((x + 1)*(y + 2))",
    "x^3/sqrt(x^2 + y^2)",
    "exp(-x^2)*sin(2*y)",
    "(x*cos(y) - y*sin(x))^2",
    "1/(x*y) + 1/(x + y)",
];

pub fn corpus() -> Vec<Expr> {
    CORPUS.iter().map(|s| parse(s).unwrap()).collect()
}

pub fn env(x: f64, y: f64) -> Env {
    [("x".to_string(), x), ("y".to_string(), y)].into_iter().collect()
}

pub fn at(e: &Expr, x: f64, y: f64) -> Option<f64> {
    eval_real(e, &env(x, y))
}

/// Random expressions in x and y that stay finite and moderate on
/// [0.3, 2.7]^2.
pub fn expr() -> impl Strategy<Value = Expr> {
    let leaf = prop_oneof![
        Just(Expr::sym("x")),
        Just(Expr::sym("y")),
        (1i64..5).prop_map(Expr::int),
        (1i64..4, 2i64..5).prop_map(|(n, d)| Expr::rational(n, d)),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a + b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a - b),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a * b),
            // denominators kept away from zero
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a / (Expr::pow(b, 2) + Expr::one())),
            (inner.clone(), 2i64..4).prop_map(|(a, n)| Expr::pow(a, n)),
            inner.clone().prop_map(|a| Expr::apply(Func::Sin, a)),
            inner.clone().prop_map(|a| Expr::apply(Func::Cos, a)),
            inner.clone().prop_map(|a| Expr::apply(Func::Exp, Expr::apply(Func::Sin, a))),
            inner.clone().prop_map(|a| Expr::apply(Func::Sqrt, Expr::pow(a, 2) + Expr::one())),
            inner.clone().prop_map(|a| Expr::apply(Func::Log, Expr::pow(a, 2) + Expr::one())),
        ]
    })
}

pub fn point() -> impl Strategy<Value = (f64, f64)> {
    (0.3f64..2.7, 0.3f64..2.7)
}
