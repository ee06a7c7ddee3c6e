mod common;

use common::exprs::{at, corpus, expr, point};
use proptest::prelude::*;
use tenscalc::symkernel::{diff, is_zero, parse, ratsimp, render, Expr};

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs()).max(1.0)
}

fn fd(e: &Expr, x: f64, y: f64) -> Option<f64> {
    let h = 1e-5;
    Some((at(e, x + h, y)? - at(e, x - h, y)?) / (2.0 * h))
}

#[test]
fn corpus_diff_matches_finite_differences() {
    for (s, e) in common::exprs::CORPUS.iter().zip(corpus()) {
        let d = diff(&e, "x");
        for &(x, y) in &[(0.3, 0.7), (1.1, 2.3), (2.5, 0.9)] {
            let (a, b) = (at(&d, x, y).unwrap(), fd(&e, x, y).unwrap());
            assert!((a - b).abs() <= 1e-6, "{s} at ({x},{y}): {a} vs {b}");
        }
    }
}

#[test]
fn corpus_ratsimp_agrees_numerically() {
    for e in corpus() {
        let r = ratsimp(&e);
        for &(x, y) in &[(0.3, 0.7), (1.7, 1.3)] {
            assert!(close(at(&e, x, y).unwrap(), at(&r, x, y).unwrap(), 1e-9), "{e}");
        }
    }
}

#[test]
fn known_identities() {
    for s in ["sin(x)^2 + cos(x)^2 - 1", "cosh(x)^2 - sinh(x)^2 - 1", "(x+y)^2 - x^2 - 2*x*y - y^2", "tan(x)*cos(x) - sin(x)"] {
        assert!(is_zero(&parse(s).unwrap()), "{s}");
    }
    assert!(!is_zero(&parse("sin(x)^2 - cos(x)^2").unwrap()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn canonical_idempotent(e in expr()) {
        let c = e.canonical();
        prop_assert_eq!(c.canonical(), c);
        let r = ratsimp(&e);
        prop_assert_eq!(ratsimp(&r), r);
    }

    #[test]
    fn diff_linear(a in expr(), b in expr(), k in -3i64..4) {
        let lhs = diff(&(Expr::int(k) * a.clone() + b.clone()), "x");
        let rhs = Expr::int(k) * diff(&a, "x") + diff(&b, "x");
        prop_assert!(is_zero(&(lhs - rhs)));
    }

    #[test]
    fn ratsimp_numeric_agreement(e in expr(), (x, y) in point()) {
        let (a, b) = (at(&e, x, y), at(&ratsimp(&e), x, y));
        if let (Some(a), Some(b)) = (a, b) {
            prop_assert!(close(a, b, 1e-9), "{} vs {}", a, b);
        }
    }

    #[test]
    fn diff_vs_finite_differences(e in expr()) {
        let d = diff(&e, "x");
        if let (Some(a), Some(b)) = (at(&d, 0.3, 0.7), fd(&e, 0.3, 0.7)) {
            prop_assert!((a - b).abs() <= 1e-6, "{} vs {} for {}", a, b, e);
        }
    }

    #[test]
    fn is_zero_sound(a in expr(), b in expr(), pts in prop::collection::vec(point(), 20)) {
        // a mix of true zeros and non-zeros
        for e in [a.clone() * (b.clone() + Expr::one()) - a.clone() * b.clone() - a.clone(), a.clone() - b.clone()] {
            if is_zero(&e) {
                for &(x, y) in &pts {
                    if let Some(v) = at(&e, x, y) {
                        let scale = at(&a, x, y).unwrap_or(1.0).abs().max(at(&b, x, y).unwrap_or(1.0).abs()).max(1.0);
                        prop_assert!(v.abs() <= 1e-9 * scale * scale, "{} = {} at ({}, {})", e, v, x, y);
                    }
                }
            }
        }
    }

    #[test]
    fn render_round_trip(e in expr()) {
        let c = e.canonical();
        prop_assert_eq!(parse(&render(&c)).unwrap(), c);
    }
}
