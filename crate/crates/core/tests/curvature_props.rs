use proptest::prelude::*;
use tenscalc::catalog::load;
use tenscalc::component::{setup_metric, Chart, Components, MetricContext};
use tenscalc::symkernel::{is_zero, parse, Expr};

fn riemann_antisymmetric(r: &Components) -> Result<(), String> {
    for (ix, v) in r.iter() {
        let w = r.get(&[ix[0], ix[2], ix[1], ix[3]]).clone();
        if !is_zero(&(v.clone() + w)) {
            return Err(format!("R{ix:?}"));
        }
    }
    Ok(())
}

fn ricci_symmetric(r: &Components) -> Result<(), String> {
    for (ix, v) in r.iter() {
        if !is_zero(&(v.clone() - r.get(&[ix[1], ix[0]]).clone())) {
            return Err(format!("Ric{ix:?}"));
        }
    }
    Ok(())
}

// every pair of slots traced with the inverse metric
fn weyl_traceless(ctx: &MetricContext) -> Result<(), String> {
    let w = ctx.weyl().unwrap();
    let u = ctx.ug();
    let n = ctx.dim();
    for p in 0..4 {
        for q in p + 1..4 {
            for a in 0..n {
                for b in 0..n {
                    let mut parts = vec![];
                    for i in 0..n {
                        for k in 0..n {
                            let g = u.get(&[i, k]);
                            if g.is_zero() {
                                continue;
                            }
                            let mut ix = vec![0; 4];
                            let rest: Vec<usize> = (0..4).filter(|s| *s != p && *s != q).collect();
                            ix[p] = i;
                            ix[q] = k;
                            ix[rest[0]] = a;
                            ix[rest[1]] = b;
                            parts.push(g.clone() * w.get(&ix).clone());
                        }
                    }
                    if !is_zero(&Expr::add(parts)) {
                        return Err(format!("trace ({p},{q}) at ({a},{b})"));
                    }
                }
            }
        }
    }
    Ok(())
}

#[test]
fn catalog_curvature_symmetries() {
    for name in ["exteriorschwarzschild", "interiorschwarzschild", "kerr_newman", "spherical"] {
        let c = load(name, None, false).unwrap();
        riemann_antisymmetric(&c.riemann().unwrap()).map_err(|e| format!("{name}: {e}")).unwrap();
        ricci_symmetric(&c.ricci().unwrap()).map_err(|e| format!("{name}: {e}")).unwrap();
        if c.dim() == 4 {
            weyl_traceless(&c).map_err(|e| format!("{name}: {e}")).unwrap();
        }
    }
}

#[test]
fn christoffel_count() {
    for name in ["exteriorschwarzschild", "kerr_newman"] {
        let c = load(name, None, false).unwrap();
        let n = c.dim();
        let g = c.christoffel2().unwrap();
        let mut independent = 0;
        for h in 0..n {
            for k in 0..n {
                for j in 0..n {
                    assert!(is_zero(&(g.get(&[h, k, j]).clone() - g.get(&[k, h, j]).clone())), "{name}");
                    if h <= k {
                        independent += 1;
                    }
                }
            }
        }
        assert_eq!(independent, n * n * (n + 1) / 2);
    }
}

#[test]
fn frame_and_coordinate_scalars_agree() {
    for name in ["polar", "exteriorschwarzschild"] {
        let f = load(name, None, true).unwrap();
        let c = load(name, None, false).unwrap();
        let d = f.scalar_frame().unwrap() - c.scalar().unwrap();
        assert!(is_zero(&d), "{name}: {d}");
    }
}

const FACTORS: &[&str] = &["1", "x^2", "exp(2*y)", "1 + x^2", "y^2 + 1", "exp(x*z)", "(1 + z^2)^2", "x*y + 3"];

fn diag3() -> impl Strategy<Value = Vec<&'static str>> {
    proptest::collection::vec(proptest::sample::select(FACTORS), 3)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn random_diagonal_metrics(d in diag3(), lorentz in any::<bool>()) {
        let lg: Vec<Vec<Expr>> = (0..3)
            .map(|i| (0..3).map(|j| {
                if i != j {
                    Expr::zero()
                } else {
                    let e = parse(d[i]).unwrap();
                    if lorentz && i == 0 { -e } else { e }
                }
            }).collect())
            .collect();
        let c = setup_metric(Chart::new(&["x", "y", "z"]).unwrap(), &lg).unwrap();
        prop_assert!(riemann_antisymmetric(&c.riemann().unwrap()).is_ok());
        prop_assert!(ricci_symmetric(&c.ricci().unwrap()).is_ok());
        prop_assert!(ricci_symmetric(&c.einstein().unwrap()).is_ok());
    }
}
