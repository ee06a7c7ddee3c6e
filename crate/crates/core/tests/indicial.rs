use proptest::prelude::*;
use tenscalc::indicial::{
    canform, contract, covdiff, expand_connections, extdiff, ichr1, ichr2, inner, liediff, parse_index_expr,
    parse_tensor, split_indices, wedge, GroupSpec, IndexContext, IndexError, IndexExpr, Signed, SymKind,
};

fn e(s: &str) -> IndexExpr {
    parse_index_expr(s).unwrap()
}

fn ctx() -> IndexContext {
    IndexContext::with_metric("g")
}

fn same(c: &IndexContext, a: &IndexExpr, b: &IndexExpr) -> bool {
    canform(c, &a.sub(b)).is_zero()
}

#[test]
fn split_and_variance_lists() {
    let l: Vec<Signed> = ["a", "-b", "c"].iter().map(|s| Signed::parse(s)).collect();
    assert_eq!(split_indices(&l), (vec!["a".to_string(), "c".into()], vec!["b".to_string()]));
    let t = parse_tensor("T([a,-b,c],[d])").unwrap();
    assert_eq!(t.covariant_indices(), ["a", "c"]);
    assert_eq!(t.contravariant_indices(), ["b", "d"]);
    let t = parse_tensor("T([a,-b,c],[])").unwrap();
    assert!(t.ordered);
    assert_eq!(t.to_string(), "T([a,-b,c],[])");
}

#[test]
fn parse_display_round_trip() {
    for s in ["T([a],[c])", "T([a,-b],[])", "f([],[],k)", "2*g([a,b],[])*T([],[b])", "-1/2*S([a],[],b,c) + R([a,b],[],c)"] {
        let x = e(s);
        assert_eq!(e(&x.to_string()), x, "{s}");
    }
}

#[test]
fn contraction_examples() {
    let c = ctx();
    let r = contract(&c, &e("g([a,b],[])*T([],[b,c])")).unwrap();
    assert_eq!(r.to_string(), "T([a],[c])");
    // legacy objects lose the slot position of a raised index
    let r = contract(&c, &e("g([],[d,c])*g([b,c],[])*T([],[a,b])")).unwrap();
    assert_eq!(r.to_string(), "T([],[d,a])");
    // ordered objects keep it
    let r = contract(&c, &e("g([-d,-c],[])*g([b,c],[])*T([a,-b],[])")).unwrap();
    assert_eq!(r.to_string(), "T([a,-d],[])");
    let r = contract(&c, &e("g([a,b],[])*g([],[a,b])")).unwrap();
    assert_eq!(r.to_string(), "dim");
    let bad = IndexExpr::tensor(parse_tensor("g([a,b],[])").unwrap())
        .mul(&IndexExpr::tensor(parse_tensor("T([b],[])").unwrap()));
    assert!(matches!(contract(&c, &bad), Err(IndexError::Conflict(l)) if l == "b"));
    assert!(matches!(parse_index_expr("A([a],[])*B([a],[])"), Err(IndexError::Conflict(_))));
    // only registered metrics contract
    let r = contract(&IndexContext::new(), &e("h([a,b],[])*T([],[b])")).unwrap();
    assert_eq!(r.terms[0].factors.len(), 2);
}

#[test]
fn metric_does_not_pass_through_a_derivative() {
    let c = ctx();
    let r = contract(&c, &e("g([],[a,b])*f([],[],b)")).unwrap();
    assert_eq!(r.terms[0].factors.len(), 2);
    // a mixed metric only renames
    let r = contract(&c, &e("g([a],[b])*f([],[],b)")).unwrap();
    assert_eq!(r.to_string(), "f([],[],a)");
}

#[test]
fn decsym_and_canform() {
    let mut c = IndexContext::new();
    c.decsym("g", 2, 0, &[GroupSpec::sym_all()], &[]).unwrap();
    assert_eq!(canform(&c, &e("g([b,a],[])")).to_string(), "g([a,b],[])");
    // the covariant declaration covers mixed variance
    assert_eq!(canform(&c, &e("g([-b,a],[])")).to_string(), "g([a,-b],[])");
    c.decsym("e", 2, 0, &[GroupSpec::anti_all()], &[]).unwrap();
    assert!(canform(&c, &e("e([a,b],[]) + e([b,a],[])")).is_zero());
    assert_eq!(canform(&c, &e("e([b,a],[])")).to_string(), "-e([a,b],[])");
    assert!(canform(&c, &IndexExpr::tensor(parse_tensor("e([a,a],[])").unwrap())).is_zero());
    // dummies renamed and like terms merged
    let r = canform(&c, &e("A([b],[])*B([],[b]) + B([],[c])*A([c],[])"));
    assert_eq!(r.to_string(), "2*A([%1],[])*B([],[%1])");
    // canonical order is fixed before contraction
    let p = canform(&c, &e("e([b,a],[])*T([],[b,c])"));
    let q = canform(&c, &e("e([a,b],[])*T([],[b,c])"));
    assert!(canform(&c, &p.add(&q)).is_zero());
    // declarations are checked
    let bad = [GroupSpec::sym_all(), GroupSpec { kind: SymKind::Anti, positions: Some(vec![1]) }];
    assert!(c.decsym("h", 2, 0, &bad, &[]).is_err());
    let out = [GroupSpec { kind: SymKind::Sym, positions: Some(vec![1, 3]) }];
    assert!(c.decsym("h", 2, 0, &out, &[]).is_err());
}

#[test]
fn christoffel() {
    let c = ctx();
    let x = ichr1(&c, "h", "k", "l");
    let want = e("1/2*g([k,l],[],h) + 1/2*g([l,h],[],k) - 1/2*g([h,k],[],l)");
    assert!(same(&c, &x, &want));
    let y = ichr2(&c, "h", "k", "j", &[]);
    let want = e("g([],[j,l])*(1/2*g([k,l],[],h) + 1/2*g([l,h],[],k) - 1/2*g([h,k],[],l))");
    assert!(same(&c, &y, &want));
    // first-kind symbol is symmetric in its first two indices
    assert!(same(&c, &ichr1(&c, "h", "k", "l"), &ichr1(&c, "k", "h", "l")));
    let d = ichr2(&c, "a", "b", "c", &["d"]);
    assert_eq!(canform(&c, &d).terms.len(), 6);
    assert!(same(&c, &expand_connections(&c, &e("ichr2([a,b],[c],d)")).unwrap(), &d));
}

#[test]
fn covdiff_examples() {
    let c = ctx();
    let r = covdiff(&c, &e("X([],[j])"), "k").unwrap();
    assert!(same(&c, &r, &e("X([],[j],k) + ichr2([h,k],[j])*X([],[h])")));
    let r = covdiff(&c, &e("X([i],[])"), "k").unwrap();
    assert!(same(&c, &r, &e("X([i],[],k) - ichr2([i,k],[h])*X([h],[])")));
    let r = covdiff(&c, &e("f"), "k").unwrap();
    assert_eq!(r.to_string(), "f([],[],k)");
    assert!(matches!(covdiff(&c, &e("X([k],[])"), "k"), Err(IndexError::Collision(_))));
    // the metric is covariantly constant
    let r = expand_connections(&c, &covdiff(&c, &e("g([i,j],[])"), "k").unwrap()).unwrap();
    assert!(r.is_zero(), "{r}");
}

#[test]
fn lie_derivative() {
    let mut c = ctx();
    assert!(matches!(liediff(&c, &e("A([l],[])"), "V"), Err(IndexError::NotVector(_))));
    c.declare_vector("V");
    let r = liediff(&c, &e("A([l],[])"), "V").unwrap();
    assert!(same(&c, &r, &e("V([],[h])*A([l],[],h) + A([h],[])*V([],[h],l)")));
    let r = liediff(&c, &e("W([],[j])"), "V").unwrap();
    assert!(same(&c, &r, &e("V([],[h])*W([],[j],h) - W([],[h])*V([],[j],h)")));
}

#[test]
fn torsion_commutator() {
    let mut c = ctx();
    c.flags.torsion = true;
    c.decsym("itr", 2, 1, &[GroupSpec::anti_all()], &[]).unwrap();
    let fij = covdiff(&c, &covdiff(&c, &e("f"), "i").unwrap(), "j").unwrap();
    let fji = covdiff(&c, &covdiff(&c, &e("f"), "j").unwrap(), "i").unwrap();
    let r = fij.sub(&fji).add(&e("itr([i,j],[k])*f([],[],k)"));
    let r = expand_connections(&c, &r).unwrap();
    assert!(r.is_zero(), "{r}");
    // without the torsion term the commutator survives
    let r = expand_connections(&c, &fij.sub(&fji)).unwrap();
    assert_eq!(r.to_string(), "-f([],[],%1)*itr([i,j],[%1])");
}

#[test]
fn nonmetricity() {
    let mut c = ctx();
    c.flags.nonmetricity = true;
    let r = covdiff(&c, &e("g([i,j],[])"), "k").unwrap().add(&e("inm([k],[])*g([i,j],[])"));
    let r = expand_connections(&c, &r).unwrap();
    assert!(r.is_zero(), "{r}");
}

#[test]
fn forms() {
    let mut c = ctx();
    let r = wedge(&c, &e("a([i],[])"), &e("b([j],[])")).unwrap();
    assert!(same(&c, &r, &e("1/2*a([i],[])*b([j],[]) - 1/2*a([j],[])*b([i],[])")));
    c.flags.geometric_wedge = true;
    let r = wedge(&c, &e("a([i],[])"), &e("b([j],[])")).unwrap();
    assert!(same(&c, &r, &e("a([i],[])*b([j],[]) - a([j],[])*b([i],[])")));
    // odd degree squares to zero
    assert!(wedge(&c, &e("a([i],[])"), &e("a([j],[])")).unwrap().is_zero());
    c.decsym("w", 2, 0, &[GroupSpec::anti_all()], &[]).unwrap();
    assert!(!wedge(&c, &e("w([i,j],[])"), &e("w([k,l],[])")).unwrap().is_zero());
    assert!(matches!(wedge(&c, &e("v([],[i])"), &e("b([j],[])")), Err(IndexError::NotForm(_))));

    c.flags.geometric_wedge = false;
    let r = extdiff(&c, &e("a([i],[])"), "k").unwrap();
    assert!(same(&c, &r, &e("1/2*a([i],[],k) - 1/2*a([k],[],i)")));
    // d(df) = 0
    let df = extdiff(&c, &e("f"), "i").unwrap();
    assert!(extdiff(&c, &df, "j").unwrap().is_zero());

    assert!(inner(&c, "v", &e("a([i],[])")).is_err());
    c.declare_vector("v");
    let r = inner(&c, "v", &e("w([i,j],[])")).unwrap();
    assert!(same(&c, &r, &e("v([],[i])*w([i,j],[])")));
}

// random ordered tensors over a few slots
fn ordered() -> impl Strategy<Value = Vec<(char, bool)>> {
    prop::sample::subsequence(vec!['a', 'b', 'c', 'd'], 1..=4)
        .prop_flat_map(|ls| {
            let n = ls.len();
            (Just(ls), prop::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(ls, up)| ls.into_iter().zip(up).collect())
}

fn show(slots: &[(char, bool)]) -> String {
    let v: Vec<String> = slots.iter().map(|(l, up)| if *up { format!("-{l}") } else { l.to_string() }).collect();
    format!("T([{}],[])", v.join(","))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raise_lower_round_trip(slots in ordered(), pick in 0usize..4) {
        let c = ctx();
        let s = pick % slots.len();
        let (l, up) = slots[s];
        let t = e(&show(&slots));
        // move the index to the other level and back
        let (there, back) = if up {
            (format!("g([x,{l}],[])"), format!("g([-{l},-x],[])"))
        } else {
            (format!("g([-x,-{l}],[])"), format!("g([{l},x],[])"))
        };
        let once = contract(&c, &e(&there).mul(&t)).unwrap();
        prop_assert_eq!(once.terms[0].factors.len(), 1);
        let twice = contract(&c, &e(&back).mul(&once)).unwrap();
        prop_assert_eq!(twice, canform(&c, &t));
    }

    #[test]
    fn contract_is_idempotent(slots in ordered(), k in 0usize..3) {
        let c = ctx();
        let metrics = ["g([a,z],[])", "g([-b,-y],[])", "g([c],[w])"];
        let x = e(&show(&slots)).mul(&e(metrics[k]));
        if x.validate().is_ok() {
            let once = contract(&c, &x).unwrap();
            prop_assert_eq!(contract(&c, &once).unwrap(), once);
        }
    }

    #[test]
    fn antisymmetric_sum_vanishes(slots in ordered()) {
        let mut c = IndexContext::new();
        c.decsym("T", slots.len(), 0, &[GroupSpec::anti_all()], &[]).unwrap();
        let mut rev = slots.clone();
        rev.swap(0, slots.len() - 1);
        let x = e(&show(&slots)).add(&e(&show(&rev)));
        prop_assert_eq!(canform(&c, &x).is_zero(), slots.len() > 1);
    }

    #[test]
    fn covdiff_leibniz(a in ordered(), b in prop::sample::select(vec!["S([p],[])", "S([-p],[])", "h", "S([p,-q],[])"])) {
        let c = ctx();
        let x = e(&show(&a));
        let y = e(b);
        let lhs = covdiff(&c, &x.mul(&y), "k").unwrap();
        let rhs = covdiff(&c, &x, "k").unwrap().mul(&y).add(&x.mul(&covdiff(&c, &y, "k").unwrap()));
        prop_assert!(same(&c, &lhs, &rhs));
    }

    #[test]
    fn wedge_convention_bridge(p in 1usize..3, q in 1usize..3) {
        let mut c = IndexContext::new();
        c.decsym("A", p, 0, &[GroupSpec::anti_all()], &[]).unwrap();
        c.decsym("B", q, 0, &[GroupSpec::anti_all()], &[]).unwrap();
        let ia = ["i", "j"][..p].join(",");
        let ib = ["k", "l"][..q].join(",");
        let a = e(&format!("A([{ia}],[])"));
        let b = e(&format!("B([{ib}],[])"));
        let t = wedge(&c, &a, &b).unwrap();
        c.flags.geometric_wedge = true;
        let g = wedge(&c, &a, &b).unwrap();
        let f = |n: usize| (1..=n as i64).product::<i64>();
        let ratio = tenscalc::symkernel::Expr::rational(f(p + q), f(p) * f(q));
        prop_assert_eq!(g, canform(&c, &t.scale(&ratio)));
    }
}
