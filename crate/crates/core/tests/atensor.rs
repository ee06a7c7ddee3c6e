use proptest::prelude::*;
use tenscalc::atensor::{
    atensimp, init_atensor, multiplication_table, parse_mvec, AlgebraConfig, AlgebraError, AlgebraType, MVec,
};
use tenscalc::symkernel::Expr;

fn simp(c: &AlgebraConfig, s: &str) -> String {
    atensimp(c, &parse_mvec(s).unwrap()).unwrap().to_string()
}

fn ints(a: &[Vec<Expr>]) -> Vec<Vec<i64>> {
    a.iter().map(|r| r.iter().map(|x| x.to_string().parse().unwrap()).collect()).collect()
}

#[test]
fn init_forms() {
    let c = init_atensor(AlgebraType::Clifford, &[0, 0, 2]).unwrap();
    assert_eq!(ints(&c.aform), vec![vec![-1, 0], vec![0, -1]]);
    let c = init_atensor(AlgebraType::Clifford, &[2, 1, 1]).unwrap();
    assert_eq!(c.adim, 4);
    assert_eq!(ints(&c.aform), vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 0, 0], vec![0, 0, 0, -1]]);
    let l = init_atensor(AlgebraType::LieEnvelop, &[3]).unwrap();
    assert_eq!(ints(&l.aform), vec![vec![0, 3, -2], vec![-3, 0, 1], vec![2, -1, 0]]);
    let s = init_atensor(AlgebraType::Symplectic, &[2, 1]).unwrap();
    assert_eq!(ints(&s.aform), vec![vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]]);
    assert!(init_atensor(AlgebraType::Clifford, &[1, 1, 1, 1]).is_err());
    assert!(init_atensor(AlgebraType::Symplectic, &[1, 1, 1]).is_err());
    assert!(init_atensor(AlgebraType::LieEnvelop, &[]).is_err());
    assert!("nonsense".parse::<AlgebraType>().is_err());
}

#[test]
fn lie_envelop_antisymmetric_in_range() {
    for n in 1..=6 {
        let l = init_atensor(AlgebraType::LieEnvelop, &[n]).unwrap();
        let a = ints(&l.aform);
        for i in 0..n {
            assert_eq!(a[i][i], 0);
            for j in 0..n {
                assert_eq!(a[i][j], -a[j][i]);
                assert!(a[i][j].unsigned_abs() as usize <= n);
            }
        }
    }
}

#[test]
fn forms() {
    let c = init_atensor(AlgebraType::Clifford, &[0, 0, 2]).unwrap();
    assert_eq!(c.sf(1, 1).unwrap(), Expr::int(-1));
    assert!(matches!(c.af(1, 2), Err(AlgebraError::TypeMismatch { .. })));
    let s = init_atensor(AlgebraType::Symplectic, &[2]).unwrap();
    assert_eq!(s.af(1, 2).unwrap(), -s.af(2, 1).unwrap());
    let l = init_atensor(AlgebraType::LieEnvelop, &[3]).unwrap();
    assert_eq!(l.av(1, 2).unwrap(), MVec::basis(3));
    assert_eq!(l.av(1, 3).unwrap(), MVec::basis(2).scale(&Expr::int(-1)));
    assert!(l.av(1, 1).unwrap().is_zero());
    assert!(matches!(l.sf(1, 4), Err(AlgebraError::TypeMismatch { .. })));
}

#[test]
fn simplification_examples() {
    let g = init_atensor(AlgebraType::Grassmann, &[]).unwrap();
    assert_eq!(simp(&g, "v1.v1"), "0");
    assert_eq!(simp(&g, "v2.v1"), "-v1.v2");
    let q = init_atensor(AlgebraType::Clifford, &[0, 0, 2]).unwrap();
    assert_eq!(simp(&q, "v1.v1"), "-1");
    assert_eq!(simp(&q, "v2.v1"), "-v1.v2");
    assert_eq!(simp(&q, "v1.v2.v1.v2"), "-1");
    assert_eq!(simp(&q, "v2.v1.v1"), "-v2");
    let s = init_atensor(AlgebraType::Symmetric, &[]).unwrap();
    assert_eq!(simp(&s, "v3.v1.v2"), "v1.v2.v3");
    let u = init_atensor(AlgebraType::Universal, &[]).unwrap();
    assert_eq!(simp(&u, "v2.v1"), "v2.v1");
    let sp = init_atensor(AlgebraType::Symplectic, &[2]).unwrap();
    assert_eq!(simp(&sp, "v2.v1"), "-2 + v1.v2");
    let l = init_atensor(AlgebraType::LieEnvelop, &[3]).unwrap();
    assert_eq!(simp(&l, "v2.v1"), "-2*v3 + v1.v2");
    assert!(matches!(atensimp(&q, &MVec::basis(3)), Err(AlgebraError::Index(3))));
}

#[test]
fn quaternion_table() {
    let q = init_atensor(AlgebraType::Clifford, &[0, 0, 2]).unwrap();
    let t = multiplication_table(&q).unwrap();
    let want = [
        ["1", "v1", "v2", "v1.v2"],
        ["v1", "-1", "v1.v2", "-v2"],
        ["v2", "-v1.v2", "-1", "v1"],
        ["v1.v2", "v2", "-v1", "-1"],
    ];
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(t[i][j].to_string(), want[i][j], "cell {i},{j}");
        }
    }
}

#[test]
fn other_tables() {
    let s = init_atensor(AlgebraType::Symmetric, &[2]).unwrap();
    assert_eq!(multiplication_table(&s).unwrap()[2][1].to_string(), "v1.v2");
    let u = init_atensor(AlgebraType::Universal, &[2]).unwrap();
    assert_eq!(multiplication_table(&u).unwrap()[2][1].to_string(), "v2.v1");
    assert!(matches!(multiplication_table(&init_atensor(AlgebraType::Grassmann, &[]).unwrap()), Err(AlgebraError::TableSize(0))));
}

fn configs() -> Vec<AlgebraConfig> {
    use AlgebraType::*;
    vec![
        init_atensor(Grassmann, &[3]).unwrap(),
        init_atensor(Clifford, &[1, 1, 1]).unwrap(),
        init_atensor(Clifford, &[0, 0, 3]).unwrap(),
        init_atensor(Symmetric, &[3]).unwrap(),
        init_atensor(Symplectic, &[2, 1]).unwrap(),
        init_atensor(LieEnvelop, &[3]).unwrap(),
    ]
}

fn word(max: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=3usize, 0..=max)
}

#[test]
fn lie_jacobi() {
    let l = init_atensor(AlgebraType::LieEnvelop, &[3]).unwrap();
    let b = |i| MVec::basis(i);
    for u in 1..=3 {
        for v in 1..=3 {
            for w in 1..=3 {
                let j = b(u).commutator(&b(v).commutator(&b(w)))
                    .add(&b(v).commutator(&b(w).commutator(&b(u))))
                    .add(&b(w).commutator(&b(u).commutator(&b(v))));
                assert!(atensimp(&l, &j).unwrap().is_zero());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn idempotent(k in 0usize..6, w1 in word(4), w2 in word(4)) {
        let c = &configs()[k];
        let e = MVec::word(&w1).add(&MVec::word(&w2).scale(&Expr::int(-3)));
        let once = atensimp(c, &e).unwrap();
        prop_assert_eq!(atensimp(c, &once).unwrap(), once);
    }

    #[test]
    fn commutator_axioms(k in 0usize..6, u in 1..=3usize, v in 1..=3usize) {
        use AlgebraType::*;
        let c = &configs()[k];
        let (a, b) = (MVec::basis(u), MVec::basis(v));
        let two = Expr::int(2);
        let (lhs, rhs) = match c.kind {
            Grassmann => (a.mul(&b).add(&b.mul(&a)), MVec::zero()),
            Clifford => (a.mul(&b).add(&b.mul(&a)), MVec::scalar(two * c.sf(u, v).unwrap())),
            Symmetric => (a.commutator(&b), MVec::zero()),
            Symplectic => (a.commutator(&b), MVec::scalar(two * c.af(u, v).unwrap())),
            LieEnvelop => (a.commutator(&b), c.av(u, v).unwrap().scale(&two)),
            Universal => unreachable!(),
        };
        prop_assert_eq!(atensimp(c, &lhs).unwrap(), rhs);
    }

    #[test]
    fn clifford_associative(k in 1usize..3, a in word(4), b in word(4), d in word(4)) {
        let c = &configs()[k];
        let s = |x: &MVec| atensimp(c, x).unwrap();
        let (a, b, d) = (MVec::word(&a), MVec::word(&b), MVec::word(&d));
        prop_assert_eq!(s(&s(&a.mul(&b)).mul(&d)), s(&a.mul(&s(&b.mul(&d)))));
    }
}
