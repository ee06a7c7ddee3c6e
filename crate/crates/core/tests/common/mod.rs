#![allow(dead_code)]

pub mod exprs;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use tenscalc::petrov::PetrovType;

type Q = BigRational;

// coefficients low to high, no trailing zeros
fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn deriv(p: &[Q]) -> Vec<Q> {
    trim(p.iter().enumerate().skip(1).map(|(i, c)| c * Q::from_integer(BigInt::from(i))).collect())
}

fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if r.len() < b.len() {
        return (vec![], trim(r));
    }
    let mut q = vec![Q::zero(); r.len() - db];
    for i in (0..q.len()).rev() {
        let c = &r[i + db] / &lead;
        for (j, bj) in b.iter().enumerate() {
            r[i + j] = &r[i + j] - &c * bj;
        }
        q[i] = c;
    }
    (trim(q), trim(r))
}

fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = divrem(&a, &b).1;
        a = b;
        b = r;
    }
    let lead = a.last().cloned().unwrap_or_else(Q::one);
    a.into_iter().map(|c| c / &lead).collect()
}

fn sub(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect())
}

/// Multiplicities of the roots of psi0 - 4 psi1 z + 6 psi2 z^2 - 4 psi3 z^3 + psi4 z^4
/// on the Riemann sphere, largest first. Empty when every psi vanishes.
pub fn root_multiplicities(psi: &[i64; 5]) -> Vec<usize> {
    let k = [1, -4, 6, -4, 1];
    let f = trim((0..5).map(|i| Q::from_integer(BigInt::from(k[i] * psi[i]))).collect());
    if f.is_empty() {
        return vec![];
    }
    let mut out = vec![];
    if f.len() < 5 {
        out.push(5 - f.len());
    }
    if f.len() > 1 {
        // Yun's square-free decomposition
        let fp = deriv(&f);
        let a0 = gcd(&f, &fp);
        let mut b = divrem(&f, &a0).0;
        let c = divrem(&fp, &a0).0;
        let mut d = sub(&c, &deriv(&b));
        let mut i = 1;
        while b.len() > 1 {
            let a = gcd(&b, &d);
            let nb = divrem(&b, &a).0;
            let nc = divrem(&d, &a).0;
            for _ in 0..a.len() - 1 {
                out.push(i);
            }
            d = sub(&nc, &deriv(&nb));
            b = nb;
            i += 1;
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Petrov type read off the coincidences of principal null directions.
pub fn oracle_type(psi: &[i64; 5]) -> PetrovType {
    match root_multiplicities(psi).as_slice() {
        [] => PetrovType::O,
        [4] => PetrovType::N,
        [3, 1] => PetrovType::III,
        [2, 2] => PetrovType::D,
        [2, 1, 1] => PetrovType::II,
        [1, 1, 1, 1] => PetrovType::I,
        m => panic!("bad multiplicities {m:?}"),
    }
}
