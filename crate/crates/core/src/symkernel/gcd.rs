use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::expr::Kernel;
use super::poly::{powmod, Poly};

// 2^61 - 1
const P: u64 = 2_305_843_009_213_693_951;

/// Greatest common divisor over Z[kernels], leading coefficient positive.
pub fn poly_gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        let mut r = b.clone();
        r.normalize_sign();
        return r;
    }
    if b.is_zero() {
        let mut r = a.clone();
        r.normalize_sign();
        return r;
    }
    if a.is_constant() || b.is_constant() {
        return Poly::constant(a.content().gcd(&b.content()));
    }
    let ca = a.content();
    let cb = b.content();
    let ma = a.mono_content();
    let mb = b.mono_content();
    let a1 = a.div_mono(&ma).exact_div(&Poly::constant(ca.clone())).unwrap();
    let b1 = b.div_mono(&mb).exact_div(&Poly::constant(cb.clone())).unwrap();
    let outer = Poly::monomial(ma.gcd(&mb), ca.gcd(&cb));
    let inner = gcd_primitive(&a1, &b1);
    outer.mul(&inner)
}

// Both inputs have unit integer content and no monomial factor.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let mut an = a.clone();
    an.normalize_sign();
    let mut bn = b.clone();
    bn.normalize_sign();
    if an == bn {
        return an;
    }
    if an.len() <= bn.len() {
        if bn.exact_div(&an).is_some() {
            return an;
        }
    } else if an.exact_div(&bn).is_some() {
        return bn;
    }

    let va = a.vars();
    let vb = b.vars();
    if let Some(x) = va.iter().find(|k| !vb.contains(*k)) {
        return gcd_with_coeffs(b, a, x);
    }
    if let Some(x) = vb.iter().find(|k| !va.contains(*k)) {
        return gcd_with_coeffs(a, b, x);
    }

    // main variable: smallest degree keeps the remainder sequence short
    let x = va
        .iter()
        .min_by_key(|k| (a.degree(k).max(b.degree(k)), a.degree(k) + b.degree(k)))
        .unwrap()
        .clone();

    let ac = a.coeffs(&x);
    let bc = b.coeffs(&x);
    if modular_degree(&ac, &bc, &x) == Some(0) {
        // the gcd does not involve x, so it divides every coefficient
        let mut g = ac.iter().rev().find(|c| !c.is_zero()).unwrap().clone();
        for c in ac.iter().chain(bc.iter()) {
            if c.is_zero() {
                continue;
            }
            g = poly_gcd(&g, c);
            if g.is_constant() {
                return Poly::one();
            }
        }
        return g;
    }

    let cont_a = content_in(&ac);
    let cont_b = content_in(&bc);
    let pa: Vec<Poly> = ac.iter().map(|c| c.exact_div(&cont_a).unwrap()).collect();
    let pb: Vec<Poly> = bc.iter().map(|c| c.exact_div(&cont_b).unwrap()).collect();
    let gc = poly_gcd(&cont_a, &cont_b);
    let gp = subresultant(pa, pb);
    let gp = primitive_part(gp);
    let mut g = gc.mul(&Poly::from_coeffs(&x, &gp));
    g.normalize_sign();
    g
}

// gcd(other, all coefficients of `with_x` in x); x does not occur in `other`.
fn gcd_with_coeffs(other: &Poly, with_x: &Poly, x: &Kernel) -> Poly {
    let mut g = other.clone();
    let mut cs = with_x.coeffs(x);
    // smallest coefficients first gives early exits
    cs.sort_by_key(|c| c.len());
    for c in cs.iter().filter(|c| !c.is_zero()) {
        g = poly_gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn content_in(cs: &[Poly]) -> Poly {
    let mut nz: Vec<&Poly> = cs.iter().filter(|c| !c.is_zero()).collect();
    nz.sort_by_key(|c| c.len());
    let mut g = nz[0].clone();
    for c in &nz[1..] {
        if g.is_one() {
            break;
        }
        g = poly_gcd(&g, c);
    }
    if g.is_constant() {
        return Poly::one();
    }
    // keep the sign of the leading coefficient with the primitive part
    g.normalize_sign();
    g
}

fn primitive_part(cs: Vec<Poly>) -> Vec<Poly> {
    let c = content_in(&cs);
    let mut out: Vec<Poly> = if c.is_one() {
        cs
    } else {
        cs.iter().map(|x| x.exact_div(&c).unwrap()).collect()
    };
    let ic = out.iter().fold(BigInt::zero(), |g, x| g.gcd(&x.content()));
    if !ic.is_one() && !ic.is_zero() {
        let icp = Poly::constant(ic);
        out = out.iter().map(|x| x.exact_div(&icp).unwrap()).collect();
    }
    out
}

fn deg(a: &[Poly]) -> usize {
    a.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn trim(mut a: Vec<Poly>) -> Vec<Poly> {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
    a
}

fn is_zero_vec(a: &[Poly]) -> bool {
    a.iter().all(|c| c.is_zero())
}

// lc(b)^(deg a - deg b + 1) * a mod b
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = deg(b);
    let lb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    let da = deg(a);
    for i in (0..=(da - db)).rev() {
        let top = r.get(db + i).cloned().unwrap_or_default();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        if !top.is_zero() {
            for (j, bc) in b.iter().enumerate().take(db + 1) {
                r[i + j] = r[i + j].sub(&top.mul(bc));
            }
        }
    }
    r.truncate(db.max(1));
    trim(r)
}

fn subresultant(a: Vec<Poly>, b: Vec<Poly>) -> Vec<Poly> {
    let (mut a, mut b) = if deg(&a) >= deg(&b) { (a, b) } else { (b, a) };
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let d = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if is_zero_vec(&r) {
            return b;
        }
        if deg(&r) == 0 {
            return vec![Poly::one()];
        }
        let divisor = g.mul(&h.pow(d));
        a = b;
        b = r.iter().map(|c| c.exact_div(&divisor).expect("subresultant division")).collect();
        g = a[deg(&a)].clone();
        h = match d {
            0 => h,
            1 => g.clone(),
            _ => g.pow(d).exact_div(&h.pow(d - 1)).expect("subresultant h"),
        };
    }
}

/// Degree in x of the gcd of images modulo a prime at a random point.
/// It bounds the true degree from above when leading coefficients survive.
fn modular_degree(ac: &[Poly], bc: &[Poly], x: &Kernel) -> Option<usize> {
    let mut seed: u64 = 0x9e37_79b9_7f4a_7c15;
    for k in ac.iter().chain(bc.iter()).flat_map(|c| c.vars()) {
        seed = seed.rotate_left(7) ^ k.0.hash_value();
    }
    seed ^= x.0.hash_value();
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..3 {
        let mut vals: HashMap<Kernel, u64> = HashMap::new();
        let mut val = |k: &Kernel| *vals.entry(k.clone()).or_insert_with(|| rng.gen_range(2..P));
        let ea: Vec<u64> = ac.iter().map(|c| c.eval_mod(P, &mut val)).collect();
        let eb: Vec<u64> = bc.iter().map(|c| c.eval_mod(P, &mut val)).collect();
        if ea.last() == Some(&0) || eb.last() == Some(&0) {
            continue;
        }
        return Some(modp_gcd_degree(ea, eb));
    }
    None
}

fn modp_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>) -> usize {
    fn norm(v: &mut Vec<u64>) {
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
    }
    norm(&mut a);
    norm(&mut b);
    loop {
        if b.len() == 1 && b[0] == 0 {
            return a.len() - 1;
        }
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        // a mod b
        let inv = powmod(*b.last().unwrap(), P - 2, P);
        while a.len() >= b.len() && !(a.len() == 1 && a[0] == 0) {
            let shift = a.len() - b.len();
            let f = (*a.last().unwrap() as u128 * inv as u128 % P as u128) as u64;
            for (j, &bj) in b.iter().enumerate() {
                let sub = (f as u128 * bj as u128 % P as u128) as u64;
                a[shift + j] = (a[shift + j] + P - sub) % P;
            }
            a.pop();
            norm(&mut a);
            if a.is_empty() {
                a.push(0);
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symkernel::{parse, RatCtx};

    fn p(s: &str) -> Poly {
        let ctx = RatCtx::rational();
        let r = ctx.from_expr(&parse(s).unwrap()).unwrap();
        assert!(r.den().is_one());
        r.num().clone()
    }

    #[test]
    fn univariate() {
        let g = poly_gcd(&p("x^2 - 1"), &p("x^2 + 2*x + 1"));
        assert_eq!(g, p("x + 1"));
    }

    #[test]
    fn multivariate_common_factor() {
        let f = p("(x + y)*(x - 2*y)^2*(y^2 + 3)");
        let g = p("(x - 2*y)*(x^2 + y)*(y^2 + 3)");
        let mut want = p("(x - 2*y)*(y^2 + 3)");
        want.normalize_sign();
        assert_eq!(poly_gcd(&f, &g), want);
    }

    #[test]
    fn coprime() {
        assert!(poly_gcd(&p("x*y + 1"), &p("x + y")).is_one());
    }

    #[test]
    fn contents_and_monomials() {
        assert_eq!(poly_gcd(&p("6*x^2*y"), &p("4*x*y^3")), p("2*x*y"));
        assert_eq!(poly_gcd(&p("6*x + 6"), &p("4*x + 4")), p("2*x + 2"));
    }

    #[test]
    fn modp_degree() {
        // (x+1)(x+2) and (x+1)(x+3)
        assert_eq!(modp_gcd_degree(vec![2, 3, 1], vec![3, 4, 1]), 1);
        assert_eq!(modp_gcd_degree(vec![1, 0, 1], vec![0, 1]), 0);
    }
}
