//! Multivariate gcd over the integers by recursive primitive remainder sequences.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::poly::{Mono, Poly};

/// Greatest common divisor with positive leading coefficient (zero only if both are zero).
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.clone().sign_normalized();
    }
    if b.is_zero() {
        return a.clone().sign_normalized();
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let mg = ma.gcd(&mb);
    let ca = a.int_content();
    let cb = b.int_content();
    let ig = ca.gcd(&cb);
    let a1 = a.div_mono(&ma).expect("content divides").div_int(&ca);
    let b1 = b.div_mono(&mb).expect("content divides").div_int(&cb);
    let g = gcd_primitive(&a1, &b1);
    g.mul_term(&mg, &ig).sign_normalized()
}

/// gcd of polynomials with unit integer content and no monomial content.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if let Some((m, _)) = a.as_monomial() {
        debug_assert!(m.is_one());
        return Poly::one();
    }
    if a == b || *a == b.neg() {
        return a.clone().sign_normalized();
    }
    let n = a.max_slots().max(b.max_slots());
    // variable present in only one argument: fold in the other's coefficients
    for slot in (0..n).rev() {
        let (ina, inb) = (a.has_slot(slot), b.has_slot(slot));
        if ina && !inb {
            return gcd_with_coeffs(b, a, slot);
        }
        if inb && !ina {
            return gcd_with_coeffs(a, b, slot);
        }
    }
    // variables the gcd cannot involve, by degree bounds from modular images
    let mut best: Option<(u32, usize)> = None;
    for slot in (0..n).filter(|s| a.has_slot(*s)) {
        match degree_bound(a, b, slot) {
            Some(0) => {
                let mut g = Poly::zero();
                for c in a.coeffs_in(slot).values().chain(b.coeffs_in(slot).values()) {
                    g = gcd(&g, c);
                    if g.is_one() {
                        break;
                    }
                }
                return g;
            }
            Some(d) if best.is_none_or(|(bd, _)| d < bd) => best = Some((d, slot)),
            _ => {}
        }
    }
    let slot = best.map(|(_, s)| s).unwrap_or_else(|| (0..n).rev().find(|s| a.has_slot(*s)).expect("nonconstant"));
    let (ca, pa) = content_split(a, slot);
    let (cb, pb) = content_split(b, slot);
    let c = gcd(&ca, &cb);
    let (mut p, mut q) = if pa.degree_in(slot) >= pb.degree_in(slot) { (pa, pb) } else { (pb, pa) };
    loop {
        let r = prem(&p, &q, slot);
        if r.is_zero() {
            break;
        }
        if r.degree_in(slot) == 0 {
            q = Poly::one();
            break;
        }
        p = q;
        q = content_split(&r, slot).1;
    }
    let (_, q) = content_split(&q, slot);
    c.mul(&q).sign_normalized()
}

const P: u64 = 2_147_483_647;

fn mod_p(c: &BigInt) -> u64 {
    let p = BigInt::from(P);
    (((c % &p) + &p) % &p).to_u64().expect("reduced")
}

fn pow_mod(mut b: u64, mut e: u32) -> u64 {
    let mut r = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % P;
        }
        b = b * b % P;
        e >>= 1;
    }
    r
}

/// Dense univariate image in `slot` with the other variables at `point`, mod `P`.
fn image(a: &Poly, slot: usize, point: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.degree_in(slot) as usize + 1];
    for (m, c) in a.terms() {
        let mut v = mod_p(c);
        for (s, x) in point.iter().enumerate() {
            if s != slot {
                v = v * pow_mod(*x, m.exp(s)) % P;
            }
        }
        let d = m.exp(slot) as usize;
        out[d] = (out[d] + v) % P;
    }
    out
}

fn trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn inv_mod(a: u64) -> u64 {
    pow_mod(a, (P - 2) as u32)
}

fn gcd_degree_mod(a: Vec<u64>, b: Vec<u64>) -> usize {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        // a mod b
        let lb = inv_mod(*b.last().expect("nonempty"));
        while a.len() >= b.len() {
            let f = a.last().expect("nonempty") * lb % P;
            let off = a.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                a[off + i] = (a[off + i] + P - f * bi % P) % P;
            }
            a = trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Upper bound for the degree of gcd(a, b) in `slot`, if a good evaluation point is found.
fn degree_bound(a: &Poly, b: &Poly, slot: usize) -> Option<u32> {
    let n = a.max_slots().max(b.max_slots());
    let (da, db) = (a.degree_in(slot) as usize, b.degree_in(slot) as usize);
    let mut state = 0x9e37_79b9_7f4a_7c15u64 ^ slot as u64;
    let mut best: Option<u32> = None;
    for _ in 0..3 {
        let point: Vec<u64> = (0..n)
            .map(|_| {
                state = state.wrapping_mul(6_364_136_223_846_793_005).wrapping_add(1_442_695_040_888_963_407);
                (state >> 33) % (P - 2) + 2
            })
            .collect();
        let (ia, ib) = (image(a, slot, &point), image(b, slot, &point));
        if ia[da] == 0 || ib[db] == 0 {
            continue;
        }
        let d = gcd_degree_mod(ia, ib) as u32;
        best = Some(best.map_or(d, |b| b.min(d)));
        if d == 0 {
            break;
        }
    }
    best
}

/// gcd(other, coefficients of `with` in `slot`), where `other` is free of that variable.
fn gcd_with_coeffs(other: &Poly, with: &Poly, slot: usize) -> Poly {
    let mut g = other.clone();
    for c in with.coeffs_in(slot).values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Content in `slot` (gcd of coefficients) and primitive part.
fn content_split(p: &Poly, slot: usize) -> (Poly, Poly) {
    let cs = p.coeffs_in(slot);
    let mut g = Poly::zero();
    for c in cs.values() {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    let prim = p.exact_div(&g).expect("content divides");
    (g, prim)
}

fn lead_in(cs: &BTreeMap<u32, Poly>) -> (u32, Poly) {
    let (d, c) = cs.iter().next_back().expect("nonzero");
    (*d, c.clone())
}

/// Sparse pseudo-remainder of `p` by `q` with respect to `slot`.
fn prem(p: &Poly, q: &Poly, slot: usize) -> Poly {
    let (dq, lq) = lead_in(&q.coeffs_in(slot));
    let mut r = p.clone();
    loop {
        if r.is_zero() {
            return r;
        }
        let cs = r.coeffs_in(slot);
        let (dr, lr) = lead_in(&cs);
        if dr < dq {
            return r;
        }
        let shift = Mono::var(super::Variable::from_slot(slot), dr - dq);
        r = r.mul(&lq).sub(&q.mul(&lr).mul_term(&shift, &BigInt::one()));
    }
}
