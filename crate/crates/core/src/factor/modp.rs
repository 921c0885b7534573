//! Univariate polynomials over a small prime field, coefficients low to high.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

pub(crate) type Zp = Vec<u64>;

fn trim(mut a: Zp) -> Zp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

#[inline]
fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut b, mut e) = (1u64, a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

pub(crate) fn from_z(a: &[BigInt], p: u64) -> Zp {
    let pb = BigInt::from(p);
    trim(
        a.iter()
            .map(|c| {
                let r = c % &pb;
                let r = if r < BigInt::zero() { r + &pb } else { r };
                r.to_u64().expect("reduced")
            })
            .collect(),
    )
}

pub(crate) fn to_z(a: &[u64]) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

pub(crate) fn degree(a: &[u64]) -> isize {
    a.len() as isize - 1
}

#[cfg(test)]
pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> Zp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Zp {
    let n = a.len().max(b.len());
    trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p).collect())
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulm(x, y, p)) % p;
        }
    }
    trim(out)
}

fn scale(a: &[u64], c: u64, p: u64) -> Zp {
    trim(a.iter().map(|&x| mulm(x, c, p)).collect())
}

pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (Zp, Zp) {
    assert!(!b.is_empty());
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let li = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for k in (0..q.len()).rev() {
        let c = mulm(r[k + db], li, p);
        if c == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mulm(c, bj, p)) % p;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Zp {
    divrem(a, b, p).1
}

pub(crate) fn monic(a: &[u64], p: u64) -> Zp {
    match a.last() {
        Some(&l) => scale(a, inv(l, p), p),
        None => Vec::new(),
    }
}

pub(crate) fn derivative(a: &[u64], p: u64) -> Zp {
    trim(a.iter().enumerate().skip(1).map(|(i, &c)| mulm(c, i as u64 % p, p)).collect())
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Zp {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = std::mem::replace(&mut y, r);
    }
    monic(&x, p)
}

/// `(g, s, t)` with `s*a + t*b = g`, `g` monic.
pub(crate) fn ext_gcd(a: &[u64], b: &[u64], p: u64) -> (Zp, Zp, Zp) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let li = inv(*r0.last().expect("nonzero gcd"), p);
    (scale(&r0, li, p), scale(&s0, li, p), scale(&t0, li, p))
}

fn powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Zp {
    let mut result = vec![1u64];
    let mut b = rem(base, m, p);
    for i in 0..e.bits() {
        if e.bit(i) {
            result = rem(&mul(&result, &b, p), m, p);
        }
        b = rem(&mul(&b, &b, p), m, p);
    }
    rem(&result, m, p)
}

/// Distinct-degree factorization of a monic square-free `f`.
fn distinct_degree(f: &[u64], p: u64) -> Vec<(Zp, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let pb = BigUint::from(p);
    let mut d = 0;
    while degree(&f) >= 2 * (d as isize + 1) {
        d += 1;
        h = powmod(&h, &pb, &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            out.push((g.clone(), d));
            f = divrem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    if f.len() > 1 {
        let d = f.len() - 1;
        out.push((f, d));
    }
    out
}

/// Cantor–Zassenhaus splitting of a product of degree-`d` irreducibles (odd `p`).
fn equal_degree<R: Rng>(f: &[u64], d: usize, p: u64, rng: &mut R) -> Vec<Zp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.to_vec()];
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: Zp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let mut g = gcd(&a, f, p);
        if g.len() == 1 {
            let b = powmod(&a, &e, f, p);
            g = gcd(&sub(&b, &[1], p), f, p);
        }
        if g.len() > 1 && g.len() < f.len() {
            let h = divrem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&monic(&h, p), d, p, rng));
            return out;
        }
    }
}

/// Monic irreducible factors of a monic square-free `f` over GF(p), `p` odd.
pub(crate) fn factor_squarefree<R: Rng>(f: &[u64], p: u64, rng: &mut R) -> Vec<Zp> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out
}
