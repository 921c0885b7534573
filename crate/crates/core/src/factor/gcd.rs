//! Multivariate gcd over Q by recursive primitive pseudo-remainder sequences.

use crate::poly::Polynomial;

fn highest_var(mask: u32) -> usize {
    31 - mask.leading_zeros() as usize
}

/// Pseudo-remainder of `a` by `b` with respect to variable `v`.
pub(crate) fn prem(a: &Polynomial, b: &Polynomial, v: usize) -> Polynomial {
    let db = b.degree_in(v);
    let cb = b.coefficients_in(v);
    let lb = cb.last().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.coefficients_in(v).pop().expect("nonzero");
        let shift = Polynomial::var(b.ring(), v).pow((dr - db) as u32);
        r = &(&r * lb) - &(&(&lr * &shift) * b);
    }
    r
}

/// Gcd of the coefficients of `f` viewed as a polynomial in `v`.
pub fn content_in(f: &Polynomial, v: usize) -> Polynomial {
    if f.degree_in(v) <= 0 {
        return f.normalized();
    }
    let mut acc = Polynomial::zero(f.ring());
    let mut coeffs: Vec<Polynomial> = f.coefficients_in(v).into_iter().filter(|c| !c.is_zero()).collect();
    coeffs.sort_by_key(Polynomial::len);
    for c in coeffs {
        acc = gcd(&acc, &c);
        if acc.is_constant() {
            return Polynomial::one(f.ring());
        }
    }
    acc
}

/// Primitive part of `f` with respect to `v`, normalized.
pub fn primitive_part_in(f: &Polynomial, v: usize) -> Polynomial {
    let c = content_in(f, v);
    f.div_exact(&c).expect("content divides").normalized()
}

/// Normalized gcd (integer content 1, positive leading coefficient).
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Polynomial {
    if a.is_zero() {
        return b.normalized();
    }
    if b.is_zero() {
        return a.normalized();
    }
    if a.is_constant() || b.is_constant() {
        return Polynomial::one(a.ring());
    }
    if a.len() == 1 && b.len() == 1 {
        let m = a.terms()[0].0.gcd(&b.terms()[0].0);
        return Polynomial::term(a.ring(), m, crate::poly::rat(1));
    }
    let (sa, sb) = (a.support(), b.support());
    let common = sa & sb;
    if common == 0 {
        return Polynomial::one(a.ring());
    }
    let v = highest_var(sa | sb);
    if sa & (1 << v) == 0 {
        return gcd(a, &content_in(b, v));
    }
    if sb & (1 << v) == 0 {
        return gcd(&content_in(a, v), b);
    }
    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let c = gcd(&ca, &cb);
    let mut p = a.div_exact(&ca).expect("content divides");
    let mut q = b.div_exact(&cb).expect("content divides");
    if p.degree_in(v) < q.degree_in(v) {
        std::mem::swap(&mut p, &mut q);
    }
    while q.degree_in(v) > 0 {
        let r = prem(&p, &q, v);
        p = q;
        q = if r.is_zero() { r } else { primitive_part_in(&r, v) };
    }
    let g = if q.is_zero() { primitive_part_in(&p, v) } else { Polynomial::one(a.ring()) };
    (&c * &g).normalized()
}
