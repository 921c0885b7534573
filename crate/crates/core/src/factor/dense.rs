//! Dense univariate polynomials over Q, coefficients stored low to high.

use num_traits::{One, Zero};

use crate::poly::Rational;

pub(crate) type QPoly = Vec<Rational>;

pub(crate) fn trim(mut a: QPoly) -> QPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

pub(crate) fn degree(a: &[Rational]) -> isize {
    a.len() as isize - 1
}

pub(crate) fn add(a: &[Rational], b: &[Rational]) -> QPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x + y,
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(out)
}

pub(crate) fn neg(a: &[Rational]) -> QPoly {
    a.iter().map(|c| -c).collect()
}

pub(crate) fn sub(a: &[Rational], b: &[Rational]) -> QPoly {
    add(a, &neg(b))
}

pub(crate) fn mul(a: &[Rational], b: &[Rational]) -> QPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &[Rational], c: &Rational) -> QPoly {
    trim(a.iter().map(|x| x * c).collect())
}

/// `x^k * c`.
pub(crate) fn monomial(k: usize, c: Rational) -> QPoly {
    let mut v = vec![Rational::zero(); k + 1];
    v[k] = c;
    trim(v)
}

pub(crate) fn divrem(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly) {
    assert!(!b.is_empty(), "division by zero polynomial");
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let inv = b[db].recip();
    let mut q = vec![Rational::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let c = &r[k + db] * &inv;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &[Rational], b: &[Rational]) -> QPoly {
    divrem(a, b).1
}

pub(crate) fn derivative(a: &[Rational]) -> QPoly {
    trim(a.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer((i as i64).into())).collect())
}

/// Monic gcd with cofactors: `s*a + t*b = g`.
pub(crate) fn ext_gcd(a: &[Rational], b: &[Rational]) -> (QPoly, QPoly, QPoly) {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![Rational::one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![Rational::one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last().cloned() {
        Some(l) => {
            let inv = l.recip();
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
        None => (r0, s0, t0),
    }
}

pub(crate) fn gcd(a: &[Rational], b: &[Rational]) -> QPoly {
    ext_gcd(a, b).0
}
