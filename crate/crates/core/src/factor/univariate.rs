//! Zassenhaus factorization of square-free primitive integer polynomials.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;

use super::modp::{self, Zp};

pub(crate) type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m >> 1;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

pub(crate) fn primitive(a: &[BigInt]) -> ZPoly {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return a.to_vec();
    }
    if a.last().is_some_and(Signed::is_negative) {
        g = -g;
    }
    a.iter().map(|c| c / &g).collect()
}

/// Exact quotient over Z, if any.
fn div_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let lb = &b[db];
    let mut q = vec![BigInt::zero(); r.len() - db];
    for k in (0..q.len()).rev() {
        let (c, rr) = r[k + db].div_rem(lb);
        if !rr.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
    }
    if r.iter().all(Zero::is_zero) {
        Some(trim(q))
    } else {
        None
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Lifts `f ≡ g0*h0 (mod p)` (all monic) to `f ≡ g*h (mod p^k)`.
fn lift_pair(f: &[BigInt], g0: &[u64], h0: &[u64], p: u64, k: u32) -> (ZPoly, ZPoly) {
    let (_, _, t) = modp::ext_gcd(g0, h0, p);
    let pb = BigInt::from(p);
    let mut g = modp::to_z(g0);
    let mut h = modp::to_z(h0);
    let mut pj = pb.clone();
    for _ in 1..k {
        let next = &pj * &pb;
        let diff = trim(f.iter().zip(pad(&mul(&g, &h), f.len())).map(|(a, b)| (a - b).mod_floor(&next)).collect());
        let e: ZPoly = diff.iter().map(|c| c / &pj).collect();
        let e = modp::from_z(&e, p);
        let sg = modp::rem(&modp::mul(&t, &e, p), g0, p);
        let sh = modp::divrem(&modp::sub(&e, &modp::mul(&sg, h0, p), p), g0, p).0;
        g = reduce(&add_scaled(&g, &modp::to_z(&sg), &pj), &next);
        h = reduce(&add_scaled(&h, &modp::to_z(&sh), &pj), &next);
        pj = next;
    }
    (g, h)
}

fn pad(a: &[BigInt], n: usize) -> ZPoly {
    let mut v = a.to_vec();
    v.resize(n.max(a.len()), BigInt::zero());
    v
}

fn add_scaled(a: &[BigInt], b: &[BigInt], c: &BigInt) -> ZPoly {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default();
                match b.get(i) {
                    Some(y) => x + y * c,
                    None => x,
                }
            })
            .collect(),
    )
}

fn lift_all(f: &[BigInt], facs: &[Zp], p: u64, k: u32) -> Vec<ZPoly> {
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }
    let (a, b) = facs.split_at(facs.len() / 2);
    let prod = |fs: &[Zp]| fs.iter().fold(vec![1u64], |acc, g| modp::mul(&acc, g, p));
    let (g, h) = lift_pair(f, &prod(a), &prod(b), p, k);
    let mut out = lift_all(&g, a, p, k);
    out.extend(lift_all(&h, b, p, k));
    out
}

/// Irreducible factors over Z of a square-free primitive `f` with positive
/// leading coefficient.
pub(crate) fn factor_squarefree<R: Rng>(f: &[BigInt], rng: &mut R) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    let lc = f[n].clone();
    // pick the prime with the fewest modular factors among a few good ones
    let mut best: Option<(u64, Vec<Zp>)> = None;
    let mut tried = 0;
    let mut p = 2u64;
    while tried < 4 {
        p += 1;
        if !is_prime(p) || (&lc % p).is_zero() {
            continue;
        }
        let fp = modp::from_z(f, p);
        if modp::gcd(&fp, &modp::derivative(&fp, p), p).len() > 1 {
            continue;
        }
        tried += 1;
        let facs = modp::factor_squarefree(&modp::monic(&fp, p), p, rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        if best.as_ref().is_some_and(|(_, b)| b.len() == 1) {
            break;
        }
    }
    let (p, facs) = best.expect("a good prime exists");
    if facs.len() == 1 {
        return vec![f.to_vec()];
    }

    // coefficient bound for lc(f)/lc(g) * g over all factors g
    let norm: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound = (lc.abs() * norm) << (n + 1);
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let lc_inv = {
        let e = lc.extended_gcd(&m);
        e.x.mod_floor(&m)
    };
    let target = reduce(&f.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &m);
    let mut lifted = lift_all(&target, &facs, p, k);

    let mut f = f.to_vec();
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= lifted.len() {
        let lcf = f.last().expect("nonzero").clone();
        for subset in subsets(lifted.len(), s) {
            let mut cand = vec![lcf.clone()];
            for &i in &subset {
                cand = reduce(&mul(&cand, &lifted[i]), &m);
            }
            let cand = primitive(&symmetric(&cand, &m));
            if let Some(q) = div_exact(&f, &cand) {
                out.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                continue 'outer;
            }
        }
        s += 1;
    }
    out.push(primitive(&f));
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn z(v: &[i64]) -> ZPoly {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn sorted(mut v: Vec<ZPoly>) -> Vec<ZPoly> {
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v
    }

    #[test]
    fn zassenhaus() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        assert_eq!(sorted(factor_squarefree(&z(&[-1, 0, 1]), &mut rng)), vec![z(&[-1, 1]), z(&[1, 1])]);
        assert_eq!(factor_squarefree(&z(&[1, 0, 1]), &mut rng), vec![z(&[1, 0, 1])]);
        // x^4+1 is irreducible over Q but splits modulo every prime
        assert_eq!(factor_squarefree(&z(&[1, 0, 0, 0, 1]), &mut rng), vec![z(&[1, 0, 0, 0, 1])]);
        // (2x+3)(3x^2-5)(x^3+x+1)
        let f = mul(&mul(&z(&[3, 2]), &z(&[-5, 0, 3])), &z(&[1, 1, 0, 1]));
        let fs = sorted(factor_squarefree(&f, &mut rng));
        assert_eq!(fs, vec![z(&[3, 2]), z(&[-5, 0, 3]), z(&[1, 1, 0, 1])]);
    }
}
