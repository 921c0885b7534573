//! Square-free decomposition and factorization over Q.
//!
//! Univariate inputs go through Zassenhaus (factor modulo a small prime,
//! Hensel-lift, recombine). Multivariate inputs are specialized to a
//! univariate image at an integer point, factored, and lifted back with the
//! leading-coefficient trick; factors that resist this are reported with a
//! `maybe_reducible` flag rather than claimed irreducible.

mod dense;
mod gcd;
mod modp;
mod univariate;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget;
use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Rational};

use dense::QPoly;

pub use gcd::{content_in, gcd, primitive_part_in};

/// Evaluation points tried before a factor is reported as maybe-reducible.
const MAX_EVALUATION_ATTEMPTS: usize = 12;

#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub poly: Polynomial,
    pub multiplicity: u32,
    /// Set when the factor is square-free but its irreducibility was not
    /// established.
    pub maybe_reducible: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub unit: Rational,
    pub factors: Vec<Factor>,
}

impl Factorization {
    /// `unit * prod factor^multiplicity`.
    pub fn expand(&self, ring: &crate::ring::Ring) -> Polynomial {
        self.factors
            .iter()
            .fold(Polynomial::constant(ring, self.unit.clone()), |acc, f| &acc * &f.poly.pow(f.multiplicity))
    }

    /// True when every factor is known to be irreducible.
    pub fn is_complete(&self) -> bool {
        self.factors.iter().all(|f| !f.maybe_reducible)
    }

    fn assemble(p: &Polynomial, mut factors: Vec<Factor>) -> Factorization {
        factors.sort_by(|a, b| {
            (a.poly.total_degree(), a.poly.len(), a.poly.to_string()).cmp(&(
                b.poly.total_degree(),
                b.poly.len(),
                b.poly.to_string(),
            ))
        });
        let prod = factors.iter().fold(Polynomial::one(p.ring()), |acc, f| &acc * &f.poly.pow(f.multiplicity));
        let unit = &p.terms()[0].1 / &prod.terms()[0].1;
        debug_assert_eq!(&prod.scale(&unit), p);
        Factorization { unit, factors }
    }
}

fn derivative_squarefree(p: &Polynomial, v: usize) -> Vec<(Polynomial, u32)> {
    // Yun's algorithm in `v` on a polynomial primitive in `v`
    let dp = p.derivative(v);
    let a0 = gcd(p, &dp);
    let mut b = p.div_exact(&a0).expect("gcd divides");
    let mut c = dp.div_exact(&a0).expect("gcd divides");
    let mut d = &c - &b.derivative(v);
    let mut out = Vec::new();
    let mut i = 1;
    while !b.is_constant() {
        let a = gcd(&b, &d);
        b = b.div_exact(&a).expect("gcd divides");
        c = d.div_exact(&a).expect("gcd divides");
        d = &c - &b.derivative(v);
        if !a.is_constant() {
            out.push((a, i));
        }
        i += 1;
    }
    out
}

fn squarefree_parts(p: &Polynomial) -> Vec<(Polynomial, u32)> {
    if p.is_constant() {
        return Vec::new();
    }
    let v = p.support().trailing_zeros() as usize;
    let c = content_in(p, v);
    let prim = p.div_exact(&c).expect("content divides");
    let mut out = derivative_squarefree(&prim.normalized(), v);
    out.extend(squarefree_parts(&c));
    out
}

fn merge(parts: Vec<(Polynomial, u32, bool)>) -> Vec<Factor> {
    let mut out: Vec<Factor> = Vec::new();
    for (poly, multiplicity, maybe_reducible) in parts {
        let poly = poly.normalized();
        if poly.is_constant() {
            continue;
        }
        match out.iter_mut().find(|f| f.poly == poly) {
            Some(f) => f.multiplicity += multiplicity,
            None => out.push(Factor { poly, multiplicity, maybe_reducible }),
        }
    }
    out
}

/// Yun-style decomposition: each factor is square-free, factors are pairwise
/// coprime, and factor `k` appears with multiplicity `k`.
pub fn squarefree_decomposition(p: &Polynomial) -> Result<Factorization> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let mut by_mult: Vec<(Polynomial, u32, bool)> = Vec::new();
    for (f, m) in squarefree_parts(p) {
        // combine parts of equal multiplicity coming from different contents
        match by_mult.iter_mut().find(|(_, k, _)| *k == m) {
            Some(entry) => entry.0 = &entry.0 * &f,
            None => by_mult.push((f, m, false)),
        }
    }
    Ok(Factorization::assemble(p, merge(by_mult)))
}

/// Product of the distinct irreducible factors (up to a constant).
pub fn squarefree_part(p: &Polynomial) -> Result<Polynomial> {
    let d = squarefree_decomposition(p)?;
    Ok(d.factors.iter().fold(Polynomial::one(p.ring()), |acc, f| &acc * &f.poly))
}

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(budget::seed())
}

fn to_dense(p: &Polynomial, v: usize) -> QPoly {
    let mut out = vec![Rational::zero(); p.degree_in(v).max(0) as usize + 1];
    for (m, c) in p.terms() {
        out[m.exp(v) as usize] += c;
    }
    dense::trim(out)
}

fn from_dense(ring: &crate::ring::Ring, v: usize, a: &[Rational]) -> Polynomial {
    Polynomial::from_terms(
        ring,
        a.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (Monomial::var(v, k as u16), c.clone())),
    )
}

fn to_integer(a: &[Rational]) -> Vec<BigInt> {
    let den = a.iter().fold(BigInt::one(), |acc, c| num_integer::Integer::lcm(&acc, c.denom()));
    a.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect()
}

fn factor_dense(a: &[Rational], rng: &mut ChaCha8Rng) -> Vec<QPoly> {
    let z = univariate::primitive(&to_integer(a));
    univariate::factor_squarefree(&z, rng)
        .into_iter()
        .map(|f| f.into_iter().map(Rational::from_integer).collect())
        .collect()
}

/// Irreducible factorization of a polynomial in at most one variable.
pub fn factor_univariate(p: &Polynomial) -> Result<Factorization> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let supp = p.support();
    if supp.count_ones() > 1 {
        return Err(AlgebraError::NotUnivariate);
    }
    if supp == 0 {
        return Ok(Factorization::assemble(p, Vec::new()));
    }
    let v = supp.trailing_zeros() as usize;
    let mut rng = rng();
    let sqf = squarefree_decomposition(p)?;
    let mut parts = Vec::new();
    for f in sqf.factors {
        for g in factor_dense(&to_dense(&f.poly, v), &mut rng) {
            parts.push((from_dense(p.ring(), v, &g), f.multiplicity, false));
        }
    }
    Ok(Factorization::assemble(p, merge(parts)))
}

/// Factorization into irreducibles over Q, with unresolved factors flagged.
pub fn factor_multivariate(p: &Polynomial) -> Result<Factorization> {
    if p.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    let sqf = squarefree_decomposition(p)?;
    let mut rng = rng();
    let mut parts = Vec::new();
    for f in sqf.factors {
        for (g, flag) in irreducible_factors(&f.poly, &mut rng)? {
            parts.push((g, f.multiplicity, flag));
        }
    }
    Ok(Factorization::assemble(p, merge(parts)))
}

/// Factors of any nonzero polynomial: univariate or multivariate.
pub fn factor(p: &Polynomial) -> Result<Factorization> {
    if p.support().count_ones() <= 1 {
        factor_univariate(p)
    } else {
        factor_multivariate(p)
    }
}

/// Raises every term of `p` by powers of `v` to total degree `d`.
fn homogenize_at(p: &Polynomial, v: usize, d: u32) -> Polynomial {
    Polynomial::from_terms(
        p.ring(),
        p.terms().iter().map(|(m, c)| {
            let mut mm = *m;
            mm.set_exp(v, m.exp(v) + (d - m.degree()) as u16);
            (mm, c.clone())
        }),
    )
}

/// Irreducible factors of a square-free polynomial, each with a
/// maybe-reducible flag.
fn irreducible_factors(q: &Polynomial, rng: &mut ChaCha8Rng) -> Result<Vec<(Polynomial, bool)>> {
    budget::check()?;
    let q = q.normalized();
    if q.total_degree() <= 1 {
        return Ok(vec![(q, false)]);
    }
    // monomial factors
    let mono = q.terms().iter().skip(1).fold(q.terms()[0].0, |acc, (m, _)| acc.gcd(m));
    if mono.degree() > 0 {
        let mut out: Vec<(Polynomial, bool)> =
            (0..q.ring().nvars()).filter(|&v| mono.exp(v) > 0).map(|v| (Polynomial::var(q.ring(), v), false)).collect();
        let rest = q.div_exact(&Polynomial::term(q.ring(), mono, Rational::one())).expect("monomial divides");
        out.extend(irreducible_factors(&rest, rng)?);
        return Ok(out);
    }
    let supp = q.support();
    if supp.count_ones() == 1 {
        let v = supp.trailing_zeros() as usize;
        return Ok(factor_dense(&to_dense(&q, v), rng).iter().map(|g| (from_dense(q.ring(), v, g), false)).collect());
    }
    for v in (0..q.ring().nvars()).filter(|v| supp >> v & 1 == 1) {
        let c = content_in(&q, v);
        if !c.is_constant() {
            let mut out = irreducible_factors(&c, rng)?;
            out.extend(irreducible_factors(&q.div_exact(&c).expect("content divides"), rng)?);
            return Ok(out);
        }
    }
    if q.is_homogeneous() {
        // factors of a homogeneous polynomial not divisible by v correspond
        // to factors of its dehomogenization at v
        let v = 31 - supp.leading_zeros() as usize;
        let affine = q.evaluate_var(v, &Rational::one());
        return Ok(irreducible_factors(&affine, rng)?
            .into_iter()
            .map(|(g, flag)| (homogenize_at(&g, v, g.total_degree() as u32), flag))
            .collect());
    }
    hensel_factors(&q, rng)
}

fn choose_main_variable(q: &Polynomial) -> usize {
    let supp = q.support();
    (0..q.ring().nvars())
        .filter(|v| supp >> v & 1 == 1)
        .min_by_key(|&v| {
            let lc_constant = q.coefficients_in(v).last().is_some_and(Polynomial::is_constant);
            (!lc_constant, q.degree_in(v), v)
        })
        .expect("nonconstant")
}

fn evaluate_others(q: &Polynomial, ys: &[usize], point: &[i64]) -> Polynomial {
    ys.iter().zip(point).fold(q.clone(), |acc, (&y, &a)| acc.evaluate_var(y, &Rational::from_integer(a.into())))
}

/// Lifts the univariate image factorization at a good integer point back to
/// Q[x, y...] one candidate split at a time.
fn hensel_factors(q: &Polynomial, rng: &mut ChaCha8Rng) -> Result<Vec<(Polynomial, bool)>> {
    let ring = q.ring().clone();
    let x = choose_main_variable(q);
    let ys: Vec<usize> = (0..ring.nvars()).filter(|&v| v != x && q.support() >> v & 1 == 1).collect();
    let dx = q.degree_in(x);

    let mut found = None;
    for attempt in 0..MAX_EVALUATION_ATTEMPTS {
        let span = 1 + 2 * attempt as i64;
        let point: Vec<i64> =
            ys.iter().map(|_| if attempt == 0 { 0 } else { rng.gen_range(-span..=span) }).collect();
        let image = evaluate_others(q, &ys, &point);
        if image.degree_in(x) != dx {
            continue;
        }
        let u = to_dense(&image, x);
        if dense::degree(&dense::gcd(&u, &dense::derivative(&u))) > 0 {
            continue;
        }
        found = Some((point, u));
        break;
    }
    let Some((point, u)) = found else {
        return Ok(vec![(q.clone(), true)]);
    };
    let images = factor_dense(&u, rng);
    if images.len() == 1 {
        return Ok(vec![(q.clone(), false)]);
    }

    // move the evaluation point to the origin
    let shift = |p: &Polynomial, sign: i64| {
        ys.iter().zip(&point).fold(p.clone(), |acc, (&y, &a)| {
            if a == 0 {
                acc
            } else {
                let yv = Polynomial::var(&ring, y);
                acc.substitute(y, &(&yv + &Polynomial::integer(&ring, sign * a)))
            }
        })
    };
    let qs = shift(q, 1);
    let lc = qs.coefficients_in(x).pop().expect("nonzero");
    let big_f = &lc * &qs;
    let lifter = Lifter::new(&big_f, &lc, x);

    let r = images.len();
    for size in 1..=r / 2 {
        for mask in (0u64..1 << r).filter(|m| m.count_ones() as usize == size) {
            budget::check()?;
            let pick = |inside: bool| {
                images
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (mask >> i & 1 == 1) == inside)
                    .fold(vec![Rational::one()], |acc, (_, g)| dense::mul(&acc, g))
            };
            if let Some(g) = lifter.lift(&ring, &pick(true), &pick(false)) {
                let g = shift(&primitive_part_in(&g, x), -1);
                let h = q.div_exact(&g).expect("lifted factor divides");
                let mut out = vec![(g, false)];
                out.extend(irreducible_factors(&h, rng)?);
                return Ok(out);
            }
        }
    }
    Ok(vec![(q.clone(), false)])
}

/// Multivariate Hensel lifting of `F = G*H` with both leading coefficients
/// in `x` forced to `L`, over the ideal of the (shifted) other variables.
struct Lifter {
    x: usize,
    target: Polynomial,
    /// Homogeneous parts of `F` in the other variables: degree -> monomial -> x-polynomial.
    parts: Vec<HashMap<Monomial, QPoly>>,
    /// Homogeneous parts of `L`.
    lc_parts: Vec<Vec<(Monomial, Rational)>>,
    l0: Rational,
}

impl Lifter {
    fn new(f: &Polynomial, lc: &Polynomial, x: usize) -> Lifter {
        let ymask = !(1u32 << x);
        let deg_y = |m: &Monomial| m.degree_in(ymask) as usize;
        let dmax = f.terms().iter().map(|(m, _)| deg_y(m)).max().unwrap_or(0);
        let mut parts = vec![HashMap::new(); dmax + 1];
        for (m, c) in f.terms() {
            let mut ym = *m;
            ym.set_exp(x, 0);
            let e = m.exp(x) as usize;
            let entry: &mut QPoly = parts[deg_y(m)].entry(ym).or_default();
            if entry.len() <= e {
                entry.resize(e + 1, Rational::zero());
            }
            entry[e] += c;
        }
        let mut lc_parts = vec![Vec::new(); dmax + 1];
        let mut l0 = Rational::zero();
        for (m, c) in lc.terms() {
            let d = deg_y(m);
            if d == 0 {
                l0 = c.clone();
            }
            if d <= dmax {
                lc_parts[d].push((*m, c.clone()));
            }
        }
        Lifter { x, target: f.clone(), parts, lc_parts, l0 }
    }

    /// Returns `G` if the split `g0 * h0` of the image lifts to a true factorization.
    fn lift(&self, ring: &crate::ring::Ring, g0: &[Rational], h0: &[Rational]) -> Option<Polynomial> {
        let g0 = dense::scale(g0, &(&self.l0 / g0.last()?));
        let h0 = dense::scale(h0, &(&self.l0 / h0.last()?));
        let (dg, dh) = (g0.len() - 1, h0.len() - 1);
        let (_, _, t) = dense::ext_gcd(&g0, &h0);
        let dmax = self.parts.len() - 1;
        let mut gs: Vec<Vec<(Monomial, QPoly)>> = vec![vec![(Monomial::one(), g0.clone())]];
        let mut hs: Vec<Vec<(Monomial, QPoly)>> = vec![vec![(Monomial::one(), h0.clone())]];
        for d in 1..=dmax {
            let mut rhs: HashMap<Monomial, QPoly> = self.parts[d].clone();
            for i in 1..d {
                for (mg, pg) in &gs[i] {
                    for (mh, ph) in &hs[d - i] {
                        let e = rhs.entry(mg.mul(mh)).or_default();
                        *e = dense::sub(e, &dense::mul(pg, ph));
                    }
                }
            }
            let mut lead: HashMap<Monomial, Rational> = HashMap::new();
            for (m, c) in &self.lc_parts[d] {
                let e = rhs.entry(*m).or_default();
                *e = dense::sub(e, &dense::mul(&dense::monomial(dg, c.clone()), &h0));
                *e = dense::sub(e, &dense::mul(&dense::monomial(dh, c.clone()), &g0));
                lead.insert(*m, c.clone());
            }
            let mut gd = Vec::new();
            let mut hd = Vec::new();
            let mut keys: Vec<Monomial> = rhs.keys().copied().collect();
            keys.sort_by(|a, b| a.cmp_lex(b));
            for m in keys {
                let r = &rhs[&m];
                let c = lead.get(&m).cloned().unwrap_or_else(Rational::zero);
                if r.is_empty() && c.is_zero() {
                    continue;
                }
                let sigma = dense::rem(&dense::mul(&t, r), &g0);
                let (tau, rest) = dense::divrem(&dense::sub(r, &dense::mul(&sigma, &h0)), &g0);
                if !rest.is_empty() || dense::degree(&tau) >= dh as isize {
                    return None;
                }
                gd.push((m, dense::add(&sigma, &dense::monomial(dg, c.clone()))));
                hd.push((m, dense::add(&tau, &dense::monomial(dh, c))));
            }
            gs.push(gd);
            hs.push(hd);
        }
        let assemble = |ps: &[Vec<(Monomial, QPoly)>]| {
            let terms = ps.iter().flatten().flat_map(|(m, p)| {
                p.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(k, c)| {
                    let mut mm = *m;
                    mm.set_exp(self.x, k as u16);
                    (mm, c.clone())
                })
            });
            Polynomial::from_terms(ring, terms)
        };
        let g = assemble(&gs);
        let h = assemble(&hs);
        if &g * &h == self.target {
            Some(g)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::{Ring, RingContext};

    fn ring() -> Ring {
        RingContext::with_homogenizing(&["x", "y", "z", "w"], "w").unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &ring()).unwrap()
    }

    fn shown(f: &Factorization) -> Vec<(String, u32)> {
        f.factors.iter().map(|g| (g.poly.to_string(), g.multiplicity)).collect()
    }

    #[test]
    fn squarefree_examples() {
        let d = squarefree_decomposition(&p("(x-1)^2*(x+1)")).unwrap();
        assert_eq!(shown(&d), vec![("x+1".to_string(), 1), ("x-1".to_string(), 2)]);
        let d = squarefree_decomposition(&p("x^2+y^2")).unwrap();
        assert_eq!(shown(&d), vec![("x^2+y^2".to_string(), 1)]);
        let d = squarefree_decomposition(&p("6")).unwrap();
        assert!(d.factors.is_empty());
        assert_eq!(d.unit, crate::poly::rat(6));
        assert!(squarefree_decomposition(&p("0")).is_err());
        let f = p("3*(x*y-z)^3*(y+w)^2*x");
        assert_eq!(squarefree_decomposition(&f).unwrap().expand(&ring()), f);
    }

    #[test]
    fn univariate_examples() {
        assert_eq!(shown(&factor_univariate(&p("x^2-1")).unwrap()).len(), 2);
        assert_eq!(shown(&factor_univariate(&p("x^2+1")).unwrap()), vec![("x^2+1".to_string(), 1)]);
        assert_eq!(factor_univariate(&p("x^4+z^3-y*z^2")).unwrap_err(), AlgebraError::NotUnivariate);
        let f = p("-4*z^6+4*z^2");
        let d = factor_univariate(&f).unwrap();
        assert_eq!(d.expand(&ring()), f);
        assert_eq!(d.factors.len(), 4);
    }

    #[test]
    fn multivariate_examples() {
        let g = p("(x^4+(z+w)^3*w-(y+2*w)*(z+w)^2*w)*(y-w)");
        let d = factor_multivariate(&g).unwrap();
        assert!(d.is_complete());
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.factors[0].poly, p("y-w"));
        assert_eq!(d.factors[1].poly, p("x^4+(z+w)^3*w-(y+2*w)*(z+w)^2*w").normalized());
        assert_eq!(d.expand(&ring()), g);

        let d = factor_multivariate(&p("x^2-y^2")).unwrap();
        assert_eq!(shown(&d), vec![("x+y".to_string(), 1), ("x-y".to_string(), 1)]);
        let d = factor_multivariate(&p("x^2+y^2+z^2")).unwrap();
        assert!(d.is_complete());
        assert_eq!(d.factors.len(), 1);
    }

    #[test]
    fn non_monic_lifting() {
        // leading coefficients in x depend on the other variables
        let f = p("(y*x^2+z*x+1)*(z*x-y+3)*(x+y*z)");
        let d = factor_multivariate(&f).unwrap();
        assert!(d.is_complete());
        assert_eq!(d.factors.len(), 3);
        assert_eq!(d.expand(&ring()), f);
        let f = p("(x*y*z*w+x^2*y^2+7)*(x*y*z*w-x^2*y^2+5)");
        let d = factor_multivariate(&f).unwrap();
        assert_eq!(d.factors.len(), 2);
        assert_eq!(d.expand(&ring()), f);
    }
}
