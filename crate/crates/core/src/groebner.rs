//! Reduced Gröbner bases over the rationals.
//!
//! The engine works on primitive integer polynomials with fraction-free
//! reduction, selects S-pairs by sugar degree, and prunes pairs with the
//! product and chain criteria (Gebauer–Möller update). For homogeneous input
//! the sugar degree is the degree, so pairs are processed degree by degree.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::budget;
use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::Polynomial;
use crate::ring::{same_ring, Ring};


type Term = (Monomial, BigInt);

/// Non-negative gcd; one remainder step first, since the binary gcd is slow
/// on operands of very different sizes.
fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    let (big, small) = if a.bits() >= b.bits() { (a, b) } else { (b, a) };
    if small.is_zero() {
        return big.abs();
    }
    if small.magnitude().is_one() {
        return BigInt::one();
    }
    let r = big % small;
    small.gcd(&r)
}

/// Gcd of all coefficients, smallest first, stopping at 1.
fn content<'a>(coeffs: impl Iterator<Item = &'a BigInt>) -> BigInt {
    let mut cs: Vec<&BigInt> = coeffs.collect();
    cs.sort_by_key(|c| c.bits());
    let mut g = BigInt::zero();
    for c in cs {
        g = gcd(&g, c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Primitive integer polynomial sorted descending under the engine's order.
#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<Term>,
}

impl IPoly {
    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = content(self.terms.iter().map(|t| &t.1));
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for t in &mut self.terms {
                t.1 = &t.1 / &g;
            }
        }
    }
}

/// Converts to a primitive integer polynomial; returns the scale `s` with
/// `ipoly = s * p`.
fn to_ipoly(p: &Polynomial, ord: &MonomialOrder) -> (IPoly, BigRational) {
    let mut den = BigInt::one();
    for (_, c) in p.terms() {
        den = den.lcm(c.denom());
    }
    let mut terms: Vec<Term> = p
        .terms()
        .iter()
        .map(|(m, c)| (*m, c.numer() * (&den / c.denom())))
        .collect();
    let mut g = content(terms.iter().map(|t| &t.1));
    if g.is_zero() {
        g = BigInt::one();
    }
    for t in &mut terms {
        t.1 = &t.1 / &g;
    }
    if !matches!(ord, MonomialOrder::Grevlex) {
        terms.sort_unstable_by(|a, b| ord.cmp(&b.0, &a.0));
    }
    (IPoly { terms }, BigRational::new(den, g))
}

fn from_ipoly(ring: &Ring, p: &IPoly) -> Polynomial {
    Polynomial::from_terms(ring, p.terms.iter().map(|(m, c)| (*m, BigRational::from_integer(c.clone()))))
}

/// `a*h[start..] - b*q*g`, where the leading terms `h[start]` and `q*g[0]`
/// are known to cancel (both skipped). Consumes `h`.
fn sub_mul(h: Vec<Term>, start: usize, a: &BigInt, b: &BigInt, q: &Monomial, g: &[Term], ord: &MonomialOrder) -> Vec<Term> {
    let mut out = Vec::with_capacity(h.len() - start + g.len());
    let a_one = a.is_one();
    let scale = |c: BigInt| if a_one { c } else { c * a };
    let mut hs = h.into_iter().skip(start + 1).peekable();
    let mut j = 1;
    while j < g.len() {
        let Some(ht) = hs.peek() else { break };
        let gm = g[j].0.mul(q);
        match ord.cmp(&ht.0, &gm) {
            Ordering::Greater => {
                let (m, c) = hs.next().expect("peeked");
                out.push((m, scale(c)));
            }
            Ordering::Less => {
                out.push((gm, -(b * &g[j].1)));
                j += 1;
            }
            Ordering::Equal => {
                let (_, c) = hs.next().expect("peeked");
                let c = scale(c) - b * &g[j].1;
                if !c.is_zero() {
                    out.push((gm, c));
                }
                j += 1;
            }
        }
    }
    out.extend(hs.map(|(m, c)| (m, scale(c))));
    for t in &g[j..] {
        out.push((t.0.mul(q), -(b * &t.1)));
    }
    out
}

/// `a*qf*f - b*qg*g` with the leading terms cancelling.
fn s_poly_int(f: &IPoly, g: &IPoly, lcm: &Monomial, ord: &MonomialOrder) -> IPoly {
    let qf = lcm.div(f.lm()).expect("lcm");
    let qg = lcm.div(g.lm()).expect("lcm");
    let d = gcd(f.lc(), g.lc());
    let a = g.lc() / &d;
    let b = f.lc() / &d;
    let fq: Vec<Term> = f.terms.iter().map(|(m, c)| (m.mul(&qf), c.clone())).collect();
    IPoly { terms: sub_mul(fq, 0, &a, &b, &qg, &g.terms, ord) }
}

struct Reducer<'a> {
    polys: &'a [IPoly],
    active: &'a [usize],
    supports: Vec<u32>,
}

impl<'a> Reducer<'a> {
    fn new(polys: &'a [IPoly], active: &'a [usize]) -> Self {
        let supports = active.iter().map(|&i| polys[i].lm().support()).collect();
        Reducer { polys, active, supports }
    }

    fn find(&self, m: &Monomial) -> Option<&'a IPoly> {
        let s = m.support();
        for (k, &i) in self.active.iter().enumerate() {
            if self.supports[k] & !s != 0 {
                continue;
            }
            let g = &self.polys[i];
            if g.lm().divides(m) {
                return Some(g);
            }
        }
        None
    }

    /// Reduces `f`. With `full`, tail terms are reduced as well. Returns the
    /// remainder and the factor `s` such that `remainder = s * f - (ideal element)`.
    fn reduce(&self, f: IPoly, ord: &MonomialOrder, full: bool) -> Result<(IPoly, BigRational)> {
        let mut h = f.terms;
        let mut head = 0;
        let mut r: Vec<Term> = Vec::new();
        // the scale is num/den, normalized once at the end
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        let mut steps = 0u32;
        while head < h.len() {
            let m = h[head].0;
            match self.find(&m) {
                Some(g) => {
                    let c = &h[head].1;
                    let d = gcd(g.lc(), c);
                    let a = g.lc() / &d;
                    let b = c / &d;
                    let q = m.div(g.lm()).expect("divisor");
                    h = sub_mul(h, head, &a, &b, &q, &g.terms, ord);
                    head = 0;
                    if !a.is_one() {
                        for t in &mut r {
                            t.1 = &a * &t.1;
                        }
                        num *= a;
                    }
                    steps += 1;
                    if steps.is_multiple_of(32) {
                        budget::check()?;
                        // keep coefficients from growing without bound
                        let gg = content(h.iter().chain(r.iter()).map(|t| &t.1));
                        if !gg.is_one() && !gg.is_zero() {
                            for t in h.iter_mut().chain(r.iter_mut()) {
                                t.1 = &t.1 / &gg;
                            }
                            den *= gg;
                        }
                    }
                }
                None => {
                    if !full {
                        r.extend(h.drain(head..));
                        break;
                    }
                    r.push((h[head].0, std::mem::take(&mut h[head].1)));
                    head += 1;
                }
            }
        }
        Ok((IPoly { terms: r }, BigRational::new(num, den)))
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

/// S-pair bookkeeping: leading monomials, sugar degrees, the active basis and
/// the pending pairs.
struct PairQueue<'a> {
    ord: &'a MonomialOrder,
    lms: Vec<Monomial>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl<'a> PairQueue<'a> {
    fn new(ord: &'a MonomialOrder) -> Self {
        PairQueue { ord, lms: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() }
    }

    /// Registers a new basis element and applies the Gebauer–Möller update.
    fn push(&mut self, hm: Monomial, hsugar: u32) -> usize {
        let h = self.lms.len();
        self.lms.push(hm);
        self.sugar.push(hsugar);
        let cands: Vec<Pair> = self
            .active
            .iter()
            .map(|&g| {
                let gm = &self.lms[g];
                let lcm = hm.lcm(gm);
                let sugar = hsugar.saturating_sub(hm.degree()).max(self.sugar[g].saturating_sub(gm.degree()))
                    + lcm.degree();
                Pair { i: g, j: h, lcm, sugar }
            })
            .collect();
        let n = cands.len();
        let coprime: Vec<bool> = cands.iter().map(|p| self.lms[p.i].is_coprime(&hm)).collect();
        // chain criterion: a strictly smaller lcm among the new pairs
        let mut keep: Vec<bool> = (0..n)
            .map(|a| !(0..n).any(|b| cands[b].lcm != cands[a].lcm && cands[b].lcm.divides(&cands[a].lcm)))
            .collect();
        // equal lcms: one representative, none if any of them is coprime
        for a in 0..n {
            if !keep[a] {
                continue;
            }
            let same: Vec<usize> = (a..n).filter(|&b| keep[b] && cands[b].lcm == cands[a].lcm).collect();
            let any_coprime = same.iter().any(|&b| coprime[b]);
            for (k, &b) in same.iter().enumerate() {
                if any_coprime || k > 0 {
                    keep[b] = false;
                }
            }
        }
        let lms = &self.lms;
        self.pairs.retain(|p| {
            if !hm.divides(&p.lcm) {
                return true;
            }
            let l1 = lms[p.i].lcm(&hm);
            let l2 = lms[p.j].lcm(&hm);
            l1 == p.lcm || l2 == p.lcm
        });
        self.pairs.extend(cands.into_iter().zip(keep).filter(|(_, k)| *k).map(|(p, _)| p));
        self.active.retain(|&g| !hm.divides(&lms[g]));
        self.active.push(h);
        h
    }

    fn next(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = a
                .sugar
                .cmp(&b.sugar)
                .then_with(|| ord.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn has_unit(&self) -> bool {
        self.active.iter().any(|&i| self.lms[i].is_one())
    }
}

struct Engine<'a> {
    ord: &'a MonomialOrder,
    polys: Vec<IPoly>,
    queue: PairQueue<'a>,
}

impl<'a> Engine<'a> {
    fn new(ord: &'a MonomialOrder) -> Self {
        Engine { ord, polys: Vec::new(), queue: PairQueue::new(ord) }
    }

    fn add(&mut self, p: IPoly, sugar: u32) {
        self.queue.push(*p.lm(), sugar);
        self.polys.push(p);
    }

    fn has_unit(&self) -> bool {
        self.queue.has_unit()
    }

    fn run(&mut self, gens: Vec<IPoly>) -> Result<()> {
        let mut gens = gens;
        let ord = self.ord;
        gens.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
        for g in gens {
            let sugar = g.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0);
            let (mut r, _) = Reducer::new(&self.polys, &self.queue.active).reduce(g, ord, true)?;
            if r.is_zero() {
                continue;
            }
            r.make_primitive();
            self.add(r, sugar);
            if self.has_unit() {
                return Ok(());
            }
        }
        while let Some(p) = self.queue.next() {
            budget::charge_spair()?;
            let s = s_poly_int(&self.polys[p.i], &self.polys[p.j], &p.lcm, ord);
            if s.is_zero() {
                continue;
            }
            let (mut r, _) = Reducer::new(&self.polys, &self.queue.active).reduce(s, ord, true)?;
            if r.is_zero() {
                continue;
            }
            r.make_primitive();
            let sugar = r.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0).max(p.sugar);
            self.add(r, sugar);
            if self.has_unit() {
                return Ok(());
            }
        }
        Ok(())
    }

    /// Minimal, fully interreduced basis sorted ascending by leading monomial.
    fn reduced(mut self) -> Result<Vec<IPoly>> {
        let ord = self.ord;
        if self.has_unit() {
            let one = IPoly { terms: vec![(Monomial::one(), BigInt::one())] };
            return Ok(vec![one]);
        }
        let mut act = self.queue.active.clone();
        act.sort_by(|&a, &b| ord.cmp(self.polys[a].lm(), self.polys[b].lm()));
        let mut out = Vec::with_capacity(act.len());
        for (k, &i) in act.iter().enumerate() {
            let others: Vec<usize> = act.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, &x)| x).collect();
            let p = std::mem::replace(&mut self.polys[i], IPoly { terms: Vec::new() });
            let lead = p.terms[0].clone();
            let tail = IPoly { terms: p.terms[1..].to_vec() };
            // reduce only the tail; the leading term is minimal
            let red = Reducer::new(&self.polys, &others);
            let (r, scale) = red.reduce(tail, ord, true)?;
            // r = scale * tail - ...; combine as scale*lead + r
            let s_num = scale.numer().clone();
            let s_den = scale.denom().clone();
            let mut terms = vec![(lead.0, lead.1 * &s_num)];
            terms.extend(r.terms.into_iter().map(|(m, c)| (m, c * &s_den)));
            let mut q = IPoly { terms };
            q.make_primitive();
            self.polys[i] = q.clone();
            out.push(q);
        }
        Ok(out)
    }
}

/// A reduced Gröbner basis.
#[derive(Clone)]
pub struct GroebnerBasis {
    ring: Ring,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    internal: Vec<IPoly>,
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroebnerBasis").field("order", &self.order).field("elements", &self.elements).finish()
    }
}

impl GroebnerBasis {
    /// Computes the reduced Gröbner basis of the ideal generated by `gens`.
    pub fn compute(ring: &Ring, gens: &[Polynomial], ord: &MonomialOrder) -> Result<GroebnerBasis> {
        if gens.iter().any(|g| !same_ring(g.ring(), ring)) {
            return Err(AlgebraError::RingMismatch);
        }
        let input: Vec<IPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| to_ipoly(g, ord).0).collect();
        let mut engine = Engine::new(ord);
        engine.run(input)?;
        let internal = engine.reduced()?;
        let elements = internal.iter().map(|p| from_ipoly(ring, p)).collect();
        Ok(GroebnerBasis { ring: ring.clone(), order: ord.clone(), elements, internal })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    /// Elements with integer content 1 and positive leading coefficient,
    /// sorted ascending by leading monomial.
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.internal.len() == 1 && self.internal[0].lm().is_one()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.internal.iter().map(|p| *p.lm()).collect()
    }

    /// Leading term of element `k` under this basis' order, with its
    /// coefficient in the basis' integer normalization.
    pub fn leading_term(&self, k: usize) -> (Monomial, BigInt) {
        self.internal[k].terms[0].clone()
    }

    /// Normal form of `f` modulo the basis.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if f.is_zero() {
            return Ok(f.clone());
        }
        let (fi, s0) = to_ipoly(f, &self.order);
        let active: Vec<usize> = (0..self.internal.len()).collect();
        let (r, s) = Reducer::new(&self.internal, &active).reduce(fi, &self.order, true)?;
        // r = s * s0 * f  (mod ideal)
        let total = s * s0;
        Ok(from_ipoly(&self.ring, &r).scale(&total.recip()))
    }

    /// Whether `f` reduces to zero.
    pub fn reduces_to_zero(&self, f: &Polynomial) -> Result<bool> {
        if self.is_unit() {
            return Ok(true);
        }
        let (fi, _) = to_ipoly(f, &self.order);
        if fi.is_zero() {
            return Ok(true);
        }
        let active: Vec<usize> = (0..self.internal.len()).collect();
        let (r, _) = Reducer::new(&self.internal, &active).reduce(fi, &self.order, true)?;
        Ok(r.is_zero())
    }

    /// Elements free of the variables in `mask`.
    pub fn elements_without(&self, mask: u32) -> Vec<Polynomial> {
        self.elements.iter().filter(|p| p.support() & mask == 0).cloned().collect()
    }
}

/// Whether `m` is divisible by none of `lms`.
pub fn is_standard(m: &Monomial, lms: &[Monomial]) -> bool {
    !lms.iter().any(|l| l.divides(m))
}

/// A largest set of variables (bitmask over `nvars`) that supports no
/// leading monomial: its size is the Krull dimension. Among sets of equal
/// size the one with the largest mask (later variables) wins.
pub fn maximal_independent_set(lms: &[Monomial], nvars: usize) -> Option<u32> {
    if lms.iter().any(|m| m.is_one()) {
        return None;
    }
    let supports: Vec<u32> = lms.iter().map(|m| m.support()).collect();
    let mut best: Option<u32> = None;
    for s in (0u32..(1u32 << nvars)).rev() {
        if let Some(b) = best {
            if s.count_ones() <= b.count_ones() {
                continue;
            }
        }
        if supports.iter().all(|&sup| sup & !s != 0) {
            best = Some(s);
        }
    }
    best
}

/// A finitely generated ideal with cached Gröbner bases.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
    cache: Arc<RwLock<HashMap<MonomialOrder, Arc<GroebnerBasis>>>>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl Ideal {
    /// The ideal generated by `gens`; zero generators are dropped and the
    /// others normalized to integer content 1 with positive leading coefficient.
    pub fn new(ring: &Ring, gens: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut generators = Vec::new();
        for g in gens {
            if !same_ring(g.ring(), ring) {
                return Err(AlgebraError::RingMismatch);
            }
            if g.is_zero() {
                continue;
            }
            let g = g.normalized();
            if !generators.contains(&g) {
                generators.push(g);
            }
        }
        Ok(Ideal { ring: ring.clone(), generators, cache: Arc::default() })
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal { ring: ring.clone(), generators: Vec::new(), cache: Arc::default() }
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, [Polynomial::one(ring)]).expect("same ring")
    }

    /// Ideal generated by a reduced basis, with the basis pre-cached.
    pub fn from_basis(gb: GroebnerBasis) -> Ideal {
        let ring = gb.ring.clone();
        let generators = gb.elements.clone();
        let mut map = HashMap::new();
        map.insert(gb.order.clone(), Arc::new(gb));
        Ideal { ring, generators, cache: Arc::new(RwLock::new(map)) }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(Polynomial::is_homogeneous)
    }

    /// Reduced Gröbner basis under `ord`, computed once and cached.
    pub fn groebner_basis(&self, ord: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(gb) = self.cache.read().expect("cache lock").get(ord) {
            return Ok(gb.clone());
        }
        let gb = Arc::new(GroebnerBasis::compute(&self.ring, &self.generators, ord)?);
        self.cache.write().expect("cache lock").entry(ord.clone()).or_insert_with(|| gb.clone());
        Ok(gb)
    }

    /// Grevlex basis.
    pub fn gb(&self) -> Result<Arc<GroebnerBasis>> {
        self.groebner_basis(&MonomialOrder::Grevlex)
    }

    /// Whether `f` belongs to the ideal.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if !same_ring(f.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if f.is_zero() {
            return Ok(true);
        }
        if self.generators.is_empty() {
            return Ok(false);
        }
        self.gb()?.reduces_to_zero(f)
    }

    /// Whether every generator of `other` lies in this ideal.
    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(other.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        for g in &other.generators {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_unit(&self) -> Result<bool> {
        if self.generators.is_empty() {
            return Ok(false);
        }
        if self.generators.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.gb()?.is_unit())
    }

    /// Mathematical equality: identical reduced grevlex bases.
    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        if !same_ring(other.ring(), &self.ring) {
            return Err(AlgebraError::RingMismatch);
        }
        if self.generators == other.generators {
            return Ok(true);
        }
        let (a, b) = (self.gb()?, other.gb()?);
        Ok(a.elements == b.elements)
    }

    /// Krull dimension of the quotient ring (affine cone dimension); `-1`
    /// for the unit ideal.
    pub fn dimension(&self) -> Result<i64> {
        if self.generators.is_empty() {
            return Ok(self.ring.nvars() as i64);
        }
        let gb = self.gb()?;
        Ok(match maximal_independent_set(&gb.leading_monomials(), self.ring.nvars()) {
            None => -1,
            Some(s) => s.count_ones() as i64,
        })
    }

    /// Dimension of the projective variety of a homogeneous ideal
    /// (`-1` when empty).
    pub fn projective_dimension(&self) -> Result<i64> {
        Ok((self.dimension()? - 1).max(-1))
    }

    /// The ideal of the same generators in the ring with the first generators
    /// replaced by their reduced grevlex basis.
    pub fn reduced(&self) -> Result<Ideal> {
        let gb = self.gb()?;
        Ok(Ideal::from_basis((*gb).clone()))
    }

    /// Appends generators.
    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        Ideal::new(&self.ring, self.generators.iter().cloned().chain(extra))
    }
}

/// Normal form of `f` modulo `gb`.
pub fn reduce(f: &Polynomial, gb: &GroebnerBasis) -> Result<Polynomial> {
    gb.reduce(f)
}

/// Reduced Gröbner basis of `ideal` under `ord` (cached on the ideal).
pub fn groebner_basis(ideal: &Ideal, ord: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
    ideal.groebner_basis(ord)
}

pub fn contains(ideal: &Ideal, f: &Polynomial) -> Result<bool> {
    ideal.contains(f)
}

pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.equals(b)
}

pub fn dimension(ideal: &Ideal) -> Result<i64> {
    ideal.dimension()
}

/// S-polynomial over the rationals (test helper and checks).
pub fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Result<Polynomial> {
    let (fm, fc) = f.leading_term(ord)?;
    let (gm, gc) = g.leading_term(ord)?;
    let l = fm.lcm(&gm);
    let a = f.mul_term(&l.div(&fm).expect("lcm"), &fc.recip());
    let b = g.mul_term(&l.div(&gm).expect("lcm"), &gc.recip());
    Ok(&a - &b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::RingContext;

    fn ring() -> Ring {
        RingContext::new(&["x", "y", "z"]).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        let r = ring();
        Ideal::new(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap())).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &ring()).unwrap()
    }

    fn texts(gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|e| e.to_string()).collect()
    }

    #[test]
    fn basis_examples() {
        let i = ideal(&["x^2+y^2-1", "x"]);
        assert_eq!(texts(&i.groebner_basis(&MonomialOrder::Lex).unwrap()), vec!["y^2-1", "x"]);
        let i = ideal(&["x", "y"]);
        assert_eq!(texts(&i.gb().unwrap()), vec!["y", "x"]);
        let i = ideal(&["x*y"]);
        assert_eq!(texts(&i.gb().unwrap()), vec!["x*y"]);
    }

    #[test]
    fn reduce_examples() {
        let gb = ideal(&["x"]).gb().unwrap();
        assert!(gb.reduce(&p("x*y")).unwrap().is_zero());
        assert_eq!(gb.reduce(&p("y")).unwrap(), p("y"));
        let gb = ideal(&["x^2-y"]).groebner_basis(&MonomialOrder::Lex).unwrap();
        assert_eq!(gb.reduce(&p("x^2")).unwrap(), p("y"));
        // rational normal form is exact, not a scalar multiple
        let gb = ideal(&["2*x-1"]).gb().unwrap();
        assert_eq!(gb.reduce(&p("x*y")).unwrap(), p("1/2*y"));
    }

    #[test]
    fn membership_examples() {
        assert!(ideal(&["x"]).contains(&p("x*y")).unwrap());
        assert!(!ideal(&["x"]).contains(&p("x+1")).unwrap());
        assert!(!ideal(&["x^2"]).contains(&p("x")).unwrap());
    }

    #[test]
    fn equality_examples() {
        assert!(ideal(&["x", "y"]).equals(&ideal(&["y", "x+y"])).unwrap());
        assert!(!ideal(&["x"]).equals(&ideal(&["x^2"])).unwrap());
        assert!(ideal(&["1"]).equals(&ideal(&["2"])).unwrap());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(ideal(&["x^2+y^2-z^2"]).dimension().unwrap(), 2);
        assert_eq!(ideal(&["x^2+y^2-z^2"]).projective_dimension().unwrap(), 1);
        assert_eq!(ideal(&["1"]).dimension().unwrap(), -1);
        assert_eq!(ideal(&["x", "y", "z"]).dimension().unwrap(), 0);
        assert_eq!(Ideal::zero(&ring()).dimension().unwrap(), 3);
    }

    #[test]
    fn cyclic3_is_a_basis() {
        let i = ideal(&["x+y+z", "x*y+y*z+z*x", "x*y*z-1"]);
        for ord in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
            let gb = i.groebner_basis(&ord).unwrap();
            for a in gb.elements() {
                for b in gb.elements() {
                    let s = s_polynomial(a, b, &ord).unwrap();
                    assert!(gb.reduce(&s).unwrap().is_zero());
                }
            }
            for g in i.generators() {
                assert!(gb.reduce(g).unwrap().is_zero());
            }
        }
        let lex = i.groebner_basis(&MonomialOrder::Lex).unwrap();
        assert_eq!(texts(&lex), vec!["z^3-1", "y^2+y*z+z^2", "x+y+z"]);
    }

    #[test]
    fn independent_sets() {
        // <x*y> in 3 variables: {y,z} or {x,z}
        let lms = vec![Monomial::from_exponents(&[1, 1, 0])];
        let s = maximal_independent_set(&lms, 3).unwrap();
        assert_eq!(s.count_ones(), 2);
        assert_ne!(s & 0b011, 0b011);
        assert_eq!(maximal_independent_set(&[Monomial::one()], 3), None);
    }

    #[test]
    fn budget_exhaustion_is_distinct() {
        let i = ideal(&["x^3-y*z", "y^3-x*z", "z^3-x*y", "x*y*z-1"]);
        let r = budget::scoped(budget::Budget { max_spairs: Some(1), ..Default::default() }, || {
            i.groebner_basis(&MonomialOrder::Lex).map(|_| ())
        });
        assert!(r.unwrap_err().is_resource_limit());
    }
}
