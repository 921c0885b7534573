//! Minimal primes over Q.
//!
//! The recursion splits on factors of basis elements, eliminates variables
//! that occur linearly, and otherwise contracts to a zero-dimensional ideal
//! over the function field of a maximal independent set, where a generic
//! eliminant decides primality or yields a further split.

use std::collections::{HashMap, HashSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::budget;
use crate::error::{AlgebraError, Result};
use crate::factor::{factor, Factorization};
use crate::groebner::{maximal_independent_set, GroebnerBasis, Ideal};
use crate::idealops::{intersect_all, radical_membership, saturate_by};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{Polynomial, Rational};

/// Coordinate shears tried before a component is left uncertified.
const SHEAR_ATTEMPTS: usize = 6;
/// Upper bound on the vector-space dimension explored over the function field.
const MAX_STANDARD_MONOMIALS: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certification {
    CertifiedPrime,
    MaybeNonPrime,
}

/// Why a component is known to be prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Witness {
    /// Generated by linear forms.
    Linear,
    /// Generated by one irreducible polynomial.
    PrincipalIrreducible,
    /// Contraction of a field extension of a rational function field.
    ZeroDimensionalContraction,
    /// The zero ideal of a domain.
    ZeroIdeal,
}

#[derive(Clone, Debug)]
pub struct PrimeComponent {
    ideal: Ideal,
    certification: Certification,
    witness: Option<Witness>,
    dimension: i64,
}

impl PrimeComponent {
    pub fn new(ideal: Ideal, witness: Option<Witness>) -> Result<PrimeComponent> {
        let ideal = ideal.reduced()?;
        let dimension = ideal.dimension()?;
        let certification = if witness.is_some() { Certification::CertifiedPrime } else { Certification::MaybeNonPrime };
        Ok(PrimeComponent { ideal, certification, witness, dimension })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn into_ideal(self) -> Ideal {
        self.ideal
    }

    pub fn certification(&self) -> Certification {
        self.certification
    }

    pub fn is_certified(&self) -> bool {
        self.certification == Certification::CertifiedPrime
    }

    pub fn witness(&self) -> Option<Witness> {
        self.witness
    }

    /// Krull dimension of the quotient ring.
    pub fn dimension(&self) -> i64 {
        self.dimension
    }

    /// Dimension of the projective variety of a homogeneous component.
    pub fn projective_dimension(&self) -> i64 {
        self.dimension - 1
    }

    fn with_extra(&self, extra: &Polynomial) -> Result<PrimeComponent> {
        PrimeComponent::new(self.ideal.with([extra.clone()])?, self.witness)
    }
}

/// Minimal primes of a proper ideal.
pub fn minimal_primes(ideal: &Ideal) -> Result<Vec<PrimeComponent>> {
    if ideal.is_unit()? {
        return Err(AlgebraError::Precondition("the unit ideal has no prime components".into()));
    }
    let mut d = Decomposer::new();
    d.split(ideal)?;
    remove_redundant(d.found)
}

/// Drops unit ideals, duplicates and components containing another one.
pub fn remove_redundant(components: Vec<PrimeComponent>) -> Result<Vec<PrimeComponent>> {
    let mut comps = Vec::new();
    for c in components {
        if !c.ideal.is_unit()? {
            comps.push(c);
        }
    }
    comps.sort_by(|a, b| b.dimension.cmp(&a.dimension).then_with(|| a.ideal.to_string().cmp(&b.ideal.to_string())));
    let mut kept: Vec<PrimeComponent> = Vec::new();
    for c in comps {
        let mut redundant = false;
        for k in &kept {
            if c.ideal.contains_ideal(&k.ideal)? {
                redundant = true;
                break;
            }
        }
        if !redundant {
            kept.push(c);
        }
    }
    Ok(kept)
}

/// Same as [`remove_redundant`] for bare ideals.
pub fn remove_redundant_ideals(ideals: Vec<Ideal>) -> Result<Vec<Ideal>> {
    let comps = ideals
        .into_iter()
        .map(|i| {
            let dimension = i.dimension()?;
            Ok(PrimeComponent { ideal: i, certification: Certification::MaybeNonPrime, witness: None, dimension })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(remove_redundant(comps)?.into_iter().map(PrimeComponent::into_ideal).collect())
}

/// Outcome of [`verify_decomposition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub passed: bool,
    pub failures: Vec<String>,
}

/// Checks that the radical of `ideal` equals the radical of the intersection
/// of `components`.
pub fn verify_decomposition(ideal: &Ideal, components: &[Ideal]) -> DecompositionReport {
    let mut failures = Vec::new();
    let mut run = || -> Result<()> {
        for c in components {
            for g in ideal.generators() {
                if !radical_membership(c, g)? {
                    failures.push(format!("{g} does not vanish on {c}"));
                }
            }
        }
        let inter = intersect_all(ideal.ring(), components)?;
        for g in inter.generators() {
            if !radical_membership(ideal, g)? {
                failures.push(format!("{g} vanishes on the components but not on the input"));
            }
        }
        Ok(())
    };
    if let Err(e) = run() {
        failures.push(format!("verification aborted: {e}"));
    }
    DecompositionReport { passed: failures.is_empty(), failures }
}

enum Eliminant {
    Prime { certified: bool },
    Split(Vec<Polynomial>),
    Unknown,
}

struct Decomposer {
    seen: HashSet<String>,
    found: Vec<PrimeComponent>,
    factors: HashMap<String, Factorization>,
    rng: ChaCha8Rng,
}

fn key(gb: &GroebnerBasis) -> String {
    gb.elements().iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Coefficient in Q[U] of the leading monomial in the `rest` variables.
fn leading_coefficient_in(g: &Polynomial, ord: &MonomialOrder, rest: u32) -> Result<Polynomial> {
    let (lm, _) = g.leading_term(ord)?;
    let top = lm.restrict(rest);
    Ok(Polynomial::from_terms(
        g.ring(),
        g.terms().iter().filter(|(m, _)| m.restrict(rest) == top).map(|(m, c)| (m.restrict(!rest), c.clone())),
    ))
}

/// Number of monomials in the `rest` variables outside the leading ideal;
/// `None` when infinite or too large.
fn standard_monomial_count(lead: &[Monomial], rest: u32, nvars: usize) -> Option<usize> {
    let mut seen = HashSet::new();
    let mut stack = vec![Monomial::one()];
    seen.insert(Monomial::one());
    while let Some(m) = stack.pop() {
        for v in (0..nvars).filter(|v| rest >> v & 1 == 1) {
            let next = m.mul(&Monomial::var(v, 1));
            if lead.iter().any(|l| l.divides(&next)) || !seen.insert(next) {
                continue;
            }
            if seen.len() > MAX_STANDARD_MONOMIALS {
                return None;
            }
            stack.push(next);
        }
    }
    Some(seen.len())
}

impl Decomposer {
    fn new() -> Decomposer {
        Decomposer {
            seen: HashSet::new(),
            found: Vec::new(),
            factors: HashMap::new(),
            rng: ChaCha8Rng::seed_from_u64(budget::seed()),
        }
    }

    fn factor(&mut self, p: &Polynomial) -> Result<Factorization> {
        let k = p.to_string();
        if let Some(f) = self.factors.get(&k) {
            return Ok(f.clone());
        }
        let f = factor(p)?;
        self.factors.insert(k, f.clone());
        Ok(f)
    }

    fn push(&mut self, ideal: Ideal, witness: Option<Witness>) -> Result<()> {
        let c = PrimeComponent::new(ideal, witness)?;
        if !c.ideal.is_unit()? {
            self.found.push(c);
        }
        Ok(())
    }

    fn split(&mut self, ideal: &Ideal) -> Result<()> {
        budget::check()?;
        let gb = ideal.gb()?;
        if gb.is_unit() || !self.seen.insert(key(&gb)) {
            return Ok(());
        }
        // anything containing a known prime only yields non-minimal primes
        for p in &self.found {
            if p.ideal.generators().iter().all(|g| gb.reduces_to_zero(g).unwrap_or(false)) {
                return Ok(());
            }
        }
        let gens = gb.elements().to_vec();
        if gens.is_empty() {
            return self.push(ideal.clone(), Some(Witness::ZeroIdeal));
        }

        let mut uncertain = false;
        for g in &gens {
            let f = self.factor(g)?;
            if f.factors.len() > 1 || f.factors.iter().any(|x| x.multiplicity > 1) {
                for x in &f.factors {
                    self.split(&ideal.with([x.poly.clone()])?)?;
                }
                return Ok(());
            }
            uncertain |= !f.is_complete();
        }

        if gens.iter().all(|g| g.total_degree() <= 1) {
            return self.push(ideal.clone(), Some(Witness::Linear));
        }
        if gens.len() == 1 {
            let w = if uncertain { None } else { Some(Witness::PrincipalIrreducible) };
            return self.push(ideal.clone(), w);
        }
        if let Some((k, v)) = linear_variable(&gens) {
            return self.split_linear(&gens, k, v);
        }
        self.contract(ideal, &gb, uncertain)
    }

    /// `gens[k] = c*x_v + rest` with `x_v` absent from `rest`: solve for
    /// `x_v`, decompose the remaining generators, and add `gens[k]` back.
    fn split_linear(&mut self, gens: &[Polynomial], k: usize, v: usize) -> Result<()> {
        let g = &gens[k];
        let coeffs = g.coefficients_in(v);
        let c = coeffs[1].constant_value().expect("constant coefficient");
        let value = coeffs[0].scale(&-c.recip());
        let ring = g.ring();
        let others = gens.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, h)| h.substitute(v, &value));
        let reduced = Ideal::new(ring, others)?;
        let mut sub = Decomposer { seen: HashSet::new(), found: Vec::new(), factors: HashMap::new(), rng: self.rng.clone() };
        std::mem::swap(&mut sub.factors, &mut self.factors);
        let result = sub.split(&reduced);
        std::mem::swap(&mut sub.factors, &mut self.factors);
        self.rng = sub.rng;
        result?;
        for p in remove_redundant(sub.found)? {
            let lifted = p.with_extra(g)?;
            if !lifted.ideal.is_unit()? {
                self.found.push(lifted);
            }
        }
        Ok(())
    }

    /// Contraction to a zero-dimensional ideal over Q(U).
    fn contract(&mut self, ideal: &Ideal, gb: &GroebnerBasis, uncertain: bool) -> Result<()> {
        let ring = ideal.ring().clone();
        let n = ring.nvars();
        let u = maximal_independent_set(&gb.leading_monomials(), n).expect("proper ideal");
        let rest = ring.all_mask() & !u;
        let ord = MonomialOrder::elimination(rest);
        let block = ideal.groebner_basis(&ord)?;

        let mut denominators: Vec<Polynomial> = Vec::new();
        let mut lead = Vec::new();
        for g in block.elements() {
            let (lm, _) = g.leading_term(&ord)?;
            lead.push(lm.restrict(rest));
            let lc = leading_coefficient_in(g, &ord, rest)?;
            if !lc.is_constant() {
                for f in self.factor(&lc)?.factors {
                    if !denominators.contains(&f.poly) {
                        denominators.push(f.poly);
                    }
                }
            }
        }
        let dk = standard_monomial_count(&lead, rest, n);

        let outcome = match dk {
            Some(1) => Eliminant::Prime { certified: true },
            Some(d) => self.eliminant_test(ideal, rest, d)?,
            None => Eliminant::Unknown,
        };
        let certified = match outcome {
            Eliminant::Split(parts) => {
                for q in parts {
                    self.split(&ideal.with([q])?)?;
                }
                return Ok(());
            }
            Eliminant::Prime { certified } => certified && !uncertain,
            Eliminant::Unknown => false,
        };
        let mut sat = ideal.clone();
        for h in &denominators {
            sat = saturate_by(&sat, h)?;
        }
        let witness = certified.then_some(Witness::ZeroDimensionalContraction);
        self.push(sat, witness)?;
        for h in denominators {
            self.split(&ideal.with([h])?)?;
        }
        Ok(())
    }

    fn eliminant_test(&mut self, ideal: &Ideal, rest: u32, dk: usize) -> Result<Eliminant> {
        let ring = ideal.ring().clone();
        let rest_vars: Vec<usize> = (0..ring.nvars()).filter(|v| rest >> v & 1 == 1).collect();
        // coordinate eliminants: a split, a primitive coordinate, or degrees for the shear
        let mut degrees = Vec::new();
        for &x in rest_vars.iter().rev() {
            budget::check()?;
            let Some(e) = eliminant(ideal, x, rest)? else { continue };
            let f = self.factor(&e)?;
            let in_x: Vec<_> = f.factors.iter().filter(|g| g.poly.degree_in(x) > 0).collect();
            if in_x.len() > 1 || in_x.iter().any(|g| g.multiplicity > 1) {
                return Ok(Eliminant::Split(f.factors.iter().map(|g| g.poly.clone()).collect()));
            }
            if let [only] = in_x.as_slice() {
                let d = only.poly.degree_in(x) as usize;
                if d == dk {
                    return Ok(Eliminant::Prime { certified: !only.maybe_reducible });
                }
                degrees.push((x, d));
            }
        }
        // coordinates of degree one lie in Q(U) and cannot help a primitive element
        degrees.retain(|&(_, d)| d > 1);
        degrees.sort_by(|a, b| b.1.cmp(&a.1));
        let Some(&(y, _)) = degrees.first() else {
            return Ok(Eliminant::Unknown);
        };
        let helpers: Vec<usize> = degrees[1..].iter().map(|&(v, _)| v).collect();
        if helpers.is_empty() {
            return Ok(Eliminant::Unknown);
        }
        for attempt in 0..SHEAR_ATTEMPTS {
            budget::check()?;
            let shear: Vec<i64> = helpers
                .iter()
                .map(|_| if attempt == 0 { 1 } else { [-3i64, -2, -1, 1, 2, 3][self.rng.gen_range(0..6)] })
                .collect();
            let offset = helpers.iter().zip(&shear).fold(Polynomial::zero(&ring), |acc, (&x, &c)| {
                &acc + &Polynomial::var(&ring, x).scale(&Rational::from_integer(c.into()))
            });
            let yv = Polynomial::var(&ring, y);
            let forward = &yv - &offset;
            let backward = &yv + &offset;
            let moved = Ideal::new(&ring, ideal.generators().iter().map(|g| g.substitute(y, &forward)))?;
            let Some(e) = eliminant(&moved, y, rest)? else {
                return Ok(Eliminant::Unknown);
            };
            let f = self.factor(&e)?;
            let in_y: Vec<_> = f.factors.iter().filter(|x| x.poly.degree_in(y) > 0).collect();
            if in_y.len() > 1 || in_y.iter().any(|x| x.multiplicity > 1) {
                return Ok(Eliminant::Split(f.factors.iter().map(|x| x.poly.substitute(y, &backward)).collect()));
            }
            if let [only] = in_y.as_slice() {
                if only.poly.degree_in(y) as usize == dk {
                    return Ok(Eliminant::Prime { certified: !only.maybe_reducible });
                }
            }
        }
        Ok(Eliminant::Unknown)
    }
}

/// Lowest-degree element of `I ∩ Q[U, y]` in `y`, where `U` is the
/// complement of `rest`.
fn eliminant(ideal: &Ideal, y: usize, rest: u32) -> Result<Option<Polynomial>> {
    let others = rest & !(1 << y);
    let ord = MonomialOrder::block(others, MonomialOrder::elimination(1 << y));
    let gb = ideal.groebner_basis(&ord)?;
    Ok(gb
        .elements()
        .iter()
        .filter(|g| g.support() & others == 0 && g.degree_in(y) > 0)
        .min_by_key(|g| (g.degree_in(y), g.len()))
        .cloned())
}

/// A generator in which some variable occurs only in a single degree-one
/// term with constant coefficient.
fn linear_variable(gens: &[Polynomial]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, usize)> = None;
    for (k, g) in gens.iter().enumerate() {
        for v in (0..g.ring().nvars()).filter(|v| g.support() >> v & 1 == 1) {
            if g.degree_in(v) != 1 {
                continue;
            }
            let coeffs = g.coefficients_in(v);
            if !coeffs[1].is_constant() {
                continue;
            }
            // prefer short substitutions
            let cost = g.len();
            if best.is_none_or(|b| cost < b.2) {
                best = Some((k, v, cost));
            }
        }
    }
    best.map(|(k, v, _)| (k, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::{Ring, RingContext};

    fn ring() -> Ring {
        RingContext::with_homogenizing(&["x", "y", "z", "w"], "w").unwrap()
    }

    fn id(gens: &[&str]) -> Ideal {
        let r = ring();
        Ideal::new(&r, gens.iter().map(|g| parse_polynomial(g, &r).unwrap())).unwrap()
    }

    fn matches(found: &[PrimeComponent], expected: &[Ideal]) -> bool {
        found.len() == expected.len()
            && expected.iter().all(|e| found.iter().any(|c| c.ideal().equals(e).unwrap()))
    }

    #[test]
    fn small_examples() {
        let c = minimal_primes(&id(&["x*y"])).unwrap();
        assert!(matches(&c, &[id(&["x"]), id(&["y"])]));
        assert!(c.iter().all(PrimeComponent::is_certified));
        let c = minimal_primes(&id(&["x^2", "x*y"])).unwrap();
        assert!(matches(&c, &[id(&["x"])]));
        assert!(minimal_primes(&id(&["1"])).is_err());
        // twisted cubic: prime, not principal, not linear
        let c = minimal_primes(&id(&["x*z-y^2", "x*w-y*z", "y*w-z^2"])).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_certified());
        // two skew lines
        let c = minimal_primes(&id(&["x*z", "x*w", "y*z", "y*w"])).unwrap();
        assert!(matches(&c, &[id(&["x", "y"]), id(&["z", "w"])]));
    }

    #[test]
    fn needs_generic_eliminant() {
        // two conjugate pairs of points on a conic: x^2 = 2w^2 and y = x
        let c = minimal_primes(&id(&["x^2-2*w^2", "y^2-2*w^2", "z"])).unwrap();
        assert!(matches(&c, &[id(&["x-y", "x^2-2*w^2", "z"]), id(&["x+y", "x^2-2*w^2", "z"])]));
        assert!(c.iter().all(PrimeComponent::is_certified));
    }

    #[test]
    fn redundancy() {
        let comps = vec![id(&["x"]), id(&["x"]), id(&["x", "y"]), id(&["1"])];
        let kept = remove_redundant_ideals(comps).unwrap();
        assert_eq!(kept.len(), 1);
        assert!(kept[0].equals(&id(&["x"])).unwrap());
    }

    #[test]
    fn verification() {
        assert!(verify_decomposition(&id(&["x*y"]), &[id(&["x"]), id(&["y"])]).passed);
        assert!(verify_decomposition(&id(&["x^2"]), &[id(&["x"])]).passed);
        assert!(!verify_decomposition(&id(&["x"]), &[id(&["y"])]).passed);
    }
}
