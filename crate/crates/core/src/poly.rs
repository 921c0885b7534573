//! Exact multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] keeps its terms sorted in descending graded reverse
//! lexicographic order with no zero coefficients, so structural equality is
//! mathematical equality.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{AlgebraError, Result};
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::ring::{same_ring, Ring};

pub type Rational = BigRational;

#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Rational)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}
impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn sort_desc(terms: &mut [(Monomial, Rational)]) {
    terms.sort_unstable_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, Rational::one())
    }

    pub fn constant(ring: &Ring, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::one(), c)] }
    }

    pub fn integer(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, rat(c))
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        assert!(i < ring.nvars());
        Polynomial { ring: ring.clone(), terms: vec![(Monomial::var(i, 1), Rational::one())] }
    }

    pub fn var_named(ring: &Ring, name: &str) -> Result<Self> {
        Ok(Self::var(ring, ring.var(name)?))
    }

    pub fn term(ring: &Ring, m: Monomial, c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                continue;
            }
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_desc(&mut terms);
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Rational> {
        match self.terms.as_slice() {
            [] => Some(Rational::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Total degree; `-1` for zero.
    pub fn total_degree(&self) -> i64 {
        self.terms.iter().map(|(m, _)| m.degree() as i64).max().unwrap_or(-1)
    }

    /// Degree in variable `v`; `-1` for zero.
    pub fn degree_in(&self, v: usize) -> i64 {
        self.terms.iter().map(|(m, _)| m.exp(v) as i64).max().unwrap_or(-1)
    }

    /// Bitmask of variables that occur.
    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |s, (m, _)| s | m.support())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_homogeneous_in(u32::MAX)
    }

    /// Homogeneous with respect to the total degree in the variables of `mask`.
    pub fn is_homogeneous_in(&self, mask: u32) -> bool {
        let mut it = self.terms.iter().map(|(m, _)| m.degree_in(mask));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Leading term under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Rational)> {
        let t = match ord {
            MonomialOrder::Grevlex => self.terms.first(),
            _ => self.terms.iter().max_by(|a, b| ord.cmp(&a.0, &b.0)),
        };
        t.cloned().ok_or(AlgebraError::ZeroPolynomial)
    }

    /// Leading coefficient in the default order; zero for the zero polynomial.
    pub fn leading_coefficient(&self) -> Rational {
        self.terms.first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.0)
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_impl(other, false))
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.add_impl(other, true))
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.mul_impl(other))
    }

    pub fn pow(&self, k: u32) -> Polynomial {
        let mut result = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_impl(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_impl(&base);
            }
        }
        result
    }

    fn add_impl(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match MonomialOrder::Grevlex.cmp(&a[i].0, &b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -b[j].1.clone() } else { b[j].1.clone() };
                    out.push((b[j].0, c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (*m, if negate { -c.clone() } else { c.clone() })));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    fn mul_impl(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(m, c);
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(m, c);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        sort_desc(&mut terms);
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Multiplies by a single term; order is preserved, so no sorting.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        self.mul_term(&Monomial::one(), c)
    }

    /// Formal partial derivative with respect to variable index `v`.
    pub fn derivative(&self, v: usize) -> Polynomial {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e == 0 {
                continue;
            }
            let mut mm = *m;
            mm.set_exp(v, e - 1);
            terms.push((mm, c * rat(e as i64)));
        }
        // lowering one exponent can reorder terms in grevlex
        sort_desc(&mut terms);
        Polynomial { ring: self.ring.clone(), terms }
    }

    /// Partial derivative by variable name.
    pub fn differentiate(&self, var: &str) -> Result<Polynomial> {
        Ok(self.derivative(self.ring.var(var)?))
    }

    /// Substitutes the polynomial `value` for variable `v`.
    pub fn substitute(&self, v: usize, value: &Polynomial) -> Polynomial {
        let maxe = self.degree_in(v).max(0) as usize;
        let mut powers = vec![Polynomial::one(&self.ring)];
        for k in 1..=maxe {
            let next = powers[k - 1].mul_impl(value);
            powers.push(next);
        }
        let mut groups: HashMap<u16, Vec<(Monomial, Rational)>> = HashMap::new();
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = m.exp(v);
            mm.set_exp(v, 0);
            groups.entry(e).or_default().push((mm, c.clone()));
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (e, rest) in groups {
            let p = &powers[e as usize];
            for (m1, c1) in &rest {
                for (m2, c2) in &p.terms {
                    *acc.entry(m1.mul(m2)).or_insert_with(Rational::zero) += c1 * c2;
                }
            }
        }
        Polynomial::from_terms(&self.ring, acc)
    }

    /// Substitutes a rational constant for variable `v`.
    pub fn evaluate_var(&self, v: usize, value: &Rational) -> Polynomial {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            let mut mm = *m;
            mm.set_exp(v, 0);
            let cc = if e == 0 { c.clone() } else { c * num_traits::pow(value.clone(), e as usize) };
            *acc.entry(mm).or_insert_with(Rational::zero) += cc;
        }
        Polynomial::from_terms(&self.ring, acc)
    }

    /// Coefficients with respect to variable `v`: entry `k` multiplies `v^k`.
    pub fn coefficients_in(&self, v: usize) -> Vec<Polynomial> {
        let d = self.degree_in(v);
        if d < 0 {
            return Vec::new();
        }
        let mut parts: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); d as usize + 1];
        for (m, c) in &self.terms {
            let mut mm = *m;
            let e = m.exp(v);
            mm.set_exp(v, 0);
            parts[e as usize].push((mm, c.clone()));
        }
        parts
            .into_iter()
            .map(|mut t| {
                sort_desc(&mut t);
                Polynomial { ring: self.ring.clone(), terms: t }
            })
            .collect()
    }

    /// Reassembles `sum_k coeffs[k] * v^k`.
    pub fn from_coefficients(ring: &Ring, v: usize, coeffs: &[Polynomial]) -> Polynomial {
        let mut terms = Vec::new();
        for (k, c) in coeffs.iter().enumerate() {
            let vk = Monomial::var(v, k as u16);
            terms.extend(c.terms.iter().map(|(m, q)| (m.mul(&vk), q.clone())));
        }
        let mut terms: Vec<_> = terms;
        sort_desc(&mut terms);
        Polynomial { ring: ring.clone(), terms }
    }

    /// Maps into `target`, sending variable `i` to `index_map[i]`.
    pub fn map_ring(&self, target: &Ring, index_map: &[usize]) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = [0u16; crate::monomial::MAX_VARS];
            for (i, &j) in index_map.iter().enumerate() {
                e[j] += m.exp(i);
            }
            (Monomial::from_exponents(&e[..target.nvars()]), c.clone())
        });
        Polynomial::from_terms(target, terms)
    }

    /// Embeds into a ring that extends this one by appended variables.
    pub fn embed(&self, target: &Ring) -> Polynomial {
        let mut terms = self.terms.clone();
        sort_desc(&mut terms);
        Polynomial { ring: target.clone(), terms }
    }

    /// Maps into `target` through a name lookup of every occurring variable.
    pub fn map_by_names(&self, target: &Ring) -> Result<Polynomial> {
        let map = (0..self.ring.nvars())
            .map(|i| {
                if self.support() & (1 << i) == 0 {
                    Ok(0)
                } else {
                    target.var(self.ring.name(i))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.map_ring(target, &map))
    }

    /// Rational content: positive, so that `self / content` has coprime
    /// integer coefficients.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for (_, c) in &self.terms {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    /// Integer content 1 with positive leading coefficient.
    pub fn normalized(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.terms[0].1.is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Leading coefficient 1 in the default order.
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.terms[0].1.recip())
    }

    /// Homogenizes with the ring's homogenizing variable `w`.
    pub fn homogenize(&self, w: &str) -> Result<Polynomial> {
        let wi = self.ring.var(w)?;
        if self.ring.homogenizing() != Some(wi) {
            return Err(AlgebraError::NotHomogenizing(w.to_string()));
        }
        let d = self.total_degree();
        if d < 0 {
            return Ok(self.clone());
        }
        let terms = self.terms.iter().map(|(m, c)| {
            let mut mm = *m;
            mm.set_exp(wi, m.exp(wi) + (d as u32 - m.degree()) as u16);
            (mm, c.clone())
        });
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// Substitutes `w = 1`.
    pub fn dehomogenize(&self, w: &str) -> Result<Polynomial> {
        let wi = self.ring.var(w)?;
        if self.ring.homogenizing() != Some(wi) {
            return Err(AlgebraError::NotHomogenizing(w.to_string()));
        }
        if !self.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous);
        }
        Ok(self.evaluate_var(wi, &Rational::one()))
    }

    /// Exact quotient `self / d` if `d` divides `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let (dm, dc) = (d.terms[0].0, d.terms[0].1.clone());
        let mut rem = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            let q = m.div(&dm)?;
            let qc = c / &dc;
            rem = rem.add_impl(&d.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quot })
    }

    /// Whether all coefficients are integers.
    pub fn is_integral(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_integer())
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        self.add_impl(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        self.add_impl(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        debug_assert!(same_ring(&self.ring, &rhs.ring));
        self.mul_impl(rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect();
        Polynomial { ring: self.ring.clone(), terms }
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl Polynomial {
    fn write_monomial(&self, f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
        let mut first = true;
        for i in 0..self.ring.nvars() {
            let e = m.exp(i);
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl Polynomial {
    fn write_terms<'a>(
        &self,
        f: &mut fmt::Formatter<'_>,
        terms: impl Iterator<Item = &'a (Monomial, Rational)>,
    ) -> fmt::Result {
        let mut empty = true;
        for (m, c) in terms {
            let neg = c.is_negative();
            let a = c.abs();
            if empty {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            empty = false;
            if m.is_one() {
                write_rational(f, &a)?;
            } else {
                if !a.is_one() {
                    write_rational(f, &a)?;
                    write!(f, "*")?;
                }
                self.write_monomial(f, m)?;
            }
        }
        if empty {
            write!(f, "0")?;
        }
        Ok(())
    }

    /// Text with the terms in descending `ord`.
    pub fn display_in<'a>(&'a self, ord: &'a MonomialOrder) -> impl fmt::Display + 'a {
        struct InOrder<'a>(&'a Polynomial, &'a MonomialOrder);
        impl fmt::Display for InOrder<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let mut terms: Vec<&(Monomial, Rational)> = self.0.terms.iter().collect();
                terms.sort_by(|a, b| self.1.cmp(&b.0, &a.0));
                self.0.write_terms(f, terms.into_iter())
            }
        }
        InOrder(self, ord)
    }
}

/// Canonical text: terms in descending grevlex, explicit `*` and `^`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_terms(f, self.terms.iter())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
