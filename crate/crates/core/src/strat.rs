//! Conormal spaces, dual varieties, singular loci and Whitney (a)
//! stratifications of projective varieties.
//!
//! A projective variety lives in a homogeneous ring `Q[x_0..x_n]`; conormal
//! spaces live in the doubled ring `Q[x_0..x_n, u_0..u_n]` with the pairing
//! `sum_k u_k x_k`.

use rayon::prelude::*;

use crate::budget::{self, Budget};
use crate::decomp::{minimal_primes, remove_redundant, PrimeComponent};
use crate::error::{AlgebraError, Result};
use crate::factor::squarefree_part;
use crate::groebner::Ideal;
use crate::idealops::{eliminate, minors, saturate_by, saturate_by_linear, PolyMatrix};
use crate::poly::{Polynomial, Rational};
use crate::ring::{same_ring, Ring};

/// The conormal ideal of a prime component.
#[derive(Clone, Debug)]
pub struct ConormalIdeal {
    ideal: Ideal,
    source: PrimeComponent,
}

impl ConormalIdeal {
    /// Ideal in the doubled ring.
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn source(&self) -> &PrimeComponent {
        &self.source
    }

    /// The doubled ring the ideal lives in.
    pub fn ring(&self) -> &Ring {
        self.ideal.ring()
    }
}

fn point_names(ring: &Ring) -> Vec<String> {
    ring.point_vars().into_iter().map(|i| ring.name(i).to_string()).collect()
}

fn codimension(p: &PrimeComponent) -> usize {
    let n1 = p.ideal().ring().point_vars().len() as i64;
    (n1 - p.dimension()).max(0) as usize
}

/// Whether the projective variety of `p` is empty (all coordinates vanish).
pub fn is_irrelevant(ideal: &Ideal) -> Result<bool> {
    let ring = ideal.ring();
    for v in ring.point_vars() {
        if !crate::idealops::radical_membership(ideal, &Polynomial::var(ring, v))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn drop_irrelevant(comps: Vec<PrimeComponent>) -> Result<Vec<PrimeComponent>> {
    let mut out = Vec::new();
    for c in comps {
        if !is_irrelevant(c.ideal())? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Conormal ideal: `P + (c+1)-minors([Jac; u])` with the components over
/// the singular locus saturated away. Linear forms cutting out each singular
/// prime are used when available, otherwise a `c`-minor of the Jacobian
/// that does not vanish identically on `V(P)`.
pub fn conormal_ideal(p: &PrimeComponent) -> Result<ConormalIdeal> {
    let primal = p.ideal().ring().clone();
    if primal.has_duals() {
        return Err(AlgebraError::InvalidRing("conormal input must live in a ring without dual variables".into()));
    }
    if is_irrelevant(p.ideal())? {
        return Err(AlgebraError::Precondition("the irrelevant ideal defines the empty projective variety".into()));
    }
    let doubled = primal.with_duals()?;
    let pts = primal.point_vars();
    let gb = p.ideal().gb()?;
    let gens: Vec<Polynomial> = gb.elements().to_vec();
    let c = codimension(p);

    let lifted: Vec<Polynomial> = gens.iter().map(|g| g.embed(&doubled)).collect();
    let mut aug = PolyMatrix::jacobian(&doubled, &lifted, &pts);
    let duals: Vec<Polynomial> =
        pts.iter().map(|&i| Polynomial::var(&doubled, primal_dual(&doubled, i))).collect();
    aug.push_row(duals)?;
    let mut k_gens = lifted.clone();
    k_gens.extend(minors(&aug, c + 1)?);
    let mut k = Ideal::new(&doubled, k_gens)?;

    if c > 0 {
        k = match covering_linear_forms(p)? {
            Some(forms) => {
                let mut acc = k;
                for l in forms {
                    acc = saturate_by_linear(&acc, &l.embed(&doubled))?;
                }
                acc
            }
            None => saturate_by(&k, &smallest_minor(p, c)?.embed(&doubled))?,
        };
    }
    Ok(ConormalIdeal { ideal: k, source: p.clone() })
}

/// Linear forms outside `P` whose product vanishes on the singular locus of
/// the affine cone, one per prime of the Jacobian ideal; `None` when some
/// prime contains no such form.
fn covering_linear_forms(p: &PrimeComponent) -> Result<Option<Vec<Polynomial>>> {
    let sing = singular_ideal(p)?;
    if sing.is_unit()? {
        return Ok(Some(Vec::new()));
    }
    let mut forms: Vec<Polynomial> = Vec::new();
    let qs = minimal_primes(&sing)?;
    for q in qs {
        let mut covered = false;
        for l in &forms {
            if q.ideal().contains(l)? {
                covered = true;
                break;
            }
        }
        if covered {
            continue;
        }
        let mut found = None;
        for g in q.ideal().gb()?.elements().iter().rev() {
            if g.total_degree() == 1 && !p.ideal().contains(g)? {
                found = Some(g.clone());
                break;
            }
        }
        match found {
            Some(l) => forms.push(l),
            None => return Ok(None),
        }
    }
    Ok(Some(forms))
}

/// The `c`-minor of the Jacobian of smallest size not vanishing on `V(P)`.
fn smallest_minor(p: &PrimeComponent, c: usize) -> Result<Polynomial> {
    let ring = p.ideal().ring();
    let gb = p.ideal().gb()?;
    let jac = PolyMatrix::jacobian(ring, gb.elements(), &ring.point_vars());
    let mut best: Option<Polynomial> = None;
    for m in minors(&jac, c)? {
        let r = gb.reduce(&m)?;
        if r.is_zero() {
            continue;
        }
        let r = r.normalized();
        if best.as_ref().is_none_or(|b| (r.total_degree(), r.len()) < (b.total_degree(), b.len())) {
            best = Some(r);
        }
    }
    best.ok_or_else(|| AlgebraError::Precondition("Jacobian rank is below the codimension; is the component prime?".into()))
}

fn primal_dual(doubled: &Ring, i: usize) -> usize {
    doubled.dual_of(i).expect("point variable has a dual")
}

/// The dual variety, as an ideal in the ring of dual variables alone.
pub fn dual_variety(p: &PrimeComponent) -> Result<Ideal> {
    let c = conormal_ideal(p)?;
    let names = point_names(p.ideal().ring());
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    eliminate(c.ideal(), &refs)
}

/// Reads an ideal over the dual variables `u_<name>` as an ideal over the
/// primal variables `<name>` of `primal`.
pub fn dual_to_primal(dual: &Ideal, primal: &Ring) -> Result<Ideal> {
    let ring = dual.ring();
    let map = (0..ring.nvars())
        .map(|i| {
            let name = ring.name(i);
            let base = name.strip_prefix(crate::ring::DUAL_PREFIX).unwrap_or(name);
            primal.var(base)
        })
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(primal, dual.generators().iter().map(|g| g.map_ring(primal, &map)))
}

/// Jacobian ideal of `p`: `P + c-minors` of the Jacobian of its basis.
pub fn singular_ideal(p: &PrimeComponent) -> Result<Ideal> {
    let c = codimension(p);
    if c == 0 {
        return Ok(Ideal::unit(p.ideal().ring()));
    }
    let ring = p.ideal().ring().clone();
    let gens = p.ideal().gb()?.elements().to_vec();
    let jac = PolyMatrix::jacobian(&ring, &gens, &ring.point_vars());
    p.ideal().with(minors(&jac, c)?)
}

/// Minimal primes of the singular locus of the union of `components`:
/// singular points of each component and pairwise intersections.
pub fn singular_locus(components: &[PrimeComponent]) -> Result<Vec<PrimeComponent>> {
    let mut out = Vec::new();
    let mut add = |ideal: Ideal| -> Result<()> {
        if !ideal.is_unit()? {
            out.extend(minimal_primes(&ideal)?);
        }
        Ok(())
    };
    for p in components {
        add(singular_ideal(p)?)?;
    }
    for (k, a) in components.iter().enumerate() {
        for b in &components[k + 1..] {
            add(a.ideal().with(b.ideal().generators().iter().cloned())?)?;
        }
    }
    drop_irrelevant(remove_redundant(out)?)
}

/// Result of Algorithm 1 on a pair `V(J_Y) ⊊ V(I_X)`.
#[derive(Clone, Debug)]
pub struct WhitneyPairReport {
    pub x: PrimeComponent,
    pub y: PrimeComponent,
    /// Primes of the points of `Y` where condition (a) fails.
    pub irregular_primes: Vec<PrimeComponent>,
    /// True when the irregular set misses the generic points of `Y`.
    pub regular: bool,
}

/// Algorithm 1: the primes of the points of `Y` over which the limits of
/// tangent spaces of `X` fail to contain the tangent space of `Y`.
pub fn whitney_a_irregular(x: &PrimeComponent, y: &PrimeComponent) -> Result<WhitneyPairReport> {
    check_nested(x, y)?;
    if y.projective_dimension() <= 0 {
        return Ok(WhitneyPairReport { x: x.clone(), y: y.clone(), irregular_primes: Vec::new(), regular: true });
    }
    let cx = conormal_ideal(x)?;
    let cy = conormal_ideal(y)?;
    irregular_with(&cx, &cy)
}

fn check_nested(x: &PrimeComponent, y: &PrimeComponent) -> Result<()> {
    if !same_ring(x.ideal().ring(), y.ideal().ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    if !strictly_nested(x, y)? {
        return Err(AlgebraError::Precondition("V(J_Y) must be a proper subvariety of V(I_X)".into()));
    }
    Ok(())
}

fn strictly_nested(x: &PrimeComponent, y: &PrimeComponent) -> Result<bool> {
    Ok(y.ideal().contains_ideal(x.ideal())? && !x.ideal().contains_ideal(y.ideal())?)
}

fn irregular_with(cx: &ConormalIdeal, cy: &ConormalIdeal) -> Result<WhitneyPairReport> {
    let (x, y) = (cx.source(), cy.source());
    let primal = x.ideal().ring().clone();
    let doubled = cx.ring().clone();
    let jy: Vec<Polynomial> = y.ideal().generators().iter().map(|g| g.embed(&doubled)).collect();
    let ikxy = cx.ideal().with(jy)?;
    let mut kept = Vec::new();
    for q in minimal_primes(&ikxy)? {
        // q does not contain I_C(X) + I_C(Y) iff it misses some generator of I_C(Y)
        if !q.ideal().contains_ideal(cy.ideal())? {
            kept.push(q);
        }
    }
    let duals: Vec<String> =
        doubled.dual_vars().into_iter().map(|i| doubled.name(i).to_string()).collect();
    let refs: Vec<&str> = duals.iter().map(String::as_str).collect();
    let mut projected = Vec::new();
    for q in kept {
        let e = eliminate(q.ideal(), &refs)?;
        let gens = e.generators().iter().map(|g| g.map_by_names(&primal)).collect::<Result<Vec<_>>>()?;
        projected.push(PrimeComponent::new(Ideal::new(&primal, gens)?, q.witness())?);
    }
    let irregular_primes = drop_irrelevant(remove_redundant(projected)?)?;
    let mut regular = true;
    for p in &irregular_primes {
        if p.ideal().equals(y.ideal())? {
            regular = false;
        }
    }
    Ok(WhitneyPairReport { x: x.clone(), y: y.clone(), irregular_primes, regular })
}

/// Whether `(Reg(X), U)` satisfies condition (a), where `U` is `Reg(Y)`
/// minus `V(excluded)`. The zero ideal excludes nothing.
pub fn whitney_a_holds(x: &PrimeComponent, y: &PrimeComponent, excluded: &Ideal) -> Result<bool> {
    let report = whitney_a_irregular(x, y)?;
    let sing_y = singular_ideal(y)?;
    for s in &report.irregular_primes {
        let in_excluded = !excluded.is_zero_ideal() && s.ideal().contains_ideal(excluded)?;
        if !in_excluded && !s.ideal().contains_ideal(&sing_y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Knobs for [`whitney_a_stratify_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct StratifyOptions {
    /// Wall-clock limit for each Algorithm 1 pair, and for each conormal
    /// ideal it needs.
    pub pair_budget_seconds: Option<u64>,
    /// Run the pairs of one level on the rayon pool.
    pub parallel: bool,
}

/// Algorithm 2 output: `levels[i]` holds the primes of `F_i`.
#[derive(Clone, Debug, Default)]
pub struct StratificationLevels {
    pub levels: Vec<Vec<PrimeComponent>>,
    /// Some computation hit a resource limit; the levels may be incomplete.
    pub truncated: bool,
    pub warnings: Vec<String>,
}

/// Algorithm 2 with default options.
pub fn whitney_a_stratify(ideal: &Ideal) -> Result<StratificationLevels> {
    whitney_a_stratify_with(ideal, &StratifyOptions::default())
}

/// Algorithm 2: Whitney (a) stratification of the projective variety of a
/// homogeneous radical ideal.
pub fn whitney_a_stratify_with(ideal: &Ideal, options: &StratifyOptions) -> Result<StratificationLevels> {
    if !ideal.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous);
    }
    let mut out = StratificationLevels::default();
    match stratify_levels(ideal, options, &mut out) {
        Ok(()) => Ok(out),
        Err(e) if e.is_resource_limit() => {
            out.truncated = true;
            out.warnings.push(e.to_string());
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

fn stratify_levels(ideal: &Ideal, options: &StratifyOptions, out: &mut StratificationLevels) -> Result<()> {
    if ideal.is_unit()? {
        return Ok(());
    }
    let l0 = drop_irrelevant(minimal_primes(ideal)?)?;
    if l0.is_empty() {
        return Ok(());
    }
    for c in &l0 {
        if !c.is_certified() {
            out.warnings.push(format!("component {} is not certified prime", c.ideal()));
        }
    }
    out.levels.push(l0);
    let mut conormals: Vec<Vec<Option<Result<ConormalIdeal>>>> = vec![vec![None; out.levels[0].len()]];
    loop {
        let j = out.levels.len() - 1;
        let mut next = singular_locus(&out.levels[j])?;
        if j >= 1 {
            let mut pairs = Vec::new();
            for (b, y) in out.levels[j].iter().enumerate() {
                if y.projective_dimension() <= 0 {
                    continue;
                }
                for i in 0..j {
                    for (a, x) in out.levels[i].iter().enumerate() {
                        if strictly_nested(x, y)? {
                            pairs.push(((i, a), (j, b)));
                        }
                    }
                }
            }
            // worker threads do not inherit the caller's budget
            let outer = budget::current();
            let remaining = budget::remaining().map(|d| d.as_secs().max(1));
            let secs = match (options.pair_budget_seconds, remaining) {
                (Some(p), Some(r)) => Some(p.min(r)),
                (p, r) => p.or(r),
            };
            let pair_budget = Budget { max_seconds: secs, ..outer };
            for &((i, a), (jj, b)) in &pairs {
                for (lvl, idx) in [(i, a), (jj, b)] {
                    if conormals[lvl][idx].is_none() {
                        let c = budget::scoped(pair_budget, || conormal_ideal(&out.levels[lvl][idx]));
                        conormals[lvl][idx] = Some(match c {
                            Err(e) if !e.is_resource_limit() => return Err(e),
                            c => c,
                        });
                    }
                }
            }
            let conormals_ref = &conormals;
            let run = |&((i, a), (jj, b)): &((usize, usize), (usize, usize))| {
                let cx = conormals_ref[i][a].as_ref().expect("computed").as_ref().map_err(Clone::clone)?;
                let cy = conormals_ref[jj][b].as_ref().expect("computed").as_ref().map_err(Clone::clone)?;
                budget::scoped(pair_budget, || irregular_with(cx, cy))
            };
            let results: Vec<Result<WhitneyPairReport>> =
                if options.parallel { pairs.par_iter().map(run).collect() } else { pairs.iter().map(run).collect() };
            for (r, ((i, a), (jj, b))) in results.into_iter().zip(&pairs) {
                match r {
                    Ok(rep) => next.extend(rep.irregular_primes),
                    Err(e) if e.is_resource_limit() => {
                        out.truncated = true;
                        out.warnings.push(format!(
                            "pair ({}, {}) abandoned: {e}",
                            out.levels[*i][*a].ideal(),
                            out.levels[*jj][*b].ideal()
                        ));
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        let next = drop_irrelevant(remove_redundant(next)?)?;
        if next.is_empty() {
            return Ok(());
        }
        conormals.push(vec![None; next.len()]);
        out.levels.push(next);
    }
}

/// An affine piece of a stratum: the prime with `w = 1`.
#[derive(Clone, Debug)]
pub struct AffineComponent {
    /// Dehomogenized ideal (same ring, free of the homogenizing variable).
    pub ideal: Ideal,
    pub projective: PrimeComponent,
    /// Coordinates (in ring order, skipping `w`) when the piece is a rational point.
    pub point: Option<Vec<Rational>>,
}

impl AffineComponent {
    pub fn dimension(&self) -> i64 {
        self.projective.projective_dimension()
    }
}

/// Affine view of a stratification, one entry per level.
#[derive(Clone, Debug, Default)]
pub struct BoundaryReport {
    pub projective: StratificationLevels,
    pub levels: Vec<Vec<AffineComponent>>,
}

/// Candidates for the irreducible components of the algebraic boundary
/// stratification of a convex body cut out by affine `gens`.
pub fn boundary_candidates(gens: &[Polynomial], options: &StratifyOptions) -> Result<BoundaryReport> {
    let Some(first) = gens.first() else {
        return Err(AlgebraError::Precondition("no generators".into()));
    };
    let ring = first.ring().clone();
    let w = ring
        .homogenizing()
        .ok_or_else(|| AlgebraError::NotHomogenizing("ring has no homogenizing variable".into()))?;
    let wname = ring.name(w).to_string();
    let mut hom = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        hom.push(squarefree_part(&g.homogenize(&wname)?)?);
    }
    let ideal = Ideal::new(&ring, hom)?;
    let projective = whitney_a_stratify_with(&ideal, options)?;
    let levels = projective.levels.iter().map(|level| affine_view(level)).collect::<Result<Vec<_>>>()?;
    Ok(BoundaryReport { projective, levels })
}

/// Whether `p` lies in the hyperplane at infinity `w = 0`.
pub fn at_infinity(p: &PrimeComponent) -> Result<bool> {
    match p.ideal().ring().homogenizing() {
        Some(w) => p.ideal().contains(&Polynomial::var(p.ideal().ring(), w)),
        None => Ok(false),
    }
}

/// Dehomogenizes each prime at `w = 1`, dropping the primes at infinity.
pub fn affine_view(components: &[PrimeComponent]) -> Result<Vec<AffineComponent>> {
    let mut out = Vec::new();
    for p in components {
        let ring = p.ideal().ring();
        let w = ring
            .homogenizing()
            .ok_or_else(|| AlgebraError::NotHomogenizing("ring has no homogenizing variable".into()))?;
        if at_infinity(p)? {
            continue;
        }
        let gens = p.ideal().generators().iter().map(|g| g.evaluate_var(w, &Rational::from_integer(1.into())));
        let ideal = Ideal::new(ring, gens)?.reduced()?;
        let point = rational_point(&ideal, w)?;
        out.push(AffineComponent { ideal, projective: p.clone(), point });
    }
    Ok(out)
}

/// Coordinates of the unique point of a linear zero-dimensional ideal.
fn rational_point(ideal: &Ideal, w: usize) -> Result<Option<Vec<Rational>>> {
    let ring = ideal.ring();
    let vars: Vec<usize> = (0..ring.nvars()).filter(|&v| v != w).collect();
    let gb = ideal.gb()?;
    if gb.len() != vars.len() || gb.elements().iter().any(|g| g.total_degree() != 1) {
        return Ok(None);
    }
    let mut coords = vec![Rational::from_integer(0.into()); vars.len()];
    for g in gb.elements() {
        let lin: Vec<usize> = vars.iter().copied().filter(|&v| g.degree_in(v) == 1).collect();
        let [v] = lin.as_slice() else { return Ok(None) };
        let c = g.coefficients_in(*v);
        let lead = c[1].constant_value().expect("linear");
        let rest = c[0].constant_value().unwrap_or_else(|| Rational::from_integer(0.into()));
        let k = vars.iter().position(|x| x == v).expect("variable");
        coords[k] = -rest / lead;
    }
    Ok(Some(coords))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::RingContext;

    fn id(ring: &Ring, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|g| parse_polynomial(g, ring).unwrap())).unwrap()
    }

    fn prime(ring: &Ring, gens: &[&str]) -> PrimeComponent {
        let c = minimal_primes(&id(ring, gens)).unwrap();
        assert_eq!(c.len(), 1);
        c.into_iter().next().unwrap()
    }

    #[test]
    fn conormal_of_a_point() {
        let r = RingContext::new(&["x", "y", "z"]).unwrap();
        let c = conormal_ideal(&prime(&r, &["x", "y"])).unwrap();
        let d = c.ring().clone();
        assert!(c.ideal().equals(&id(&d, &["x", "y", "u_z"])).unwrap());
        assert_eq!(c.ideal().dimension().unwrap(), 3);
    }

    #[test]
    fn dual_conic() {
        let r = RingContext::new(&["x", "y", "z"]).unwrap();
        let p = prime(&r, &["x^2+y^2-z^2"]);
        let d = dual_variety(&p).unwrap();
        assert_eq!(d.gb().unwrap().elements()[0].to_string(), "u_x^2+u_y^2-u_z^2");
        let back = dual_to_primal(&d, &r).unwrap();
        let dd = dual_variety(&PrimeComponent::new(back, None).unwrap()).unwrap();
        assert!(dual_to_primal(&dd, &r).unwrap().equals(p.ideal()).unwrap());
    }

    #[test]
    fn dual_of_point_and_hyperplane() {
        let r = RingContext::new(&["x", "y", "z"]).unwrap();
        let d = dual_variety(&prime(&r, &["x", "y"])).unwrap();
        assert_eq!(d.generators().len(), 1);
        assert_eq!(d.generators()[0].to_string(), "u_z");
        let r = RingContext::with_homogenizing(&["x", "y", "z", "w"], "w").unwrap();
        let d = dual_variety(&prime(&r, &["y-w"])).unwrap();
        let expect = id(d.ring(), &["u_x", "u_z", "u_y+u_w"]);
        assert!(d.equals(&expect).unwrap());
    }

    #[test]
    fn singular_locus_of_two_planes() {
        let r = RingContext::new(&["x", "y", "z"]).unwrap();
        let comps = minimal_primes(&id(&r, &["x*y"])).unwrap();
        let s = singular_locus(&comps).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s[0].ideal().equals(&id(&r, &["x", "y"])).unwrap());
    }

    #[test]
    fn smooth_conic_has_one_level() {
        let r = RingContext::new(&["x", "y", "z"]).unwrap();
        let s = whitney_a_stratify(&id(&r, &["x^2+y^2-z^2"])).unwrap();
        assert_eq!(s.levels.len(), 1);
        assert!(!s.truncated);
    }

    #[test]
    fn cone_vertex_is_a_stratum() {
        let r = RingContext::new(&["x", "y", "z", "w"]).unwrap();
        let s = whitney_a_stratify(&id(&r, &["x^2+y^2-z^2"])).unwrap();
        assert_eq!(s.levels.len(), 2);
        assert!(s.levels[1][0].ideal().equals(&id(&r, &["x", "y", "z"])).unwrap());
    }

    #[test]
    fn point_stratum_is_vacuous() {
        let r = RingContext::new(&["x", "y", "z"]).unwrap();
        let x = prime(&r, &["y^2*z-x^3-x^2*z"]);
        let y = prime(&r, &["x", "y"]);
        let rep = whitney_a_irregular(&x, &y).unwrap();
        assert!(rep.irregular_primes.is_empty());
        assert!(whitney_a_irregular(&y, &x).is_err());
    }
}
