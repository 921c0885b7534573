//! Ideal-theoretic operations built on Gröbner bases.
//!
//! Auxiliary variables are appended to the ring for the duration of a single
//! computation and eliminated before returning, so results always live in the
//! caller's ring.

use num_traits::Signed;

use crate::error::{AlgebraError, Result};
use crate::groebner::Ideal;
use crate::monomial::Monomial;
use crate::order::MonomialOrder;
use crate::poly::{rat, Polynomial};
use crate::ring::{same_ring, Ring};

fn check(a: &Ideal, b: &Ideal) -> Result<()> {
    if same_ring(a.ring(), b.ring()) {
        Ok(())
    } else {
        Err(AlgebraError::RingMismatch)
    }
}

/// `I + J`, returned as its reduced grevlex basis.
pub fn ideal_sum(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    check(a, b)?;
    let s = a.with(b.generators().iter().cloned())?;
    s.reduced()
}

/// The elements of `I` free of the variables in `mask`, as an ideal of the
/// same ring.
pub fn elimination_ideal(ideal: &Ideal, mask: u32) -> Result<Ideal> {
    if mask == 0 || ideal.generators().iter().all(|g| g.support() & mask == 0) {
        return Ok(ideal.clone());
    }
    let gb = ideal.groebner_basis(&MonomialOrder::elimination(mask))?;
    let kept = gb.elements_without(mask);
    Ideal::new(ideal.ring(), kept)
}

/// `I ∩ Q[remaining variables]`, living in the ring without `vars`.
pub fn eliminate(ideal: &Ideal, vars: &[&str]) -> Result<Ideal> {
    let ring = ideal.ring();
    let mut mask = 0u32;
    for v in vars {
        mask |= 1 << ring.var(v)?;
    }
    let elim = elimination_ideal(ideal, mask)?;
    let (sub, keep) = ring.without(mask)?;
    let mut back = vec![0usize; ring.nvars()];
    for (new, &old) in keep.iter().enumerate() {
        back[old] = new;
    }
    Ideal::new(&sub, elim.generators().iter().map(|g| g.map_ring(&sub, &back)))
}

/// Runs `f` in `ring` extended by `count` auxiliary variables (indices
/// `ring.nvars()..`), then maps the returned polynomials back.
fn with_aux<F>(ring: &Ring, count: usize, f: F) -> Result<Vec<Polynomial>>
where
    F: FnOnce(&Ring, &[usize]) -> Result<Vec<Polynomial>>,
{
    let ext = ring.with_aux(count)?;
    let aux: Vec<usize> = (ring.nvars()..ring.nvars() + count).collect();
    let out = f(&ext, &aux)?;
    Ok(out.into_iter().map(|p| p.embed(ring)).collect())
}

/// `I ∩ J` by eliminating `t` from `t·I + (1−t)·J`.
pub fn ideal_intersection(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    check(a, b)?;
    if a.is_zero_ideal() || b.is_zero_ideal() {
        return Ok(Ideal::zero(a.ring()));
    }
    if a.is_unit()? {
        return Ok(b.clone());
    }
    if b.is_unit()? {
        return Ok(a.clone());
    }
    let ring = a.ring().clone();
    let gens = with_aux(&ring, 1, |ext, aux| {
        let t = Polynomial::var(ext, aux[0]);
        let one_minus_t = &Polynomial::one(ext) - &t;
        let mut gens: Vec<Polynomial> = a.generators().iter().map(|g| &g.embed(ext) * &t).collect();
        gens.extend(b.generators().iter().map(|g| &g.embed(ext) * &one_minus_t));
        let ext_ideal = Ideal::new(ext, gens)?;
        Ok(elimination_ideal(&ext_ideal, 1 << aux[0])?.generators().to_vec())
    })?;
    Ideal::new(&ring, gens)?.reduced()
}

/// Intersection of a list of ideals (the unit ideal for an empty list).
pub fn intersect_all(ring: &Ring, ideals: &[Ideal]) -> Result<Ideal> {
    let mut it = ideals.iter();
    let Some(first) = it.next() else {
        return Ok(Ideal::unit(ring));
    };
    let mut acc = first.clone();
    for i in it {
        acc = ideal_intersection(&acc, i)?;
    }
    Ok(acc)
}

/// `I : ⟨f⟩ = (I ∩ ⟨f⟩) / f`.
pub fn quotient_by(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if f.is_zero() {
        return Ok(Ideal::unit(ideal.ring()));
    }
    let principal = Ideal::new(ideal.ring(), [f.clone()])?;
    let inter = ideal_intersection(ideal, &principal)?;
    let gens = inter
        .generators()
        .iter()
        .map(|g| g.div_exact(f).ok_or_else(|| AlgebraError::Precondition("intersection not divisible".into())))
        .collect::<Result<Vec<_>>>()?;
    Ideal::new(ideal.ring(), gens)?.reduced()
}

/// `I : J = ∩_g (I : g)` over the generators `g` of `J`.
pub fn ideal_quotient(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    check(a, b)?;
    let parts = b.generators().iter().map(|g| quotient_by(a, g)).collect::<Result<Vec<_>>>()?;
    intersect_all(a.ring(), &parts)
}

/// `I : f^∞` by eliminating `t` from `I + ⟨t·f − 1⟩`.
pub fn saturate_by(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if f.is_zero() {
        return Ok(Ideal::unit(ideal.ring()));
    }
    if f.is_constant() || ideal.is_zero_ideal() {
        return Ok(ideal.clone());
    }
    // a monomial saturates variable by variable: cheap when the ideal is homogeneous
    if f.len() == 1 && ideal.is_homogeneous() {
        let m = f.terms()[0].0;
        let mut acc = ideal.clone();
        for v in 0..ideal.ring().nvars() {
            if m.exp(v) > 0 {
                acc = saturate_by_variable(&acc, v)?;
            }
        }
        return Ok(acc);
    }
    if f.total_degree() == 1 && f.is_homogeneous() && ideal.is_homogeneous() {
        return saturate_by_linear(ideal, f);
    }
    let ring = ideal.ring().clone();
    let gens = with_aux(&ring, 1, |ext, aux| {
        let t = Polynomial::var(ext, aux[0]);
        let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.embed(ext)).collect();
        gens.push(&(&t * &f.embed(ext)) - &Polynomial::one(ext));
        let ext_ideal = Ideal::new(ext, gens)?;
        Ok(elimination_ideal(&ext_ideal, 1 << aux[0])?.generators().to_vec())
    })?;
    Ideal::new(&ring, gens)?.reduced()
}

/// Saturation of a homogeneous ideal by one variable: in a reverse
/// lexicographic order with that variable last, divide every basis element
/// by its largest power of the variable.
fn saturate_by_variable(ideal: &Ideal, v: usize) -> Result<Ideal> {
    Ideal::new(ideal.ring(), saturated_by_variable(ideal, v)?)?.reduced()
}

/// Generators (not reduced) of the saturation by one variable.
fn saturated_by_variable(ideal: &Ideal, v: usize) -> Result<Vec<Polynomial>> {
    let n = ideal.ring().nvars();
    // grevlex with `v` moved to the end: reverse the role by a permutation
    let mut perm: Vec<usize> = (0..n).filter(|&i| i != v).collect();
    perm.push(v);
    let mut inv = vec![0usize; n];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let ring = ideal.ring();
    let permuted = Ideal::new(ring, ideal.generators().iter().map(|g| g.map_ring(ring, &inv)))?;
    let gb = permuted.gb()?;
    let last = n - 1;
    let divided = gb.elements().iter().map(|g| {
        let e = g.terms().iter().map(|(m, _)| m.exp(last)).min().unwrap_or(0);
        if e == 0 {
            g.clone()
        } else {
            g.div_exact(&Polynomial::term(ring, Monomial::var(last, e), rat(1))).expect("monomial factor")
        }
    });
    Ok(divided.map(|g| g.map_ring(ring, &perm)).collect())
}

/// Saturation of a homogeneous ideal by a linear form `l`: a linear change
/// of coordinates turns `l` into a variable, which is then saturated as above.
pub fn saturate_by_linear(ideal: &Ideal, l: &Polynomial) -> Result<Ideal> {
    if !same_ring(ideal.ring(), l.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    if l.total_degree() != 1 || !l.is_homogeneous() || !ideal.is_homogeneous() {
        return Err(AlgebraError::Precondition("linear saturation needs a homogeneous ideal and linear form".into()));
    }
    let ring = ideal.ring();
    // pivot on the smallest variable of `l`, preferring a unit coefficient
    let terms = l.terms();
    let (m, a) = terms.iter().rev().find(|(_, c)| c.abs() == rat(1)).unwrap_or(&terms[terms.len() - 1]);
    let v = (0..ring.nvars()).find(|&i| m.exp(i) == 1).expect("linear term");
    if terms.len() == 1 {
        return saturate_by_variable(ideal, v);
    }
    let xv = Polynomial::var(ring, v);
    let rest = l - &xv.scale(a);
    // forward: x_v -> (x_v - rest)/a sends l to x_v; backward: x_v -> l
    let forward = (&xv - &rest).scale(&a.recip());
    let moved = Ideal::new(ring, ideal.generators().iter().map(|g| g.substitute(v, &forward)))?;
    let sat = saturated_by_variable(&moved, v)?;
    Ideal::new(ring, sat.iter().map(|g| g.substitute(v, l)))?.reduced()
}

/// `I : J^∞ = ∩_g (I : g^∞)` over the generators `g` of `J`.
pub fn saturation(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    check(a, b)?;
    if b.is_zero_ideal() {
        return Ok(Ideal::unit(a.ring()));
    }
    let parts = b.generators().iter().map(|g| saturate_by(a, g)).collect::<Result<Vec<_>>>()?;
    intersect_all(a.ring(), &parts)
}

/// Whether some power of `f` lies in `I` (Rabinowitsch: `1 ∈ I + ⟨1 − t·f⟩`).
pub fn radical_membership(ideal: &Ideal, f: &Polynomial) -> Result<bool> {
    if !same_ring(ideal.ring(), f.ring()) {
        return Err(AlgebraError::RingMismatch);
    }
    if f.is_zero() || ideal.contains(f)? {
        return Ok(true);
    }
    if ideal.is_zero_ideal() {
        return Ok(false);
    }
    let ring = ideal.ring();
    let ext = ring.with_aux(1)?;
    let t = Polynomial::var(&ext, ring.nvars());
    let mut gens: Vec<Polynomial> = ideal.generators().iter().map(|g| g.embed(&ext)).collect();
    gens.push(&Polynomial::one(&ext) - &(&t * &f.embed(&ext)));
    Ideal::new(&ext, gens)?.is_unit()
}

/// Whether `V(b) ⊆ V(a)`, i.e. every generator of `a` is in `√b`.
pub fn radical_contains(b: &Ideal, a: &Ideal) -> Result<bool> {
    for g in a.generators() {
        if !radical_membership(b, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Product ideal.
pub fn ideal_product(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    check(a, b)?;
    let mut gens = Vec::new();
    for f in a.generators() {
        for g in b.generators() {
            gens.push(f * g);
        }
    }
    Ideal::new(a.ring(), gens)
}

/// A rectangular matrix of polynomials over one ring.
#[derive(Clone, Debug)]
pub struct PolyMatrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(ring: &Ring, rows: Vec<Vec<Polynomial>>) -> Result<PolyMatrix> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(AlgebraError::Precondition("matrix rows have different lengths".into()));
            }
            for e in row {
                if !same_ring(e.ring(), ring) {
                    return Err(AlgebraError::RingMismatch);
                }
                entries.push(e);
            }
        }
        Ok(PolyMatrix { ring: ring.clone(), rows: nrows, cols: ncols, entries })
    }

    /// Jacobian of `polys` with respect to the variables `vars` (one row per polynomial).
    pub fn jacobian(ring: &Ring, polys: &[Polynomial], vars: &[usize]) -> PolyMatrix {
        let entries = polys.iter().flat_map(|p| vars.iter().map(move |&v| p.derivative(v))).collect();
        PolyMatrix { ring: ring.clone(), rows: polys.len(), cols: vars.len(), entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Polynomial {
        &self.entries[r * self.cols + c]
    }

    pub fn push_row(&mut self, row: Vec<Polynomial>) -> Result<()> {
        if row.len() != self.cols {
            return Err(AlgebraError::Precondition("row length mismatch".into()));
        }
        self.entries.extend(row);
        self.rows += 1;
        Ok(())
    }

    /// Determinant of the square submatrix on `rows` × `cols`.
    pub fn minor(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        let k = rows.len();
        let m: Vec<Vec<Polynomial>> =
            rows.iter().map(|&r| cols.iter().map(|&c| self.get(r, c).clone()).collect()).collect();
        if k <= 3 {
            cofactor_det(&self.ring, &m)
        } else {
            bareiss_det(&self.ring, m)
        }
    }
}

fn cofactor_det(ring: &Ring, m: &[Vec<Polynomial>]) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(ring),
        1 => m[0][0].clone(),
        2 => &(&m[0][0] * &m[1][1]) - &(&m[0][1] * &m[1][0]),
        n => {
            let mut acc = Polynomial::zero(ring);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let sub: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(j, _)| *j != c).map(|(_, e)| e.clone()).collect())
                    .collect();
                let term = &m[0][c] * &cofactor_det(ring, &sub);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// Fraction-free Gaussian elimination; every division is exact.
fn bareiss_det(ring: &Ring, mut m: Vec<Vec<Polynomial>>) -> Polynomial {
    let n = m.len();
    let mut sign = false;
    let mut prev = Polynomial::one(ring);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return Polynomial::zero(ring),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All nonzero `k × k` minors, normalized and deduplicated.
pub fn minors(m: &PolyMatrix, k: usize) -> Result<Vec<Polynomial>> {
    if k == 0 || k > m.rows.min(m.cols) {
        return Err(AlgebraError::MinorOutOfRange { k, rows: m.rows, cols: m.cols });
    }
    let mut out: Vec<Polynomial> = Vec::new();
    for rs in combinations(m.rows, k) {
        for cs in combinations(m.cols, k) {
            let d = m.minor(&rs, &cs);
            if d.is_zero() {
                continue;
            }
            let d = d.normalized();
            if !out.contains(&d) {
                out.push(d);
            }
        }
    }
    Ok(out)
}

/// Ideal generated by the `k × k` minors.
pub fn minors_ideal(m: &PolyMatrix, k: usize) -> Result<Ideal> {
    Ideal::new(&m.ring, minors(m, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use crate::ring::RingContext;

    fn ring() -> Ring {
        RingContext::with_homogenizing(&["x", "y", "z", "w"], "w").unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &ring()).unwrap()
    }

    fn id(gens: &[&str]) -> Ideal {
        Ideal::new(&ring(), gens.iter().map(|g| p(g))).unwrap()
    }

    fn same(a: &Ideal, b: &Ideal) -> bool {
        a.equals(b).unwrap()
    }

    #[test]
    fn sums() {
        assert!(same(&ideal_sum(&id(&["x"]), &id(&["y"])).unwrap(), &id(&["x", "y"])));
        assert!(same(&ideal_sum(&id(&["x"]), &id(&["x"])).unwrap(), &id(&["x"])));
    }

    #[test]
    fn intersections() {
        assert!(same(&ideal_intersection(&id(&["x"]), &id(&["y"])).unwrap(), &id(&["x*y"])));
        assert!(same(&ideal_intersection(&id(&["x"]), &id(&["x", "y"])).unwrap(), &id(&["x"])));
        // the shifted Xano surface is the union of its two components
        let quartic = "x^4+(z+w)^3*w-(y+2*w)*(z+w)^2*w";
        let i = ideal_intersection(&id(&["y-w"]), &id(&[quartic])).unwrap();
        assert!(same(&i, &id(&[&format!("({quartic})*(y-w)")])));
    }

    #[test]
    fn quotients() {
        assert!(same(&ideal_quotient(&id(&["x^2"]), &id(&["x"])).unwrap(), &id(&["x"])));
        assert!(same(&ideal_quotient(&id(&["x*y"]), &id(&["x"])).unwrap(), &id(&["y"])));
        assert!(same(&ideal_quotient(&id(&["x"]), &id(&["y"])).unwrap(), &id(&["x"])));
    }

    #[test]
    fn saturations() {
        assert!(same(&saturation(&id(&["x^2*y"]), &id(&["x"])).unwrap(), &id(&["y"])));
        assert!(saturation(&id(&["x"]), &id(&["x"])).unwrap().is_unit().unwrap());
        assert!(same(&saturation(&id(&["x*y", "x*z"]), &id(&["x"])).unwrap(), &id(&["y", "z"])));
        // not a monomial: goes through the auxiliary variable
        let s = saturation(&id(&["(x+y)*z", "(x+y)*w^2"]), &id(&["x+y"])).unwrap();
        assert!(same(&s, &id(&["z", "w^2"])));
        // multi-generator saturation removes only what lies inside V(J)
        let s = saturation(&id(&["x"]), &id(&["x", "y"])).unwrap();
        assert!(same(&s, &id(&["x"])));
    }

    #[test]
    fn eliminations() {
        let r = RingContext::new(&["t", "x", "y"]).unwrap();
        let i = Ideal::new(&r, ["t-x", "t-y"].iter().map(|g| parse_polynomial(g, &r).unwrap())).unwrap();
        let e = eliminate(&i, &["t"]).unwrap();
        assert_eq!(e.ring().names(), &["x", "y"]);
        assert_eq!(e.gb().unwrap().elements()[0].to_string(), "x-y");
        let e = eliminate(&id(&["x"]), &["y"]).unwrap();
        assert_eq!(e.generators()[0].to_string(), "x");
        let e = eliminate(&id(&["x*y-1"]), &["y"]).unwrap();
        assert!(e.is_zero_ideal());
        assert!(eliminate(&id(&["x"]), &["q"]).is_err());
    }

    #[test]
    fn radical_members() {
        assert!(radical_membership(&id(&["x^2"]), &p("x")).unwrap());
        assert!(!radical_membership(&id(&["x^2"]), &p("y")).unwrap());
        assert!(radical_membership(&id(&["x^2", "y^3"]), &p("x+y")).unwrap());
    }

    #[test]
    fn minor_ideals() {
        let r = ring();
        let m = PolyMatrix::new(&r, vec![vec![p("x"), p("y")], vec![p("z"), p("w")]]).unwrap();
        let i = minors_ideal(&m, 2).unwrap();
        assert!(same(&i, &id(&["x*w-y*z"])));
        let m = PolyMatrix::new(&r, vec![vec![p("2*x"), p("-2*y")]]).unwrap();
        assert!(same(&minors_ideal(&m, 1).unwrap(), &id(&["x", "y"])));
        let m = PolyMatrix::new(&r, vec![vec![p("x"), p("y"), p("z")], vec![p("1"), p("2"), p("3")]]).unwrap();
        assert!(matches!(minors_ideal(&m, 3), Err(AlgebraError::MinorOutOfRange { .. })));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let r = ring();
        let rows = vec![
            vec![p("x"), p("y"), p("1"), p("z")],
            vec![p("w"), p("x+y"), p("2"), p("0")],
            vec![p("z^2"), p("1"), p("x"), p("y")],
            vec![p("1"), p("w"), p("y"), p("x*z")],
        ];
        let m = PolyMatrix::new(&r, rows.clone()).unwrap();
        let b = m.minor(&[0, 1, 2, 3], &[0, 1, 2, 3]);
        // expansion along the first row with 3x3 cofactors
        let mut acc = Polynomial::zero(&r);
        for c in 0..4 {
            let cols: Vec<usize> = (0..4).filter(|&j| j != c).collect();
            let t = &rows[0][c] * &m.minor(&[1, 2, 3], &cols);
            acc = if c % 2 == 0 { &acc + &t } else { &acc - &t };
        }
        assert_eq!(b, acc);
    }
}
