use whitney_core::strat::singular_ideal;
use whitney_core::{
    boundary_candidates, dual_variety, minimal_primes, parse_polynomial, whitney_a_holds, whitney_a_irregular,
    whitney_a_stratify, Ideal, Polynomial, PrimeComponent, Rational, Ring, RingContext, StratifyOptions,
};

const XANO: &str = "(x^4+(z+w)^3*w-(y+2*w)*(z+w)^2*w)*(y-w)";
const XANO_QUARTIC: &str = "x^4+(z+w)^3*w-(y+2*w)*(z+w)^2*w";
const TEARDROP: &str = "(z^2*w+y^2*w-(x+w)*(x-w)^2)*(y-5*(x-w))*(y+5*(x-w))+1/10*w*(x-w)*y*z^2";

fn projective() -> Ring {
    RingContext::with_homogenizing(&["x", "y", "z", "w"], "w").unwrap()
}

fn poly(ring: &Ring, s: &str) -> Polynomial {
    parse_polynomial(s, ring).unwrap()
}

fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| poly(ring, g))).unwrap()
}

fn prime(ring: &Ring, gens: &[&str]) -> PrimeComponent {
    let mut c = minimal_primes(&ideal(ring, gens)).unwrap();
    assert_eq!(c.len(), 1, "{gens:?} is not prime");
    c.remove(0)
}

fn same_set(got: &[PrimeComponent], want: &[Ideal]) -> bool {
    got.len() == want.len()
        && want.iter().all(|w| got.iter().any(|g| g.ideal().equals(w).unwrap()))
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[test]
fn xano_singular_primes() {
    let r = projective();
    let x = prime(&r, &[XANO_QUARTIC]);
    let sing = minimal_primes(&singular_ideal(&x).unwrap()).unwrap();
    assert!(same_set(&sing, &[ideal(&r, &["z+w", "x"]), ideal(&r, &["w", "y-z", "x"])]));
}

#[test]
fn xano_stratification() {
    let r = projective();
    let s = whitney_a_stratify(&ideal(&r, &[XANO])).unwrap();
    assert!(!s.truncated);
    assert_eq!(s.levels.len(), 3);
    assert!(same_set(&s.levels[0], &[ideal(&r, &[XANO_QUARTIC]), ideal(&r, &["y-w"])]));
    assert!(same_set(
        &s.levels[1],
        &[ideal(&r, &["z+w", "x"]), ideal(&r, &["y-w", "x^4+z^3*w-3*z*w^3-2*w^4"]), ideal(&r, &["w", "y-z", "x"])]
    ));
    assert!(same_set(
        &s.levels[2],
        &[ideal(&r, &["z+w", "y-w", "x"]), ideal(&r, &["w", "z", "x"]), ideal(&r, &["z+w", "y+2*w", "x"])]
    ));
}

#[test]
fn xano_boundary_points() {
    let r = projective();
    let g = poly(&r, "(x^4+(z+1)^3-(y+2)*(z+1)^2)*(y-1)");
    let b = boundary_candidates(&[g], &StratifyOptions::default()).unwrap();
    let mut points: Vec<Vec<Rational>> = b.levels[2].iter().filter_map(|c| c.point.clone()).collect();
    points.sort();
    assert_eq!(b.levels[2].len(), 2);
    assert_eq!(points, vec![vec![rat(0), rat(-2), rat(-1)], vec![rat(0), rat(1), rat(-1)]]);
    let f1: Vec<Ideal> = b.levels[1].iter().map(|c| c.ideal.clone()).collect();
    assert_eq!(f1.len(), 2);
    for want in [ideal(&r, &["x", "z+1"]), ideal(&r, &["y-1", "x^4+z^3-3*z-2"])] {
        assert!(f1.iter().any(|g| g.equals(&want).unwrap()));
    }
}

/// Limit of the tangent planes of the Xano quartic along the line `x = w = 0`
/// in the chart `y = 1`, approaching the origin: the limit plane is `w = 0`,
/// which misses the tangent direction `(0, 1, -1)` of `z + w = x = 0`.
#[test]
fn xano_pair_fails_at_point_at_infinity() {
    let r = projective();
    let f = poly(&r, XANO_QUARTIC);
    let (x, y, w) = (0, 1, 3);
    let on_curve = |p: &Polynomial| p.evaluate_var(x, &rat(0)).evaluate_var(w, &rat(0)).evaluate_var(y, &rat(1));
    assert!(on_curve(&f).is_zero());
    let grad: Vec<Polynomial> = [x, 2, w].iter().map(|&v| on_curve(&f.derivative(v))).collect();
    let order = grad.iter().filter(|g| !g.is_zero()).map(lowest_degree).min().unwrap();
    let limit: Vec<Rational> = grad.iter().map(|g| coefficient_of_degree(g, order)).collect();
    assert_eq!(limit, vec![rat(0), rat(0), rat(-1)]);
    let pairing = &limit[1] * rat(1) + &limit[2] * rat(-1);
    assert_ne!(pairing, rat(0));

    let xq = prime(&r, &[XANO_QUARTIC]);
    let line = prime(&r, &["z+w", "x"]);
    let excluded = ideal(&r, &["(y-w)*(y+2*w)"]);
    assert!(!whitney_a_holds(&xq, &line, &excluded).unwrap());
    let rep = whitney_a_irregular(&xq, &line).unwrap();
    assert!(same_set(&rep.irregular_primes, &[ideal(&r, &["w", "z", "x"]), ideal(&r, &["z+w", "y+2*w", "x"])]));
}

fn lowest_degree(p: &Polynomial) -> i64 {
    p.terms().iter().map(|(m, _)| m.degree() as i64).min().unwrap()
}

fn coefficient_of_degree(p: &Polynomial, d: i64) -> Rational {
    p.terms().iter().filter(|(m, _)| m.degree() as i64 == d).map(|(_, c)| c.clone()).sum()
}

#[test]
fn xano_dual_quartic() {
    let r = projective();
    let d = dual_variety(&prime(&r, &[XANO_QUARTIC])).unwrap();
    let dr = d.ring().clone();
    let gens = d.gb().unwrap().elements().to_vec();
    assert_eq!(gens.len(), 1);
    let uw = dr.var("u_w").unwrap();
    let target = poly(
        &dr,
        "u_x^4+128*u_y^4+320*u_y^3*u_z+256*u_y^2*u_z^2+64*u_y*u_z^3-64*u_y^3-128*u_y^2*u_z-64*u_y*u_z^2",
    );
    let matches = [1, -1].iter().any(|&s| gens[0].evaluate_var(uw, &rat(s)).monic() == target.monic());
    assert!(matches, "dual is {}", gens[0]);
}

#[test]
fn teardrop_singular_primes() {
    let r = projective();
    let x = prime(&r, &[TEARDROP]);
    let sing = minimal_primes(&singular_ideal(&x).unwrap()).unwrap();
    assert!(same_set(
        &sing,
        &[
            ideal(&r, &["y", "x-w"]),
            ideal(&r, &["w", "x", "y^2+z^2"]),
            ideal(&r, &["z", "y-115*w", "x-24*w"]),
            ideal(&r, &["z", "y+115*w", "x-24*w"]),
        ]
    ));
}

#[test]
fn example_five_six_regular_off_y_axis() {
    let r = RingContext::new(&["x", "y", "z", "t"]).unwrap();
    let x = prime(&r, &["x^2*t^2-y^2*z^2+z^3*t"]);
    let y = prime(&r, &["x", "z"]);
    let rep = whitney_a_irregular(&x, &y).unwrap();
    let yv = poly(&r, "y");
    for p in &rep.irregular_primes {
        assert!(whitney_core::idealops::radical_membership(p.ideal(), &yv).unwrap());
    }
    assert!(whitney_a_holds(&x, &y, &ideal(&r, &["y"])).unwrap());
}
