use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use whitney_bench::{ideal, xyzw, TEARDROP, XANO};
use whitney_core::factor::factor;
use whitney_core::strat::singular_ideal;
use whitney_core::{
    dual_variety, minimal_primes, parse_polynomial, whitney_a_stratify, GroebnerBasis, MonomialOrder, RingContext,
};

fn groebner(c: &mut Criterion) {
    let r = RingContext::new(&["x", "y", "z"]).unwrap();
    let katsura = ideal(&r, &["x+2*y+2*z-1", "x^2+2*y^2+2*z^2-x", "2*x*y+2*y*z-y"]);
    c.bench_function("gb katsura3 grevlex", |b| {
        b.iter(|| GroebnerBasis::compute(&r, black_box(katsura.generators()), &MonomialOrder::Grevlex).unwrap())
    });
    c.bench_function("gb katsura3 lex", |b| {
        b.iter(|| GroebnerBasis::compute(&r, black_box(katsura.generators()), &MonomialOrder::Lex).unwrap())
    });
}

fn factoring(c: &mut Criterion) {
    let r = RingContext::new(&["x", "y"]).unwrap();
    let p = parse_polynomial("(x^3-2*y^2+x*y-1)*(x^2+y^2+3)*(x-y)^2", &r).unwrap();
    c.bench_function("factor bivariate", |b| b.iter(|| factor(black_box(&p)).unwrap()));
}

fn geometry(c: &mut Criterion) {
    let r = xyzw();
    c.bench_function("minimal primes teardrop singular ideal", |b| {
        b.iter_with_setup(
            || {
                let x = minimal_primes(&ideal(&r, &[TEARDROP])).unwrap().remove(0);
                singular_ideal(&x).unwrap()
            },
            |s| minimal_primes(&s).unwrap(),
        )
    });
    let quartic = minimal_primes(&ideal(&r, &["x^4+(z+w)^3*w-(y+2*w)*(z+w)^2*w"])).unwrap().remove(0);
    c.bench_function("dual xano quartic", |b| b.iter(|| dual_variety(black_box(&quartic)).unwrap()));
    let mut group = c.benchmark_group("stratify");
    group.sample_size(10);
    group.bench_function("xano", |b| b.iter_with_setup(|| ideal(&r, &[XANO]), |i| whitney_a_stratify(&i).unwrap()));
    group.finish();
}

criterion_group!(benches, groebner, factoring, geometry);
criterion_main!(benches);
