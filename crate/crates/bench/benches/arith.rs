use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use std::hint::black_box;

use paradd::conversion::{parallel_add, search_rule, test_rule, verify_certificate, SearchLimits};
use paradd::numsystem::integer_system;
use paradd::ring::default_precision;
use paradd::{CongruenceStructure, IntPolynomial, RingContext, RingElement};
use paradd_bench::{rule, system, word};

fn ring(c: &mut Criterion) {
    let ctx = RingContext::new(IntPolynomial::from_i64(&[1, -1, -1, -1, 1]), default_precision()).unwrap();
    let x = RingElement::from_i64(&[12, -7, 3, 9]);
    let y = RingElement::from_i64(&[-5, 11, 2, -8]);
    c.bench_function("mul degree 4", |b| b.iter(|| ctx.product(black_box(&x), black_box(&y))));
    c.bench_function("norm degree 4", |b| b.iter(|| ctx.norm(black_box(&x)).unwrap()));
    c.bench_function("context x^4-x^3-x^2-x+1", |b| {
        b.iter(|| RingContext::new(IntPolynomial::from_i64(&[1, -1, -1, -1, 1]), default_precision()).unwrap())
    });
    let m = ctx.multiplication_matrix(&x).unwrap();
    c.bench_function("smith form 4x4", |b| b.iter(|| black_box(&m).smith_normal_form()));
    let sys = system("minus_sqrt5_system.json");
    c.bench_function("congruence structure", |b| {
        b.iter(|| CongruenceStructure::new(sys.context(), &sys.base_minus_one()).unwrap())
    });
}

fn rules(c: &mut Criterion) {
    let sys = system("avizienis_system.json");
    let (r, cert) = rule("avizienis_rule.json");
    c.bench_function("verify avizienis", |b| {
        b.iter(|| verify_certificate(&r, &cert, sys.context(), sys.base()).unwrap())
    });
    c.bench_function("test avizienis length 6", |b| {
        b.iter(|| test_rule(&r, sys.context(), sys.base(), 6, 0, 0).unwrap())
    });
    let (x, y) = (word(&sys, 64, 5), word(&sys, 64, 7));
    c.bench_function("parallel add 64 digits", |b| {
        b.iter_batched(|| (x.clone(), y.clone()), |(x, y)| parallel_add(&r, &sys, &x, &y).unwrap(), BatchSize::SmallInput)
    });

    let sqrt5 = system("sqrt5_system.json");
    let (r5, cert5) = rule("sqrt5_rule.json");
    c.bench_function("verify sqrt5", |b| {
        b.iter(|| verify_certificate(&r5, &cert5, sqrt5.context(), sqrt5.base()).unwrap())
    });
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    let decimal = integer_system(10, -6..=6).unwrap();
    group.bench_function("base 10 r,t <= 1", |b| {
        b.iter(|| search_rule(&decimal, SearchLimits { r_max: 1, t_max: 1, carry_bound: 1 }).unwrap())
    });
    let binary = integer_system(2, 0..=2).unwrap();
    group.bench_function("base 2 r,t <= 2", |b| {
        b.iter(|| search_rule(&binary, SearchLimits { r_max: 2, t_max: 2, carry_bound: 2 }).unwrap())
    });
    group.finish();
}

criterion_group!(benches, ring, rules, search);
criterion_main!(benches);
