use criterion::{criterion_group, criterion_main, Criterion};
use frozenqp::birs::build_birs_qp;
use frozenqp::catalog;
use frozenqp::coxeter::{CoxeterSystem, Graph};
use frozenqp::modrep::{end_gabriel_quiver, lambda_w, tw_from};
use frozenqp::subalgebra::bar_quotient_presentation;
use frozenqp::verify::{verify_mutated, verify_triangle};
use frozenqp::DEFAULT_MAX_LEN;
use std::hint::black_box;

fn construction(c: &mut Criterion) {
    let g = catalog::triangle();
    let w = catalog::triangle_word();
    c.bench_function("build triangle Q_w", |b| b.iter(|| build_birs_qp(black_box(&g), black_box(&w)).unwrap()));
    let qp = build_birs_qp(&g, &w).unwrap().qp;
    c.bench_function("triangle Abar basis", |b| {
        b.iter(|| bar_quotient_presentation(&qp).unwrap().presentation.quotient_basis(DEFAULT_MAX_LEN).unwrap())
    });
}

fn coxeter(c: &mut Criterion) {
    let sys = CoxeterSystem::new(&Graph::path(4));
    c.bench_function("enumerate A4 group", |b| b.iter(|| sys.enumerate_group(1000).unwrap()));
    c.bench_function("reduce a long A4 word", |b| {
        b.iter(|| sys.reduce_word(black_box(&[1, 2, 3, 4, 3, 2, 1, 1, 2, 3, 4, 4, 3, 2, 1, 2])).unwrap())
    });
}

fn modules(c: &mut Criterion) {
    let g = Graph::path(3);
    let w = catalog::WORD_A3_LONGEST;
    let orient = frozenqp::birs::admissible_orientation(&g, &w).unwrap();
    c.bench_function("Lambda_w of A3 longest", |b| b.iter(|| lambda_w(&orient, &w, DEFAULT_MAX_LEN).unwrap()));
    let lw = lambda_w(&orient, &w, DEFAULT_MAX_LEN).unwrap();
    let t = tw_from(&lw, &w).unwrap();
    c.bench_function("End(T_w) quiver of A3 longest", |b| b.iter(|| end_gabriel_quiver(&t).unwrap()));
}

fn examples(c: &mut Criterion) {
    let mut group = c.benchmark_group("worked examples");
    group.sample_size(10);
    group.bench_function("triangle", |b| b.iter(|| verify_triangle(DEFAULT_MAX_LEN).unwrap()));
    group.bench_function("mutated A3", |b| b.iter(|| verify_mutated(DEFAULT_MAX_LEN).unwrap()));
    group.finish();
}

criterion_group!(benches, construction, coxeter, modules, examples);
criterion_main!(benches);
