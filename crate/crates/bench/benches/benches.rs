use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use axial_bench::{rationals_half, seeded_vectors, sym_fixture};
use axial_core::{
    frobenius_form, hall_set, matsuo_algebra, s_chain, Subspace, SuiteMode, Vector, Verifier,
};

fn bench_constructions(c: &mut Criterion) {
    let mut g = c.benchmark_group("construct");
    g.sample_size(10);
    g.bench_function("hall_point_set", |b| b.iter(|| black_box(hall_set())));
    let set = hall_set();
    let desc = rationals_half();
    g.bench_function("hall_matsuo_algebra", |b| {
        b.iter(|| black_box(matsuo_algebra(&set, &desc).unwrap()))
    });
    let (alg5, _) = sym_fixture(5);
    g.bench_function("form_sym5", |b| {
        b.iter(|| black_box(frobenius_form(&alg5).unwrap()))
    });
    g.finish();
}

fn bench_elimination(c: &mut Criterion) {
    let desc = rationals_half();
    let vecs = seeded_vectors(&desc, 40, 60, 9001);
    c.bench_function("rref_insert_60x40", |b| {
        b.iter(|| {
            let mut s = Subspace::zero(40);
            for v in &vecs {
                s.insert(black_box(v.clone())).unwrap();
            }
            black_box(s.dim())
        })
    });
}

fn bench_chain_and_verify(c: &mut Criterion) {
    let (alg, form) = sym_fixture(5);
    let gens: Vec<Vector> = (0..4)
        .map(|i| {
            let label = format!("t{}{}", i + 1, i + 2);
            alg.basis_vector(alg.label_index(&label).unwrap())
        })
        .collect();
    let mut g = c.benchmark_group("chain_verify");
    g.sample_size(10);
    g.bench_function("chain_sym5", |b| {
        b.iter(|| black_box(s_chain(&alg, &form, &gens, 8).unwrap()))
    });
    let four: [Vector; 4] = gens.clone().try_into().unwrap();
    let verifier = Verifier::new(&alg, &form, four).unwrap();
    g.bench_function("sampled_suite_sym5", |b| {
        b.iter(|| {
            black_box(
                verifier
                    .run_suite(SuiteMode::Sample { count: 30, seed: 1 }, None)
                    .unwrap(),
            )
        })
    });
    g.finish();
}

criterion_group!(
    benches,
    bench_constructions,
    bench_elimination,
    bench_chain_and_verify
);
criterion_main!(benches);
