use criterion::{black_box, criterion_group, criterion_main, Criterion};

use m2z4_core::cyclic::search_self_dual;
use m2z4_core::gray::min_lee_weight;
use m2z4_core::linalg::howell_rows;
use m2z4_core::{DualKind, FactorAssignment, FactorTable, MPolicy, Modulus, RingKind};

fn howell(c: &mut Criterion) {
    let rows: Vec<Vec<u8>> = (0..40u32)
        .map(|i| {
            (0..28u32)
                .map(|j| ((i * 7 + j * j * 3 + i * j) % 4) as u8)
                .collect()
        })
        .collect();
    c.bench_function("howell 40x28", |b| {
        b.iter(|| howell_rows(Modulus::Z4, 28, black_box(rows.clone())))
    });
}

fn build_and_dual(c: &mut Criterion) {
    let t = FactorTable::new(7).unwrap();
    let a: FactorAssignment = "n=7; f0:2+u; f1:2&u; f2:2u".parse().unwrap();
    c.bench_function("build n=7", |b| {
        b.iter(|| t.build_code(black_box(&a)).unwrap())
    });
    let code = t.build_code(&a).unwrap();
    c.bench_function("euclidean dual n=7", |b| {
        b.iter(|| black_box(&code).dual(DualKind::Euclidean))
    });
    c.bench_function("hermitian dual n=7", |b| {
        b.iter(|| black_box(&code).dual(DualKind::Hermitian))
    });
}

fn distance(c: &mut Criterion) {
    let a: FactorAssignment = "n=5; f0:2; f1:one; f2:zero".parse().unwrap();
    let code = FactorTable::new(5).unwrap().build_code(&a).unwrap();
    let mut g = c.benchmark_group("min weight");
    g.sample_size(10);
    g.bench_function("n=5, 2^20 codewords", |b| {
        b.iter(|| min_lee_weight(black_box(&code), u128::MAX).unwrap())
    });
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    g.bench_function("euclidean n=5", |b| {
        b.iter(|| search_self_dual(5, DualKind::Euclidean, RingKind::M2Z4, MPolicy::One).unwrap())
    });
    g.finish();
}

criterion_group!(benches, howell, build_and_dual, distance, search);
criterion_main!(benches);
