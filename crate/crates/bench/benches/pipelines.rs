use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use picardlab::constructions::{build_theorem1, build_theorem2, build_theorem3};

fn pipelines(c: &mut Criterion) {
    c.bench_function("theorem1 n=12", |b| b.iter(|| build_theorem1(black_box(12)).unwrap()));
    c.bench_function("theorem2 m=8 n=6", |b| b.iter(|| build_theorem2(black_box(8), black_box(6)).unwrap()));
    c.bench_function("theorem3 m=8 n=8", |b| b.iter(|| build_theorem3(black_box(8), black_box(8)).unwrap()));
    c.bench_function("theorem3 sweep", |b| {
        b.iter(|| {
            for m in 2..=8 {
                for n in [4, 6, 8] {
                    build_theorem3(m, n).unwrap();
                }
            }
        })
    });
}

criterion_group!(benches, pipelines);
criterion_main!(benches);
