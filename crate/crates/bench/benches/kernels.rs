use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use fewsum_bench::{seeded_random_set, sharp_family};
use fewsum_core::cyclic::{convolution_counts, CyclicProductSpace, CyclicSet};
use fewsum_core::generate::cyclic_interval;
use fewsum_core::select::{minimal_witness_oracle, select_general, SelectionBudget};
use fewsum_core::structure::best_line_cover;

fn bench_sumset(c: &mut Criterion) {
    let a = sharp_family(2, 100);
    c.bench_function("sumset_chr_d2_n100", |b| {
        b.iter(|| black_box(&a).sumset(black_box(&a)).unwrap().len())
    });
}

fn bench_oracle(c: &mut Criterion) {
    let a = fewsum_core::PointSet::from_rows(
        1,
        &[&[0], &[1], &[3], &[7], &[11]],
    )
    .unwrap();
    c.bench_function("oracle_small_1d", |b| {
        b.iter(|| {
            minimal_witness_oracle(black_box(&a), black_box(&a), 9, 3)
                .unwrap()
                .unwrap()
                .achieved
        })
    });
}

fn bench_cover_search(c: &mut Criterion) {
    let a = seeded_random_set(2, 120, 50, 5);
    c.bench_function("best_line_cover_n120", |b| {
        b.iter(|| best_line_cover(black_box(&a), usize::MAX, 0).unwrap().r())
    });
}

fn bench_select_general(c: &mut Criterion) {
    let a = seeded_random_set(2, 120, 50, 5);
    let budget = SelectionBudget::default();
    c.bench_function("select_general_random_n120", |b| {
        b.iter(|| select_general(black_box(&a), &budget).unwrap().achieved)
    });
}

fn bench_convolution(c: &mut Criterion) {
    let sp = CyclicProductSpace::new(101, 1).unwrap();
    let a = cyclic_interval(&sp, 0, 40).unwrap();
    let b = cyclic_interval(&sp, 0, 30).unwrap();
    c.bench_function("convolution_z101", |bch| {
        bch.iter(|| {
            convolution_counts(black_box(&a), black_box(&b))
                .unwrap()
                .len()
        })
    });
    let full = CyclicSet::full(sp);
    c.bench_function("convolution_full_group", |bch| {
        bch.iter(|| convolution_counts(black_box(&full), black_box(&b)).unwrap().len())
    });
}

criterion_group!(
    benches,
    bench_sumset,
    bench_oracle,
    bench_cover_search,
    bench_select_general,
    bench_convolution
);
criterion_main!(benches);
