use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use spinstat::cg::{cg_table, photon_table};
use spinstat::spin::{verify_space, SpinSpace};
use spinstat::stats::{conditional_given_sum, infer_distribution, simulate_conditional, SpinDistribution};
use spinstat::{Half, RadicalSum, Rational};

fn exactnum(c: &mut Criterion) {
    let a = RadicalSum::term(Rational::new(1, 3).unwrap(), 6).unwrap() + RadicalSum::from_integer(2);
    let b =
        RadicalSum::term(Rational::new(-2, 5).unwrap(), 10).unwrap() + RadicalSum::term(Rational::one(), 3).unwrap();
    c.bench_function("radical_sum_product", |bench| bench.iter(|| black_box(&a).checked_mul(black_box(&b)).unwrap()));
}

fn spin(c: &mut Criterion) {
    let space = SpinSpace::from_doubled(6, 2).unwrap();
    c.bench_function("verify_space_l3_n2", |bench| bench.iter(|| verify_space(black_box(space))));
}

fn coupling(c: &mut Criterion) {
    c.bench_function("cg_table_l1", |bench| bench.iter(|| cg_table(black_box(Half::from_int(1))).unwrap()));
    c.bench_function("cg_table_l3", |bench| bench.iter(|| cg_table(black_box(Half::from_int(3))).unwrap()));
    c.bench_function("photon_table", |bench| bench.iter(photon_table));
}

fn statistics(c: &mut Criterion) {
    let p: SpinDistribution = "1:1/4,0:1/2,-1:1/4".parse().unwrap();
    c.bench_function("conditional_m0", |bench| {
        bench.iter(|| conditional_given_sum(black_box(&p), black_box(&p), Half::ZERO).unwrap())
    });
    c.bench_function("infer_l1", |bench| {
        bench.iter(|| infer_distribution(Half::from_int(1), Half::from_int(2)).unwrap())
    });
    let mut group = c.benchmark_group("simulate");
    group.sample_size(10);
    group.bench_function("1e6_samples", |bench| {
        bench.iter(|| simulate_conditional(black_box(&p), Half::ZERO, 1_000_000, 42).unwrap())
    });
    group.finish();
}

criterion_group!(benches, exactnum, spin, coupling, statistics);
criterion_main!(benches);
