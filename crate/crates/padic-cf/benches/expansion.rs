//! Corpus expansion throughput: rayon batch driver vs the sequential
//! reference, across schemes and input classes.
//!
//! Run with `cargo bench -p padic-cf`. Building with
//! `--no-default-features` makes `expand_many` fall back to the sequential
//! loop, so the two series coincide; with the default `parallel` feature
//! the gap is the rayon speedup on the host.

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use padic_cf::{
    expand_many, expand_many_sequential, rational, QuadIrr, Rational, Scheme, SplitMix64,
};

fn rational_corpus(count: usize, p: u64) -> Vec<QuadIrr> {
    let mut rng = SplitMix64::new(0xBE7C);
    (0..count)
        .map(|_| {
            let mut a = rng.in_range(-1_000_000, 1_000_000);
            if a == 0 {
                a = 1;
            }
            let b = rng.in_range(1, 1_000_000);
            QuadIrr::from_rational(&rational(a, b), p).expect("valid prime")
        })
        .collect()
}

fn quadratic_corpus(count: usize, p: u64) -> Vec<QuadIrr> {
    let mut out = Vec::with_capacity(count);
    let mut d = 2i64;
    while out.len() < count {
        if let Ok(alpha) = QuadIrr::new(0.into(), 1.into(), d.into(), 1.into(), p) {
            out.push(alpha);
        }
        d += 1;
    }
    out
}

fn bench_rational_batches(c: &mut Criterion) {
    let mut group = c.benchmark_group("rational_corpus_p5");
    for scheme in [Scheme::Browkin1, Scheme::Browkin2, Scheme::New2] {
        let inputs = rational_corpus(200, 5);
        group.bench_with_input(
            BenchmarkId::new("parallel", scheme.name()),
            &inputs,
            |b, inputs| b.iter(|| expand_many(inputs, scheme, 500).expect("expands")),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", scheme.name()),
            &inputs,
            |b, inputs| b.iter(|| expand_many_sequential(inputs, scheme, 500).expect("expands")),
        );
    }
    group.finish();
}

fn bench_quadratic_batches(c: &mut Criterion) {
    let mut group = c.benchmark_group("quadratic_corpus_p7");
    group.sample_size(10);
    let inputs = quadratic_corpus(24, 7);
    for scheme in [Scheme::New1, Scheme::New2] {
        group.bench_with_input(
            BenchmarkId::new("parallel", scheme.name()),
            &inputs,
            |b, inputs| b.iter(|| expand_many(inputs, scheme, 40).expect("expands")),
        );
        group.bench_with_input(
            BenchmarkId::new("sequential", scheme.name()),
            &inputs,
            |b, inputs| b.iter(|| expand_many_sequential(inputs, scheme, 40).expect("expands")),
        );
    }
    group.finish();
}

fn bench_single_expansion(c: &mut Criterion) {
    let mut group = c.benchmark_group("single_input");
    let rat = QuadIrr::from_rational(&Rational::new(987654.into(), 456789.into()), 5)
        .expect("valid prime");
    group.bench_function("new2_rational", |b| {
        b.iter(|| padic_cf::expand(&rat, Scheme::New2, 500).expect("expands"))
    });
    let surd = QuadIrr::new(0.into(), 1.into(), 6.into(), 1.into(), 5).expect("valid");
    group.bench_function("new2_sqrt6_40_steps", |b| {
        b.iter(|| padic_cf::expand(&surd, Scheme::New2, 40).expect("expands"))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_rational_batches,
    bench_quadratic_batches,
    bench_single_expansion
);
criterion_main!(benches);
