use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use nilcoh::cohomology::{
    betti, koszul_exactness, spectral_pages, twisted_betti, twisted_dolbeault_0q,
};
use nilcoh::differentials::twisted_d;
use nilcoh::lck::classify_lck;
use nilcoh::GaussianRational;
use nilcoh_bench::{heisenberg, iwasawa};

fn bench_betti(c: &mut Criterion) {
    let mut group = c.benchmark_group("betti");
    for n in 1..=3 {
        let (e, _) = heisenberg(n);
        group.bench_with_input(
            BenchmarkId::new("heisenberg", e.algebra.dim()),
            &e,
            |b, e| b.iter(|| betti(black_box(&e.algebra))),
        );
    }
    group.finish();
}

fn bench_twisted(c: &mut Criterion) {
    let mut group = c.benchmark_group("twisted");
    for n in 1..=3 {
        let (e, theta) = heisenberg(n);
        let dim = e.algebra.dim();
        group.bench_with_input(
            BenchmarkId::new("de_rham", dim),
            &(&e, &theta),
            |b, (e, t)| b.iter(|| twisted_betti(black_box(&e.algebra), black_box(t)).unwrap()),
        );
        let j = e.complex_structure.clone().unwrap();
        group.bench_with_input(
            BenchmarkId::new("dolbeault_0q", dim),
            &(&e, &theta),
            |b, (e, t)| {
                b.iter(|| twisted_dolbeault_0q(black_box(&e.algebra), &j, Some(t)).unwrap())
            },
        );
    }
    group.finish();
}

fn bench_rank(c: &mut Criterion) {
    let (e, theta) = heisenberg(3);
    let dt = twisted_d(&e.algebra, &theta).unwrap();
    let block = dt.block(3).clone();
    c.bench_function("rank/d_theta_block_3_dim_8", |b| {
        b.iter(|| black_box(&block).rank())
    });
}

fn bench_koszul(c: &mut Criterion) {
    let v: Vec<GaussianRational> = (1..=8).map(|k| GaussianRational::from_int(k - 4)).collect();
    c.bench_function("koszul/dim_8", |b| {
        b.iter(|| koszul_exactness(black_box(&v)).unwrap())
    });
}

fn bench_pipeline(c: &mut Criterion) {
    let (e, _) = heisenberg(2);
    let j = e.complex_structure.clone().unwrap();
    let h = e.metric.clone().unwrap();
    c.bench_function("classify_lck/heisenberg_dim_6", |b| {
        b.iter(|| classify_lck(black_box(&e.algebra), &j, &h).unwrap())
    });
    let (iw, theta) = iwasawa();
    let j = iw.complex_structure.clone().unwrap();
    c.bench_function("spectral_pages/iwasawa", |b| {
        b.iter(|| spectral_pages(black_box(&iw.algebra), &j, &theta).unwrap())
    });
}

criterion_group!(
    benches,
    bench_betti,
    bench_twisted,
    bench_rank,
    bench_koszul,
    bench_pipeline
);
criterion_main!(benches);
