use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use reachnet_core::constructors::{t_reach_random, two_reach, two_unif_star, RandomConstructionParams};
use reachnet_core::search::{min_length, SearchSpec};
use reachnet_core::verify::{verify_reachability, verify_uniformity};

fn verify_random(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_t_reach_random");
    group.sample_size(10);
    for n in [20u32, 50] {
        let net = t_reach_random(&RandomConstructionParams::new(3, n, 1)).unwrap().network;
        group.bench_with_input(BenchmarkId::from_parameter(n), &net, |b, net| {
            b.iter(|| verify_reachability(net, 3).unwrap())
        });
    }
    group.finish();
}

fn verify_two_reach(c: &mut Criterion) {
    let net = two_reach(200).unwrap();
    c.bench_function("verify_two_reach_200", |b| b.iter(|| verify_reachability(&net, 2).unwrap()));
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_length");
    group.sample_size(10);
    for (n, star) in [(5u32, false), (5, true), (6, true)] {
        let spec = SearchSpec::new(n, 2, star);
        let id = format!("n{n}_{}", if star { "star" } else { "general" });
        group.bench_function(id, |b| b.iter(|| min_length(&spec).unwrap()));
    }
    group.finish();
}

fn uniformity(c: &mut Criterion) {
    let mut group = c.benchmark_group("verify_uniformity");
    group.sample_size(10);
    for n in [8u32, 16] {
        let net = two_unif_star(n).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &net, |b, net| {
            b.iter(|| verify_uniformity(net, 2).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, verify_random, verify_two_reach, search, uniformity);
criterion_main!(benches);
