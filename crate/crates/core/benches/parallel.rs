use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use untwist::group::group_from_spec;
use untwist::torsion::{cohomology_mod_m, dw_partition};
use untwist::{boundary_matrix, h0n, orbit_representatives, Budgets, Config, Exec};

fn modes() -> [(&'static str, Config); 2] {
    [("sequential", Config::with_exec(Exec::Sequential)), ("parallel", Config::with_exec(Exec::Parallel))]
}

fn bench(c: &mut Criterion) {
    let budgets = Budgets::default();
    let c23 = group_from_spec("C2^3", &budgets).unwrap();
    let s4 = group_from_spec("S4", &budgets).unwrap();
    let d8 = group_from_spec("D8", &budgets).unwrap();

    let mut g = c.benchmark_group("boundary D_5 of (Z/2)^3");
    for (name, cfg) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| boundary_matrix(black_box(&c23), 5, &cfg).unwrap()));
    }
    g.finish();

    let mut g = c.benchmark_group("orbits X_4(S4)");
    for (name, cfg) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| orbit_representatives(black_box(&s4), 4, &cfg.budgets, cfg.exec).unwrap())
        });
    }
    g.finish();

    let mut g = c.benchmark_group("H_04 of (Z/2)^3");
    g.sample_size(10);
    for (name, cfg) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| h0n(black_box(&c23), 4, &cfg).unwrap()));
    }
    g.finish();

    let cfg = Config::default();
    let h = cohomology_mod_m(&d8, 3, 4, &cfg).unwrap();
    let w = h.class(&vec![1; h.basis().len()]);
    let mut g = c.benchmark_group("DW partition of D8 on T^3");
    for (name, cfg) in modes() {
        g.bench_function(BenchmarkId::from_parameter(name), |b| b.iter(|| dw_partition(black_box(&d8), 3, &w, &cfg).unwrap()));
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
