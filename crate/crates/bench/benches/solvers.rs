use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use unbalanced_bench::{clique, planted_triangle, sparse, triangle};
use unbalanced_core::{find_subdivision, has_unbalanced_cycle, mu_exact, residue_path, Budget, ResidueQuery};

fn mu(c: &mut Criterion) {
    let mut g = c.benchmark_group("mu_exact");
    for n in [4, 5, 6] {
        let d = clique(n);
        g.bench_with_input(BenchmarkId::new("clique", n), &d, |b, d| {
            b.iter(|| mu_exact(black_box(d), None).unwrap())
        });
    }
    for seed in [1, 2] {
        let d = sparse(9, 2.5, seed);
        g.bench_with_input(BenchmarkId::new("sparse9", seed), &d, |b, d| {
            b.iter(|| mu_exact(black_box(d), None).unwrap())
        });
    }
    g.finish();
}

fn balance(c: &mut Criterion) {
    let mut g = c.benchmark_group("balance");
    for n in [100, 1000] {
        let d = sparse(n, 3.0, n as u64);
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| has_unbalanced_cycle(black_box(d)))
        });
    }
    g.finish();
}

fn residue(c: &mut Criterion) {
    let mut g = c.benchmark_group("residue_path");
    for n in [20, 60] {
        let d = sparse(n, 3.0, 7);
        let q = ResidueQuery::new(0, 1, 1, 1, 1, 3).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &d, |b, d| {
            b.iter(|| residue_path(black_box(d), &q, &Budget::new(1_000_000)).unwrap())
        });
    }
    g.finish();
}

fn direct(c: &mut Criterion) {
    let mut g = c.benchmark_group("find_subdivision");
    let p = triangle();
    for extra in [0, 10, 30] {
        let d = planted_triangle(extra, 3);
        g.bench_with_input(BenchmarkId::new("planted_triangle", extra), &d, |b, d| {
            b.iter(|| find_subdivision(black_box(d), &p, &Budget::new(10_000_000)).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, mu, balance, residue, direct);
criterion_main!(benches);
