use std::hint::black_box;
use std::sync::Arc;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use num_bigint::BigInt;
use raag_genus::{genus, skew_normal_form, Graph, HomologyClass, IntMatrix, OrientedGraph, SkewIntMatrix, DEFAULT_BUDGET};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
    let names: Vec<String> = (0..n).map(|i| format!("v{i:03}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                edges.push((names[i].clone(), names[j].clone()));
            }
        }
    }
    Graph::new(names, edges).unwrap()
}

fn random_class(rng: &mut ChaCha8Rng, n: usize, p: f64) -> HomologyClass {
    let g = random_graph(rng, n, p);
    let labels = (0..g.edge_count()).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect();
    HomologyClass::from_edge_labels(Arc::new(OrientedGraph::lexicographic(g)), labels)
}

fn random_skew(rng: &mut ChaCha8Rng, n: usize) -> SkewIntMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let x = rng.gen_range(-1_000_000..=1_000_000);
            rows[i][j] = x;
            rows[j][i] = -x;
        }
    }
    SkewIntMatrix::new(IntMatrix::from_rows(&rows).unwrap()).unwrap()
}

fn skew_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("skew_normal_form");
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in [4, 8, 12, 16] {
        let m = random_skew(&mut rng, n);
        group.bench_with_input(BenchmarkId::from_parameter(n), &m, |b, m| b.iter(|| skew_normal_form(black_box(m))));
    }
    group.finish();
}

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("genus");
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for (n, p) in [(8, 0.3), (12, 0.3), (16, 0.2), (12, 1.0)] {
        let alpha = random_class(&mut rng, n, p);
        group.bench_with_input(BenchmarkId::new(format!("p{p}"), n), &alpha, |b, a| {
            b.iter(|| genus(black_box(a), DEFAULT_BUDGET).unwrap())
        });
    }
    group.finish();
}

fn vertex_cover(c: &mut Criterion) {
    let mut group = c.benchmark_group("min_vertex_cover");
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in [16, 24, 32] {
        let g = random_graph(&mut rng, n, 0.15);
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| g.min_vertex_cover(DEFAULT_BUDGET).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, skew_form, solver, vertex_cover);
criterion_main!(benches);
