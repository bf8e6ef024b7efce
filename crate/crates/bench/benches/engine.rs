use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use planar_recolor::catalog::{builtin_catalog, match_configuration};
use planar_recolor::discharging::audit;
use planar_recolor::engine::{extend_degenerate, recolor_planar, DEFAULT_K};
use planar_recolor::gen::{
    degeneracy_order, gen_instance, gen_triangulation, random_coloring, random_lists, random_tree, rng,
};
use planar_recolor::graph::triangulate;
use planar_recolor::oracle::{ReconfigurationGraph, DEFAULT_CAP};

fn bench_recolor_planar(c: &mut Criterion) {
    let mut group = c.benchmark_group("recolor_planar");
    for n in [24, 60, 100] {
        let g = gen_triangulation(n, 11, 5).unwrap();
        let inst = gen_instance(&g, 10, 11).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &inst, |b, inst| {
            b.iter(|| recolor_planar(&inst.graph, &inst.lists, &inst.alpha, &inst.beta, DEFAULT_K).unwrap())
        });
    }
    group.finish();
}

fn bench_matcher(c: &mut Criterion) {
    let mut group = c.benchmark_group("match_configuration");
    for n in [50, 200] {
        let g = gen_triangulation(n, 5, 5).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| match_configuration(black_box(g), builtin_catalog()))
        });
    }
    group.finish();
}

fn bench_discharging(c: &mut Criterion) {
    let g = gen_triangulation(300, 9, 5).unwrap();
    c.bench_function("audit/300", |b| b.iter(|| audit(black_box(&g)).unwrap()));
}

fn bench_degenerate(c: &mut Criterion) {
    let mut r = rng(1);
    let g = random_tree(1000, 1);
    let l = random_lists(1000, 4, 8, &mut r);
    let a = random_coloring(&g, &l, &mut r).unwrap();
    let z = random_coloring(&g, &l, &mut r).unwrap();
    let mut order = degeneracy_order(&g);
    order.reverse();
    c.bench_function("extend_degenerate/tree1000", |b| {
        b.iter(|| extend_degenerate(&g, &l, &order, &a, &z, 1).unwrap())
    });
}

fn bench_graph(c: &mut Criterion) {
    c.bench_function("gen_triangulation/100", |b| b.iter(|| gen_triangulation(100, black_box(3), 5).unwrap()));
    let g = random_tree(500, 2);
    c.bench_function("triangulate/tree500", |b| b.iter(|| triangulate(black_box(&g)).unwrap()));
}

fn bench_oracle(c: &mut Criterion) {
    let g = random_tree(6, 4);
    let l = random_lists(6, 4, 6, &mut rng(2));
    c.bench_function("oracle_build/6x4", |b| b.iter(|| ReconfigurationGraph::build(&g, &l, DEFAULT_CAP).unwrap()));
}

criterion_group!(
    benches,
    bench_recolor_planar,
    bench_matcher,
    bench_discharging,
    bench_degenerate,
    bench_graph,
    bench_oracle
);
criterion_main!(benches);
