use planar_recolor::coloring::{validate_sequence, Coloring};
use planar_recolor::engine::{recolor_planar, DEFAULT_K};
use planar_recolor::gen::{gen_instance, gen_triangulation, rng};
use planar_recolor::graph::{triangulate, PlaneGraph};
use rand::Rng;

fn check(g: &PlaneGraph, seed: u64) -> (usize, usize) {
    let inst = gen_instance(g, 10, seed).unwrap();
    let t = recolor_planar(g, &inst.lists, &inst.alpha, &inst.beta, DEFAULT_K).unwrap();
    let r = validate_sequence(g, &inst.lists, &t.produced, &inst.beta);
    assert!(r.valid, "seed {seed}: {:?}", r.violation);
    assert!(r.max_count() <= DEFAULT_K as usize);
    assert_eq!(t.per_vertex_counts, r.counts);
    assert!(t.produced.len() <= DEFAULT_K as usize * g.n());
    for red in &t.reductions {
        for (b, c) in red.bounds.iter().zip(&red.counts) {
            assert!(*c as u64 <= *b, "{:?} exceeds its bound", red);
        }
    }
    (r.max_count(), t.reductions.iter().filter(|r| r.id.is_some()).count())
}

#[test]
fn generated_triangulations_are_416_good() {
    let mut configs = 0;
    for seed in 0..6u64 {
        let n = 12 + 7 * seed as usize;
        let g = gen_triangulation(n, seed, 5).unwrap();
        configs += check(&g, seed).1;
    }
    assert!(configs > 0, "no configuration reduction was exercised");
}

#[test]
fn low_degree_triangulations_peel() {
    for seed in 0..4u64 {
        let g = gen_triangulation(20 + seed as usize, 100 + seed, 3).unwrap();
        check(&g, seed);
    }
}

/// A sequence built on a triangulation stays valid on any spanning
/// subgraph, and the routine also runs on the subgraph directly.
#[test]
fn subgraph_runs_agree() {
    let mut r = rng(5);
    for seed in 0..3u64 {
        let tri = gen_triangulation(24, seed, 5).unwrap();
        // Drop a few edges while keeping the graph connected.
        let mut g = tri.clone();
        for _ in 0..10 {
            let edges = g.edges();
            let (u, v) = edges[r.gen_range(0..edges.len())];
            let rot: Vec<Vec<usize>> = g
                .rotations()
                .iter()
                .enumerate()
                .map(|(x, rot)| rot.iter().copied().filter(|&y| !((x, y) == (u, v) || (x, y) == (v, u))).collect())
                .collect();
            let h = PlaneGraph::new(rot).unwrap();
            if h.is_connected() {
                g = h;
            }
        }
        assert!(g.edge_count() < tri.edge_count());
        let inst = gen_instance(&g, 10, seed).unwrap();
        if inst.alpha.is_proper(&tri, &inst.lists) && inst.beta.is_proper(&tri, &inst.lists) {
            let on_tri = recolor_planar(&tri, &inst.lists, &inst.alpha, &inst.beta, DEFAULT_K).unwrap();
            assert!(validate_sequence(&g, &inst.lists, &on_tri.produced, &inst.beta).valid);
        }
        let on_g = recolor_planar(&g, &inst.lists, &inst.alpha, &inst.beta, DEFAULT_K).unwrap();
        assert!(validate_sequence(&g, &inst.lists, &on_g.produced, &inst.beta).valid);
        let t = triangulate(&g).unwrap();
        assert!(t.is_triangulation());
    }
}

#[test]
fn identical_endpoints_need_nothing_beyond_validity() {
    let g = gen_triangulation(16, 2, 5).unwrap();
    let inst = gen_instance(&g, 10, 1).unwrap();
    let a: Coloring = inst.alpha.clone();
    let t = recolor_planar(&g, &inst.lists, &a, &a, DEFAULT_K).unwrap();
    assert!(validate_sequence(&g, &inst.lists, &t.produced, &a).valid);
}
