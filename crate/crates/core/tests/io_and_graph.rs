use planar_recolor::coloring::RecolorSequence;
use planar_recolor::gen::{gen_instance, gen_triangulation, rng, InstanceBundle};
use planar_recolor::graph::{triangulate, PlaneGraph};
use planar_recolor::io::{parse, parse_sequence, to_json, GraphFile};
use proptest::prelude::*;
use rand::Rng;

/// Drops random edges from a triangulation while it stays connected.
fn thin(tri: &PlaneGraph, drops: usize, seed: u64) -> PlaneGraph {
    let mut r = rng(seed);
    let mut g = tri.clone();
    for _ in 0..drops {
        let edges = g.edges();
        let (u, v) = edges[r.gen_range(0..edges.len())];
        let rot = g
            .rotations()
            .iter()
            .enumerate()
            .map(|(x, rot)| rot.iter().copied().filter(|&y| (x, y) != (u, v) && (x, y) != (v, u)).collect())
            .collect();
        let h = PlaneGraph::new(rot).unwrap();
        if h.is_connected() {
            g = h;
        }
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn instance_round_trip_is_byte_stable(n in 4usize..40, seed in any::<u64>()) {
        let g = gen_triangulation(n, seed, 3).unwrap();
        let b = gen_instance(&g, 10, seed).unwrap();
        let text = to_json(&b.to_file());
        let back = InstanceBundle::from_file(&GraphFile::parse(&text).unwrap()).unwrap();
        prop_assert_eq!(&back, &b);
        prop_assert_eq!(to_json(&back.to_file()), text);
    }

    #[test]
    fn triangulate_completes_connected_plane_graphs(n in 4usize..40, seed in any::<u64>(), drops in 0usize..60) {
        let tri = gen_triangulation(n, seed, 3).unwrap();
        let g = thin(&tri, drops, seed);
        let t = triangulate(&g).unwrap();
        prop_assert!(t.is_triangulation());
        prop_assert_eq!(t.n(), g.n());
        prop_assert_eq!(t.edge_count(), 3 * g.n() - 6);
        for (u, v) in g.edges() {
            prop_assert!(t.has_edge(u, v));
        }
        // Revalidated from scratch.
        prop_assert!(PlaneGraph::new(t.rotations().to_vec()).is_ok());
    }
}

#[test]
fn generator_is_deterministic() {
    for seed in 0..5 {
        let a = to_json(&GraphFile::from_graph(&gen_triangulation(30, seed, 5).unwrap()));
        let b = to_json(&GraphFile::from_graph(&gen_triangulation(30, seed, 5).unwrap()));
        assert_eq!(a, b);
    }
    assert_eq!(gen_triangulation(4, 9, 3).unwrap().edge_count(), 6);
}

#[test]
fn sequence_file_round_trip() {
    let text = r#"{"start":[0,1,2],"steps":[[1,3]]}"#;
    let s: RecolorSequence = parse_sequence(text).unwrap();
    assert_eq!(to_json(&s), text);
    assert!(parse::<GraphFile>(r#"{"n":1,"rotation":[[]],"extra":1}"#).is_err());
}
