use num_traits::{Signed, Zero};
use planar_recolor::discharging::{
    apply_rule, audit, initial_charges, local_charge_after_edge_rules, rule_stages, Charge,
};
use planar_recolor::gen::gen_triangulation;
use planar_recolor::graph::{named, PlaneGraph, Vertex};
use proptest::prelude::*;

fn minus_twelve() -> Charge {
    Charge::from_integer(-12)
}

/// Closed neighborhood of radius two, with `v` listed first.
fn ball2(g: &PlaneGraph, v: Vertex) -> Vec<Vertex> {
    let mut out = vec![v];
    for &w in g.neighbors(v) {
        if !out.contains(&w) {
            out.push(w);
        }
    }
    for i in 1..out.len() {
        for &x in g.neighbors(out[i]) {
            if !out.contains(&x) {
                out.push(x);
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn total_is_conserved_at_every_stage(n in 12usize..120, seed in any::<u64>(), low in 3usize..6) {
        prop_assume!(!(low == 5 && n == 13));
        let g = gen_triangulation(n, seed, low).unwrap();
        let stages = rule_stages(&g, &initial_charges(&g).unwrap()).unwrap();
        prop_assert_eq!(stages.len(), 7);
        for (i, s) in stages.iter().enumerate() {
            prop_assert_eq!(s.stage as usize, i);
            prop_assert_eq!(s.total(), minus_twelve());
        }
    }

    #[test]
    fn edge_rules_are_local(n in 12usize..80, seed in any::<u64>()) {
        prop_assume!(n != 13);
        let g = gen_triangulation(n, seed, 5).unwrap();
        let after = &rule_stages(&g, &initial_charges(&g).unwrap()).unwrap()[4];
        for v in 0..g.n() {
            let (sub, _) = g.induced(&ball2(&g, v));
            let ring: Vec<usize> = sub.rotation(0).iter().map(|&w| sub.degree(w)).collect();
            prop_assert_eq!(after.charge[v], local_charge_after_edge_rules(sub.degree(0), &ring));
        }
    }

    #[test]
    fn six_vertices_end_nonnegative(n in 12usize..150, seed in any::<u64>()) {
        prop_assume!(n != 13);
        let g = gen_triangulation(n, seed, 5).unwrap();
        let last = rule_stages(&g, &initial_charges(&g).unwrap()).unwrap().pop().unwrap();
        for v in 0..g.n() {
            if g.degree(v) == 6 {
                prop_assert!(!last.charge[v].is_negative());
            }
        }
    }
}

#[test]
fn audit_never_reports_the_forbidden_pair() {
    for seed in 0..60u64 {
        let n = [12, 14, 16, 24, 40, 80][seed as usize % 6];
        let g = gen_triangulation(n, seed, 5).unwrap();
        let rep = audit(&g).unwrap();
        assert!(!rep.fault, "seed {seed}");
        assert!(rep.matched.is_some(), "seed {seed}: no configuration");
        if !rep.unhappy.is_empty() {
            assert!(rep.matched.is_some());
        }
    }
}

#[test]
fn audit_gates_on_minimum_degree_and_shape() {
    assert!(audit(&named::octahedron()).is_err());
    assert!(audit(&named::cycle(5)).is_err());
    let raw = initial_charges(&named::octahedron()).unwrap();
    assert!(raw.charge.iter().all(|c| *c == Charge::from_integer(-2)));
    assert_eq!(raw.total(), minus_twelve());
}

#[test]
fn rules_must_run_in_order() {
    let g = named::icosahedron();
    let s0 = initial_charges(&g).unwrap();
    assert!(apply_rule(&g, &s0, 2).is_err());
    let s1 = apply_rule(&g, &s0, 1).unwrap();
    assert!(apply_rule(&g, &s1, 1).is_err());
    // No 7+-vertices: nothing moves.
    assert_eq!(s1.charge, s0.charge);
    assert!(s1.charge.iter().all(|c| !c.is_zero()));
}
