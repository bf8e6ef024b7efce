//! Top-level recoloring of plane graphs with 10-lists.
//!
//! Going down, a vertex of degree at most 4 is peeled whenever one exists;
//! otherwise a component is triangulated and a catalog configuration found
//! there is removed. Going back up, each removal is undone by extending the
//! sequence built so far, always in the real (untriangulated) graph, where
//! degrees can only be smaller.

use crate::catalog::{builtin_catalog, match_first_with};
use crate::coloring::{Coloring, ListAssignment, RecolorSequence};
use crate::engine::extend::{extend_single_vertex, extend_with_deferral};
use crate::engine::plan::{DeferralPlan, PLAN_LIST_SIZE};
use crate::engine::stage::finishing_order;
use crate::engine::{ExtensionTrace, Reduction};
use crate::error::{Error, Result};
use crate::graph::{triangulate, PlaneGraph, Vertex};

/// Recolor-count target used throughout.
pub const DEFAULT_K: u64 = 416;

/// Largest degree removed by peeling.
const PEEL_DEGREE: usize = 4;

enum Removal {
    Peel(Vertex),
    Config { id: String, image: Vec<Vertex>, plan: DeferralPlan },
}

struct Frame {
    /// Graph in which the removed vertices are restored.
    host: PlaneGraph,
    removal: Removal,
}

/// Stage-by-stage checks that the extension can run on the real graph.
fn extendable(host: &PlaneGraph, l: &ListAssignment, image: &[Vertex], plan: &DeferralPlan) -> bool {
    for (si, st) in plan.stages.iter().enumerate() {
        let later: Vec<Vertex> =
            plan.stages[si + 1..].iter().flat_map(|s| s.vertices.iter().map(|&p| image[p])).collect();
        let stage_host = host.without(&later);
        let vertices: Vec<Vertex> = st.vertices.iter().map(|&p| image[p]).collect();
        if vertices.iter().any(|&v| l.size(v) < stage_host.degree(v) + 2) {
            return false;
        }
        if finishing_order(&stage_host, l, &vertices).is_none() {
            return false;
        }
    }
    true
}

fn peel_candidate(g: &PlaneGraph, alive: &[bool]) -> Option<Vertex> {
    (0..g.n()).filter(|&v| alive[v] && g.degree(v) <= PEEL_DEGREE).min_by_key(|&v| (g.degree(v), v))
}

fn reduce(g: &PlaneGraph, l: &ListAssignment) -> Result<Vec<Frame>> {
    let n = g.n();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut cur = g.clone();
    let mut frames = Vec::new();
    while remaining > 0 {
        if let Some(v) = peel_candidate(&cur, &alive) {
            let next = cur.without(&[v]);
            frames.push(Frame { host: std::mem::replace(&mut cur, next), removal: Removal::Peel(v) });
            alive[v] = false;
            remaining -= 1;
            continue;
        }
        let comp = cur
            .components()
            .into_iter()
            .find(|c| c.len() >= 2 && alive[c[0]])
            .ok_or(Error::TheoremViolation { n: remaining })?;
        let (sub, map) = cur.induced(&comp);
        let tri = triangulate(&sub)?;
        let found = match_first_with(&tri, builtin_catalog(), |p, img| {
            let image: Vec<Vertex> = img.iter().map(|&x| map[x]).collect();
            let degrees: Vec<usize> = img.iter().map(|&x| tri.degree(x)).collect();
            extendable(&cur, l, &image, &p.plan_for(&degrees))
        })
        .ok_or(Error::TheoremViolation { n: comp.len() })?;
        let p = builtin_catalog().iter().find(|p| p.id == found.id).expect("matched entry");
        let degrees: Vec<usize> = found.image.iter().map(|&x| tri.degree(x)).collect();
        let image: Vec<Vertex> = found.image.iter().map(|&x| map[x]).collect();
        let next = cur.without(&image);
        for &v in &image {
            alive[v] = false;
        }
        remaining -= image.len();
        frames.push(Frame {
            host: std::mem::replace(&mut cur, next),
            removal: Removal::Config { id: found.id, image, plan: p.plan_for(&degrees) },
        });
    }
    Ok(frames)
}

/// Builds a sequence from `a` to `b` on `g` with every list of size at least
/// 10, aiming to recolor each vertex at most `k` times.
pub fn recolor_planar(
    g: &PlaneGraph,
    l: &ListAssignment,
    a: &Coloring,
    b: &Coloring,
    k: u64,
) -> Result<ExtensionTrace> {
    let n = g.n();
    if l.len() != n {
        return Err(Error::LengthMismatch { what: "lists", expected: n, got: l.len() });
    }
    for (what, c) in [("alpha", a), ("beta", b)] {
        if c.len() != n {
            return Err(Error::LengthMismatch { what, expected: n, got: c.len() });
        }
    }
    if let Some(v) = (0..n).find(|&v| l.size(v) < PLAN_LIST_SIZE) {
        return Err(Error::ListTooSmall { vertex: v, size: l.size(v), need: PLAN_LIST_SIZE });
    }
    a.check_proper(g, l)?;
    b.check_proper(g, l)?;

    let frames = reduce(g, l)?;
    let mut seq = RecolorSequence::empty(a.clone());
    let mut log = Vec::new();
    let mut reductions = Vec::with_capacity(frames.len());
    for frame in frames.iter().rev() {
        let host = &frame.host;
        match &frame.removal {
            Removal::Peel(v) => {
                let v = *v;
                let s = seq.steps.iter().filter(|st| host.has_edge(st.vertex, v)).count();
                let a_v = l.size(v) - host.degree(v) - 1;
                let bound = s.div_ceil(a_v) as u64 + 1;
                seq = extend_single_vertex(host, l, v, &seq, b[v])?.produced;
                let count = seq.steps.iter().filter(|st| st.vertex == v).count();
                reductions.push(Reduction { id: None, image: vec![v], bounds: vec![bound], counts: vec![count] });
            }
            Removal::Config { id, image, plan } => {
                let mut target = seq.apply();
                for &v in image {
                    target[v] = b[v];
                }
                let trace = extend_with_deferral(host, l, image, plan, &seq, &target, k)?;
                seq = trace.produced;
                log.extend(trace.deferral_log);
                let counts = seq.counts();
                reductions.push(Reduction {
                    id: Some(id.clone()),
                    image: image.clone(),
                    bounds: plan.bounds(k),
                    counts: image.iter().map(|&v| counts[v]).collect(),
                });
            }
        }
    }
    let mut trace = ExtensionTrace::new(seq, log);
    trace.reductions = reductions;
    Ok(trace)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::validate_sequence;
    use crate::graph::named::{icosahedron, k4, path};

    fn greedy(g: &PlaneGraph, l: &ListAssignment, offset: usize) -> Coloring {
        let mut c = Coloring(vec![0; g.n()]);
        for v in 0..g.n() {
            let list = l.list(v);
            c[v] = (0..list.len())
                .map(|i| list[(i + offset) % list.len()])
                .find(|&x| g.neighbors(v).iter().all(|&w| w >= v || c[w] != x))
                .unwrap();
        }
        c
    }

    #[test]
    fn single_vertex_one_step() {
        let g = path(1);
        let l = ListAssignment::uniform(1, &(0..10).collect::<Vec<_>>());
        let t = recolor_planar(&g, &l, &Coloring(vec![3]), &Coloring(vec![7]), DEFAULT_K).unwrap();
        assert_eq!(t.produced.len(), 1);
    }

    #[test]
    fn k4_peels() {
        let g = k4();
        let l = ListAssignment::uniform(4, &(0..10).collect::<Vec<_>>());
        let (a, b) = (greedy(&g, &l, 0), greedy(&g, &l, 5));
        let t = recolor_planar(&g, &l, &a, &b, DEFAULT_K).unwrap();
        assert!(validate_sequence(&g, &l, &t.produced, &b).valid);
        assert!(t.reductions.iter().all(|r| r.id.is_none()));
    }

    #[test]
    fn icosahedron_is_416_good() {
        let g = icosahedron();
        let l = ListAssignment::new((0..12).map(|v| (v as u32..v as u32 + 10).collect()).collect()).unwrap();
        let (a, b) = (greedy(&g, &l, 0), greedy(&g, &l, 3));
        let t = recolor_planar(&g, &l, &a, &b, DEFAULT_K).unwrap();
        let r = validate_sequence(&g, &l, &t.produced, &b);
        assert!(r.valid, "{:?}", r.violation);
        assert!(r.max_count() <= 416);
        assert_eq!(t.reductions.last().unwrap().id.as_deref(), Some("RC-53a"));
    }

    #[test]
    fn short_lists_rejected() {
        let g = path(2);
        let l = ListAssignment::uniform(2, &[1, 2, 3]);
        let c = Coloring(vec![1, 2]);
        assert!(matches!(recolor_planar(&g, &l, &c, &c, DEFAULT_K), Err(Error::ListTooSmall { .. })));
    }
}
