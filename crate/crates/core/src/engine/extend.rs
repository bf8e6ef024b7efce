use crate::coloring::{Coloring, ListAssignment, RecolorSequence};
use crate::engine::plan::DeferralPlan;
use crate::engine::stage::{finish_steps, run_stage, Stage};
use crate::engine::ExtensionTrace;
use crate::error::{Error, Result};
use crate::graph::{Color, PlaneGraph, Vertex};

fn check_inner(g: &PlaneGraph, l: &ListAssignment, inner: &RecolorSequence) -> Result<()> {
    if inner.start.len() != g.n() {
        return Err(Error::LengthMismatch { what: "start coloring", expected: g.n(), got: inner.start.len() });
    }
    if l.len() != g.n() {
        return Err(Error::LengthMismatch { what: "lists", expected: g.n(), got: l.len() });
    }
    inner.start.check_proper(g, l)
}

/// Extends `inner`, which must leave `v` alone, to a sequence on `g` that
/// ends with `v` colored `target_color`. The vertex is recolored at most
/// `ceil(s / (|L(v)| - d(v) - 1)) + 1` times, where `s` counts the inner
/// steps on neighbors of `v`.
pub fn extend_single_vertex(
    g: &PlaneGraph,
    l: &ListAssignment,
    v: Vertex,
    inner: &RecolorSequence,
    target_color: Color,
) -> Result<ExtensionTrace> {
    check_inner(g, l, inner)?;
    if v >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
    }
    let mut target = inner.apply();
    target[v] = target_color;
    let stage = Stage { host: g, lists: l, vertices: &[v], arcs: &[] };
    let (seq, log) = run_stage(&stage, inner, &target)?;
    Ok(ExtensionTrace::new(seq, log))
}

/// Recolors `a` into `b` along an elimination order in which every vertex
/// has at most `d` neighbors later in the order. Needs lists of size at least
/// `2d + 2`; each vertex is then recolored at most `d + 1` times.
pub fn extend_degenerate(
    g: &PlaneGraph,
    l: &ListAssignment,
    order: &[Vertex],
    a: &Coloring,
    b: &Coloring,
    d: usize,
) -> Result<ExtensionTrace> {
    let n = g.n();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&v| v >= n || std::mem::replace(&mut seen[v], true)) {
        return Err(Error::BadOrder);
    }
    for (name, c) in [("alpha", a), ("beta", b)] {
        if c.len() != n {
            return Err(Error::LengthMismatch { what: name, expected: n, got: c.len() });
        }
    }
    if l.len() != n {
        return Err(Error::LengthMismatch { what: "lists", expected: n, got: l.len() });
    }
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for (i, &v) in order.iter().enumerate() {
        let later = g.neighbors(v).iter().filter(|&&w| pos[w] > i).count();
        if later > d {
            return Err(Error::NotDegenerate { vertex: v, later, d });
        }
        if l.size(v) < 2 * d + 2 {
            return Err(Error::ListTooSmall { vertex: v, size: l.size(v), need: 2 * d + 2 });
        }
    }
    a.check_proper(g, l)?;
    b.check_proper(g, l)?;
    let mut seq = RecolorSequence::empty(a.clone());
    let mut log = Vec::new();
    for i in (0..n).rev() {
        let host = g.without(&order[..i]);
        let v = order[i];
        let mut target = seq.apply();
        target[v] = b[v];
        let stage = Stage { host: &host, lists: l, vertices: &[v], arcs: &[] };
        let (next, events) = run_stage(&stage, &seq, &target)?;
        seq = next;
        log.extend(events);
    }
    Ok(ExtensionTrace::new(seq, log))
}

/// Moves `current` onto `target` where they differ only on `h`. Each vertex
/// of `h` must satisfy `d_G(v) + (neighbors later in order) < |L(v)|`;
/// it is then recolored at most twice and nothing else moves.
pub fn finish_subgraph(
    g: &PlaneGraph,
    l: &ListAssignment,
    h: &[Vertex],
    order: &[Vertex],
    current: &Coloring,
    target: &Coloring,
) -> Result<ExtensionTrace> {
    let n = g.n();
    for (what, len) in [("current", current.len()), ("target", target.len()), ("lists", l.len())] {
        if len != n {
            return Err(Error::LengthMismatch { what, expected: n, got: len });
        }
    }
    let mut in_h = vec![false; n];
    for &v in h {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        in_h[v] = true;
    }
    let mut sorted_order = order.to_vec();
    sorted_order.sort_unstable();
    let mut sorted_h = h.to_vec();
    sorted_h.sort_unstable();
    sorted_h.dedup();
    if sorted_order != sorted_h {
        return Err(Error::BadOrder);
    }
    if let Some(v) = (0..n).find(|&v| !in_h[v] && current[v] != target[v]) {
        return Err(Error::DiffersOutside(v));
    }
    current.check_proper(g, l)?;
    target.check_proper(g, l)?;
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    for (i, &v) in order.iter().enumerate() {
        let later = g.neighbors(v).iter().filter(|&&w| pos[w] != usize::MAX && pos[w] > i).count();
        let limit = l.size(v) - 1;
        if g.degree(v) + later > limit {
            return Err(Error::FinishPrecondition { vertex: v, degree: g.degree(v), later, limit });
        }
    }
    let mut cur = current.clone();
    let steps = finish_steps(g, l, order, &mut cur, target)?;
    Ok(ExtensionTrace::new(RecolorSequence { start: current.clone(), steps }, Vec::new()))
}

/// Extends `inner`, which recolors only vertices outside the image `h` of a
/// plan, to the whole graph ending at `target`. Stages are extended one after
/// another; stage `i` works in the graph still missing the later stages.
pub fn extend_with_deferral(
    g: &PlaneGraph,
    l: &ListAssignment,
    h: &[Vertex],
    plan: &DeferralPlan,
    inner: &RecolorSequence,
    target: &Coloring,
    k: u64,
) -> Result<ExtensionTrace> {
    check_inner(g, l, inner)?;
    let n = g.n();
    plan.validate()?;
    if h.len() != plan.len() {
        return Err(Error::Plan(format!("plan has {} vertices, image has {}", plan.len(), h.len())));
    }
    let mut in_h = vec![false; n];
    for (i, &v) in h.iter().enumerate() {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        if std::mem::replace(&mut in_h[v], true) {
            return Err(Error::Plan(format!("vertex {v} appears twice in the image")));
        }
        if g.degree(v) > plan.degrees[i] {
            return Err(Error::Plan(format!(
                "vertex {v} has degree {} but the plan allows {}",
                g.degree(v),
                plan.degrees[i]
            )));
        }
    }
    if !plan.closes(k) {
        return Err(Error::Plan(format!("plan does not close at k = {k}")));
    }
    if target.len() != n {
        return Err(Error::LengthMismatch { what: "target", expected: n, got: target.len() });
    }
    target.check_proper(g, l)?;
    let counts = inner.counts();
    for s in &inner.steps {
        if s.vertex < n && in_h[s.vertex] {
            return Err(Error::Plan(format!("inner sequence recolors image vertex {}", s.vertex)));
        }
    }
    if let Some(v) = (0..n).find(|&v| counts[v] as u64 > k) {
        return Err(Error::NotKGood { vertex: v, count: counts[v], k: k as usize });
    }
    let reached = inner.apply();
    if let Some(v) = (0..n).find(|&v| !in_h[v] && reached[v] != target[v]) {
        return Err(Error::DiffersOutside(v));
    }

    let mut seq = inner.clone();
    let mut log = Vec::new();
    for (si, st) in plan.stages.iter().enumerate() {
        let later: Vec<Vertex> = plan.stages[si + 1..].iter().flat_map(|s| s.vertices.iter().map(|&p| h[p])).collect();
        let host = if later.is_empty() { g.clone() } else { g.without(&later) };
        let vertices: Vec<Vertex> = st.vertices.iter().map(|&p| h[p]).collect();
        let arcs: Vec<(Vertex, Vertex, u64)> = st.arcs.iter().map(|a| (h[a.parent], h[a.child], a.budget)).collect();
        let mut stage_target = seq.apply();
        for &v in &vertices {
            stage_target[v] = target[v];
        }
        let stage = Stage { host: &host, lists: l, vertices: &vertices, arcs: &arcs };
        let (next, events) = run_stage(&stage, &seq, &stage_target)?;
        seq = next;
        log.extend(events);
    }
    Ok(ExtensionTrace::new(seq, log))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::{validate_sequence, RecolorStep};
    use crate::engine::plan::DeferArc;
    use crate::graph::named::{icosahedron, path, star, triangle};

    fn move_bound(s: usize, size: usize, deg: usize) -> usize {
        s.div_ceil(size - deg - 1) + 1
    }

    #[test]
    fn single_vertex_without_inner_steps() {
        let g = path(1);
        let l = ListAssignment::uniform(1, &[1, 2]);
        let inner = RecolorSequence::empty(Coloring(vec![1]));
        let t = extend_single_vertex(&g, &l, 0, &inner, 2).unwrap();
        assert_eq!(t.produced.steps, vec![RecolorStep::new(0, 2)]);
        let t = extend_single_vertex(&g, &l, 0, &inner, 1).unwrap();
        assert!(t.produced.is_empty());
    }

    #[test]
    fn star_center_follows_leaves() {
        // Center 0 with five leaves, 10-lists, six leaf steps.
        let g = star(5);
        let l = ListAssignment::uniform(6, &(1..=10).collect::<Vec<_>>());
        let start = Coloring(vec![1, 2, 3, 4, 5, 6]);
        let steps = [(1, 1), (2, 7), (3, 1), (4, 8), (5, 9), (1, 10)];
        let inner = RecolorSequence { start, steps: steps.iter().map(|&s| s.into()).collect() };
        let t = extend_single_vertex(&g, &l, 0, &inner, 4).unwrap();
        let target = t.produced.apply();
        assert_eq!(target[0], 4);
        assert!(validate_sequence(&g, &l, &t.produced, &target).valid);
        assert!(t.per_vertex_counts[0] <= move_bound(6, 10, 5));
    }

    #[test]
    fn small_list_rejected() {
        let g = triangle();
        let l = ListAssignment::uniform(3, &[1, 2, 3]);
        let inner = RecolorSequence::empty(Coloring(vec![1, 2, 3]));
        assert!(matches!(extend_single_vertex(&g, &l, 0, &inner, 1), Err(Error::ListTooSmall { .. })));
    }

    #[test]
    fn degenerate_path_counts_at_most_two() {
        let g = path(3);
        let l = ListAssignment::uniform(3, &[1, 2, 3, 4]);
        let a = Coloring(vec![1, 2, 1]);
        let b = Coloring(vec![2, 1, 2]);
        let t = extend_degenerate(&g, &l, &[0, 1, 2], &a, &b, 1).unwrap();
        assert!(validate_sequence(&g, &l, &t.produced, &b).valid);
        assert!(t.max_count() <= 2);
        assert!(t.produced.len() <= 6);
    }

    #[test]
    fn degenerate_order_checked() {
        let g = triangle();
        let l = ListAssignment::uniform(3, &[1, 2, 3, 4, 5, 6]);
        let a = Coloring(vec![1, 2, 3]);
        assert!(matches!(
            extend_degenerate(&g, &l, &[0, 1, 2], &a, &a, 1),
            Err(Error::NotDegenerate { vertex: 0, later: 2, d: 1 })
        ));
        assert_eq!(extend_degenerate(&g, &l, &[0, 0, 2], &a, &a, 2), Err(Error::BadOrder));
    }

    #[test]
    fn finish_triangle_in_icosahedron() {
        let g = icosahedron();
        let l = ListAssignment::uniform(12, &(1..=10).collect::<Vec<_>>());
        let h = {
            let f = &g.faces()[0];
            vec![f[0], f[1], f[2]]
        };
        // Greedy proper coloring, then rotate the colors on h.
        let mut cur = Coloring(vec![0; 12]);
        for v in 0..12 {
            cur[v] = (1..=10).find(|c| g.neighbors(v).iter().all(|&w| w >= v || cur[w] != *c)).unwrap();
        }
        let mut target = cur.clone();
        for &v in &h {
            target[v] = (1..=10)
                .find(|&c| c != cur[v] && g.neighbors(v).iter().all(|&w| h.contains(&w) && w > v || target[w] != c))
                .unwrap();
        }
        assert!(target.is_proper(&g, &l));
        let t = finish_subgraph(&g, &l, &h, &h, &cur, &target).unwrap();
        assert!(validate_sequence(&g, &l, &t.produced, &target).valid);
        assert!(h.iter().all(|&v| t.per_vertex_counts[v] <= 2));
        assert_eq!(t.per_vertex_counts.iter().sum::<usize>(), t.produced.len());
    }

    #[test]
    fn deferral_on_path_plan() {
        // Path 0-1-2 plus pendant outside vertices, single stage, 1 defers to 2.
        let g = path(4);
        let l = ListAssignment::uniform(4, &(1..=10).collect::<Vec<_>>());
        let plan =
            DeferralPlan::single_stage(vec![2, 2], vec![(0, 1)], vec![DeferArc { parent: 0, child: 1, budget: 4 }]);
        let start = Coloring(vec![1, 2, 3, 4]);
        let steps = [(3, 2), (3, 5), (3, 3), (3, 6)];
        let inner = RecolorSequence { start, steps: steps.iter().map(|&s| s.into()).collect() };
        let mut target = inner.apply();
        target[1] = 9;
        target[2] = 8;
        let t = extend_with_deferral(&g, &l, &[1, 2], &plan, &inner, &target, 416).unwrap();
        assert!(validate_sequence(&g, &l, &t.produced, &target).valid);
    }
}
