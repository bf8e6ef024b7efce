//! Staged deferral plans and their recolor-count expressions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// List size the catalog plans are certified for.
pub const PLAN_LIST_SIZE: usize = 10;

/// Upper end of the range scanned when searching for the minimal closing k.
pub const K_SCAN_MAX: u64 = 10_000;

/// `parent` defers to `child` for the first `budget` colors that appear on
/// the child's outside neighbors. Serialized as `[parent, child, budget]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "(usize, usize, u64)", into = "(usize, usize, u64)")]
pub struct DeferArc {
    pub parent: usize,
    pub child: usize,
    pub budget: u64,
}

impl From<(usize, usize, u64)> for DeferArc {
    fn from((parent, child, budget): (usize, usize, u64)) -> Self {
        DeferArc { parent, child, budget }
    }
}

impl From<DeferArc> for (usize, usize, u64) {
    fn from(a: DeferArc) -> Self {
        (a.parent, a.child, a.budget)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStage {
    pub arcs: Vec<DeferArc>,
    pub vertices: Vec<usize>,
}

/// Vertices are pattern indices. Stage `i` is extended in the graph that
/// still lacks the vertices of stages `i+1..`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeferralPlan {
    /// Prescribed host degree of each pattern vertex.
    pub degrees: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub stages: Vec<PlanStage>,
}

/// Recolor count of one vertex: triggered recolors outside and inside its
/// deferral phase, forced recolors caused by children, and finishing steps.
pub fn node_bound(stream: u64, budget_in: u64, lookahead: u64, child_terms: u64, finish: u64) -> u64 {
    let inside = budget_in.min(stream);
    let outside = stream - inside;
    outside.div_ceil(lookahead) + inside.div_ceil(lookahead + 1) + child_terms + finish
}

/// Forced recolors a parent suffers from one child: at most one per child
/// recoloring during the deferral phase.
pub fn child_term(budget: u64, child_lookahead: u64) -> u64 {
    budget.div_ceil(child_lookahead + 1)
}

/// Smallest `k0` such that `closes(k)` holds for every `k` in `k0..=K_SCAN_MAX`.
pub fn min_closing_k(closes: impl Fn(u64) -> bool) -> Option<u64> {
    if !closes(K_SCAN_MAX) {
        return None;
    }
    let mut k0 = K_SCAN_MAX;
    while k0 > 1 && closes(k0 - 1) {
        k0 -= 1;
    }
    Some(k0)
}

impl DeferralPlan {
    pub fn single_stage(degrees: Vec<usize>, edges: Vec<(usize, usize)>, arcs: Vec<DeferArc>) -> Self {
        let vertices = (0..degrees.len()).collect();
        DeferralPlan { degrees, edges, stages: vec![PlanStage { arcs, vertices }] }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.iter().any(|&(a, b)| (a, b) == (u, v) || (a, b) == (v, u))
    }

    pub fn pattern_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn stage_of(&self, v: usize) -> usize {
        self.stages.iter().position(|s| s.vertices.contains(&v)).expect("validated plan")
    }

    /// Host degree of `v` while its stage is being extended.
    pub fn stage_degree(&self, v: usize) -> usize {
        let s = self.stage_of(v);
        let later = self
            .edges
            .iter()
            .filter_map(|&(a, b)| match (a == v, b == v) {
                (true, _) => Some(b),
                (_, true) => Some(a),
                _ => None,
            })
            .filter(|&w| self.stage_of(w) > s)
            .count();
        self.degrees[v] - later
    }

    /// Lookahead window for triggered recolors of `v` with 10-lists.
    pub fn lookahead(&self, v: usize) -> usize {
        PLAN_LIST_SIZE.saturating_sub(self.stage_degree(v) + 1)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.len();
        let bad = |m: String| Err(Error::Plan(m));
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b {
                return bad(format!("edge ({a}, {b}) invalid"));
            }
        }
        let mut seen = vec![false; n];
        for s in &self.stages {
            for &v in &s.vertices {
                if v >= n || seen[v] {
                    return bad(format!("vertex {v} missing from range or in two stages"));
                }
                seen[v] = true;
            }
        }
        if let Some(v) = seen.iter().position(|&x| !x) {
            return bad(format!("vertex {v} in no stage"));
        }
        for (i, s) in self.stages.iter().enumerate() {
            let mut parent = vec![None; n];
            for a in &s.arcs {
                if !s.vertices.contains(&a.parent) || !s.vertices.contains(&a.child) {
                    return bad(format!("arc {}->{} leaves stage {i}", a.parent, a.child));
                }
                if !self.adjacent(a.parent, a.child) {
                    return bad(format!("arc {}->{} joins non-adjacent vertices", a.parent, a.child));
                }
                if parent[a.child].replace(a.parent).is_some() {
                    return bad(format!("vertex {} has two parents", a.child));
                }
            }
            for &v in &s.vertices {
                let mut cur = v;
                for _ in 0..=n {
                    match parent[cur] {
                        Some(p) => cur = p,
                        None => break,
                    }
                }
                if parent[cur].is_some() {
                    return bad(format!("arcs of stage {i} contain a cycle"));
                }
            }
        }
        for v in 0..n {
            if self.lookahead(v) == 0 {
                return bad(format!("vertex {v} has no lookahead with {PLAN_LIST_SIZE}-lists"));
            }
        }
        Ok(())
    }

    /// Recolor-count bound of every vertex at `k`, in pattern order.
    pub fn bounds(&self, k: u64) -> Vec<u64> {
        let n = self.len();
        let mut bound = vec![0u64; n];
        for (si, stage) in self.stages.iter().enumerate() {
            let finish = if stage.vertices.len() == 1 { 1 } else { 2 };
            for &v in &stage.vertices {
                let mut stream = (self.degrees[v] - self.pattern_degree(v)) as u64 * k;
                for &(a, b) in &self.edges {
                    let w = match (a == v, b == v) {
                        (true, _) => b,
                        (_, true) => a,
                        _ => continue,
                    };
                    if self.stage_of(w) < si {
                        stream += bound[w];
                    }
                }
                let a = self.lookahead(v) as u64;
                let budget_in = stage.arcs.iter().find(|x| x.child == v).map_or(0, |x| x.budget);
                let children: u64 = stage
                    .arcs
                    .iter()
                    .filter(|x| x.parent == v)
                    .map(|x| child_term(x.budget, self.lookahead(x.child) as u64))
                    .sum();
                bound[v] = node_bound(stream, budget_in, a, children, finish);
            }
        }
        bound
    }

    pub fn closes(&self, k: u64) -> bool {
        self.bounds(k).iter().all(|&b| b <= k)
    }

    pub fn min_k(&self) -> Option<u64> {
        min_closing_k(|k| self.closes(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(parent: usize, child: usize, budget: u64) -> DeferArc {
        DeferArc { parent, child, budget }
    }

    #[test]
    fn bound_arithmetic() {
        // A 5_1 leaf under a 40 budget at k = 416: (4k-40)/4 + 40/5 + 2 = k.
        assert_eq!(node_bound(4 * 416, 40, 4, 0, 2), 416);
        // A 5_2 root supporting two 120-budget 6_3 children at k = 248.
        assert_eq!(node_bound(3 * 248, 0, 4, 30 + 30, 2), 248);
        assert_eq!(child_term(384, 3), 96);
    }

    #[test]
    fn empty_plan_on_one_vertex_matches_single_extension() {
        let p = DeferralPlan::single_stage(vec![4], vec![], vec![]);
        p.validate().unwrap();
        // ceil(4k/5) + 1
        assert_eq!(p.bounds(416), vec![334]);
    }

    #[test]
    fn generating_path_closes_at_416() {
        // z, x, y, w, v in pattern order.
        let degrees = vec![5, 6, 6, 6, 5];
        let edges = vec![(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)];
        let arcs = vec![arc(0, 1, 384), arc(1, 3, 120), arc(3, 4, 40), arc(0, 2, 24)];
        let p = DeferralPlan::single_stage(degrees, edges, arcs);
        p.validate().unwrap();
        let b = p.bounds(416);
        assert_eq!(b[4], 416);
        assert!(b[0] <= 416);
        assert_eq!(p.min_k(), Some(416));
    }

    #[test]
    fn bad_plans_rejected() {
        let p = DeferralPlan::single_stage(vec![5, 5], vec![], vec![arc(0, 1, 4)]);
        assert!(p.validate().is_err());
        let p = DeferralPlan::single_stage(vec![5, 5], vec![(0, 1)], vec![arc(0, 1, 4), arc(1, 0, 4)]);
        assert!(p.validate().is_err());
        let p = DeferralPlan::single_stage(vec![9], vec![], vec![]);
        assert!(p.validate().is_err());
    }
}
