//! List assignments, colorings, recoloring sequences and their validation.

use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Color, PlaneGraph, Vertex};

/// Per-vertex color lists, kept sorted and deduplicated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Color>>", into = "Vec<Vec<Color>>")]
pub struct ListAssignment {
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(mut lists: Vec<Vec<Color>>) -> Result<Self> {
        for (v, l) in lists.iter_mut().enumerate() {
            l.sort_unstable();
            l.dedup();
            if l.is_empty() {
                return Err(Error::EmptyList(v));
            }
        }
        Ok(ListAssignment { lists })
    }

    /// Every vertex gets the same list.
    pub fn uniform(n: usize, colors: &[Color]) -> Self {
        ListAssignment::new(vec![colors.to_vec(); n]).expect("non-empty list")
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn list(&self, v: Vertex) -> &[Color] {
        &self.lists[v]
    }

    pub fn size(&self, v: Vertex) -> usize {
        self.lists[v].len()
    }

    pub fn contains(&self, v: Vertex, c: Color) -> bool {
        self.lists[v].binary_search(&c).is_ok()
    }

    pub fn lists(&self) -> &[Vec<Color>] {
        &self.lists
    }
}

impl TryFrom<Vec<Vec<Color>>> for ListAssignment {
    type Error = Error;
    fn try_from(lists: Vec<Vec<Color>>) -> Result<Self> {
        ListAssignment::new(lists)
    }
}

impl From<ListAssignment> for Vec<Vec<Color>> {
    fn from(l: ListAssignment) -> Self {
        l.lists
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coloring(pub Vec<Color>);

impl Coloring {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// First vertex where the coloring leaves its list or clashes with a
    /// neighbor, if any.
    pub fn first_defect(&self, g: &PlaneGraph, l: &ListAssignment) -> Option<Vertex> {
        if self.len() != g.n() || l.len() != g.n() {
            return Some(0);
        }
        (0..g.n()).find(|&v| !l.contains(v, self.0[v]) || g.neighbors(v).iter().any(|&w| self.0[w] == self.0[v]))
    }

    pub fn is_proper(&self, g: &PlaneGraph, l: &ListAssignment) -> bool {
        self.first_defect(g, l).is_none()
    }

    pub fn check_proper(&self, g: &PlaneGraph, l: &ListAssignment) -> Result<()> {
        match self.first_defect(g, l) {
            None => Ok(()),
            Some(v) => Err(Error::BadColoring(v)),
        }
    }
}

impl Index<Vertex> for Coloring {
    type Output = Color;
    fn index(&self, v: Vertex) -> &Color {
        &self.0[v]
    }
}

impl IndexMut<Vertex> for Coloring {
    fn index_mut(&mut self, v: Vertex) -> &mut Color {
        &mut self.0[v]
    }
}

/// One recoloring step, serialized as `[vertex, color]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "(Vertex, Color)", into = "(Vertex, Color)")]
pub struct RecolorStep {
    pub vertex: Vertex,
    pub new_color: Color,
}

impl RecolorStep {
    pub fn new(vertex: Vertex, new_color: Color) -> Self {
        RecolorStep { vertex, new_color }
    }
}

impl From<(Vertex, Color)> for RecolorStep {
    fn from((vertex, new_color): (Vertex, Color)) -> Self {
        RecolorStep { vertex, new_color }
    }
}

impl From<RecolorStep> for (Vertex, Color) {
    fn from(s: RecolorStep) -> Self {
        (s.vertex, s.new_color)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecolorSequence {
    pub start: Coloring,
    pub steps: Vec<RecolorStep>,
}

impl RecolorSequence {
    pub fn empty(start: Coloring) -> Self {
        RecolorSequence { start, steps: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Final coloring; steps naming out-of-range vertices are ignored.
    pub fn apply(&self) -> Coloring {
        let mut c = self.start.clone();
        for s in &self.steps {
            if s.vertex < c.len() {
                c[s.vertex] = s.new_color;
            }
        }
        c
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.start.len()];
        for s in &self.steps {
            if s.vertex < counts.len() {
                counts[s.vertex] += 1;
            }
        }
        counts
    }

    pub fn max_count(&self) -> usize {
        self.counts().into_iter().max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Coloring sizes disagree with the graph.
    Shape {
        expected: usize,
        got: usize,
    },
    StartImproper {
        vertex: Vertex,
    },
    VertexOutOfRange {
        step: usize,
        vertex: Vertex,
    },
    Unchanged {
        step: usize,
        vertex: Vertex,
    },
    NotInList {
        step: usize,
        vertex: Vertex,
        color: Color,
    },
    Conflict {
        step: usize,
        vertex: Vertex,
        neighbor: Vertex,
    },
    TargetMismatch {
        vertex: Vertex,
    },
}

impl Violation {
    pub fn step(&self) -> Option<usize> {
        match *self {
            Violation::VertexOutOfRange { step, .. }
            | Violation::Unchanged { step, .. }
            | Violation::NotInList { step, .. }
            | Violation::Conflict { step, .. } => Some(step),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub counts: Vec<usize>,
    pub length: usize,
    pub valid: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    pub fn first_bad_step(&self) -> Option<usize> {
        self.violation.as_ref().and_then(Violation::step)
    }

    pub fn max_count(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }
}

/// Replays `seq` from its start, checking every intermediate coloring and
/// that the last one equals `target`.
pub fn validate_sequence(
    g: &PlaneGraph,
    l: &ListAssignment,
    seq: &RecolorSequence,
    target: &Coloring,
) -> ValidationReport {
    let n = g.n();
    let mut counts = vec![0; n];
    let fail = |counts: Vec<usize>, v: Violation| ValidationReport {
        counts,
        length: seq.steps.len(),
        valid: false,
        violation: Some(v),
    };
    for got in [seq.start.len(), target.len(), l.len()] {
        if got != n {
            return fail(counts, Violation::Shape { expected: n, got });
        }
    }
    if let Some(vertex) = seq.start.first_defect(g, l) {
        return fail(counts, Violation::StartImproper { vertex });
    }
    let mut cur = seq.start.clone();
    for (step, s) in seq.steps.iter().enumerate() {
        let v = s.vertex;
        if v >= n {
            return fail(counts, Violation::VertexOutOfRange { step, vertex: v });
        }
        if cur[v] == s.new_color {
            return fail(counts, Violation::Unchanged { step, vertex: v });
        }
        if !l.contains(v, s.new_color) {
            return fail(counts, Violation::NotInList { step, vertex: v, color: s.new_color });
        }
        if let Some(&w) = g.neighbors(v).iter().find(|&&w| cur[w] == s.new_color) {
            return fail(counts, Violation::Conflict { step, vertex: v, neighbor: w });
        }
        cur[v] = s.new_color;
        counts[v] += 1;
    }
    if let Some(vertex) = (0..n).find(|&v| cur[v] != target[v]) {
        return fail(counts, Violation::TargetMismatch { vertex });
    }
    ValidationReport { counts, length: seq.steps.len(), valid: true, violation: None }
}

/// True when no vertex is recolored more than `k` times.
pub fn is_k_good(report: &ValidationReport, k: usize) -> bool {
    report.max_count() <= k
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::path;

    fn seq(start: &[Color], steps: &[(Vertex, Color)]) -> RecolorSequence {
        RecolorSequence { start: Coloring(start.to_vec()), steps: steps.iter().map(|&s| s.into()).collect() }
    }

    #[test]
    fn single_vertex_step() {
        let g = path(1);
        let l = ListAssignment::uniform(1, &[1, 2]);
        let r = validate_sequence(&g, &l, &seq(&[1], &[(0, 2)]), &Coloring(vec![2]));
        assert!(r.valid);
        assert_eq!(r.counts, vec![1]);
    }

    #[test]
    fn edge_conflict_reported_at_step_zero() {
        let g = path(2);
        let l = ListAssignment::uniform(2, &[1, 2, 3]);
        let r = validate_sequence(&g, &l, &seq(&[1, 2], &[(0, 2)]), &Coloring(vec![2, 2]));
        assert!(!r.valid);
        assert_eq!(r.first_bad_step(), Some(0));
        assert!(matches!(r.violation, Some(Violation::Conflict { vertex: 0, neighbor: 1, .. })));
    }

    #[test]
    fn edge_swap_in_three_steps() {
        let g = path(2);
        let l = ListAssignment::uniform(2, &[1, 2, 3]);
        let s = seq(&[1, 2], &[(0, 3), (1, 1), (0, 2)]);
        let r = validate_sequence(&g, &l, &s, &Coloring(vec![2, 1]));
        assert!(r.valid);
        assert_eq!(r.counts, vec![2, 1]);
        assert!(is_k_good(&r, 2));
        assert!(!is_k_good(&r, 1));
    }

    #[test]
    fn k_good_thresholds() {
        let mk = |counts: Vec<usize>| ValidationReport { counts, length: 0, valid: true, violation: None };
        assert!(is_k_good(&mk(vec![2, 1]), 2));
        assert!(!is_k_good(&mk(vec![3, 1]), 2));
        assert!(is_k_good(&mk(vec![]), 0));
        assert!(is_k_good(&mk(vec![0, 0]), 0));
    }

    #[test]
    fn unchanged_and_off_list_steps_fail() {
        let g = path(2);
        let l = ListAssignment::uniform(2, &[1, 2, 3]);
        let r = validate_sequence(&g, &l, &seq(&[1, 2], &[(0, 1)]), &Coloring(vec![1, 2]));
        assert!(matches!(r.violation, Some(Violation::Unchanged { step: 0, .. })));
        let r = validate_sequence(&g, &l, &seq(&[1, 2], &[(0, 9)]), &Coloring(vec![9, 2]));
        assert!(matches!(r.violation, Some(Violation::NotInList { step: 0, .. })));
    }

    #[test]
    fn wrong_target_is_invalid() {
        let g = path(2);
        let l = ListAssignment::uniform(2, &[1, 2, 3]);
        let r = validate_sequence(&g, &l, &seq(&[1, 2], &[]), &Coloring(vec![2, 1]));
        assert_eq!(r.violation, Some(Violation::TargetMismatch { vertex: 0 }));
    }

    #[test]
    fn lists_are_normalized() {
        let l = ListAssignment::new(vec![vec![3, 1, 3]]).unwrap();
        assert_eq!(l.list(0), &[1, 3]);
        assert_eq!(ListAssignment::new(vec![vec![]]).unwrap_err(), Error::EmptyList(0));
    }
}
