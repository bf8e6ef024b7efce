//! Explicit reconfiguration graph for small instances: one node per proper
//! L-coloring, edges between colorings that differ on a single vertex.

use std::collections::{HashMap, VecDeque};

use crate::coloring::{Coloring, ListAssignment, RecolorSequence, RecolorStep};
use crate::error::{Error, Result};
use crate::graph::{Color, PlaneGraph, Vertex};

pub const DEFAULT_CAP: u64 = 20_000_000;

/// Largest instance accepted by [`bounded_count_sequence`].
pub const BOUNDED_MAX_VERTICES: usize = 4;
pub const BOUNDED_MAX_COUNT: usize = 3;

#[derive(Clone, Debug)]
pub struct ReconfigurationGraph {
    nodes: Vec<Coloring>,
    index: HashMap<Vec<Color>, usize>,
    adj: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diameter {
    Finite(usize),
    Infinite,
}

impl std::fmt::Display for Diameter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Diameter::Finite(d) => write!(f, "{d}"),
            Diameter::Infinite => f.write_str("infinite"),
        }
    }
}

/// Product of list sizes, saturating.
pub fn state_space_bound(l: &ListAssignment) -> u128 {
    (0..l.len()).fold(1u128, |acc, v| acc.saturating_mul(l.size(v) as u128))
}

impl ReconfigurationGraph {
    pub fn build(g: &PlaneGraph, l: &ListAssignment, cap: u64) -> Result<Self> {
        if l.len() != g.n() {
            return Err(Error::LengthMismatch { what: "lists", expected: g.n(), got: l.len() });
        }
        let product = state_space_bound(l);
        if product > cap as u128 {
            return Err(Error::CapExceeded { product, cap });
        }
        let n = g.n();
        let mut nodes = Vec::new();
        let mut cur = vec![0 as Color; n];
        enumerate(g, l, 0, &mut cur, &mut nodes);
        let index: HashMap<Vec<Color>, usize> = nodes.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
        let mut adj = vec![Vec::new(); nodes.len()];
        for (i, node) in nodes.iter().enumerate() {
            let mut key = node.clone();
            for v in 0..n {
                let old = key[v];
                for &c in l.list(v) {
                    if c == old || g.neighbors(v).iter().any(|&w| key[w] == c) {
                        continue;
                    }
                    key[v] = c;
                    adj[i].push(index[&key]);
                }
                key[v] = old;
            }
        }
        let nodes = nodes.into_iter().map(Coloring).collect();
        Ok(ReconfigurationGraph { nodes, index, adj })
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn node(&self, i: usize) -> &Coloring {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[Coloring] {
        &self.nodes
    }

    pub fn index_of(&self, c: &Coloring) -> Option<usize> {
        self.index.get(&c.0).copied()
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn is_edge(&self, a: &Coloring, b: &Coloring) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.adj[i].contains(&j),
            _ => false,
        }
    }

    /// True when the sequence starts at a node and every step follows an edge.
    pub fn contains_walk(&self, seq: &RecolorSequence) -> bool {
        let Some(mut i) = self.index_of(&seq.start) else {
            return false;
        };
        let mut cur = seq.start.clone();
        for s in &seq.steps {
            if s.vertex >= cur.len() {
                return false;
            }
            cur[s.vertex] = s.new_color;
            match self.index_of(&cur) {
                Some(j) if self.adj[i].contains(&j) => i = j,
                _ => return false,
            }
        }
        true
    }

    /// BFS distances from node `src`.
    pub fn distances_from(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.nodes.len()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(i) = queue.pop_front() {
            let d = dist[i].unwrap();
            for &j in &self.adj[i] {
                if dist[j].is_none() {
                    dist[j] = Some(d + 1);
                    queue.push_back(j);
                }
            }
        }
        dist
    }
}

fn enumerate(g: &PlaneGraph, l: &ListAssignment, v: Vertex, cur: &mut Vec<Color>, out: &mut Vec<Vec<Color>>) {
    if v == g.n() {
        out.push(cur.clone());
        return;
    }
    for &c in l.list(v) {
        if g.neighbors(v).iter().any(|&w| w < v && cur[w] == c) {
            continue;
        }
        cur[v] = c;
        enumerate(g, l, v + 1, cur, out);
    }
}

pub fn build_reconfiguration_graph(g: &PlaneGraph, l: &ListAssignment, cap: u64) -> Result<ReconfigurationGraph> {
    ReconfigurationGraph::build(g, l, cap)
}

/// A shortest recoloring sequence from `a` to `b`, or `None` when `b` is
/// unreachable.
pub fn bfs_shortest_sequence(rg: &ReconfigurationGraph, a: &Coloring, b: &Coloring) -> Result<Option<RecolorSequence>> {
    let src = rg.index_of(a).ok_or(Error::NotANode)?;
    let dst = rg.index_of(b).ok_or(Error::NotANode)?;
    let mut parent = vec![usize::MAX; rg.node_count()];
    parent[src] = src;
    let mut queue = VecDeque::from([src]);
    while let Some(i) = queue.pop_front() {
        if i == dst {
            break;
        }
        for &j in rg.neighbors(i) {
            if parent[j] == usize::MAX {
                parent[j] = i;
                queue.push_back(j);
            }
        }
    }
    if parent[dst] == usize::MAX {
        return Ok(None);
    }
    let mut path = vec![dst];
    while *path.last().unwrap() != src {
        path.push(parent[*path.last().unwrap()]);
    }
    path.reverse();
    let steps = path
        .windows(2)
        .map(|w| {
            let (x, y) = (rg.node(w[0]), rg.node(w[1]));
            let v = (0..x.len()).find(|&v| x[v] != y[v]).unwrap();
            RecolorStep::new(v, y[v])
        })
        .collect();
    Ok(Some(RecolorSequence { start: a.clone(), steps }))
}

/// Length of a shortest sequence, `None` when unreachable.
pub fn distance(rg: &ReconfigurationGraph, a: &Coloring, b: &Coloring) -> Result<Option<usize>> {
    let src = rg.index_of(a).ok_or(Error::NotANode)?;
    let dst = rg.index_of(b).ok_or(Error::NotANode)?;
    Ok(rg.distances_from(src)[dst])
}

pub fn diameter(rg: &ReconfigurationGraph) -> Diameter {
    let mut best = 0;
    for i in 0..rg.node_count() {
        for d in rg.distances_from(i) {
            match d {
                Some(d) => best = best.max(d),
                None => return Diameter::Infinite,
            }
        }
    }
    Diameter::Finite(best)
}

/// Shortest sequence from `a` to `b` recoloring each vertex at most
/// `max_count` times, by BFS over (coloring, count vector) states.
pub fn bounded_count_sequence(
    g: &PlaneGraph,
    l: &ListAssignment,
    a: &Coloring,
    b: &Coloring,
    max_count: usize,
) -> Result<Option<RecolorSequence>> {
    if g.n() > BOUNDED_MAX_VERTICES || max_count > BOUNDED_MAX_COUNT {
        return Err(Error::BoundedSearchTooLarge { max_vertices: BOUNDED_MAX_VERTICES, max_count: BOUNDED_MAX_COUNT });
    }
    a.check_proper(g, l).map_err(|_| Error::NotANode)?;
    b.check_proper(g, l).map_err(|_| Error::NotANode)?;
    type State = (Vec<Color>, Vec<u8>);
    let n = g.n();
    let start: State = (a.0.clone(), vec![0; n]);
    let mut parent: HashMap<State, Option<(State, RecolorStep)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        if state.0 == b.0 {
            let mut steps = Vec::new();
            let mut cur = state;
            while let Some(Some((prev, step))) = parent.get(&cur).cloned() {
                steps.push(step);
                cur = prev;
            }
            steps.reverse();
            return Ok(Some(RecolorSequence { start: a.clone(), steps }));
        }
        let (colors, counts) = &state;
        for v in 0..n {
            if counts[v] as usize >= max_count {
                continue;
            }
            for &c in l.list(v) {
                if c == colors[v] || g.neighbors(v).iter().any(|&w| colors[w] == c) {
                    continue;
                }
                let mut next = state.clone();
                next.0[v] = c;
                next.1[v] += 1;
                if !parent.contains_key(&next) {
                    parent.insert(next.clone(), Some((state.clone(), RecolorStep::new(v, c))));
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{path, triangle};

    fn build(g: &PlaneGraph, lists: &[Color]) -> ReconfigurationGraph {
        ReconfigurationGraph::build(g, &ListAssignment::uniform(g.n(), lists), DEFAULT_CAP).unwrap()
    }

    #[test]
    fn single_vertex_two_colors() {
        let rg = build(&path(1), &[1, 2]);
        assert_eq!((rg.node_count(), rg.edge_count()), (2, 1));
        assert_eq!(diameter(&rg), Diameter::Finite(1));
        let s = bfs_shortest_sequence(&rg, &Coloring(vec![1]), &Coloring(vec![2])).unwrap().unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn frozen_edge() {
        let rg = build(&path(2), &[1, 2]);
        assert_eq!((rg.node_count(), rg.edge_count()), (2, 0));
    }

    #[test]
    fn frozen_triangle() {
        let rg = build(&triangle(), &[1, 2, 3]);
        assert_eq!((rg.node_count(), rg.edge_count()), (6, 0));
        assert_eq!(diameter(&rg), Diameter::Infinite);
        let r = bfs_shortest_sequence(&rg, &Coloring(vec![1, 2, 3]), &Coloring(vec![2, 1, 3])).unwrap();
        assert!(r.is_none());
    }

    #[test]
    fn edge_swap_takes_three() {
        let rg = build(&path(2), &[1, 2, 3]);
        let s = bfs_shortest_sequence(&rg, &Coloring(vec![1, 2]), &Coloring(vec![2, 1])).unwrap().unwrap();
        assert_eq!(s.len(), 3);
        assert!(rg.contains_walk(&s));
    }

    #[test]
    fn edge_with_four_lists_has_small_diameter() {
        let rg = build(&path(2), &[1, 2, 3, 4]);
        match diameter(&rg) {
            Diameter::Finite(d) => assert!(d <= 4),
            Diameter::Infinite => panic!("edge with 4-lists is connected"),
        }
    }

    #[test]
    fn cap_guard() {
        let l = ListAssignment::uniform(3, &[1, 2, 3]);
        let err = ReconfigurationGraph::build(&path(3), &l, 26).unwrap_err();
        assert_eq!(err, Error::CapExceeded { product: 27, cap: 26 });
    }

    #[test]
    fn non_node_rejected() {
        let rg = build(&path(2), &[1, 2, 3]);
        let r = bfs_shortest_sequence(&rg, &Coloring(vec![1, 1]), &Coloring(vec![2, 1]));
        assert_eq!(r.unwrap_err(), Error::NotANode);
    }

    #[test]
    fn bounded_search_respects_counts() {
        let g = path(2);
        let l = ListAssignment::uniform(2, &[1, 2, 3]);
        let (a, b) = (Coloring(vec![1, 2]), Coloring(vec![2, 1]));
        let s = bounded_count_sequence(&g, &l, &a, &b, 2).unwrap().unwrap();
        assert_eq!(s.len(), 3);
        assert!(s.max_count() <= 2);
        assert!(bounded_count_sequence(&g, &l, &a, &b, 1).unwrap().is_none());
        assert!(bounded_count_sequence(&path(5), &ListAssignment::uniform(5, &[1, 2]), &a, &b, 1).is_err());
    }
}
