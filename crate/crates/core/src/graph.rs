//! Plane graphs stored as rotation systems.
//!
//! `rotation[v]` lists the neighbors of `v` in clockwise order. The face to
//! the left of dart `u -> v` continues with `v -> succ_v(u)`, where `succ_v`
//! is the clockwise successor in `rotation[v]`.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};

pub type Vertex = usize;
pub type Color = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaneGraph {
    rotation: Vec<Vec<Vertex>>,
}

impl PlaneGraph {
    /// Validates a rotation system: simple, symmetric, and every component
    /// with an edge satisfies Euler's formula for the sphere.
    pub fn new(rotation: Vec<Vec<Vertex>>) -> Result<Self> {
        let n = rotation.len();
        for (v, rot) in rotation.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &w in rot {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
                if w == v {
                    return Err(Error::Loop(v));
                }
                if !seen.insert(w) {
                    return Err(Error::MultiEdge { vertex: v, neighbor: w });
                }
            }
        }
        for (v, rot) in rotation.iter().enumerate() {
            for &w in rot {
                if !rotation[w].contains(&v) {
                    return Err(Error::Asymmetric { from: v, to: w });
                }
            }
        }
        let g = PlaneGraph { rotation };
        g.check_euler()?;
        Ok(g)
    }

    /// Builds the rotation system of a graph given by its oriented faces.
    /// Each face `[a, b, c, ...]` is a walk in the traversal direction.
    pub fn from_faces(n: usize, faces: &[Vec<Vertex>]) -> Result<Self> {
        let mut succ: Vec<Vec<(Vertex, Vertex)>> = vec![Vec::new(); n];
        for face in faces {
            let len = face.len();
            for i in 0..len {
                let (a, b, c) = (face[i], face[(i + 1) % len], face[(i + 2) % len]);
                for x in [a, b, c] {
                    if x >= n {
                        return Err(Error::VertexOutOfRange { vertex: x, n });
                    }
                }
                succ[b].push((a, c));
            }
        }
        let mut rotation = Vec::with_capacity(n);
        for (v, pairs) in succ.iter().enumerate() {
            if pairs.is_empty() {
                rotation.push(Vec::new());
                continue;
            }
            let start = pairs.iter().map(|p| p.0).min().unwrap();
            let mut rot = vec![start];
            let mut cur = start;
            loop {
                let next =
                    pairs.iter().find(|p| p.0 == cur).map(|p| p.1).ok_or(Error::Asymmetric { from: v, to: cur })?;
                if next == start {
                    break;
                }
                if rot.len() > pairs.len() {
                    return Err(Error::MultiEdge { vertex: v, neighbor: next });
                }
                rot.push(next);
                cur = next;
            }
            if rot.len() != pairs.len() {
                return Err(Error::NotPlane { dart: (v, start), euler: 0 });
            }
            rotation.push(rot);
        }
        PlaneGraph::new(rotation)
    }

    pub fn empty(n: usize) -> Self {
        PlaneGraph { rotation: vec![Vec::new(); n] }
    }

    pub fn n(&self) -> usize {
        self.rotation.len()
    }

    pub fn rotation(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<Vertex>] {
        &self.rotation
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.rotation[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.rotation[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.rotation.iter().map(Vec::len).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.rotation.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        let (a, b) = if self.degree(u) <= self.degree(v) { (u, v) } else { (v, u) };
        self.rotation[a].contains(&b)
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out: Vec<_> = self
            .rotation
            .iter()
            .enumerate()
            .flat_map(|(u, rot)| rot.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
            .collect();
        out.sort_unstable();
        out
    }

    fn position(&self, v: Vertex, u: Vertex) -> usize {
        self.rotation[v].iter().position(|&x| x == u).expect("dart endpoints must be adjacent")
    }

    /// Clockwise successor of `u` in the rotation at `v`.
    pub fn succ(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = &self.rotation[v];
        rot[(self.position(v, u) + 1) % rot.len()]
    }

    /// Clockwise predecessor of `u` in the rotation at `v`.
    pub fn pred(&self, v: Vertex, u: Vertex) -> Vertex {
        let rot = &self.rotation[v];
        rot[(self.position(v, u) + rot.len() - 1) % rot.len()]
    }

    /// Face walks as vertex sequences; every dart is used exactly once.
    pub fn faces(&self) -> Vec<Vec<Vertex>> {
        let mut used: Vec<Vec<bool>> = self.rotation.iter().map(|r| vec![false; r.len()]).collect();
        let mut faces = Vec::new();
        for u in 0..self.n() {
            for i in 0..self.rotation[u].len() {
                if used[u][i] {
                    continue;
                }
                let mut walk = Vec::new();
                let (mut a, mut ia) = (u, i);
                while !used[a][ia] {
                    used[a][ia] = true;
                    walk.push(a);
                    let b = self.rotation[a][ia];
                    let pb = self.position(b, a);
                    let ib = (pb + 1) % self.rotation[b].len();
                    a = b;
                    ia = ib;
                }
                faces.push(walk);
            }
        }
        faces
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        let mut comp = vec![usize::MAX; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.rotation[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    fn check_euler(&self) -> Result<()> {
        let comps = self.components();
        let mut comp_of = vec![0usize; self.n()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v] = i;
            }
        }
        let mut face_count = vec![0i64; comps.len()];
        for f in self.faces() {
            face_count[comp_of[f[0]]] += 1;
        }
        for (i, c) in comps.iter().enumerate() {
            let edges: usize = c.iter().map(|&v| self.degree(v)).sum::<usize>() / 2;
            if edges == 0 {
                continue;
            }
            let euler = c.len() as i64 - edges as i64 + face_count[i];
            if euler != 2 {
                let v = c[0];
                return Err(Error::NotPlane { dart: (v, self.rotation[v][0]), euler });
            }
        }
        Ok(())
    }

    /// True when connected, `n >= 3`, and every face is a triangle.
    pub fn is_triangulation(&self) -> bool {
        self.n() >= 3 && self.is_connected() && self.faces().iter().all(|f| f.len() == 3)
    }

    pub fn min_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.rotation.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Inserts `w` right after `anchor` in the rotation at `u`.
    /// With no anchor (isolated `u`) the rotation becomes `[w]`.
    pub(crate) fn insert_after(&mut self, u: Vertex, anchor: Option<Vertex>, w: Vertex) {
        match anchor {
            Some(a) => {
                let p = self.position(u, a);
                self.rotation[u].insert(p + 1, w);
            }
            None => self.rotation[u].push(w),
        }
    }

    pub(crate) fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        self.rotation[u].retain(|&x| x != v);
        self.rotation[v].retain(|&x| x != u);
    }

    /// Same vertex set, with every edge touching `removed` deleted.
    pub fn without(&self, removed: &[Vertex]) -> PlaneGraph {
        let mut mask = vec![false; self.n()];
        for &v in removed {
            mask[v] = true;
        }
        let rotation = self
            .rotation
            .iter()
            .enumerate()
            .map(|(v, rot)| if mask[v] { Vec::new() } else { rot.iter().copied().filter(|&w| !mask[w]).collect() })
            .collect();
        PlaneGraph { rotation }
    }

    /// Induced plane subgraph on `vertices`, relabelled `0..k` in the given
    /// order. Returns the subgraph and the local-to-global map.
    pub fn induced(&self, vertices: &[Vertex]) -> (PlaneGraph, Vec<Vertex>) {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let rotation = vertices
            .iter()
            .map(|&v| self.rotation[v].iter().filter(|&&w| local[w] != usize::MAX).map(|&w| local[w]).collect())
            .collect();
        (PlaneGraph { rotation }, vertices.to_vec())
    }

    /// Replaces the edge `uv` by the other diagonal of its two incident
    /// triangles. Returns false (and leaves the graph untouched) when the
    /// flip would create a parallel edge or drop a degree below 3.
    pub fn flip(&mut self, u: Vertex, v: Vertex) -> bool {
        if !self.has_edge(u, v) || self.degree(u) <= 3 || self.degree(v) <= 3 {
            return false;
        }
        let x = self.succ(v, u);
        let y = self.succ(u, v);
        if x == y || x == u || y == v || self.has_edge(x, y) {
            return false;
        }
        // Both incident faces must be triangles.
        if self.succ(x, v) != u || self.succ(y, u) != v {
            return false;
        }
        self.remove_edge(u, v);
        self.insert_after(x, Some(v), y);
        self.insert_after(y, Some(u), x);
        true
    }

    /// Inserts a new vertex inside the triangular face `a -> b -> c`.
    pub(crate) fn insert_in_face(&mut self, a: Vertex, b: Vertex, c: Vertex) -> Vertex {
        let x = self.n();
        self.rotation.push(vec![b, a, c]);
        self.insert_after(b, Some(a), x);
        self.insert_after(c, Some(b), x);
        self.insert_after(a, Some(c), x);
        x
    }
}

/// Adds chords until every face is a triangle.
///
/// Each long face gets a fan from its highest-degree corner (ties to the
/// lowest id); when the fan chord would duplicate an edge the apex moves on.
pub fn triangulate(g: &PlaneGraph) -> Result<PlaneGraph> {
    if g.n() < 3 {
        return Err(Error::TooSmall { need: 3, got: g.n() });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut t = g.clone();
    loop {
        let faces = t.faces();
        let Some(walk) = faces.into_iter().find(|f| f.len() > 3) else {
            break;
        };
        let len = walk.len();
        let mut apexes: Vec<usize> = (0..len).collect();
        apexes.sort_by_key(|&j| (std::cmp::Reverse(t.degree(walk[j])), walk[j], j));
        let ok = |t: &PlaneGraph, i: usize, j: usize| walk[i] != walk[j] && !t.has_edge(walk[i], walk[j]);
        let mut chord = None;
        'apex: for &i in &apexes {
            for off in [2, len - 2] {
                let j = (i + off) % len;
                if ok(&t, i, j) {
                    chord = Some((i, j));
                    break 'apex;
                }
            }
        }
        if chord.is_none() {
            chord = (0..len).flat_map(|i| (0..len).map(move |j| (i, j))).find(|&(i, j)| ok(&t, i, j));
        }
        let Some((i, j)) = chord else {
            return Err(Error::Untriangulable { walk });
        };
        let (u, pu) = (walk[i], walk[(i + len - 1) % len]);
        let (w, pw) = (walk[j], walk[(j + len - 1) % len]);
        t.insert_after(u, Some(pu), w);
        t.insert_after(w, Some(pw), u);
    }
    PlaneGraph::new(t.rotation)
}

/// Small named plane graphs.
pub mod named {
    use super::PlaneGraph;

    pub fn triangle() -> PlaneGraph {
        PlaneGraph::new(vec![vec![1, 2], vec![2, 0], vec![0, 1]]).unwrap()
    }

    pub fn k4() -> PlaneGraph {
        let faces = [vec![0, 1, 2], vec![0, 3, 1], vec![0, 2, 3], vec![1, 3, 2]];
        PlaneGraph::from_faces(4, &faces).unwrap()
    }

    pub fn octahedron() -> PlaneGraph {
        let mut faces = Vec::new();
        for i in 0..4 {
            let (a, b) = (1 + i, 1 + (i + 1) % 4);
            faces.push(vec![0, a, b]);
            faces.push(vec![5, b, a]);
        }
        PlaneGraph::from_faces(6, &faces).unwrap()
    }

    pub fn icosahedron() -> PlaneGraph {
        let up = |i: usize| 1 + i % 5;
        let lo = |i: usize| 6 + i % 5;
        let mut faces = Vec::new();
        for i in 0..5 {
            faces.push(vec![0, up(i), up(i + 1)]);
            faces.push(vec![up(i + 1), up(i), lo(i)]);
            faces.push(vec![up(i + 1), lo(i), lo(i + 1)]);
            faces.push(vec![11, lo(i + 1), lo(i)]);
        }
        PlaneGraph::from_faces(12, &faces).unwrap()
    }

    pub fn path(n: usize) -> PlaneGraph {
        let rotation = (0..n)
            .map(|v| {
                let mut r = Vec::new();
                if v > 0 {
                    r.push(v - 1);
                }
                if v + 1 < n {
                    r.push(v + 1);
                }
                r
            })
            .collect();
        PlaneGraph::new(rotation).unwrap()
    }

    pub fn cycle(n: usize) -> PlaneGraph {
        assert!(n >= 3);
        let rotation = (0..n).map(|v| vec![(v + n - 1) % n, (v + 1) % n]).collect();
        PlaneGraph::new(rotation).unwrap()
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> PlaneGraph {
        let mut rotation = vec![(1..=leaves).collect::<Vec<_>>()];
        rotation.extend((0..leaves).map(|_| vec![0]));
        PlaneGraph::new(rotation).unwrap()
    }

    /// Tree from a parent array (`parent[0]` ignored, `parent[v] < v`).
    pub fn tree(parent: &[usize]) -> PlaneGraph {
        let n = parent.len();
        let mut rotation = vec![Vec::new(); n];
        for v in 1..n {
            rotation[v].push(parent[v]);
            rotation[parent[v]].push(v);
        }
        PlaneGraph::new(rotation).unwrap()
    }
}
