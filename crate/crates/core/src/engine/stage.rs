//! One simultaneous extension of a recoloring sequence to a vertex set.
//!
//! Every extended vertex watches the ordered stream of colors its outside
//! neighbors take. It is recolored just before an outside neighbor takes
//! its current color, and then avoids its neighbors' colors plus the next
//! few stream colors. A vertex with a deferring parent may ignore the
//! parent's color while inside its budget; if it wants that color the parent
//! moves first. Finishing recolors bring the set onto its targets.

use crate::coloring::{Coloring, ListAssignment, RecolorSequence, RecolorStep};
use crate::engine::DeferralEvent;
use crate::error::{Error, Result};
use crate::graph::{Color, PlaneGraph, Vertex};

pub(crate) struct Stage<'a> {
    pub host: &'a PlaneGraph,
    pub lists: &'a ListAssignment,
    pub vertices: &'a [Vertex],
    /// `(parent, child, budget)` in host ids.
    pub arcs: &'a [(Vertex, Vertex, u64)],
}

struct Runner<'a> {
    host: &'a PlaneGraph,
    lists: &'a ListAssignment,
    in_set: Vec<bool>,
    lookahead: Vec<usize>,
    parent: Vec<Option<(Vertex, u64)>>,
    stream: Vec<Vec<Color>>,
    ptr: Vec<usize>,
    cur: Coloring,
    out: Vec<RecolorStep>,
    log: Vec<DeferralEvent>,
}

impl Runner<'_> {
    fn push(&mut self, v: Vertex, c: Color) {
        debug_assert_ne!(self.cur[v], c);
        self.cur[v] = c;
        self.out.push(RecolorStep::new(v, c));
    }

    fn neighbor_colors(&self, v: Vertex, skip: Option<Vertex>) -> Vec<Color> {
        self.host.neighbors(v).iter().filter(|&&w| Some(w) != skip).map(|&w| self.cur[w]).collect()
    }

    fn window(&self, v: Vertex, from: usize, width: usize) -> &[Color] {
        let s = &self.stream[v];
        let lo = from.min(s.len());
        &s[lo..(from + width).min(s.len())]
    }

    fn candidates(&self, v: Vertex, banned: &[Color], window: &[Color]) -> Vec<Color> {
        self.lists
            .list(v)
            .iter()
            .copied()
            .filter(|c| *c != self.cur[v] && !banned.contains(c) && !window.contains(c))
            .collect()
    }

    /// `v` holds the color an outside neighbor is about to take.
    fn triggered(&mut self, v: Vertex, trigger: Color) -> Result<()> {
        let i = self.ptr[v];
        let deferring = match self.parent[v] {
            Some((p, budget)) if (i as u64) < budget => Some(p),
            _ => None,
        };
        let banned = self.neighbor_colors(v, deferring);
        let full = self.lookahead[v] + usize::from(deferring.is_some());
        for width in (1..=full).rev() {
            let cands = self.candidates(v, &banned, self.window(v, i, width));
            if cands.is_empty() {
                continue;
            }
            let choice = match deferring {
                Some(p) => {
                    let pc = self.cur[p];
                    match cands.iter().find(|&&c| c != pc) {
                        Some(&c) => c,
                        None => {
                            self.forced(p)?;
                            self.log.push(DeferralEvent { trigger_color: trigger, deferring: p, deferred_to: v });
                            pc
                        }
                    }
                }
                None => cands[0],
            };
            self.push(v, choice);
            return Ok(());
        }
        Err(Error::NoColor(v))
    }

    /// A child wants the color on `p`: move `p` off it, avoiding all
    /// neighbors and the next upcoming stream colors. Never cascades.
    fn forced(&mut self, p: Vertex) -> Result<()> {
        let j = self.ptr[p];
        let banned = self.neighbor_colors(p, None);
        for width in (0..self.lookahead[p]).rev() {
            let cands = self.candidates(p, &banned, self.window(p, j, width));
            if let Some(&c) = cands.first() {
                self.push(p, c);
                return Ok(());
            }
        }
        Err(Error::NoColor(p))
    }
}

/// Greedy elimination order for the finishing step: repeatedly take the
/// lowest-id vertex whose degree plus remaining set-neighbors stays below
/// its list size. `degree` gives the host degree of a set vertex.
pub(crate) fn finishing_order_with(
    vertices: &[Vertex],
    degree: impl Fn(Vertex) -> usize,
    adjacent: impl Fn(Vertex, Vertex) -> bool,
    list_size: impl Fn(Vertex) -> usize,
) -> Option<Vec<Vertex>> {
    let mut remaining: Vec<Vertex> = vertices.to_vec();
    remaining.sort_unstable();
    let mut order = Vec::with_capacity(remaining.len());
    while !remaining.is_empty() {
        let pos = remaining.iter().position(|&v| {
            let later = remaining.iter().filter(|&&w| w != v && adjacent(v, w)).count();
            degree(v) + later < list_size(v)
        })?;
        order.push(remaining.remove(pos));
    }
    Some(order)
}

pub(crate) fn finishing_order(host: &PlaneGraph, lists: &ListAssignment, vertices: &[Vertex]) -> Option<Vec<Vertex>> {
    finishing_order_with(vertices, |v| host.degree(v), |u, v| host.has_edge(u, v), |v| lists.size(v))
}

/// Recolors `order` onto `target`: temporary colors in order, avoiding the
/// targets of later neighbors, then targets in reverse order.
pub(crate) fn finish_steps(
    host: &PlaneGraph,
    lists: &ListAssignment,
    order: &[Vertex],
    cur: &mut Coloring,
    target: &Coloring,
) -> Result<Vec<RecolorStep>> {
    let mut pos = vec![usize::MAX; host.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut steps = Vec::new();
    for (i, &v) in order.iter().enumerate() {
        let later: Vec<Color> =
            host.neighbors(v).iter().filter(|&&w| pos[w] != usize::MAX && pos[w] > i).map(|&w| target[w]).collect();
        if !later.contains(&cur[v]) {
            continue;
        }
        let c = lists
            .list(v)
            .iter()
            .copied()
            .find(|c| !later.contains(c) && host.neighbors(v).iter().all(|&w| cur[w] != *c))
            .ok_or(Error::NoColor(v))?;
        cur[v] = c;
        steps.push(RecolorStep::new(v, c));
    }
    for &v in order.iter().rev() {
        let t = target[v];
        if cur[v] == t {
            continue;
        }
        if !lists.contains(v, t) || host.neighbors(v).iter().any(|&w| cur[w] == t) {
            return Err(Error::BadTarget { vertex: v, color: t });
        }
        cur[v] = t;
        steps.push(RecolorStep::new(v, t));
    }
    Ok(steps)
}

/// Extends `inner` (which never touches the stage vertices) to the stage
/// vertices and finishes them on `target`.
pub(crate) fn run_stage(
    stage: &Stage<'_>,
    inner: &RecolorSequence,
    target: &Coloring,
) -> Result<(RecolorSequence, Vec<DeferralEvent>)> {
    let host = stage.host;
    let n = host.n();
    for (what, len) in [("start coloring", inner.start.len()), ("target", target.len()), ("lists", stage.lists.len())] {
        if len != n {
            return Err(Error::LengthMismatch { what, expected: n, got: len });
        }
    }
    let mut in_set = vec![false; n];
    let mut lookahead = vec![0; n];
    for &v in stage.vertices {
        if v >= n {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        in_set[v] = true;
        let need = host.degree(v) + 2;
        let size = stage.lists.size(v);
        if size < need {
            return Err(Error::ListTooSmall { vertex: v, size, need });
        }
        lookahead[v] = size - host.degree(v) - 1;
        let c = inner.start[v];
        if !stage.lists.contains(v, c) || host.neighbors(v).iter().any(|&w| inner.start[w] == c) {
            return Err(Error::BadColoring(v));
        }
    }
    let mut parent = vec![None; n];
    for &(p, c, budget) in stage.arcs {
        if !in_set[p] || !in_set[c] {
            return Err(Error::Plan(format!("arc {p}->{c} leaves the extended set")));
        }
        // Deferral only matters between adjacent vertices.
        if host.has_edge(p, c) {
            parent[c] = Some((p, budget));
        }
    }
    let mut stream = vec![Vec::new(); n];
    for s in &inner.steps {
        if s.vertex >= n {
            return Err(Error::VertexOutOfRange { vertex: s.vertex, n });
        }
        if in_set[s.vertex] {
            return Err(Error::Plan(format!("inner sequence recolors extended vertex {}", s.vertex)));
        }
        for &w in host.neighbors(s.vertex) {
            if in_set[w] {
                stream[w].push(s.new_color);
            }
        }
    }
    let mut r = Runner {
        host,
        lists: stage.lists,
        in_set,
        lookahead,
        parent,
        stream,
        ptr: vec![0; n],
        cur: inner.start.clone(),
        out: Vec::with_capacity(inner.steps.len() + 4 * stage.vertices.len()),
        log: Vec::new(),
    };
    let guard_limit = 4 * stage.vertices.len() + 8;
    for s in &inner.steps {
        let (x, c) = (s.vertex, s.new_color);
        let mut guard = 0;
        loop {
            let threatened = host.neighbors(x).iter().copied().filter(|&w| r.in_set[w] && r.cur[w] == c).min();
            let Some(v) = threatened else { break };
            r.triggered(v, c)?;
            guard += 1;
            if guard > guard_limit {
                return Err(Error::NoColor(v));
            }
        }
        r.cur[x] = c;
        r.out.push(*s);
        for &w in host.neighbors(x) {
            if r.in_set[w] {
                r.ptr[w] += 1;
            }
        }
    }
    let order = finishing_order(host, stage.lists, stage.vertices).ok_or_else(|| {
        let v = stage.vertices.iter().copied().min().unwrap_or(0);
        Error::FinishPrecondition { vertex: v, degree: host.degree(v), later: 0, limit: stage.lists.size(v) - 1 }
    })?;
    let finish = finish_steps(host, stage.lists, &order, &mut r.cur, target)?;
    r.out.extend(finish);
    let seq = RecolorSequence { start: inner.start.clone(), steps: r.out };
    Ok((seq, r.log))
}
