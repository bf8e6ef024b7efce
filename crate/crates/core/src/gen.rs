//! Seeded random instances: triangulations, trees, lists and colorings.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coloring::{Coloring, ListAssignment};
use crate::error::{Error, Result};
use crate::graph::{named, Color, PlaneGraph, Vertex};
use crate::io::GraphFile;

/// Flip attempts per vertex before giving up on the degree target.
const FLIPS_PER_VERTEX: usize = 4000;
const GREEDY_ATTEMPTS: usize = 64;
const RESTARTS: usize = 8;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn penalty(d: usize, min_degree: usize) -> i64 {
    let deficit = min_degree.saturating_sub(d) as i64;
    let dev = d as i64 - 6;
    1000 * deficit + dev * dev
}

/// Random plane triangulation on `n` vertices: random insertions into faces
/// of K4, then diagonal flips that lower the degree deficit below
/// `min_degree` (equal-cost flips are taken at random to escape plateaus).
pub fn gen_triangulation(n: usize, seed: u64, min_degree: usize) -> Result<PlaneGraph> {
    if n < 4 {
        return Err(Error::TooSmall { need: 4, got: n });
    }
    if min_degree > 5 {
        return Err(Error::GenBudget { target: min_degree, achieved: 0 });
    }
    if min_degree == 5 && n < 12 {
        return Err(Error::TooSmall { need: 12, got: n });
    }
    let mut r = rng(seed);
    let mut best = 0;
    for _ in 0..RESTARTS {
        match grow_and_flip(n, min_degree, &mut r) {
            Ok(g) => return PlaneGraph::new(g.rotations().to_vec()),
            Err(achieved) => best = best.max(achieved),
        }
    }
    Err(Error::GenBudget { target: min_degree, achieved: best })
}

/// One attempt; on failure returns the minimum degree reached.
fn grow_and_flip(n: usize, min_degree: usize, r: &mut impl Rng) -> std::result::Result<PlaneGraph, usize> {
    let mut g = named::k4();
    while g.n() < n {
        let a = r.gen_range(0..g.n());
        let b = *g.neighbors(a).choose(r).expect("triangulations have no isolated vertices");
        let c = g.succ(b, a);
        g.insert_in_face(a, b, c);
    }
    let deficit = |g: &PlaneGraph| (0..g.n()).map(|v| min_degree.saturating_sub(g.degree(v))).sum::<usize>();
    let mut left = deficit(&g);
    let mut budget = FLIPS_PER_VERTEX * n;
    while left > 0 && budget > 0 {
        budget -= 1;
        if r.gen_bool(0.5) && raise_deficient(&mut g, min_degree, r) {
            left = deficit(&g);
            continue;
        }
        let u = r.gen_range(0..n);
        let v = *g.neighbors(u).choose(r).expect("no isolated vertices");
        let (x, y) = (g.succ(v, u), g.succ(u, v));
        let pen = |d: usize| penalty(d, min_degree);
        let (du, dv, dx, dy) = (g.degree(u), g.degree(v), g.degree(x), g.degree(y));
        let delta = pen(du - 1) - pen(du) + pen(dv - 1) - pen(dv) + pen(dx + 1) - pen(dx) + pen(dy + 1) - pen(dy);
        if (delta < 0 || (delta == 0 && r.gen_bool(0.5))) && g.flip(u, v) {
            left = deficit(&g);
        }
    }
    if left > 0 {
        Err(g.min_degree())
    } else {
        Ok(g)
    }
}

/// Picks a vertex below the target and flips the far edge of one of its
/// faces towards it, if both ends of that edge can spare a degree.
fn raise_deficient(g: &mut PlaneGraph, min_degree: usize, r: &mut impl Rng) -> bool {
    let low: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) < min_degree).collect();
    let Some(&w) = low.choose(r) else { return false };
    let mut far: Vec<(Vertex, Vertex)> = g
        .rotation(w)
        .iter()
        .map(|&a| (a, g.succ(w, a)))
        .filter(|&(a, b)| g.degree(a) > min_degree && g.degree(b) > min_degree)
        .collect();
    far.shuffle(r);
    far.into_iter().any(|(a, b)| g.flip(a, b))
}

/// Parent array of a uniformly grown random tree (`parent[v] < v`).
pub fn random_parents(n: usize, r: &mut impl Rng) -> Vec<usize> {
    (0..n).map(|v| if v == 0 { 0 } else { r.gen_range(0..v) }).collect()
}

pub fn random_tree(n: usize, seed: u64) -> PlaneGraph {
    named::tree(&random_parents(n, &mut rng(seed)))
}

/// Lists of `size` colors drawn from `0..universe`.
pub fn random_lists(n: usize, size: usize, universe: usize, r: &mut impl Rng) -> ListAssignment {
    let all: Vec<Color> = (0..universe as Color).collect();
    let lists = (0..n).map(|_| all.choose_multiple(r, size).copied().collect()).collect();
    ListAssignment::new(lists).expect("size is positive")
}

fn greedy_in_order(g: &PlaneGraph, l: &ListAssignment, order: &[Vertex], r: &mut impl Rng) -> Option<Coloring> {
    let mut c: Vec<Option<Color>> = vec![None; g.n()];
    for &v in order {
        let free: Vec<Color> =
            l.list(v).iter().copied().filter(|&x| g.neighbors(v).iter().all(|&w| c[w] != Some(x))).collect();
        c[v] = Some(*free.choose(r)?);
    }
    Some(Coloring(c.into_iter().map(|x| x.expect("every vertex ordered")).collect()))
}

/// Smallest-last order: repeatedly strip a minimum-degree vertex, then reverse.
pub fn degeneracy_order(g: &PlaneGraph) -> Vec<Vertex> {
    let n = g.n();
    let mut deg = g.degrees();
    let mut gone = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n).filter(|&v| !gone[v]).min_by_key(|&v| (deg[v], v)).expect("vertex left");
        gone[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            deg[w] = deg[w].saturating_sub(1);
        }
    }
    order.reverse();
    order
}

/// Random proper L-coloring: greedy over random vertex orders, then over a
/// degeneracy order as a last resort.
pub fn random_coloring(g: &PlaneGraph, l: &ListAssignment, r: &mut impl Rng) -> Result<Coloring> {
    let mut order: Vec<Vertex> = (0..g.n()).collect();
    for _ in 0..GREEDY_ATTEMPTS {
        order.shuffle(r);
        if let Some(c) = greedy_in_order(g, l, &order, r) {
            return Ok(c);
        }
    }
    let order = degeneracy_order(g);
    for _ in 0..GREEDY_ATTEMPTS {
        if let Some(c) = greedy_in_order(g, l, &order, r) {
            return Ok(c);
        }
    }
    Err(Error::GreedyFailed { attempts: 2 * GREEDY_ATTEMPTS })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceBundle {
    pub graph: PlaneGraph,
    pub lists: ListAssignment,
    pub alpha: Coloring,
    pub beta: Coloring,
    pub seed: u64,
}

impl InstanceBundle {
    pub fn to_file(&self) -> GraphFile {
        GraphFile {
            alpha: Some(self.alpha.clone()),
            beta: Some(self.beta.clone()),
            lists: Some(self.lists.clone()),
            seed: Some(self.seed),
            ..GraphFile::from_graph(&self.graph)
        }
    }

    pub fn from_file(f: &GraphFile) -> Result<Self> {
        let graph = f.graph()?;
        let missing = |what: &str| Error::Parse(format!("instance file lacks `{what}`"));
        let bundle = InstanceBundle {
            lists: f.lists.clone().ok_or_else(|| missing("lists"))?,
            alpha: f.alpha.clone().ok_or_else(|| missing("alpha"))?,
            beta: f.beta.clone().ok_or_else(|| missing("beta"))?,
            seed: f.seed.unwrap_or(0),
            graph,
        };
        bundle.alpha.check_proper(&bundle.graph, &bundle.lists)?;
        bundle.beta.check_proper(&bundle.graph, &bundle.lists)?;
        Ok(bundle)
    }
}

/// Random lists of `list_size` colors from a universe twice that size, and
/// two random proper colorings.
pub fn gen_instance(g: &PlaneGraph, list_size: usize, seed: u64) -> Result<InstanceBundle> {
    if list_size == 0 {
        return Err(Error::EmptyList(0));
    }
    let mut r = rng(seed);
    let mut last = Error::GreedyFailed { attempts: 0 };
    for _ in 0..GREEDY_ATTEMPTS {
        let lists = random_lists(g.n(), list_size, 2 * list_size, &mut r);
        let pair = random_coloring(g, &lists, &mut r).and_then(|a| Ok((a, random_coloring(g, &lists, &mut r)?)));
        match pair {
            Ok((alpha, beta)) => return Ok(InstanceBundle { graph: g.clone(), lists, alpha, beta, seed }),
            Err(e) => last = e,
        }
    }
    Err(last)
}
