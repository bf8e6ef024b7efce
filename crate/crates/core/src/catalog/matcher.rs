//! Injective, non-induced, degree-constrained embedding of catalog patterns.

use serde::{Deserialize, Serialize};

use crate::catalog::ConfigurationPattern;
use crate::graph::{PlaneGraph, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchEmbedding {
    pub id: String,
    /// Host vertex of each pattern vertex.
    pub image: Vec<Vertex>,
}

/// Search order: the tightest vertex first, then repeatedly the vertex with
/// the most already-placed neighbors. Each later vertex records one placed
/// neighbor whose host neighborhood supplies its candidates.
fn search_order(p: &ConfigurationPattern) -> Vec<(usize, Option<usize>)> {
    let n = p.len();
    let adj = p.adjacency();
    let key = |v: usize| (p.deg[v].tightness(), adj[v].len(), std::cmp::Reverse(v));
    let mut placed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (adj[v].iter().filter(|&&w| placed[w]).count(), key(v)))
            .expect("unplaced vertex remains");
        let anchor = adj[next].iter().copied().filter(|&w| placed[w]).min();
        placed[next] = true;
        order.push((next, anchor));
    }
    order
}

struct Search<'a, F> {
    g: &'a PlaneGraph,
    p: &'a ConfigurationPattern,
    adj: Vec<Vec<usize>>,
    order: Vec<(usize, Option<usize>)>,
    roots: Vec<Vertex>,
    image: Vec<Option<Vertex>>,
    used: Vec<bool>,
    visit: F,
}

impl<F: FnMut(&[Vertex]) -> bool> Search<'_, F> {
    fn fits(&self, pv: usize, hv: Vertex) -> bool {
        !self.used[hv]
            && self.p.deg[pv].admits(self.g.degree(hv))
            && self.adj[pv].iter().all(|&pw| self.image[pw].is_none_or(|hw| self.g.has_edge(hv, hw)))
    }

    /// Returns true once `visit` asks to stop.
    fn step(&mut self, i: usize) -> bool {
        if i == self.order.len() {
            let image: Vec<Vertex> = self.image.iter().map(|x| x.expect("complete")).collect();
            return (self.visit)(&image);
        }
        let (pv, anchor) = self.order[i];
        let cands: Vec<Vertex> = match anchor {
            Some(pa) => self.g.neighbors(self.image[pa].expect("anchor placed")).to_vec(),
            None => self.roots.clone(),
        };
        for hv in cands {
            if !self.fits(pv, hv) {
                continue;
            }
            self.image[pv] = Some(hv);
            self.used[hv] = true;
            let stop = self.step(i + 1);
            self.used[hv] = false;
            self.image[pv] = None;
            if stop {
                return true;
            }
        }
        false
    }
}

/// Runs `visit` on every embedding of `p` in `g` until it returns true.
/// Returns whether it stopped.
fn search(g: &PlaneGraph, p: &ConfigurationPattern, visit: impl FnMut(&[Vertex]) -> bool) -> bool {
    if p.is_empty() || p.len() > g.n() {
        return false;
    }
    let mut roots: Vec<Vertex> = (0..g.n()).collect();
    roots.sort_by_key(|&v| (g.degree(v), v));
    let mut s = Search {
        g,
        p,
        adj: p.adjacency(),
        order: search_order(p),
        roots,
        image: vec![None; p.len()],
        used: vec![false; g.n()],
        visit,
    };
    s.step(0)
}

/// Every embedding of one pattern, in search order.
pub fn all_embeddings(g: &PlaneGraph, p: &ConfigurationPattern) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    search(g, p, |img| {
        out.push(img.to_vec());
        false
    });
    out
}

/// First embedding, in catalog order, that `accept` agrees to.
pub fn match_first_with(
    g: &PlaneGraph,
    catalog: &[ConfigurationPattern],
    mut accept: impl FnMut(&ConfigurationPattern, &[Vertex]) -> bool,
) -> Option<MatchEmbedding> {
    for p in catalog {
        let mut found = None;
        search(g, p, |img| {
            if accept(p, img) {
                found = Some(img.to_vec());
                true
            } else {
                false
            }
        });
        if let Some(image) = found {
            return Some(MatchEmbedding { id: p.id.clone(), image });
        }
    }
    None
}

/// First embedding of the first catalog entry that embeds.
pub fn match_configuration(g: &PlaneGraph, catalog: &[ConfigurationPattern]) -> Option<MatchEmbedding> {
    match_first_with(g, catalog, |_, _| true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin_catalog;
    use crate::graph::named::{icosahedron, k4};

    #[test]
    fn icosahedron_matches_three_fives() {
        let g = icosahedron();
        let m = match_configuration(&g, builtin_catalog()).unwrap();
        assert_eq!(m.id, "RC-53a");
        let p = crate::catalog::find_entry("RC-53a").unwrap();
        for &(a, b) in &p.edges {
            assert!(g.has_edge(m.image[a], m.image[b]));
        }
    }

    #[test]
    fn k4_matches_nothing() {
        assert!(match_configuration(&k4(), builtin_catalog()).is_none());
    }

    #[test]
    fn accept_callback_can_skip() {
        let g = icosahedron();
        let mut seen = 0;
        let m = match_first_with(&g, builtin_catalog(), |p, _| {
            if p.id == "RC-53a" {
                seen += 1;
                seen > 3
            } else {
                false
            }
        })
        .unwrap();
        assert_eq!(m.id, "RC-53a");
        assert_eq!(seen, 4);
    }
}
