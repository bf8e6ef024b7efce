//! Out-tree certificates: the degree-slack criterion, budget arithmetic and
//! budget-preserving prunings.

use serde::{Deserialize, Serialize};

use crate::engine::plan::{child_term, min_closing_k, node_bound, DeferArc, PLAN_LIST_SIZE};
use crate::error::{Error, Result};

/// Longest root-to-leaf path allowed in a certificate tree.
pub const MAX_RADIUS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarClass {
    Fails,
    Holds,
    Strict,
}

/// Compares the configuration degree `d_h` against `2 d_g - 9`. A strict
/// inequality marks a well.
pub fn check_star_inequality(d_g: usize, d_h: usize) -> Result<StarClass> {
    if d_h > d_g {
        return Err(Error::BadCertificate(format!("d_H = {d_h} exceeds d_G = {d_g}")));
    }
    let need = 2 * d_g as i64 - 9;
    Ok(match (d_h as i64).cmp(&need) {
        std::cmp::Ordering::Less => StarClass::Fails,
        std::cmp::Ordering::Equal => StarClass::Holds,
        std::cmp::Ordering::Greater => StarClass::Strict,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertNode {
    pub d_g: usize,
    pub d_h: usize,
}

/// A forest of out-trees over certificate nodes. Every node without an
/// incoming arc is a root.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutTreeCertificate {
    pub nodes: Vec<CertNode>,
    pub arcs: Vec<DeferArc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub k: u64,
    /// Recolor-count expression of each node at `k`.
    pub bounds: Vec<u64>,
    pub min_k: Option<u64>,
}

impl OutTreeCertificate {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<&DeferArc> {
        self.arcs.iter().find(|a| a.child == v)
    }

    pub fn children(&self, v: usize) -> impl Iterator<Item = &DeferArc> {
        self.arcs.iter().filter(move |a| a.parent == v)
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.len()).filter(|&v| self.parent(v).is_none()).collect()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children(v).next().is_none()
    }

    fn lookahead(&self, v: usize) -> u64 {
        (PLAN_LIST_SIZE - self.nodes[v].d_g - 1) as u64
    }

    fn depth(&self, v: usize) -> usize {
        let mut d = 0;
        let mut cur = v;
        while let Some(a) = self.parent(cur) {
            cur = a.parent;
            d += 1;
            if d > self.len() {
                break;
            }
        }
        d
    }

    pub fn check_well_formed(&self) -> Result<()> {
        let n = self.len();
        let bad = |m: String| Err(Error::BadCertificate(m));
        if n == 0 {
            return bad("no nodes".into());
        }
        for (v, node) in self.nodes.iter().enumerate() {
            if node.d_g + 1 >= PLAN_LIST_SIZE {
                return bad(format!("node {v} has no lookahead at degree {}", node.d_g));
            }
            if check_star_inequality(node.d_g, node.d_h)? == StarClass::Fails {
                return bad(format!("node {v} ({}, {}) fails the slack criterion", node.d_g, node.d_h));
            }
        }
        for a in &self.arcs {
            if a.parent >= n || a.child >= n || a.parent == a.child {
                return bad(format!("arc {}->{} out of range", a.parent, a.child));
            }
        }
        for v in 0..n {
            if self.arcs.iter().filter(|a| a.child == v).count() > 1 {
                return bad(format!("node {v} has two parents"));
            }
            let d = self.depth(v);
            if d > n {
                return bad("arcs contain a cycle".into());
            }
            if d > MAX_RADIUS {
                return bad(format!("node {v} lies at depth {d}"));
            }
        }
        for r in self.roots() {
            let node = self.nodes[r];
            if check_star_inequality(node.d_g, node.d_h)? != StarClass::Strict {
                return bad(format!("root {r} ({}, {}) is not a well", node.d_g, node.d_h));
            }
        }
        Ok(())
    }

    /// Recolor-count expression of every node at `k`.
    pub fn bounds(&self, k: u64) -> Vec<u64> {
        (0..self.len())
            .map(|v| {
                let node = self.nodes[v];
                let stream = (node.d_g - node.d_h) as u64 * k;
                let budget_in = self.parent(v).map_or(0, |a| a.budget);
                let children = self.children(v).map(|a| child_term(a.budget, self.lookahead(a.child))).sum();
                node_bound(stream, budget_in, self.lookahead(v), children, 2)
            })
            .collect()
    }

    pub fn closes(&self, k: u64) -> bool {
        self.bounds(k).iter().all(|&b| b <= k)
    }

    pub fn min_k(&self) -> Option<u64> {
        min_closing_k(|k| self.closes(k))
    }

    /// Drops node `v` and renumbers the rest.
    fn remove_node(&mut self, v: usize) {
        self.nodes.remove(v);
        self.arcs.retain(|a| a.parent != v && a.child != v);
        for a in &mut self.arcs {
            if a.parent > v {
                a.parent -= 1;
            }
            if a.child > v {
                a.child -= 1;
            }
        }
    }
}

/// Evaluates every node at `k`. Rejects the certificate, naming the first
/// node over budget, when some expression exceeds `k`.
pub fn verify_certificate(cert: &OutTreeCertificate, k: u64) -> Result<BudgetReport> {
    cert.check_well_formed()?;
    let bounds = cert.bounds(k);
    let min_k = cert.min_k();
    if let Some(node) = bounds.iter().position(|&b| b > k) {
        return Err(Error::CertificateRejected { node, value: bounds[node], k, min_k });
    }
    Ok(BudgetReport { k, bounds, min_k })
}

/// Budget-preserving certificate transformations, each naming its node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", content = "node", rename_all = "snake_case")]
pub enum PruneOp {
    /// Remove a node with no children.
    DeleteLeaf(usize),
    /// Raise the configuration degree by one.
    RaiseInner(usize),
    /// Lower the host degree by one.
    LowerHost(usize),
    /// A 5-vertex root with two configuration neighbors becomes a 6-vertex with four.
    WidenRoot(usize),
    /// A 5-vertex leaf with one configuration neighbor becomes a 6-vertex with three.
    LeafToSix(usize),
    /// A 6-vertex leaf with three configuration neighbors becomes a 7-vertex with five.
    LeafToSeven(usize),
    /// A non-root 6-vertex with three configuration neighbors whose only
    /// child is a 5-vertex leaf is removed; the leaf moves up to the grandparent.
    Collapse(usize),
}

impl PruneOp {
    pub fn node(self) -> usize {
        match self {
            PruneOp::DeleteLeaf(v)
            | PruneOp::RaiseInner(v)
            | PruneOp::LowerHost(v)
            | PruneOp::WidenRoot(v)
            | PruneOp::LeafToSix(v)
            | PruneOp::LeafToSeven(v)
            | PruneOp::Collapse(v) => v,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PruneOp::DeleteLeaf(_) => "delete-leaf",
            PruneOp::RaiseInner(_) => "raise-inner",
            PruneOp::LowerHost(_) => "lower-host",
            PruneOp::WidenRoot(_) => "widen-root",
            PruneOp::LeafToSix(_) => "leaf-to-six",
            PruneOp::LeafToSeven(_) => "leaf-to-seven",
            PruneOp::Collapse(_) => "collapse",
        }
    }
}

const LEAF_SIX_BUDGET: u64 = 24;
const LEAF_SEVEN_BUDGET: u64 = 12;

pub fn prune_certificate(cert: &OutTreeCertificate, op: PruneOp) -> Result<OutTreeCertificate> {
    let v = op.node();
    let na = || Err(Error::PruneNotApplicable { op: op.name(), node: v });
    if v >= cert.len() {
        return na();
    }
    let mut out = cert.clone();
    let node = cert.nodes[v];
    let is_root = cert.parent(v).is_none();
    let is_leaf = cert.is_leaf(v);
    let set_in_budget = |out: &mut OutTreeCertificate, b: u64| {
        if let Some(a) = out.arcs.iter_mut().find(|a| a.child == v) {
            a.budget = b;
        }
    };
    match op {
        PruneOp::DeleteLeaf(_) => {
            if !is_leaf || cert.len() == 1 {
                return na();
            }
            out.remove_node(v);
        }
        PruneOp::RaiseInner(_) => {
            if node.d_h + 1 > node.d_g {
                return na();
            }
            out.nodes[v].d_h += 1;
        }
        PruneOp::LowerHost(_) => {
            if node.d_g == 0 || node.d_g - 1 < node.d_h {
                return na();
            }
            out.nodes[v].d_g -= 1;
        }
        PruneOp::WidenRoot(_) => {
            if !is_root || node != (CertNode { d_g: 5, d_h: 2 }) {
                return na();
            }
            out.nodes[v] = CertNode { d_g: 6, d_h: 4 };
        }
        PruneOp::LeafToSix(_) => {
            if is_root || !is_leaf || node != (CertNode { d_g: 5, d_h: 1 }) {
                return na();
            }
            out.nodes[v] = CertNode { d_g: 6, d_h: 3 };
            set_in_budget(&mut out, LEAF_SIX_BUDGET);
        }
        PruneOp::LeafToSeven(_) => {
            if is_root || !is_leaf || node != (CertNode { d_g: 6, d_h: 3 }) {
                return na();
            }
            out.nodes[v] = CertNode { d_g: 7, d_h: 5 };
            set_in_budget(&mut out, LEAF_SEVEN_BUDGET);
        }
        PruneOp::Collapse(_) => {
            let kids: Vec<&DeferArc> = cert.children(v).collect();
            let ok = !is_root
                && node == (CertNode { d_g: 6, d_h: 3 })
                && kids.len() == 1
                && cert.is_leaf(kids[0].child)
                && cert.nodes[kids[0].child] == (CertNode { d_g: 5, d_h: 1 });
            if !ok {
                return na();
            }
            let grand = cert.parent(v).expect("non-root").parent;
            let child = kids[0].child;
            if let Some(a) = out.arcs.iter_mut().find(|a| a.child == child) {
                a.parent = grand;
            }
            out.remove_node(v);
        }
    }
    Ok(out)
}

fn tree(nodes: &[(usize, usize)], arcs: &[(usize, usize, u64)]) -> OutTreeCertificate {
    OutTreeCertificate {
        nodes: nodes.iter().map(|&(d_g, d_h)| CertNode { d_g, d_h }).collect(),
        arcs: arcs.iter().map(|&a| a.into()).collect(),
    }
}

/// The four generating out-trees every catalog certificate prunes from.
/// Node 0 is the root in each.
pub fn generating_trees() -> [OutTreeCertificate; 4] {
    let (n52, n53, n64, n63, n51) = ((5, 2), (5, 3), (6, 4), (6, 3), (5, 1));
    [
        tree(&[n52, n63, n63, n51, n51], &[(0, 1, 120), (0, 2, 120), (1, 3, 40), (2, 4, 40)]),
        tree(&[n52, n63, n63, n51, n63], &[(0, 1, 384), (1, 2, 120), (2, 3, 40), (0, 4, 24)]),
        tree(&[n53, n63, n63, n51, n51, n63], &[(0, 1, 120), (0, 2, 120), (1, 3, 40), (2, 4, 40), (0, 5, 24)]),
        tree(
            &[n64, n63, n63, n51, n51, n63, n63],
            &[(0, 1, 120), (0, 2, 120), (1, 3, 40), (2, 4, 40), (0, 5, 24), (0, 6, 24)],
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_classes() {
        assert_eq!(check_star_inequality(5, 2).unwrap(), StarClass::Strict);
        assert_eq!(check_star_inequality(6, 3).unwrap(), StarClass::Holds);
        assert_eq!(check_star_inequality(7, 4).unwrap(), StarClass::Fails);
        assert!(check_star_inequality(5, 6).is_err());
    }

    #[test]
    fn j_tree_thresholds() {
        let mins: Vec<_> = generating_trees().iter().map(|t| verify_certificate(t, 416).unwrap().min_k).collect();
        assert_eq!(mins, vec![Some(248), Some(416), Some(136), Some(222)]);
    }

    #[test]
    fn rejection_names_the_node() {
        let t = &generating_trees()[1];
        match verify_certificate(t, 415) {
            Err(Error::CertificateRejected { min_k: Some(416), value, .. }) => assert!(value > 415),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn worked_prunings_still_close() {
        let [t1, t2, ..] = generating_trees();
        let p = prune_certificate(&t1, PruneOp::DeleteLeaf(4)).unwrap();
        assert!(p.closes(248));
        let p = prune_certificate(&t2, PruneOp::WidenRoot(0)).unwrap();
        assert!(p.closes(416));
        let p = prune_certificate(&t1, PruneOp::LeafToSix(3)).unwrap();
        assert!(p.closes(248));
        let p = prune_certificate(&t2, PruneOp::Collapse(2)).unwrap();
        assert_eq!(p.len(), 4);
        assert!(p.closes(416));
    }

    #[test]
    fn inapplicable_prunings() {
        let [t1, ..] = generating_trees();
        assert!(matches!(prune_certificate(&t1, PruneOp::LeafToSeven(1)), Err(Error::PruneNotApplicable { .. })));
        assert!(prune_certificate(&t1, PruneOp::DeleteLeaf(0)).is_err());
        assert!(prune_certificate(&t1, PruneOp::WidenRoot(1)).is_err());
        assert!(prune_certificate(&t1, PruneOp::Collapse(9)).is_err());
    }
}
