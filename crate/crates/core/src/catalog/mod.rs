//! The reducible-configuration catalog: pattern graphs with host-degree
//! constraints, out-tree certificates and staged deferral plans.

mod certificate;
mod matcher;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::engine::plan::{DeferArc, DeferralPlan, PlanStage};
use crate::error::{Error, Result};

pub use certificate::{
    check_star_inequality, generating_trees, prune_certificate, verify_certificate, BudgetReport, CertNode,
    OutTreeCertificate, PruneOp, StarClass,
};
pub use matcher::{all_embeddings, match_configuration, match_first_with, MatchEmbedding};

/// Required host degree of a pattern vertex. Serialized as an integer, a
/// string such as `"6+"`, or `null`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegreeSpec {
    Exact(usize),
    AtLeast(usize),
    Any,
}

impl DegreeSpec {
    pub fn admits(self, degree: usize) -> bool {
        match self {
            DegreeSpec::Exact(d) => degree == d,
            DegreeSpec::AtLeast(d) => degree >= d,
            DegreeSpec::Any => true,
        }
    }

    pub fn exact(self) -> Option<usize> {
        match self {
            DegreeSpec::Exact(d) => Some(d),
            _ => None,
        }
    }

    /// How strongly the spec restricts host vertices; used to order the search.
    fn tightness(self) -> u8 {
        match self {
            DegreeSpec::Exact(_) => 2,
            DegreeSpec::AtLeast(_) => 1,
            DegreeSpec::Any => 0,
        }
    }
}

impl fmt::Display for DegreeSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeSpec::Exact(d) => write!(f, "{d}"),
            DegreeSpec::AtLeast(d) => write!(f, "{d}+"),
            DegreeSpec::Any => write!(f, "any"),
        }
    }
}

impl TryFrom<Value> for DegreeSpec {
    type Error = String;
    fn try_from(v: Value) -> std::result::Result<Self, String> {
        match v {
            Value::Null => Ok(DegreeSpec::Any),
            Value::Number(n) => n.as_u64().map(|d| DegreeSpec::Exact(d as usize)).ok_or(format!("bad degree {n}")),
            Value::String(s) => s
                .strip_suffix('+')
                .and_then(|d| d.parse().ok())
                .map(DegreeSpec::AtLeast)
                .ok_or(format!("bad degree bound {s:?}")),
            other => Err(format!("bad degree spec {other}")),
        }
    }
}

impl From<DegreeSpec> for Value {
    fn from(d: DegreeSpec) -> Value {
        match d {
            DegreeSpec::Exact(d) => Value::from(d),
            DegreeSpec::AtLeast(d) => Value::from(format!("{d}+")),
            DegreeSpec::Any => Value::Null,
        }
    }
}

impl Serialize for DegreeSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Value::from(*self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DegreeSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        DegreeSpec::try_from(Value::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutTree {
    pub root: usize,
    pub arcs: Vec<DeferArc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanSpec {
    pub stages: Vec<PlanStage>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigurationPattern {
    pub id: String,
    /// Vertex names as drawn, for display only.
    pub labels: Vec<String>,
    pub deg: Vec<DegreeSpec>,
    pub edges: Vec<(usize, usize)>,
    /// Empty for entries certified by their staged plan alone.
    pub outtrees: Vec<OutTree>,
    pub plan: PlanSpec,
    pub k: u64,
}

impl ConfigurationPattern {
    pub fn len(&self) -> usize {
        self.deg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.deg.is_empty()
    }

    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Degree of each vertex inside the pattern.
    pub fn pattern_degrees(&self) -> Vec<usize> {
        self.adjacency().iter().map(Vec::len).collect()
    }

    /// The deferral plan for an embedding whose image has the given host
    /// degrees (equal to the specs for exact entries).
    pub fn plan_for(&self, host_degrees: &[usize]) -> DeferralPlan {
        DeferralPlan { degrees: host_degrees.to_vec(), edges: self.edges.clone(), stages: self.plan.stages.clone() }
    }

    /// Plan at the prescribed degrees; `None` unless every degree is exact.
    pub fn plan(&self) -> Option<DeferralPlan> {
        let degrees: Option<Vec<usize>> = self.deg.iter().map(|d| d.exact()).collect();
        degrees.map(|d| self.plan_for(&d))
    }

    /// Out-tree certificate with `(d_G, d_H)` per vertex, if the entry has one.
    pub fn certificate(&self) -> Option<OutTreeCertificate> {
        if self.outtrees.is_empty() {
            return None;
        }
        let dh = self.pattern_degrees();
        let nodes = self
            .deg
            .iter()
            .zip(&dh)
            .map(|(d, &d_h)| d.exact().map(|d_g| CertNode { d_g, d_h }))
            .collect::<Option<Vec<_>>>()?;
        let arcs = self.outtrees.iter().flat_map(|t| t.arcs.iter().copied()).collect();
        Some(OutTreeCertificate { nodes, arcs })
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::Catalog { id: self.id.clone(), reason });
        let n = self.len();
        if self.labels.len() != n {
            return bad(format!("{} labels for {n} vertices", self.labels.len()));
        }
        let mut seen = std::collections::HashSet::new();
        for &(a, b) in &self.edges {
            if a >= n || b >= n || a == b || !seen.insert((a.min(b), a.max(b))) {
                return bad(format!("bad edge ({a}, {b})"));
            }
        }
        for t in &self.outtrees {
            if t.root >= n || t.arcs.iter().any(|a| a.child == t.root) {
                return bad(format!("bad out-tree root {}", t.root));
            }
        }
        if let Some(plan) = self.plan() {
            plan.validate().or_else(|e| bad(e.to_string()))?;
            if !plan.closes(self.k) {
                return bad(format!("plan does not close at k = {}", self.k));
            }
        }
        if let Some(cert) = self.certificate() {
            let roots: Vec<usize> = cert.roots();
            let mut declared: Vec<usize> = self.outtrees.iter().map(|t| t.root).collect();
            declared.sort_unstable();
            if roots != declared {
                return bad(format!("declared roots {declared:?} differ from arc roots {roots:?}"));
            }
            if let Err(e) = verify_certificate(&cert, self.k) {
                return bad(e.to_string());
            }
        }
        Ok(())
    }
}

/// Parses and validates a catalog file.
pub fn load_catalog(text: &str) -> Result<Vec<ConfigurationPattern>> {
    let entries: Vec<ConfigurationPattern> = crate::io::parse(text)?;
    for e in &entries {
        e.validate()?;
    }
    Ok(entries)
}

static BUILTIN_TEXT: &str = include_str!("../../data/catalog.json");

/// The shipped catalog in match-priority order.
pub fn builtin_catalog() -> &'static [ConfigurationPattern] {
    static CATALOG: OnceLock<Vec<ConfigurationPattern>> = OnceLock::new();
    CATALOG.get_or_init(|| load_catalog(BUILTIN_TEXT).expect("shipped catalog is valid"))
}

pub fn find_entry(id: &str) -> Option<&'static ConfigurationPattern> {
    builtin_catalog().iter().find(|e| e.id == id)
}
