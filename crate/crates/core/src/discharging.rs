//! Exact charge redistribution on plane triangulations.
//!
//! Every vertex starts with `d(v) - 6`. Rules 1 to 4 move charge from 7- and
//! 8+-vertices to 5- and 6-neighbors depending only on the two faces at the
//! edge; rules 5 and 6 pass the charge of 6-vertices on towards 5-vertices.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::catalog::{builtin_catalog, match_configuration, MatchEmbedding};
use crate::error::{Error, Result};
use crate::graph::{PlaneGraph, Vertex};

pub type Charge = Ratio<i64>;

pub const RULE_COUNT: u8 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChargeState {
    pub charge: Vec<Charge>,
    /// Number of rules applied so far.
    pub stage: u8,
}

impl ChargeState {
    pub fn total(&self) -> Charge {
        self.charge.iter().copied().sum()
    }
}

fn frac(p: i64, q: i64) -> Charge {
    Ratio::new(p, q)
}

/// Charge sent along edge `sw` under one of rules 1 to 4, given the degrees
/// of sender, receiver and the two vertices completing the faces at the edge.
pub fn edge_transfer(rule: u8, sender: usize, receiver: usize, thirds: [usize; 2]) -> Charge {
    let on_five_face = thirds.contains(&5);
    match (rule, sender, receiver) {
        (1, 7, 5) if on_five_face => frac(1, 4),
        (1, 7, 5) => frac(1, 3),
        (2, 7, 6) if !on_five_face => frac(1, 6),
        (3, s, 5) if s >= 8 => frac(1, 2),
        (4, s, 6) if s >= 8 && !on_five_face => frac(1, 4),
        _ => Charge::zero(),
    }
}

/// Charge of a vertex after rules 1 to 4, from its degree and the cyclic
/// sequence of its neighbors' degrees. Consecutive neighbors span faces.
pub fn local_charge_after_edge_rules(center: usize, ring: &[usize]) -> Charge {
    let d = ring.len();
    let mut c = Charge::from_integer(center as i64 - 6);
    for i in 0..d {
        let w = ring[i];
        let thirds = [ring[(i + d - 1) % d], ring[(i + 1) % d]];
        for rule in 1..=4 {
            c += edge_transfer(rule, w, center, thirds) - edge_transfer(rule, center, w, thirds);
        }
    }
    c
}

fn check_triangulation(g: &PlaneGraph) -> Result<()> {
    if g.is_triangulation() {
        return Ok(());
    }
    let walk = g.faces().into_iter().find(|f| f.len() != 3).unwrap_or_default();
    Err(Error::NotTriangulation { walk })
}

pub fn initial_charges(g: &PlaneGraph) -> Result<ChargeState> {
    check_triangulation(g)?;
    let charge = (0..g.n()).map(|v| Charge::from_integer(g.degree(v) as i64 - 6)).collect();
    Ok(ChargeState { charge, stage: 0 })
}

fn needy(g: &PlaneGraph, v: Vertex) -> bool {
    g.degree(v) == 6 && g.neighbors(v).iter().any(|&w| g.degree(w) == 5)
}

/// Applies rule `rule` (1 to 6) to a state that has had exactly the
/// previous rules applied. All senders act simultaneously.
pub fn apply_rule(g: &PlaneGraph, cs: &ChargeState, rule: u8) -> Result<ChargeState> {
    if rule == 0 || rule > RULE_COUNT || cs.stage != rule - 1 {
        return Err(Error::Stage { expected: rule.saturating_sub(1), got: cs.stage });
    }
    if cs.charge.len() != g.n() {
        return Err(Error::LengthMismatch { what: "charges", expected: g.n(), got: cs.charge.len() });
    }
    let mut next = cs.charge.clone();
    match rule {
        1..=4 => {
            for v in 0..g.n() {
                let rot = g.rotation(v);
                let d = rot.len();
                for i in 0..d {
                    let w = rot[i];
                    let thirds = [g.degree(rot[(i + d - 1) % d]), g.degree(rot[(i + 1) % d])];
                    let x = edge_transfer(rule, g.degree(v), g.degree(w), thirds);
                    next[v] -= x;
                    next[w] += x;
                }
            }
        }
        5 => {
            for v in 0..g.n() {
                if g.degree(v) != 6 || !cs.charge[v].is_positive() || g.neighbors(v).iter().any(|&w| g.degree(w) == 5) {
                    continue;
                }
                let to: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| needy(g, w)).collect();
                if to.is_empty() {
                    continue;
                }
                let share = cs.charge[v] / Charge::from_integer(to.len() as i64);
                next[v] -= cs.charge[v];
                for w in to {
                    next[w] += share;
                }
            }
        }
        _ => {
            for v in 0..g.n() {
                if !needy(g, v) || cs.charge[v].is_zero() {
                    continue;
                }
                let to: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| g.degree(w) == 5).collect();
                let share = cs.charge[v] / Charge::from_integer(to.len() as i64);
                next[v] -= cs.charge[v];
                for w in to {
                    next[w] += share;
                }
            }
        }
    }
    Ok(ChargeState { charge: next, stage: rule })
}

/// Every intermediate state, from the initial one through rule 6.
pub fn rule_stages(g: &PlaneGraph, cs: &ChargeState) -> Result<Vec<ChargeState>> {
    if cs.stage != 0 {
        return Err(Error::Stage { expected: 0, got: cs.stage });
    }
    let mut states = vec![cs.clone()];
    for rule in 1..=RULE_COUNT {
        let next = apply_rule(g, states.last().expect("non-empty"), rule)?;
        states.push(next);
    }
    Ok(states)
}

pub fn apply_rules(g: &PlaneGraph, cs: &ChargeState) -> Result<ChargeState> {
    Ok(rule_stages(g, cs)?.pop().expect("seven states"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub unhappy: Vec<Vertex>,
    pub matched: Option<MatchEmbedding>,
    /// Every vertex happy and no configuration found: must never happen.
    pub fault: bool,
    #[serde(skip)]
    pub stages: Vec<ChargeState>,
}

/// Discharges `g` and looks for a catalog configuration. Requires a
/// triangulation of minimum degree 5; lower-degree vertices are peeled
/// before discharging ever applies.
pub fn audit(g: &PlaneGraph) -> Result<AuditReport> {
    check_triangulation(g)?;
    let found = g.min_degree();
    if found < 5 {
        return Err(Error::MinDegree { found });
    }
    let stages = rule_stages(g, &initial_charges(g)?)?;
    let last = stages.last().expect("seven states");
    let unhappy: Vec<Vertex> = (0..g.n()).filter(|&v| last.charge[v].is_negative()).collect();
    let matched = match_configuration(g, builtin_catalog());
    let fault = unhappy.is_empty() && matched.is_none();
    Ok(AuditReport { unhappy, matched, fault, stages })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{icosahedron, octahedron, triangle};

    #[test]
    fn worked_local_cases() {
        assert_eq!(local_charge_after_edge_rules(7, &[6, 6, 6, 6, 6, 6, 7]), Charge::zero());
        assert_eq!(local_charge_after_edge_rules(7, &[5, 5, 6, 6, 6, 6, 6]), Charge::zero());
        assert_eq!(local_charge_after_edge_rules(8, &[5, 7, 6, 6, 6, 6, 7, 5]), Charge::zero());
        assert_eq!(local_charge_after_edge_rules(5, &[7, 6, 7, 6, 7]), Charge::zero());
    }

    #[test]
    fn icosahedron_all_minus_one() {
        let g = icosahedron();
        let cs = initial_charges(&g).unwrap();
        assert!(cs.charge.iter().all(|c| *c == Charge::from_integer(-1)));
        assert_eq!(cs.total(), Charge::from_integer(-12));
        let r = audit(&g).unwrap();
        assert_eq!(r.unhappy.len(), 12);
        assert_eq!(r.matched.unwrap().id, "RC-53a");
        assert!(!r.fault);
    }

    #[test]
    fn octahedron_gated() {
        let g = octahedron();
        let cs = initial_charges(&g).unwrap();
        assert_eq!(cs.total(), Charge::from_integer(-12));
        assert_eq!(audit(&g), Err(Error::MinDegree { found: 4 }));
    }

    #[test]
    fn stage_order_enforced() {
        let g = triangle();
        let cs = initial_charges(&g).unwrap();
        assert_eq!(apply_rule(&g, &cs, 2), Err(Error::Stage { expected: 1, got: 0 }));
        let done = apply_rules(&g, &cs).unwrap();
        assert_eq!(done.stage, 6);
        assert!(apply_rules(&g, &done).is_err());
    }

    #[test]
    fn edge_rule_table() {
        assert_eq!(edge_transfer(1, 7, 5, [5, 6]), frac(1, 4));
        assert_eq!(edge_transfer(1, 7, 5, [6, 7]), frac(1, 3));
        assert_eq!(edge_transfer(2, 7, 6, [5, 6]), Charge::zero());
        assert_eq!(edge_transfer(3, 9, 5, [5, 5]), frac(1, 2));
        assert_eq!(edge_transfer(4, 8, 6, [6, 7]), frac(1, 4));
        assert_eq!(edge_transfer(4, 8, 6, [6, 5]), Charge::zero());
    }
}
