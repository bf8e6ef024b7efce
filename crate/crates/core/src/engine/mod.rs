//! Constructive recoloring: single-vertex extension, degenerate orders, the
//! finishing step, deferral plans and the top-level planar routine.

mod extend;
pub mod plan;
mod planar;
mod stage;

use serde::{Deserialize, Serialize};

use crate::coloring::RecolorSequence;
use crate::graph::{Color, Vertex};

pub use extend::{extend_degenerate, extend_single_vertex, extend_with_deferral, finish_subgraph};
pub use plan::{DeferArc, DeferralPlan, PlanStage};
pub use planar::{recolor_planar, DEFAULT_K};

/// A child took its deferring parent's color, so the parent moved first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeferralEvent {
    /// Outside color that triggered the child's recolor.
    pub trigger_color: Color,
    pub deferring: Vertex,
    pub deferred_to: Vertex,
}

/// One deletion step of the planar recursion, re-extended on the way up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    /// Catalog id, or `None` for a low-degree peel.
    pub id: Option<String>,
    /// Host vertices removed at this step.
    pub image: Vec<Vertex>,
    /// Recolor-count bound of each removed vertex at the run's k.
    pub bounds: Vec<u64>,
    /// Realized recolor counts of the removed vertices right after the
    /// extension (later extensions never touch them).
    pub counts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtensionTrace {
    pub produced: RecolorSequence,
    pub per_vertex_counts: Vec<usize>,
    pub deferral_log: Vec<DeferralEvent>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reductions: Vec<Reduction>,
}

impl ExtensionTrace {
    pub fn new(produced: RecolorSequence, deferral_log: Vec<DeferralEvent>) -> Self {
        let per_vertex_counts = produced.counts();
        ExtensionTrace { produced, per_vertex_counts, deferral_log, reductions: Vec::new() }
    }

    pub fn max_count(&self) -> usize {
        self.per_vertex_counts.iter().copied().max().unwrap_or(0)
    }
}
