use crate::graph::{Color, Vertex};
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("loop at vertex {0}")]
    Loop(Vertex),

    #[error("vertex {vertex} lists neighbor {neighbor} more than once")]
    MultiEdge { vertex: Vertex, neighbor: Vertex },

    #[error("asymmetric rotation: {from} lists {to} but not vice versa")]
    Asymmetric { from: Vertex, to: Vertex },

    #[error(
        "rotation system is not plane: component of dart ({}, {}) has V-E+F = {euler}",
        dart.0, dart.1
    )]
    NotPlane { dart: (Vertex, Vertex), euler: i64 },

    #[error("graph is disconnected")]
    Disconnected,

    #[error("need at least {need} vertices, got {got}")]
    TooSmall { need: usize, got: usize },

    #[error("face {walk:?} cannot be triangulated without a loop or parallel edge")]
    Untriangulable { walk: Vec<Vertex> },

    #[error("not a triangulation: face {walk:?} has length {}", walk.len())]
    NotTriangulation { walk: Vec<Vertex> },

    #[error("{what}: expected {expected} entries, got {got}")]
    LengthMismatch { what: &'static str, expected: usize, got: usize },

    #[error("empty list at vertex {0}")]
    EmptyList(Vertex),

    #[error("coloring is not a proper L-coloring at vertex {0}")]
    BadColoring(Vertex),

    #[error("list of vertex {vertex} has {size} colors, needs at least {need}")]
    ListTooSmall { vertex: Vertex, size: usize, need: usize },

    #[error("target color {color} at vertex {vertex} clashes with a neighbor or the list")]
    BadTarget { vertex: Vertex, color: Color },

    #[error("order is not a permutation of the expected vertex set")]
    BadOrder,

    #[error("vertex {vertex} has {later} later neighbors in the order, more than {d}")]
    NotDegenerate { vertex: Vertex, later: usize, d: usize },

    #[error("finishing precondition fails at vertex {vertex}: degree {degree} + later {later} > {limit}")]
    FinishPrecondition { vertex: Vertex, degree: usize, later: usize, limit: usize },

    #[error("current and target colorings differ at vertex {0}, outside the subgraph")]
    DiffersOutside(Vertex),

    #[error("sequence is not {k}-good: vertex {vertex} recolored {count} times")]
    NotKGood { vertex: Vertex, count: usize, k: usize },

    #[error("no admissible color for vertex {0}")]
    NoColor(Vertex),

    #[error("deferral plan inconsistent: {0}")]
    Plan(String),

    #[error("no reducible configuration found in a minimum-degree-5 triangulation on {n} vertices")]
    TheoremViolation { n: usize },

    #[error("state space of {product} colorings exceeds cap {cap}")]
    CapExceeded { product: u128, cap: u64 },

    #[error("coloring is not a node of the reconfiguration graph")]
    NotANode,

    #[error("bounded search only supports at most {max_vertices} vertices and counts up to {max_count}")]
    BoundedSearchTooLarge { max_vertices: usize, max_count: usize },

    #[error("minimum degree {found} is below 5")]
    MinDegree { found: usize },

    #[error("charge state at stage {got}, expected stage {expected}")]
    Stage { expected: u8, got: u8 },

    #[error("certificate rejected at node {node}: {value} recolorings exceed k = {k}")]
    CertificateRejected { node: usize, value: u64, k: u64, min_k: Option<u64> },

    #[error("malformed certificate: {0}")]
    BadCertificate(String),

    #[error("pruning {op} not applicable at node {node}")]
    PruneNotApplicable { op: &'static str, node: usize },

    #[error("catalog entry {id}: {reason}")]
    Catalog { id: String, reason: String },

    #[error("minimum degree {target} not reached within the flip budget (best {achieved})")]
    GenBudget { target: usize, achieved: usize },

    #[error("could not build proper colorings after {attempts} attempts")]
    GreedyFailed { attempts: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
