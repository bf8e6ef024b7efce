//! Recoloring sequences between list-colorings of plane graphs.
//!
//! The crate builds sequences that recolor one vertex at a time while
//! keeping every intermediate coloring proper, and bounds how often each
//! vertex moves. Alongside the constructive engine it ships the data it
//! relies on: a catalog of reducible configurations with certificates, the
//! charge rules used to show one of them always appears, and a brute-force
//! oracle over the full space of colorings for small instances.

pub mod catalog;
pub mod coloring;
pub mod discharging;
pub mod engine;
pub mod error;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;

pub use coloring::{
    is_k_good, validate_sequence, Coloring, ListAssignment, RecolorSequence, RecolorStep, ValidationReport, Violation,
};
pub use engine::{
    extend_degenerate, extend_single_vertex, extend_with_deferral, finish_subgraph, recolor_planar, DeferralEvent,
    DeferralPlan, ExtensionTrace, DEFAULT_K,
};
pub use error::{Error, Result};
pub use graph::{triangulate, Color, PlaneGraph, Vertex};
