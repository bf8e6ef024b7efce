//! JSON file formats. Output is compact with keys in sorted order, so equal
//! values always serialize to identical bytes.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::coloring::{Coloring, ListAssignment, RecolorSequence};
use crate::error::{Error, Result};
use crate::graph::{PlaneGraph, Vertex};

/// Graph file: `n`, `rotation`, and optionally `lists`, `alpha`, `beta`
/// and the generator `seed`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Coloring>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<Coloring>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lists: Option<ListAssignment>,
    pub n: usize,
    pub rotation: Vec<Vec<Vertex>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl GraphFile {
    pub fn from_graph(g: &PlaneGraph) -> Self {
        GraphFile { alpha: None, beta: None, lists: None, n: g.n(), rotation: g.rotations().to_vec(), seed: None }
    }

    pub fn graph(&self) -> Result<PlaneGraph> {
        if self.rotation.len() != self.n {
            return Err(Error::LengthMismatch { what: "rotation", expected: self.n, got: self.rotation.len() });
        }
        PlaneGraph::new(self.rotation.clone())
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse(text)
    }
}

pub fn parse<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data always serializes")
}

pub fn parse_sequence(text: &str) -> Result<RecolorSequence> {
    parse(text)
}

pub fn parse_lists(text: &str) -> Result<ListAssignment> {
    parse(text)
}

pub fn parse_coloring(text: &str) -> Result<Coloring> {
    parse(text)
}
