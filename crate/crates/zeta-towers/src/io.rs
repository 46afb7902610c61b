//! The tower input format.
//!
//! One JSON file describes one tower: a labelled multigraph, a voltage
//! vector per edge, the prime p, and the voltage dimension d. Levels
//! are always derived on demand, never stored. Undirected mode is
//! sugar: every listed edge also produces its reversal, carrying the
//! negated voltage, appended after all forward edges.

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::tower::VoltageAssignment;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeMode {
    #[default]
    Directed,
    Undirected,
}

/// One edge of the input file, endpoints by vertex label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub src: String,
    pub dst: String,
    pub voltage: Vec<i64>,
}

/// The on-disk description of a tower.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpecFile {
    pub p: u64,
    pub d: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    #[serde(default)]
    pub mode: EdgeMode,
}

impl GraphSpecFile {
    /// Builds the digraph and voltage assignment the file describes.
    pub fn build(&self) -> Result<(Digraph, VoltageAssignment)> {
        let index_of = |label: &str| -> Result<usize> {
            self.vertices
                .iter()
                .position(|v| v == label)
                .ok_or_else(|| Error::UnknownVertexLabel(label.to_string()))
        };
        let mut arcs = Vec::new();
        let mut voltages = Vec::new();
        for e in &self.edges {
            if e.voltage.len() != self.d {
                return Err(Error::VoltageArity {
                    expected: self.d,
                    got: e.voltage.len(),
                });
            }
            arcs.push((index_of(&e.src)?, index_of(&e.dst)?));
            voltages.push(e.voltage.clone());
        }
        if self.mode == EdgeMode::Undirected {
            for i in 0..self.edges.len() {
                let (s, t) = arcs[i];
                arcs.push((t, s));
                voltages.push(self.edges[i].voltage.iter().map(|&v| -v).collect());
            }
        }
        let g = Digraph::new(self.vertices.clone(), &arcs)?;
        let alpha = VoltageAssignment::new(self.p, self.d, voltages)?;
        Ok((g, alpha))
    }

    /// The canonical spec of a tower: directed mode, edges in id order.
    pub fn from_tower(g: &Digraph, alpha: &VoltageAssignment) -> Result<Self> {
        if alpha.edge_count() != g.edge_count() {
            return Err(Error::VoltageLength {
                expected: g.edge_count(),
                got: alpha.edge_count(),
            });
        }
        let labels = g.labels();
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeSpec {
                src: labels[e.src].clone(),
                dst: labels[e.dst].clone(),
                voltage: alpha.values()[e.id].clone(),
            })
            .collect();
        Ok(GraphSpecFile {
            p: alpha.prime(),
            d: alpha.dim(),
            vertices: labels.to_vec(),
            edges,
            mode: EdgeMode::Directed,
        })
    }
}

/// Parses a JSON tower file.
pub fn parse_graph_spec(bytes: &[u8]) -> Result<(Digraph, VoltageAssignment)> {
    let spec: GraphSpecFile = serde_json::from_slice(bytes)?;
    spec.build()
}

/// Serializes a tower in the canonical form: parsing the output
/// reproduces the tower exactly.
pub fn serialize_graph_spec(g: &Digraph, alpha: &VoltageAssignment) -> Result<String> {
    let spec = GraphSpecFile::from_tower(g, alpha)?;
    Ok(serde_json::to_string_pretty(&spec)?)
}
