//! JSON graph exchange format and Graphviz DOT export.
//!
//! A graph is one record per undirected edge:
//! `{"n": 3, "edges": [{"tail": 0, "head": 1, "w": 1.0, "alpha": 0.0}, ...]}`
//! with `w` defaulting to 1 and `alpha` to 0. Constructed unions carry an
//! extra `provenance` field.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::{angle_is_zero, GraphError, MagneticGraph, VertexId};
use crate::spectra::RealMultiset;

fn default_weight() -> f64 {
    1.0
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeJson {
    pub tail: VertexId,
    pub head: VertexId,
    #[serde(default = "default_weight")]
    pub w: f64,
    #[serde(default)]
    pub alpha: f64,
}

/// Where a constructed graph came from: block name or file, the
/// identification sets and the partition used.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Provenance {
    pub block: String,
    pub v0: Vec<VertexId>,
    pub v1: Vec<VertexId>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partition: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<EdgeJson>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub provenance: Option<Provenance>,
}

impl GraphJson {
    pub fn from_graph(g: &MagneticGraph, provenance: Option<Provenance>) -> Self {
        Self {
            n: g.order(),
            edges: g
                .edges()
                .map(|e| EdgeJson {
                    tail: e.tail,
                    head: e.head,
                    w: e.weight,
                    alpha: e.alpha,
                })
                .collect(),
            provenance,
        }
    }

    pub fn to_graph(&self) -> Result<MagneticGraph, GraphError> {
        let spec: Vec<_> = self
            .edges
            .iter()
            .map(|e| (e.tail, e.head, e.w, e.alpha))
            .collect();
        crate::graph::build_graph(self.n, &spec)
    }
}

/// Spectrum output: eigenvalues at full double precision plus clusters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub n: usize,
    pub eigenvalues: Vec<f64>,
    pub clusters: Vec<ClusterJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterJson {
    pub value: f64,
    pub multiplicity: usize,
}

impl SpectrumJson {
    pub fn from_multiset(s: &RealMultiset) -> Self {
        Self {
            n: s.len(),
            eigenvalues: s.values().to_vec(),
            clusters: s
                .clusters()
                .into_iter()
                .map(|(value, multiplicity)| ClusterJson {
                    value,
                    multiplicity,
                })
                .collect(),
        }
    }
}

/// Formats an angle as a multiple of π ("0.5pi").
pub fn format_angle(alpha: f64) -> String {
    format!("{}pi", alpha / std::f64::consts::PI)
}

/// Deterministic DOT export. Undirected edges; non-default weight or
/// potential shown as a label; Dirichlet vertices drawn dashed circles,
/// distinguished vertices bold.
pub fn to_dot(
    g: &MagneticGraph,
    dirichlet: &BTreeSet<VertexId>,
    distinguished: &BTreeSet<VertexId>,
) -> String {
    let mut out = String::from("graph {\n  node [shape=point];\n");
    for v in 0..g.order() {
        if dirichlet.contains(&v) {
            let _ = writeln!(out, "  {v} [shape=circle, style=dashed, label=\"\"];");
        } else if distinguished.contains(&v) {
            let _ = writeln!(out, "  {v} [shape=circle, style=bold, label=\"\"];");
        } else {
            let _ = writeln!(out, "  {v};");
        }
    }
    for e in g.edges() {
        if (e.weight - 1.0).abs() <= 1e-12 && angle_is_zero(e.alpha) {
            let _ = writeln!(out, "  {} -- {};", e.tail, e.head);
        } else {
            let _ = writeln!(
                out,
                "  {} -- {} [label=\"w={},α={}\"];",
                e.tail,
                e.head,
                e.weight,
                format_angle(e.alpha)
            );
        }
    }
    out.push_str("}\n");
    out
}
