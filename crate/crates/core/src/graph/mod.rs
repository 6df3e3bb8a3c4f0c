//! Σ-labeled directed graphs, balls, pointed isomorphism and the Weiss
//! condition.
//!
//! Vertex ids are opaque strings. Vertices are stored in sorted id order
//! (purely numeric ids compare numerically), so every report iterates in a
//! reproducible order. Edges are a set of triples `(u, σ, v)`; two vertices
//! may be joined by several edges with different labels.

mod ball;
mod families;
mod halving;
mod iso;
mod weiss;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub use ball::{cayley_ball_graph, vertex_ball, vertex_ball_by_id, CayleyBall, PointedBall};
pub use families::{cycle_graph, fan_graph, path_graph, random_deterministic_graph, schreier_graph};
pub use halving::{bicyclic_halving_check, HalvingReport};
pub use iso::{
    all_pointed_isomorphisms, is_pointed_isomorphism, pointed_isomorphism, pointed_isomorphism_with_budget,
    DEFAULT_ISO_BUDGET,
};
pub use weiss::{ball_match, good_vertex_set, good_vertices_for, weiss_check, weiss_report, WeissReport};

use crate::error::{Error, Result};

/// Orders ids so that `"2" < "10"`; non-numeric ids sort after numeric ones.
pub fn id_cmp(a: &str, b: &str) -> Ordering {
    let numeric = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    match (numeric(a), numeric(b)) {
        (true, true) => {
            let (ta, tb) = (a.trim_start_matches('0'), b.trim_start_matches('0'));
            ta.len().cmp(&tb.len()).then_with(|| ta.cmp(tb)).then_with(|| a.cmp(b))
        }
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (false, false) => a.cmp(b),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    labels: Vec<String>,
    vertices: Vec<String>,
    /// Sorted, duplicate-free `(u, label, v)` index triples.
    edges: Vec<(usize, usize, usize)>,
    /// Per vertex, sorted `(label, target)` pairs.
    out: Vec<Vec<(usize, usize)>>,
    /// Per vertex, sorted `(label, source)` pairs.
    incoming: Vec<Vec<(usize, usize)>>,
}

/// JSON form: `{"labels": [..], "vertices": [..], "edges": [[u, σ, v], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub labels: Vec<String>,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

fn check_distinct(what: &str, items: &[String]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for s in items {
        if !seen.insert(s) {
            return Err(Error::Validation(format!("duplicate {what} `{s}`")));
        }
    }
    Ok(())
}

impl LabeledGraph {
    pub fn new(labels: Vec<String>, vertices: Vec<String>, edges: Vec<(String, String, String)>) -> Result<Self> {
        check_distinct("label", &labels)?;
        check_distinct("vertex", &vertices)?;
        let vindex: BTreeMap<&str, usize> = vertices.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
        let lindex: BTreeMap<&str, usize> = labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let lookup = |map: &BTreeMap<&str, usize>, key: &str, what: &str| {
            map.get(key)
                .copied()
                .ok_or_else(|| Error::Validation(format!("edge uses undeclared {what} `{key}`")))
        };
        let idx_edges = edges
            .iter()
            .map(|(u, l, v)| {
                Ok((
                    lookup(&vindex, u, "vertex")?,
                    lookup(&lindex, l, "label")?,
                    lookup(&vindex, v, "vertex")?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::assemble(labels, vertices, idx_edges)
    }

    /// Builds from index triples into `vertices`/`labels`, sorting vertices
    /// by id and dropping duplicate edges.
    pub(crate) fn assemble(
        labels: Vec<String>,
        vertices: Vec<String>,
        edges: Vec<(usize, usize, usize)>,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Validation("a graph needs at least one vertex".into()));
        }
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| id_cmp(&vertices[a], &vertices[b]));
        let mut rank = vec![0; vertices.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let sorted: Vec<String> = order.iter().map(|&i| vertices[i].clone()).collect();
        let edge_set: BTreeSet<(usize, usize, usize)> =
            edges.into_iter().map(|(u, l, v)| (rank[u], l, rank[v])).collect();
        let n = sorted.len();
        let mut out = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for &(u, l, v) in &edge_set {
            out[u].push((l, v));
            incoming[v].push((l, u));
        }
        for list in incoming.iter_mut() {
            list.sort_unstable();
        }
        Ok(LabeledGraph {
            labels,
            vertices: sorted,
            edges: edge_set.into_iter().collect(),
            out,
            incoming,
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices
            .binary_search_by(|v| id_cmp(v, id))
            .ok()
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Sorted `(label, target)` pairs leaving `v`.
    pub fn out_edges(&self, v: usize) -> &[(usize, usize)] {
        &self.out[v]
    }

    /// Sorted `(label, source)` pairs entering `v`.
    pub fn in_edges(&self, v: usize) -> &[(usize, usize)] {
        &self.incoming[v]
    }

    pub fn successors(&self, v: usize, label: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().filter(move |&&(l, _)| l == label).map(|&(_, t)| t)
    }

    pub fn has_edge(&self, u: usize, label: usize, v: usize) -> bool {
        self.out[u].binary_search(&(label, v)).is_ok()
    }

    /// At most one outgoing edge per (vertex, label).
    pub fn is_deterministic(&self) -> bool {
        self.out.iter().all(|list| list.windows(2).all(|w| w[0].0 != w[1].0))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            labels: self.labels.clone(),
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|&(u, l, v)| (self.vertices[u].clone(), self.labels[l].clone(), self.vertices[v].clone()))
                .collect(),
        }
    }

    pub fn from_json(json: GraphJson) -> Result<Self> {
        LabeledGraph::new(json.labels, json.vertices, json.edges)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let json: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse(format!("graph: {e}")))?;
        Self::from_json(json)
    }

    /// Graphviz source; `center`, if given, is drawn as a double circle.
    pub fn to_dot(&self, center: Option<usize>) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut dot = String::from("digraph G {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let shape = if Some(i) == center { "doublecircle" } else { "circle" };
            let _ = writeln!(dot, "  {} [shape={shape}];", quote(v));
        }
        for &(u, l, v) in &self.edges {
            let _ = writeln!(
                dot,
                "  {} -> {} [label={}];",
                quote(&self.vertices[u]),
                quote(&self.vertices[v]),
                quote(&self.labels[l])
            );
        }
        dot.push_str("}\n");
        dot
    }
}
