//! JSON interchange form of a [`ProofGraph`].
//!
//! ```json
//! {
//!   "nodes": [{"id": "A01", "kind": "assertion", "text": "...", "label": {"plain": "..."},
//!              "assumption": false, "parent": null, "consumed_as_label": false}],
//!   "edges": [{"tail": "A01", "head": "A02", "kind": "deduction", "label": "wolog"}],
//!   "subproofs": [{"id": "S1", "kind": "proof", "parent": null, "members": ["A07"], "anchor": "A07"}],
//!   "start_target": "I01"
//! }
//! ```
//!
//! Arrays keep graph order, so output is byte-stable for a given graph.

use serde::{Deserialize, Serialize};

use super::EmitError;
use crate::graph::{EdgeKind, GraphEdge, GraphNode, NodeKind, ProofGraph, Subproof, SubproofKind};
use crate::syntax::TextObject;

#[derive(Serialize, Deserialize)]
struct JsonGraph {
    nodes: Vec<JsonNode>,
    edges: Vec<JsonEdge>,
    subproofs: Vec<JsonSubproof>,
    start_target: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonNode {
    id: String,
    kind: NodeKind,
    text: String,
    label: TextObject,
    assumption: bool,
    parent: Option<String>,
    consumed_as_label: bool,
}

#[derive(Serialize, Deserialize)]
struct JsonEdge {
    tail: String,
    head: String,
    kind: EdgeKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    label: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonSubproof {
    id: String,
    kind: SubproofKind,
    parent: Option<String>,
    members: Vec<String>,
    anchor: Option<String>,
}

pub fn to_json(graph: &ProofGraph) -> String {
    let doc = JsonGraph {
        nodes: graph
            .nodes
            .values()
            .map(|n| JsonNode {
                id: n.id.clone(),
                kind: n.kind,
                text: n.label.to_plain_text(),
                label: n.label.clone(),
                assumption: n.is_assumption,
                parent: n.parent.clone(),
                consumed_as_label: n.consumed_as_label,
            })
            .collect(),
        edges: graph
            .edges
            .iter()
            .map(|e| JsonEdge {
                tail: e.tail.id().to_string(),
                head: e.head.id().to_string(),
                kind: e.kind,
                label: e.label.clone(),
            })
            .collect(),
        subproofs: graph
            .subproofs
            .iter()
            .map(|s| JsonSubproof {
                id: s.id.clone(),
                kind: s.kind,
                parent: s.parent.clone(),
                members: s.members.clone(),
                anchor: s.anchor.clone(),
            })
            .collect(),
        start_target: graph.start_target.as_ref().map(|t| t.id().to_string()),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("graph JSON serializes");
    out.push('\n');
    out
}

/// Reads a document produced by [`to_json`] back into a graph.
pub fn from_json(text: &str) -> Result<ProofGraph, EmitError> {
    let doc: JsonGraph = serde_json::from_str(text)?;
    let mut graph = ProofGraph::new();
    for n in doc.nodes {
        graph.add_node(GraphNode {
            id: n.id,
            kind: n.kind,
            label: n.label,
            is_assumption: n.assumption,
            parent: n.parent,
            consumed_as_label: n.consumed_as_label,
        });
    }
    graph.subproofs = doc
        .subproofs
        .into_iter()
        .map(|s| Subproof {
            id: s.id,
            kind: s.kind,
            parent: s.parent,
            members: s.members,
            anchor: s.anchor,
        })
        .collect();
    let resolve = |g: &ProofGraph, id: &str| {
        g.endpoint(id)
            .ok_or_else(|| EmitError::UnknownEndpoint(id.to_string()))
    };
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in doc.edges {
        edges.push(GraphEdge {
            tail: resolve(&graph, &e.tail)?,
            head: resolve(&graph, &e.head)?,
            kind: e.kind,
            label: e.label,
        });
    }
    graph.edges = edges;
    graph.start_target = doc.start_target.map(|t| resolve(&graph, &t)).transpose()?;
    Ok(graph)
}
