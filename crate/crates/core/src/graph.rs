//! The proof-graph IR and its structural checks.
//!
//! Deduction edges (solid) mean "is used in inferring"; flow edges (dashed)
//! mean "read this next". Boxes may be grouped into subproofs, and an
//! existence declaration expands into a head box plus one box per property,
//! addressable as a group.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::diagnostic::{Code, Diagnostic};
use crate::syntax::TextObject;

pub const START_ID: &str = "_start";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeKind {
    Assertion,
    Citation,
    ExistenceHead,
    ExistenceProperty,
    Introduction,
    Premise,
    Question,
    Falsum,
    Start,
}

impl NodeKind {
    pub const ALL: [NodeKind; 9] = [
        NodeKind::Assertion,
        NodeKind::Citation,
        NodeKind::ExistenceHead,
        NodeKind::ExistenceProperty,
        NodeKind::Introduction,
        NodeKind::Premise,
        NodeKind::Question,
        NodeKind::Falsum,
        NodeKind::Start,
    ];

    /// Kinds that come from a user declaration.
    pub fn is_declared(self) -> bool {
        !matches!(
            self,
            NodeKind::Question | NodeKind::Falsum | NodeKind::Start
        )
    }

    pub fn is_existence(self) -> bool {
        matches!(self, NodeKind::ExistenceHead | NodeKind::ExistenceProperty)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub id: String,
    pub kind: NodeKind,
    pub label: TextObject,
    pub is_assumption: bool,
    pub parent: Option<String>,
    pub consumed_as_label: bool,
}

impl GraphNode {
    pub fn new(id: impl Into<String>, kind: NodeKind, label: TextObject) -> Self {
        GraphNode {
            id: id.into(),
            kind,
            label,
            is_assumption: false,
            parent: None,
            consumed_as_label: false,
        }
    }

    /// Name of the existence group this box belongs to (`E05` for `E05_2`).
    pub fn group(&self) -> Option<&str> {
        if self.kind.is_existence() {
            self.id.rsplit_once('_').map(|(g, _)| g)
        } else {
            None
        }
    }
}

/// Something an edge can attach to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Node(String),
    Subproof(String),
    /// A whole existence declaration, referenced by its bare name.
    Group(String),
}

impl Endpoint {
    pub fn id(&self) -> &str {
        match self {
            Endpoint::Node(s) | Endpoint::Subproof(s) | Endpoint::Group(s) => s,
        }
    }
}

impl fmt::Display for Endpoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeKind {
    Deduction,
    Flow,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphEdge {
    pub tail: Endpoint,
    pub head: Endpoint,
    pub kind: EdgeKind,
    pub label: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubproofKind {
    Proof,
    Cases,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subproof {
    pub id: String,
    pub kind: SubproofKind,
    pub parent: Option<String>,
    pub members: Vec<String>,
    /// Interior node that edges to or from the whole box attach to.
    pub anchor: Option<String>,
}

/// Result of [`ProofGraph::add_edge`].
#[derive(Debug, Clone, Default)]
pub struct EdgeInsert {
    /// Index of the edge now carrying the connection, if one exists.
    pub index: Option<usize>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProofGraph {
    pub nodes: IndexMap<String, GraphNode>,
    pub edges: Vec<GraphEdge>,
    pub subproofs: Vec<Subproof>,
    pub start_target: Option<Endpoint>,
}

impl ProofGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, node: GraphNode) {
        self.nodes.insert(node.id.clone(), node);
    }

    pub fn node(&self, id: &str) -> Option<&GraphNode> {
        self.nodes.get(id)
    }

    pub fn node_mut(&mut self, id: &str) -> Option<&mut GraphNode> {
        self.nodes.get_mut(id)
    }

    pub fn subproof(&self, id: &str) -> Option<&Subproof> {
        self.subproofs.iter().find(|s| s.id == id)
    }

    pub fn subproof_mut(&mut self, id: &str) -> Option<&mut Subproof> {
        self.subproofs.iter_mut().find(|s| s.id == id)
    }

    /// Head id of existence group `name`, if that group exists.
    pub fn group_head(&self, name: &str) -> Option<&str> {
        let head = self.nodes.get(&format!("{name}_0"))?;
        (head.kind == NodeKind::ExistenceHead).then_some(head.id.as_str())
    }

    pub fn group_members<'a>(&'a self, name: &'a str) -> impl Iterator<Item = &'a GraphNode> + 'a {
        self.nodes.values().filter(move |n| n.group() == Some(name))
    }

    /// Resolves a serialized endpoint id.
    pub fn endpoint(&self, id: &str) -> Option<Endpoint> {
        if self.subproof(id).is_some() {
            Some(Endpoint::Subproof(id.to_string()))
        } else if self.nodes.contains_key(id) {
            Some(Endpoint::Node(id.to_string()))
        } else if self.group_head(id).is_some() {
            Some(Endpoint::Group(id.to_string()))
        } else {
            None
        }
    }

    pub fn contains(&self, endpoint: &Endpoint) -> bool {
        match endpoint {
            Endpoint::Node(id) => self.nodes.contains_key(id),
            Endpoint::Subproof(id) => self.subproof(id).is_some(),
            Endpoint::Group(id) => self.group_head(id).is_some(),
        }
    }

    /// The concrete node an endpoint is drawn at: itself, a group's head, or
    /// a subproof's anchor.
    pub fn anchor_node(&self, endpoint: &Endpoint) -> Option<&str> {
        match endpoint {
            Endpoint::Node(id) => self.nodes.get(id).map(|n| n.id.as_str()),
            Endpoint::Group(id) => self.group_head(id),
            Endpoint::Subproof(id) => self.subproof(id)?.anchor.as_deref(),
        }
    }

    /// Nodes that appear in the drawing (label-only nodes are excluded).
    pub fn rendered_nodes(&self) -> impl Iterator<Item = &GraphNode> {
        self.nodes.values().filter(|n| !n.consumed_as_label)
    }

    /// Inserts an edge, enforcing the arrow rules:
    ///
    /// - a deduction arrow may not point at a subproof;
    /// - an exact duplicate is dropped;
    /// - when a flow and a deduction arrow would join the same pair, only the
    ///   deduction arrow is kept, whichever came first.
    pub fn add_edge(&mut self, tail: Endpoint, head: Endpoint, kind: EdgeKind) -> EdgeInsert {
        debug_assert!(self.contains(&tail), "unknown tail {tail}");
        debug_assert!(self.contains(&head), "unknown head {head}");
        let mut out = EdgeInsert::default();

        if kind == EdgeKind::Deduction {
            if let Endpoint::Subproof(_) = head {
                out.diagnostics.push(Diagnostic::new(
                    Code::DeduceIntoSubproof,
                    format!("deduction arrow from `{tail}` into subproof `{head}`; a subproof cannot be a consequence"),
                ));
                return out;
            }
        }

        let same_pair = |e: &GraphEdge| e.tail == tail && e.head == head;
        if let Some(i) = self
            .edges
            .iter()
            .position(|e| same_pair(e) && e.kind == kind)
        {
            out.diagnostics.push(Diagnostic::new(
                Code::DupEdge,
                format!(
                    "duplicate {} arrow `{tail}` -> `{head}` ignored",
                    kind_word(kind)
                ),
            ));
            out.index = Some(i);
            return out;
        }
        if let Some(i) = self
            .edges
            .iter()
            .position(|e| same_pair(e) && e.kind != kind)
        {
            out.diagnostics.push(Diagnostic::new(
                Code::RedundantFlow,
                format!("`{tail}` -> `{head}` has both a flow and a deduction arrow; keeping only the deduction arrow"),
            ));
            if kind == EdgeKind::Deduction {
                // Replace in place so earlier edge indices stay valid.
                self.edges[i].kind = EdgeKind::Deduction;
                out.index = Some(i);
            }
            return out;
        }

        self.edges.push(GraphEdge {
            tail,
            head,
            kind,
            label: None,
        });
        out.index = Some(self.edges.len() - 1);
        out
    }

    /// Structural lint. Never mutates the graph.
    ///
    /// Reports, in this order: endpoints with more than one outgoing flow
    /// arrow; declared boxes with no arrows at all; boxes a reader cannot
    /// reach from the start node. For reachability a reader follows every
    /// arrow forwards and also looks back along deduction arrows at the
    /// reasons for whatever they are reading; entering a box (subproof or
    /// existence group) reaches everything inside it.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut diags = Vec::new();

        let mut flow_out: IndexMap<&Endpoint, usize> = IndexMap::new();
        for e in self.edges.iter().filter(|e| e.kind == EdgeKind::Flow) {
            *flow_out.entry(&e.tail).or_default() += 1;
        }
        for (tail, n) in flow_out.into_iter().filter(|&(_, n)| n > 1) {
            diags.push(Diagnostic::new(
                Code::MultiFlowOut,
                format!("`{tail}` has {n} outgoing flow arrows; at most one is allowed"),
            ));
        }

        let touched: HashSet<&str> = self
            .edges
            .iter()
            .flat_map(|e| [e.tail.id(), e.head.id()])
            .collect();
        let mut seen_groups = HashSet::new();
        for node in self.nodes.values() {
            if !node.kind.is_declared() || node.consumed_as_label || node.parent.is_some() {
                continue;
            }
            let (name, dangling) = match node.group() {
                Some(g) => {
                    if !seen_groups.insert(g) {
                        continue;
                    }
                    let dangling = !touched.contains(g)
                        && self
                            .group_members(g)
                            .all(|m| !touched.contains(m.id.as_str()));
                    (g, dangling)
                }
                None => (node.id.as_str(), !touched.contains(node.id.as_str())),
            };
            if dangling {
                diags.push(Diagnostic::new(
                    Code::DanglingDecl,
                    format!("`{name}` is declared but no arrow connects it"),
                ));
            }
        }

        if self.nodes.contains_key(START_ID) {
            let reached = self.reachable_from_start();
            for node in self.rendered_nodes() {
                if node.kind != NodeKind::Start
                    && !reached.contains(&Endpoint::Node(node.id.clone()))
                {
                    diags.push(Diagnostic::new(
                        Code::Unreachable,
                        format!("`{}` cannot be reached from the start node", node.id),
                    ));
                }
            }
        }

        diags
    }

    fn reachable_from_start(&self) -> HashSet<Endpoint> {
        let mut forward: HashMap<&Endpoint, Vec<&Endpoint>> = HashMap::new();
        for e in &self.edges {
            forward.entry(&e.tail).or_default().push(&e.head);
            if e.kind == EdgeKind::Deduction {
                forward.entry(&e.head).or_default().push(&e.tail);
            }
        }

        let mut seen: HashSet<Endpoint> = HashSet::new();
        let mut queue: VecDeque<Endpoint> = VecDeque::new();
        let start = Endpoint::Node(START_ID.to_string());
        seen.insert(start.clone());
        queue.push_back(start);

        while let Some(ep) = queue.pop_front() {
            let mut next: Vec<Endpoint> = forward
                .get(&ep)
                .map(|v| v.iter().map(|&e| e.clone()).collect())
                .unwrap_or_default();
            match &ep {
                Endpoint::Node(id) => {
                    if let Some(node) = self.nodes.get(id) {
                        if let Some(p) = &node.parent {
                            next.push(Endpoint::Subproof(p.clone()));
                        }
                        if let Some(g) = node.group() {
                            next.push(Endpoint::Group(g.to_string()));
                        }
                    }
                }
                Endpoint::Group(g) => {
                    next.extend(self.group_members(g).map(|n| Endpoint::Node(n.id.clone())));
                }
                Endpoint::Subproof(s) => {
                    if let Some(sp) = self.subproof(s) {
                        next.extend(sp.members.iter().map(|m| Endpoint::Node(m.clone())));
                        if let Some(p) = &sp.parent {
                            next.push(Endpoint::Subproof(p.clone()));
                        }
                    }
                    next.extend(
                        self.subproofs
                            .iter()
                            .filter(|c| c.parent.as_deref() == Some(s))
                            .map(|c| Endpoint::Subproof(c.id.clone())),
                    );
                }
            }
            for n in next {
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        seen
    }
}

fn kind_word(kind: EdgeKind) -> &'static str {
    match kind {
        EdgeKind::Deduction => "deduction",
        EdgeKind::Flow => "flow",
    }
}
