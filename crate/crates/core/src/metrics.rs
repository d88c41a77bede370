//! Structural statistics over proof graphs and corpora of them.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagnostic::Code;
use crate::graph::{EdgeKind, Endpoint, NodeKind, ProofGraph};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    /// Rendered nodes per kind; label-only nodes are not counted.
    pub node_counts: BTreeMap<NodeKind, usize>,
    pub assumption_count: usize,
    pub edge_counts: BTreeMap<EdgeKind, usize>,
    pub labeled_edge_count: usize,
    /// Largest number of deduction arrows into one endpoint.
    pub max_fan_in: usize,
    /// Largest number of deduction arrows out of one endpoint.
    pub max_fan_out: usize,
    /// Edge count of the longest deduction chain; `None` when deductions
    /// form a cycle.
    pub longest_deduction_path: Option<usize>,
    pub subproof_count: usize,
    pub question_count: usize,
    pub falsum_count: usize,
}

impl GraphStats {
    pub fn rendered_node_total(&self) -> usize {
        self.node_counts.values().sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldSummary {
    pub mean: f64,
    pub max: usize,
}

impl FieldSummary {
    fn of(values: impl IntoIterator<Item = usize>) -> Option<FieldSummary> {
        let values: Vec<usize> = values.into_iter().collect();
        let max = *values.iter().max()?;
        let mean = values.iter().sum::<usize>() as f64 / values.len() as f64;
        Some(FieldSummary { mean, max })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusStats {
    pub graph_count: usize,
    pub node_counts: BTreeMap<NodeKind, FieldSummary>,
    pub assumption_count: FieldSummary,
    pub edge_counts: BTreeMap<EdgeKind, FieldSummary>,
    pub labeled_edge_count: FieldSummary,
    pub max_fan_in: FieldSummary,
    pub max_fan_out: FieldSummary,
    /// Over acyclic graphs only; `None` if every graph is cyclic.
    pub longest_deduction_path: Option<FieldSummary>,
    pub cyclic_graph_count: usize,
    pub subproof_count: FieldSummary,
    pub question_count: FieldSummary,
    pub falsum_count: FieldSummary,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MetricsError {
    #[error("cannot aggregate an empty corpus")]
    EmptyCorpus,
}

impl MetricsError {
    pub fn code(&self) -> Code {
        match self {
            MetricsError::EmptyCorpus => Code::EmptyCorpus,
        }
    }
}

pub fn graph_stats(graph: &ProofGraph) -> GraphStats {
    let mut node_counts: BTreeMap<NodeKind, usize> =
        NodeKind::ALL.iter().map(|&k| (k, 0)).collect();
    for node in graph.rendered_nodes() {
        *node_counts.entry(node.kind).or_default() += 1;
    }
    let mut edge_counts: BTreeMap<EdgeKind, usize> =
        [(EdgeKind::Deduction, 0), (EdgeKind::Flow, 0)].into();
    for e in &graph.edges {
        *edge_counts.entry(e.kind).or_default() += 1;
    }

    // Deduction subgraph; groups collapse onto their head box and each
    // subproof is a single vertex.
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut vertex = |ep: &Endpoint| -> usize {
        let key = match ep {
            Endpoint::Group(_) => graph.anchor_node(ep).unwrap_or(ep.id()).to_string(),
            _ => ep.id().to_string(),
        };
        let next = index.len();
        *index.entry(key).or_insert(next)
    };
    let arcs: Vec<(usize, usize)> = graph
        .edges
        .iter()
        .filter(|e| e.kind == EdgeKind::Deduction)
        .map(|e| (vertex(&e.tail), vertex(&e.head)))
        .collect();
    let n = index.len();
    let mut fan_in = vec![0usize; n];
    let mut fan_out = vec![0usize; n];
    for &(t, h) in &arcs {
        fan_out[t] += 1;
        fan_in[h] += 1;
    }

    GraphStats {
        assumption_count: graph.rendered_nodes().filter(|n| n.is_assumption).count(),
        labeled_edge_count: graph.edges.iter().filter(|e| e.label.is_some()).count(),
        max_fan_in: fan_in.into_iter().max().unwrap_or(0),
        max_fan_out: fan_out.into_iter().max().unwrap_or(0),
        longest_deduction_path: longest_path(n, &arcs),
        subproof_count: graph.subproofs.len(),
        question_count: node_counts[&NodeKind::Question],
        falsum_count: node_counts[&NodeKind::Falsum],
        node_counts,
        edge_counts,
    }
}

/// Longest path, in edges, of a directed graph on vertices `0..n`, by
/// dynamic programming over a topological order. `None` if there is a cycle.
pub fn longest_path(n: usize, arcs: &[(usize, usize)]) -> Option<usize> {
    let mut indegree = vec![0usize; n];
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(t, h) in arcs {
        succ[t].push(h);
        indegree[h] += 1;
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut dist = vec![0usize; n];
    let mut visited = 0;
    while let Some(v) = queue.pop_front() {
        visited += 1;
        for &w in &succ[v] {
            dist[w] = dist[w].max(dist[v] + 1);
            indegree[w] -= 1;
            if indegree[w] == 0 {
                queue.push_back(w);
            }
        }
    }
    (visited == n).then(|| dist.into_iter().max().unwrap_or(0))
}

pub fn corpus_stats(stats: &[GraphStats]) -> Result<CorpusStats, MetricsError> {
    if stats.is_empty() {
        return Err(MetricsError::EmptyCorpus);
    }
    let summary = |f: &dyn Fn(&GraphStats) -> usize| {
        FieldSummary::of(stats.iter().map(f)).expect("corpus is not empty")
    };
    Ok(CorpusStats {
        graph_count: stats.len(),
        node_counts: NodeKind::ALL
            .iter()
            .map(|k| (*k, summary(&|s| s.node_counts.get(k).copied().unwrap_or(0))))
            .collect(),
        assumption_count: summary(&|s| s.assumption_count),
        edge_counts: [EdgeKind::Deduction, EdgeKind::Flow]
            .iter()
            .map(|k| (*k, summary(&|s| s.edge_counts.get(k).copied().unwrap_or(0))))
            .collect(),
        labeled_edge_count: summary(&|s| s.labeled_edge_count),
        max_fan_in: summary(&|s| s.max_fan_in),
        max_fan_out: summary(&|s| s.max_fan_out),
        longest_deduction_path: FieldSummary::of(
            stats.iter().filter_map(|s| s.longest_deduction_path),
        ),
        cyclic_graph_count: stats
            .iter()
            .filter(|s| s.longest_deduction_path.is_none())
            .count(),
        subproof_count: summary(&|s| s.subproof_count),
        question_count: summary(&|s| s.question_count),
        falsum_count: summary(&|s| s.falsum_count),
    })
}
