//! Case tables shared by the integration tests and the acceptance runner.

use proofflow::graph::{EdgeKind, Endpoint, GraphNode, NodeKind, ProofGraph, START_ID};
use proofflow::syntax::TextObject;
use proofflow::{Code, Compilation};

use super::{ded, edge_set, flow, EdgeTriple};

/// Declares `A0`..`A3` plus `E5` with three boxes, then links `script`.
pub fn with_decls(script: &str) -> String {
    let mut src = String::new();
    for i in 0..4 {
        src.push_str(&format!("A{i} {{s statement {i}}}\n"));
    }
    src.push_str("E5 [ {s there is $x$} {s $x > 0$} {s $x < 1$} ]\n");
    src.push_str(&format!("link( {script} )\n"));
    src
}

pub fn compile_script(script: &str) -> Compilation {
    proofflow::compile(&with_decls(script)).expect("declarations parse")
}

/// Edges drawn by the script itself; the start arrow is left out.
pub fn script_edges(c: &Compilation) -> Vec<EdgeTriple> {
    edge_set(&c.graph)
        .into_iter()
        .filter(|e| e.0 != START_ID)
        .collect()
}

pub struct KeywordCase {
    pub script: &'static str,
    pub edges: Vec<EdgeTriple>,
}

pub fn keyword_cases() -> Vec<KeywordCase> {
    let case = |script, mut edges: Vec<EdgeTriple>| {
        edges.sort_by(|a: &EdgeTriple, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
        KeywordCase { script, edges }
    };
    vec![
        case(
            "A0 by A1 A2 A3",
            vec![ded("A1", "A0"), ded("A2", "A0"), ded("A3", "A0")],
        ),
        case("A0 by A1 by A2", vec![ded("A1", "A0"), ded("A2", "A1")]),
        case(
            "A0 so A1 A2 A3",
            vec![ded("A0", "A1"), ded("A0", "A2"), ded("A0", "A3")],
        ),
        case("A0 by A1 so A2", vec![ded("A1", "A0"), ded("A0", "A2")]),
        case("A0 go A1", vec![flow("A0", "A1")]),
        // After showing A0 implies A1, `now` starts a separate chain.
        case(
            "A0 so A1 now A2 so A3",
            vec![ded("A0", "A1"), ded("A2", "A3")],
        ),
        case(
            "A0 by A1 A2 ?",
            vec![ded("A1", "A0"), ded("A2", "A0"), ded("_q1", "A0")],
        ),
        case("A3 so ?", vec![ded("A3", "_q1")]),
    ]
}

pub struct ValidationCase {
    pub name: &'static str,
    pub code: Code,
    pub trigger: fn() -> Vec<proofflow::Diagnostic>,
}

fn script_diags(script: &str) -> Vec<proofflow::Diagnostic> {
    match proofflow::compile(&with_decls(script)) {
        Ok(c) => c.diagnostics,
        Err(d) => d,
    }
}

fn node(id: &str) -> Endpoint {
    Endpoint::Node(id.to_string())
}

pub fn validation_cases() -> Vec<ValidationCase> {
    vec![
        ValidationCase {
            name: "two flow arrows leave one box",
            code: Code::MultiFlowOut,
            trigger: || script_diags("A0 go A1 now A0 go A2"),
        },
        ValidationCase {
            name: "two flow arrows leave one box (graph)",
            code: Code::MultiFlowOut,
            trigger: || {
                let mut g = ProofGraph::new();
                for id in ["A1", "A2", "A3"] {
                    g.add_node(GraphNode::new(
                        id,
                        NodeKind::Assertion,
                        TextObject::plain(id),
                    ));
                }
                g.add_edge(node("A1"), node("A2"), EdgeKind::Flow);
                g.add_edge(node("A1"), node("A3"), EdgeKind::Flow);
                g.validate()
            },
        },
        ValidationCase {
            name: "reason given for a closed subproof",
            code: Code::DeduceIntoSubproof,
            trigger: || script_diags("A0 go proof A1 so A2 end by A3"),
        },
        ValidationCase {
            name: "deduction arrow into a subproof (graph)",
            code: Code::DeduceIntoSubproof,
            trigger: || {
                let mut g = ProofGraph::new();
                g.add_node(GraphNode::new(
                    "A1",
                    NodeKind::Assertion,
                    TextObject::plain("a"),
                ));
                g.subproofs.push(proofflow::graph::Subproof {
                    id: "S1".into(),
                    kind: proofflow::graph::SubproofKind::Proof,
                    parent: None,
                    members: vec![],
                    anchor: None,
                });
                g.add_edge(
                    node("A1"),
                    Endpoint::Subproof("S1".into()),
                    EdgeKind::Deduction,
                )
                .diagnostics
            },
        },
        ValidationCase {
            name: "flow and deduction on the same pair",
            code: Code::RedundantFlow,
            trigger: || script_diags("A0 go A1 now A0 so A1"),
        },
        ValidationCase {
            name: "subproof after so",
            code: Code::SubproofAsConsequence,
            trigger: || script_diags("A0 so proof A1 end"),
        },
        ValidationCase {
            name: "undeclared name",
            code: Code::UnknownRef,
            trigger: || script_diags("A0 so A9"),
        },
        ValidationCase {
            name: "existence box index past the end",
            code: Code::ESubRange,
            trigger: || script_diags("A0 by E5_3"),
        },
    ]
}
