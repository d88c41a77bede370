//! Interprets a proof script into a [`ProofGraph`].
//!
//! The interpreter keeps two cursors: the *focus*, the most recent node that
//! was deduced (tail of `so` and `go` arrows), and *last named*, the most
//! recent node mentioned at all (head of `by` arrows).
//!
//! | clause            | effect                                               |
//! |-------------------|------------------------------------------------------|
//! | `N`, `now N`      | focus = last named = N, no arrow                     |
//! | `by R1 R2 ..`     | deduction Ri -> last named; last named = last Ri     |
//! | `so C1 C2 ..`     | deduction focus -> Ci; focus = last named = last Ci  |
//! | `go N`            | flow focus -> N; focus = last named = N              |
//! | `suppose N`       | N becomes an assumption, then acts as a plain ref    |
//! | `proof .. end`    | a subproof, usable afterwards like a node name       |
//! | `using L`         | the text of L labels the latest deduction arrow      |

use std::collections::{HashMap, HashSet};

use crate::diagnostic::{Code, Diagnostic, SourceSpan};
use crate::graph::{
    EdgeKind, Endpoint, GraphNode, NodeKind, ProofGraph, Subproof, SubproofKind, START_ID,
};
use crate::syntax::{
    DeclKind, Document, Keyword, NodeDecl, Payload, ScriptItem, ScriptItemKind, TextObject,
};

#[derive(Debug, Clone)]
pub struct LinkResult {
    pub graph: ProofGraph,
    pub diagnostics: Vec<Diagnostic>,
}

/// What the next reference in the script means.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Mode {
    Statement,
    AfterNow,
    AfterSo { tail: Endpoint },
    AfterBy { target: Endpoint, reasons: usize },
    AfterGo { tail: Endpoint },
    AfterUsing { edge: usize },
}

#[derive(Debug)]
struct Frame {
    id: String,
    open_span: SourceSpan,
    saved_focus: Option<Endpoint>,
    saved_last_named: Option<Endpoint>,
    saved_mode: Mode,
    saved_suppose: Option<SourceSpan>,
}

/// Interpreter state.
struct LinkerState<'d> {
    decls: HashMap<&'d str, &'d NodeDecl>,
    graph: ProofGraph,
    diags: Vec<Diagnostic>,
    focus: Option<Endpoint>,
    last_named: Option<Endpoint>,
    last_deduction_edge: Option<usize>,
    mode: Mode,
    pending_suppose: Option<SourceSpan>,
    stack: Vec<Frame>,
    /// Node ids and group names already used as graph nodes.
    referenced: HashSet<String>,
    /// Node ids and group names already assigned to a scope.
    placed: HashSet<String>,
    questions: usize,
    falsums: usize,
}

/// Builds the proof graph for a parsed document.
pub fn link(doc: &Document) -> LinkResult {
    let mut st = LinkerState {
        decls: doc.decls.iter().map(|d| (d.name.as_str(), d)).collect(),
        graph: ProofGraph::new(),
        diags: Vec::new(),
        focus: None,
        last_named: None,
        last_deduction_edge: None,
        mode: Mode::Statement,
        pending_suppose: None,
        stack: Vec::new(),
        referenced: HashSet::new(),
        placed: HashSet::new(),
        questions: 0,
        falsums: 0,
    };
    st.materialize(doc);
    for item in &doc.script {
        st.step(item);
    }
    st.finish();
    LinkResult {
        graph: st.graph,
        diagnostics: st.diags,
    }
}

/// Resolves a script name: a declared node, `Ename_k` for the k-th box of an
/// existence node, or a bare `Ename` for the whole existence group.
pub fn resolve_ref(doc: &Document, name: &str) -> Result<Endpoint, Diagnostic> {
    resolve_with(name, |n| doc.decl(n))
}

fn resolve_with<'d>(
    name: &str,
    lookup: impl Fn(&str) -> Option<&'d NodeDecl>,
) -> Result<Endpoint, Diagnostic> {
    if let Some(decl) = lookup(name) {
        return Ok(match decl.kind {
            DeclKind::Existence => Endpoint::Group(name.to_string()),
            _ => Endpoint::Node(name.to_string()),
        });
    }
    if let Some((base, idx)) = name.rsplit_once('_') {
        if let Some(decl) = lookup(base).filter(|d| d.kind == DeclKind::Existence) {
            if !idx.is_empty() && idx.bytes().all(|b| b.is_ascii_digit()) {
                let count = decl.box_count();
                return match idx.parse::<usize>() {
                    Ok(k) if k < count => Ok(Endpoint::Node(format!("{base}_{k}"))),
                    _ => Err(Diagnostic::new(
                        Code::ESubRange,
                        format!(
                            "`{name}` is out of range; `{base}` has boxes {base}_0 to {base}_{}",
                            count - 1
                        ),
                    )),
                };
            }
        }
    }
    Err(Diagnostic::new(
        Code::UnknownRef,
        format!("`{name}` is not a declared node"),
    ))
}

impl<'d> LinkerState<'d> {
    fn materialize(&mut self, doc: &'d Document) {
        self.graph.add_node(GraphNode::new(
            START_ID,
            NodeKind::Start,
            TextObject::plain("Proof"),
        ));
        for decl in &doc.decls {
            let name = decl.name.as_str();
            match &decl.payload {
                Payload::Text(text) => {
                    let kind = match decl.kind {
                        DeclKind::Introduction => NodeKind::Introduction,
                        DeclKind::Premise => NodeKind::Premise,
                        _ => NodeKind::Assertion,
                    };
                    self.graph
                        .add_node(GraphNode::new(name, kind, text.clone()));
                }
                Payload::Citation(cite) => {
                    self.graph.add_node(GraphNode::new(
                        name,
                        NodeKind::Citation,
                        TextObject::plain(cite.clone()),
                    ));
                }
                Payload::Existence(items) => {
                    for (k, text) in items.iter().enumerate() {
                        let kind = if k == 0 {
                            NodeKind::ExistenceHead
                        } else {
                            NodeKind::ExistenceProperty
                        };
                        self.graph.add_node(GraphNode::new(
                            format!("{name}_{k}"),
                            kind,
                            text.clone(),
                        ));
                    }
                }
            }
        }

        if let Some(first) = doc.decls.first() {
            let target = resolve_with(first.name.as_str(), |n| self.decls.get(n).copied())
                .expect("first declaration resolves");
            self.mark_referenced(&target);
            self.graph.add_edge(
                Endpoint::Node(START_ID.to_string()),
                target.clone(),
                EdgeKind::Flow,
            );
            self.graph.start_target = Some(target);
        }
    }

    fn error(&mut self, code: Code, message: impl Into<String>, span: SourceSpan) {
        self.diags.push(Diagnostic::at(code, message, span));
    }

    fn step(&mut self, item: &ScriptItem) {
        let span = item.span;
        match &item.kind {
            ScriptItemKind::Keyword(kw) => self.keyword(*kw, item),
            ScriptItemKind::NodeRef(name) => {
                if let Mode::AfterUsing { edge } = self.mode {
                    self.mode = Mode::Statement;
                    self.use_label(name, edge, span);
                    return;
                }
                match resolve_with(name, |n| self.decls.get(n).copied()) {
                    Ok(ep) => self.reference(ep, span),
                    Err(d) => self.diags.push(d.with_span(span)),
                }
            }
            ScriptItemKind::Question | ScriptItemKind::Falsum => {
                if let Mode::AfterUsing { .. } = self.mode {
                    self.mode = Mode::Statement;
                    self.error(
                        Code::UsingNonPlain,
                        "`using` needs a declared assertion node holding the label text",
                        span,
                    );
                    return;
                }
                let node = if item.kind == ScriptItemKind::Question {
                    self.questions += 1;
                    GraphNode::new(
                        format!("_q{}", self.questions),
                        NodeKind::Question,
                        TextObject::plain("?"),
                    )
                } else {
                    self.falsums += 1;
                    GraphNode::new(
                        format!("_f{}", self.falsums),
                        NodeKind::Falsum,
                        TextObject::plain("\u{22a5}"),
                    )
                };
                let ep = Endpoint::Node(node.id.clone());
                self.graph.add_node(node);
                self.reference(ep, span);
            }
        }
    }

    fn keyword(&mut self, kw: Keyword, item: &ScriptItem) {
        let span = item.span;
        match kw {
            Keyword::So | Keyword::Go => match self.focus.clone() {
                Some(tail) => {
                    self.mode = if kw == Keyword::So {
                        Mode::AfterSo { tail }
                    } else {
                        Mode::AfterGo { tail }
                    };
                }
                None => {
                    self.error(
                        Code::NoFocus,
                        format!(
                            "`{}` has nothing to continue from; no node has been deduced yet",
                            item.word
                        ),
                        span,
                    );
                    self.mode = Mode::Statement;
                }
            },
            Keyword::By => match self.last_named.clone() {
                Some(target) => {
                    if let Mode::AfterBy { reasons, .. } = self.mode {
                        if reasons > 1 {
                            self.error(
                                Code::AmbiguousBy,
                                format!("`by` after a clause with {reasons} reasons supports only the last of them"),
                                span,
                            );
                        }
                    }
                    self.mode = Mode::AfterBy { target, reasons: 0 };
                }
                None => {
                    self.error(Code::NoTarget, "`by` has no node to support", span);
                    self.mode = Mode::Statement;
                }
            },
            Keyword::Now => self.mode = Mode::AfterNow,
            Keyword::Suppose => {
                if item.is_case() && self.mode != Mode::AfterNow && self.focus.is_some() {
                    self.error(
                        Code::CaseNoNow,
                        "`case` after the first should be preceded by `now`",
                        span,
                    );
                    self.mode = Mode::AfterNow;
                }
                self.pending_suppose = Some(span);
            }
            Keyword::Using => match self.last_deduction_edge {
                Some(edge) => self.mode = Mode::AfterUsing { edge },
                None => {
                    self.error(
                        Code::NoTarget,
                        "`using` has no deduction arrow to label",
                        span,
                    );
                    self.mode = Mode::Statement;
                }
            },
            Keyword::ProofOpen | Keyword::CasesOpen => self.open_subproof(kw, span),
            Keyword::End => self.close_subproof(span),
        }
    }

    fn open_subproof(&mut self, kw: Keyword, span: SourceSpan) {
        let mut saved_mode = std::mem::replace(&mut self.mode, Mode::Statement);
        if let Mode::AfterSo { .. } = saved_mode {
            self.error(
                Code::SubproofAsConsequence,
                "a subproof cannot follow `so`/`then`; it may be a reason or a flow target, not a consequence",
                span,
            );
            saved_mode = Mode::Statement;
        }
        let id = format!("S{}", self.graph.subproofs.len() + 1);
        self.graph.subproofs.push(Subproof {
            id: id.clone(),
            kind: if kw == Keyword::CasesOpen {
                SubproofKind::Cases
            } else {
                SubproofKind::Proof
            },
            parent: self.stack.last().map(|f| f.id.clone()),
            members: Vec::new(),
            anchor: None,
        });
        self.stack.push(Frame {
            id,
            open_span: span,
            saved_focus: self.focus.take(),
            saved_last_named: self.last_named.take(),
            saved_mode,
            saved_suppose: self.pending_suppose.take(),
        });
    }

    fn close_subproof(&mut self, span: SourceSpan) {
        let Some(frame) = self.pop_frame() else {
            self.error(
                Code::EndUnmatched,
                "`end` without a matching `proof` or `cases`",
                span,
            );
            return;
        };
        self.focus = frame.saved_focus;
        self.last_named = frame.saved_last_named;
        self.mode = frame.saved_mode;
        self.pending_suppose = frame.saved_suppose;
        self.reference(Endpoint::Subproof(frame.id), span);
    }

    /// Pops the innermost subproof and fixes its anchor to the interior focus.
    fn pop_frame(&mut self) -> Option<Frame> {
        let frame = self.stack.pop()?;
        let anchor = self
            .focus
            .as_ref()
            .and_then(|f| self.graph.anchor_node(f))
            .map(str::to_string);
        let sp = self
            .graph
            .subproof_mut(&frame.id)
            .expect("open subproof exists");
        sp.anchor = anchor.or_else(|| sp.members.last().cloned());
        Some(frame)
    }

    fn finish(&mut self) {
        while !self.stack.is_empty() {
            let frame = self.pop_frame().expect("stack not empty");
            self.error(
                Code::UnclosedSubproof,
                format!("subproof `{}` is never closed with `end`", frame.id),
                frame.open_span,
            );
        }
    }

    fn mark_referenced(&mut self, ep: &Endpoint) {
        match ep {
            Endpoint::Node(id) => {
                if let Some(g) = self.graph.node(id).and_then(|n| n.group()) {
                    self.referenced.insert(g.to_string());
                }
                self.referenced.insert(id.clone());
            }
            Endpoint::Group(g) => {
                self.referenced.insert(g.clone());
                let ids: Vec<String> = self.graph.group_members(g).map(|n| n.id.clone()).collect();
                self.referenced.extend(ids);
            }
            Endpoint::Subproof(_) => {}
        }
    }

    /// On first reference, puts a node into the innermost open subproof (or
    /// leaves it at top level). Existence groups move as a unit.
    fn place(&mut self, ep: &Endpoint) {
        let key = match ep {
            Endpoint::Node(id) => match self.graph.node(id).and_then(|n| n.group()) {
                Some(g) => g.to_string(),
                None => id.clone(),
            },
            Endpoint::Group(g) => g.clone(),
            Endpoint::Subproof(_) => return,
        };
        if !self.placed.insert(key.clone()) {
            return;
        }
        let Some(frame) = self.stack.last() else {
            return;
        };
        let parent = frame.id.clone();
        let ids: Vec<String> = if self.graph.group_head(&key).is_some() {
            self.graph
                .group_members(&key)
                .map(|n| n.id.clone())
                .collect()
        } else {
            vec![key]
        };
        for id in &ids {
            if let Some(node) = self.graph.node_mut(id) {
                node.parent = Some(parent.clone());
            }
        }
        if let Some(sp) = self.graph.subproof_mut(&parent) {
            sp.members.extend(ids);
        }
    }

    fn is_consumed(&self, ep: &Endpoint) -> bool {
        match ep {
            Endpoint::Node(id) => self.graph.node(id).is_some_and(|n| n.consumed_as_label),
            _ => false,
        }
    }

    /// A node, group or closed subproof appearing in the script.
    fn reference(&mut self, ep: Endpoint, span: SourceSpan) {
        if self.is_consumed(&ep) {
            self.pending_suppose = None;
            self.error(
                Code::LabelNodeReferenced,
                format!("`{ep}` is used as an arrow label and cannot also be a node"),
                span,
            );
            return;
        }
        self.place(&ep);
        self.mark_referenced(&ep);

        if self.pending_suppose.take().is_some() {
            let node = match &ep {
                Endpoint::Node(id) => self.graph.node_mut(id),
                _ => None,
            };
            match node {
                Some(n) if n.kind == NodeKind::Assertion => n.is_assumption = true,
                _ => self.error(
                    Code::SupposeNonAssertion,
                    format!("only assertion nodes can be supposed; `{ep}` is not one"),
                    span,
                ),
            }
        }

        match self.mode.clone() {
            Mode::Statement | Mode::AfterNow | Mode::AfterUsing { .. } => {
                self.mode = Mode::Statement;
                self.focus = Some(ep.clone());
                self.last_named = Some(ep);
            }
            Mode::AfterSo { tail } => {
                self.edge(tail, ep.clone(), EdgeKind::Deduction, span);
                self.focus = Some(ep.clone());
                self.last_named = Some(ep);
            }
            Mode::AfterBy { target, reasons } => {
                self.edge(ep.clone(), target.clone(), EdgeKind::Deduction, span);
                self.mode = Mode::AfterBy {
                    target,
                    reasons: reasons + 1,
                };
                self.last_named = Some(ep);
            }
            Mode::AfterGo { tail } => {
                self.edge(tail, ep.clone(), EdgeKind::Flow, span);
                self.focus = Some(ep.clone());
                self.last_named = Some(ep);
            }
        }
    }

    fn edge(&mut self, tail: Endpoint, head: Endpoint, kind: EdgeKind, span: SourceSpan) {
        let r = self.graph.add_edge(tail, head, kind);
        if kind == EdgeKind::Deduction && r.index.is_some() {
            self.last_deduction_edge = r.index;
        }
        self.diags
            .extend(r.diagnostics.into_iter().map(|d| d.with_span(span)));
    }

    fn use_label(&mut self, name: &str, edge: usize, span: SourceSpan) {
        let ep = match resolve_with(name, |n| self.decls.get(n).copied()) {
            Ok(ep) => ep,
            Err(d) => {
                self.diags.push(d.with_span(span));
                return;
            }
        };
        let text = match &ep {
            Endpoint::Node(id) => self
                .graph
                .node(id)
                .filter(|n| n.kind == NodeKind::Assertion)
                .and_then(|n| n.label.as_plain())
                .map(str::to_string),
            _ => None,
        };
        let Some(text) = text else {
            self.error(
                Code::UsingNonPlain,
                format!(
                    "label node `{name}` must be an assertion with a plain `{{s ...}}` text object"
                ),
                span,
            );
            return;
        };
        if self.referenced.contains(ep.id()) {
            self.error(
                Code::LabelNodeReferenced,
                format!(
                    "`{name}` is already a node in the diagram and cannot also be an arrow label"
                ),
                span,
            );
            return;
        }
        if let Some(node) = self.graph.node_mut(ep.id()) {
            node.consumed_as_label = true;
        }
        self.graph.edges[edge].label = Some(text);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_document;

    fn run(decls: &str, script: &str) -> LinkResult {
        let doc = parse_document(&format!("{decls}\nlink({script})")).unwrap();
        assert!(doc.diagnostics.is_empty(), "{:?}", doc.diagnostics);
        link(&doc)
    }

    fn edges(g: &ProofGraph) -> Vec<(String, String, EdgeKind)> {
        g.edges
            .iter()
            .filter(|e| e.tail.id() != START_ID)
            .map(|e| (e.tail.to_string(), e.head.to_string(), e.kind))
            .collect()
    }

    fn ded(a: &str, b: &str) -> (String, String, EdgeKind) {
        (a.into(), b.into(), EdgeKind::Deduction)
    }

    fn codes(diags: &[Diagnostic]) -> Vec<&'static str> {
        diags.iter().map(|d| d.code.as_str()).collect()
    }

    const AS: &str = "A0 {s a} A1 {s b} A2 {s c} A3 {s d}";

    #[test]
    fn start_points_at_first_declaration() {
        let r = run(AS, "");
        assert_eq!(r.graph.start_target, Some(Endpoint::Node("A0".into())));
        assert_eq!(r.graph.edges.len(), 1);
        assert_eq!(r.graph.edges[0].kind, EdgeKind::Flow);
        let r = run("", "");
        assert!(r.graph.start_target.is_none());
        assert!(r.graph.edges.is_empty());
    }

    #[test]
    fn multi_consequent_focus_is_last() {
        let r = run(AS, "A0 so A1 A2 go A3");
        assert_eq!(
            edges(&r.graph),
            vec![
                ded("A0", "A1"),
                ded("A0", "A2"),
                ("A2".into(), "A3".into(), EdgeKind::Flow)
            ]
        );
    }

    #[test]
    fn no_focus_and_no_target() {
        let r = run(AS, "so A1");
        assert_eq!(codes(&r.diagnostics), ["E-NO-FOCUS"]);
        let r = run(AS, "go A1");
        assert_eq!(codes(&r.diagnostics), ["E-NO-FOCUS"]);
        let r = run(AS, "by A1");
        assert_eq!(codes(&r.diagnostics), ["E-NO-TARGET"]);
        let r = run(AS, "A0 go A1 using A2");
        assert_eq!(codes(&r.diagnostics), ["E-NO-TARGET"]);
    }

    #[test]
    fn subproof_as_consequence_rejected() {
        let r = run(AS, "A0 so proof A1 end");
        assert_eq!(codes(&r.diagnostics), ["E-SUBPROOF-AS-CONSEQUENCE"]);
        assert!(edges(&r.graph).is_empty());
    }

    #[test]
    fn subproof_as_reason_and_flow_target() {
        let r = run(AS, "A0 by proof A1 so A2 end go proof A3 end");
        assert_eq!(
            edges(&r.graph),
            vec![
                ded("A1", "A2"),
                ("S1".into(), "A0".into(), EdgeKind::Deduction),
                ("A0".into(), "S2".into(), EdgeKind::Flow),
            ]
        );
        let s1 = r.graph.subproof("S1").unwrap();
        assert_eq!(s1.members, ["A1", "A2"]);
        assert_eq!(s1.anchor.as_deref(), Some("A2"));
        assert!(r.diagnostics.is_empty(), "{:?}", r.diagnostics);
    }

    #[test]
    fn deduction_into_subproof_via_by() {
        let r = run(AS, "proof A1 end by A2");
        assert_eq!(codes(&r.diagnostics), ["E-DEDUCE-INTO-SUBPROOF"]);
    }

    #[test]
    fn end_unmatched_and_unclosed() {
        let r = run(AS, "A0 end");
        assert_eq!(codes(&r.diagnostics), ["E-END-UNMATCHED"]);
        let r = run(AS, "A0 now proof A1 so A2");
        assert_eq!(codes(&r.diagnostics), ["E-UNCLOSED-SUBPROOF"]);
        assert_eq!(r.graph.subproofs[0].anchor.as_deref(), Some("A2"));
    }

    #[test]
    fn nested_subproofs() {
        let r = run(AS, "A0 now proof A1 now cases case A2 so A3 end end");
        assert!(r.diagnostics.is_empty(), "{:?}", r.diagnostics);
        let s1 = r.graph.subproof("S1").unwrap();
        let s2 = r.graph.subproof("S2").unwrap();
        assert_eq!(s2.parent.as_deref(), Some("S1"));
        assert_eq!(s1.members, ["A1"]);
        assert_eq!(s2.members, ["A2", "A3"]);
        assert_eq!(s2.kind, SubproofKind::Cases);
        // S1's interior focus was S2, whose anchor is A3
        assert_eq!(s1.anchor.as_deref(), Some("A3"));
    }

    #[test]
    fn suppose_rules() {
        let r = run(AS, "A0 go suppose A1 so A2");
        assert!(r.graph.node("A1").unwrap().is_assumption);
        assert_eq!(
            edges(&r.graph),
            vec![("A0".into(), "A1".into(), EdgeKind::Flow), ded("A1", "A2")]
        );
        let r = run("I0 {s x}", "suppose I0");
        assert_eq!(codes(&r.diagnostics), ["E-SUPPOSE-NONASSERTION"]);
        let r = run(AS, "suppose ?");
        assert_eq!(codes(&r.diagnostics), ["E-SUPPOSE-NONASSERTION"]);
    }

    #[test]
    fn case_without_now_warns() {
        let r = run(AS, "cases case A0 so A1 case A2 so A3 end");
        assert_eq!(codes(&r.diagnostics), ["W-CASE-NO-NOW"]);
        // behaves as if `now` preceded it: no arrow A1 -> A2
        assert_eq!(edges(&r.graph), vec![ded("A0", "A1"), ded("A2", "A3")]);
        assert!(r.graph.node("A2").unwrap().is_assumption);
    }

    #[test]
    fn ambiguous_by() {
        let r = run(AS, "A0 by A1 A2 by A3");
        assert_eq!(codes(&r.diagnostics), ["W-AMBIGUOUS-BY"]);
        assert_eq!(
            edges(&r.graph),
            vec![ded("A1", "A0"), ded("A2", "A0"), ded("A3", "A2")]
        );
        let r = run(AS, "A0 by A1 by A2");
        assert!(r.diagnostics.is_empty());
    }

    #[test]
    fn using_labels_latest_deduction() {
        let r = run(AS, "A0 so A1 A2 using A3");
        assert!(r.diagnostics.is_empty());
        let labeled: Vec<_> = r.graph.edges.iter().filter(|e| e.label.is_some()).collect();
        assert_eq!(labeled.len(), 1);
        assert_eq!(labeled[0].head, Endpoint::Node("A2".into()));
        assert_eq!(labeled[0].label.as_deref(), Some("d"));
        assert!(r.graph.node("A3").unwrap().consumed_as_label);
    }

    #[test]
    fn using_errors() {
        let r = run(
            "A0 {s a} A1 {s b} A2 {l {s x}} I3 {s y}",
            "A0 so A1 using A2",
        );
        assert_eq!(codes(&r.diagnostics), ["E-USING-NONPLAIN"]);
        let r = run(
            "A0 {s a} A1 {s b} A2 {l {s x}} I3 {s y}",
            "A0 so A1 using I3",
        );
        assert_eq!(codes(&r.diagnostics), ["E-USING-NONPLAIN"]);
        // label node used as a node afterwards
        let r = run(AS, "A0 so A1 using A3 so A3");
        assert_eq!(codes(&r.diagnostics), ["E-LABEL-NODE-REFERENCED"]);
        assert!(r.graph.edges.iter().all(|e| e.head.id() != "A3"));
        // node used before being taken as a label
        let r = run(AS, "A0 so A3 so A1 using A3");
        assert_eq!(codes(&r.diagnostics), ["E-LABEL-NODE-REFERENCED"]);
        assert!(!r.graph.node("A3").unwrap().consumed_as_label);
        // the start edge counts as a reference
        let r = run(AS, "A1 so A2 using A0");
        assert_eq!(codes(&r.diagnostics), ["E-LABEL-NODE-REFERENCED"]);
    }

    #[test]
    fn existence_refs() {
        let decls = "A0 {s a} E5 [{s t0} {s t1} {s t2}]";
        let r = run(decls, "A0 by E5_1 now E5 so A0");
        assert_eq!(
            edges(&r.graph),
            vec![
                ded("E5_1", "A0"),
                ("E5".into(), "A0".into(), EdgeKind::Deduction)
            ]
        );
        let r = run(decls, "A0 by E5_3");
        assert_eq!(codes(&r.diagnostics), ["E-ESUB-RANGE"]);
        let doc = parse_document(&format!("{decls} link()")).unwrap();
        assert_eq!(resolve_ref(&doc, "E5_0"), Ok(Endpoint::Node("E5_0".into())));
        assert_eq!(resolve_ref(&doc, "E5_1"), Ok(Endpoint::Node("E5_1".into())));
        assert_eq!(resolve_ref(&doc, "E5"), Ok(Endpoint::Group("E5".into())));
        assert_eq!(resolve_ref(&doc, "E5_3").unwrap_err().code, Code::ESubRange);
        assert_eq!(
            resolve_ref(&doc, "E5_99999999999999999999999")
                .unwrap_err()
                .code,
            Code::ESubRange
        );
        assert_eq!(resolve_ref(&doc, "A7").unwrap_err().code, Code::UnknownRef);
    }

    #[test]
    fn existence_group_moves_into_subproof_together() {
        let r = run("A0 {s a} E5 [{s t0} {s t1}]", "A0 now proof A0 by E5_1 end");
        let s1 = r.graph.subproof("S1").unwrap();
        assert_eq!(s1.members, ["E5_0", "E5_1"]);
        assert_eq!(r.graph.node("E5_0").unwrap().parent.as_deref(), Some("S1"));
        // A0 was referenced before the subproof opened
        assert!(r.graph.node("A0").unwrap().parent.is_none());
    }

    #[test]
    fn fresh_question_and_falsum_nodes() {
        let r = run(AS, "A0 by ? so falsum now ? so falsum");
        let ids: Vec<&str> = r.graph.nodes.keys().map(String::as_str).collect();
        assert!(ids.contains(&"_q1") && ids.contains(&"_q2"));
        assert!(ids.contains(&"_f1") && ids.contains(&"_f2"));
        assert_eq!(
            r.graph.node("_f1").unwrap().label,
            TextObject::plain("\u{22a5}")
        );
    }
}
