use std::fmt::Write;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};

use super::{apply_tex_mode, escape_label, RenderOptions};
use crate::graph::{EdgeKind, Endpoint, GraphNode, NodeKind, ProofGraph};
use crate::syntax::{Align, TextObject};

const URL_SAFE: &AsciiSet = &NON_ALPHANUMERIC
    .remove(b'-')
    .remove(b'_')
    .remove(b'.')
    .remove(b'~');

/// Renders the graph as a DOT digraph.
///
/// Subproofs and existence groups become clusters; arrows to or from a whole
/// cluster are drawn at an interior node and clipped to the cluster border.
pub fn to_dot(graph: &ProofGraph, opts: &RenderOptions) -> String {
    let mut w = DotWriter {
        graph,
        opts,
        out: String::new(),
    };
    w.line(0, "digraph \"proof\" {");
    w.line(1, "compound=true;");
    w.line(1, &format!("rankdir={};", opts.rankdir.as_dot()));
    w.line(1, "node [shape=box];");
    w.scope(None, 1);
    for edge in &graph.edges {
        let (tail, tail_clip) = w.endpoint(&edge.tail);
        let (head, head_clip) = w.endpoint(&edge.head);
        let mut attrs = vec![format!(
            "style={}",
            match edge.kind {
                EdgeKind::Deduction => "solid",
                EdgeKind::Flow => "dashed",
            }
        )];
        if let Some(label) = &edge.label {
            attrs.push(format!("label=\"{}\"", escape_label(label)));
        }
        if let Some(c) = tail_clip {
            attrs.push(format!("ltail=\"{c}\""));
        }
        if let Some(c) = head_clip {
            attrs.push(format!("lhead=\"{c}\""));
        }
        w.line(
            1,
            &format!(
                "{} -> {} [{}];",
                quote(&tail),
                quote(&head),
                attrs.join(", ")
            ),
        );
    }
    w.line(0, "}");
    w.out
}

struct DotWriter<'a> {
    graph: &'a ProofGraph,
    opts: &'a RenderOptions,
    out: String,
}

fn quote(id: &str) -> String {
    format!("\"{}\"", escape_label(id))
}

fn cluster_name(id: &str) -> String {
    format!("cluster_{id}")
}

/// Invisible stand-in for a subproof with nothing drawn inside.
fn placeholder(subproof: &str) -> String {
    format!("_{subproof}")
}

impl DotWriter<'_> {
    fn line(&mut self, depth: usize, text: &str) {
        for _ in 0..depth {
            self.out.push_str("  ");
        }
        self.out.push_str(text);
        self.out.push('\n');
    }

    fn endpoint(&self, ep: &Endpoint) -> (String, Option<String>) {
        match ep {
            Endpoint::Node(id) => (id.clone(), None),
            Endpoint::Group(g) => (
                self.graph.anchor_node(ep).unwrap_or(g).to_string(),
                Some(cluster_name(g)),
            ),
            Endpoint::Subproof(s) => (
                self.graph
                    .anchor_node(ep)
                    .map_or_else(|| placeholder(s), str::to_string),
                Some(cluster_name(s)),
            ),
        }
    }

    fn scope(&mut self, parent: Option<&str>, depth: usize) {
        let graph = self.graph;
        for node in graph.rendered_nodes() {
            if node.parent.as_deref() != parent {
                continue;
            }
            match (node.kind, node.group()) {
                (NodeKind::ExistenceHead, Some(g)) => self.group(g, depth),
                (NodeKind::ExistenceProperty, Some(_)) => {}
                _ => self.node(node, depth),
            }
        }
        for sp in graph
            .subproofs
            .iter()
            .filter(|s| s.parent.as_deref() == parent)
        {
            self.line(
                depth,
                &format!("subgraph {} {{", quote(&cluster_name(&sp.id))),
            );
            self.line(depth + 1, "label=\"\";");
            self.line(depth + 1, "style=rounded;");
            if sp.anchor.is_none() {
                self.line(
                    depth + 1,
                    &format!(
                        "{} [shape=point, style=invis];",
                        quote(&placeholder(&sp.id))
                    ),
                );
            }
            self.scope(Some(&sp.id), depth + 1);
            self.line(depth, "}");
        }
    }

    fn group(&mut self, name: &str, depth: usize) {
        let graph = self.graph;
        let members: Vec<&GraphNode> = graph.group_members(name).collect();
        self.line(
            depth,
            &format!("subgraph {} {{", quote(&cluster_name(name))),
        );
        self.line(depth + 1, "label=\"\";");
        self.line(depth + 1, "style=solid;");
        for node in &members {
            self.node(node, depth + 1);
        }
        for pair in members.windows(2) {
            self.line(
                depth + 1,
                &format!(
                    "{} -> {} [style=invis];",
                    quote(&pair[0].id),
                    quote(&pair[1].id)
                ),
            );
        }
        self.line(depth, "}");
    }

    fn node(&mut self, node: &GraphNode, depth: usize) {
        let mut attrs: Vec<String> = Vec::new();
        match node.kind {
            NodeKind::Start => {
                attrs.push("shape=oval".into());
                attrs.push("style=solid".into());
            }
            NodeKind::Introduction => {
                attrs.push("style=\"solid,bold\"".into());
                attrs.push("penwidth=2".into());
            }
            NodeKind::Premise => {
                attrs.push("style=\"dashed,bold\"".into());
                attrs.push("penwidth=2".into());
            }
            NodeKind::Assertion if node.is_assumption => attrs.push("style=dashed".into()),
            _ => attrs.push("style=solid".into()),
        }
        if node.kind == NodeKind::Start {
            attrs.push("label=\"Proof\"".into());
        } else {
            attrs.push(format!("label={}", self.label(&node.label)));
        }
        if node.kind == NodeKind::Citation {
            if let (Some(template), Some(name)) =
                (self.opts.citation_url_template(), node.label.as_plain())
            {
                let url =
                    template.replace("{name}", &utf8_percent_encode(name, URL_SAFE).to_string());
                attrs.push(format!("URL=\"{}\"", escape_label(&url)));
            }
        }
        let shape = if node.kind == NodeKind::Start {
            ""
        } else {
            "shape=box, "
        };
        self.line(
            depth,
            &format!("{} [{}{}];", quote(&node.id), shape, attrs.join(", ")),
        );
    }

    fn text(&self, s: &str) -> String {
        apply_tex_mode(s, self.opts.tex_mode)
    }

    fn label(&self, obj: &TextObject) -> String {
        match obj {
            TextObject::Plain(s) => format!("\"{}\"", escape_label(&self.text(s))),
            TextObject::Table { .. } if single_column(obj) => {
                let mut lines = Vec::new();
                column_lines(obj, Align::Left, &mut lines);
                let mut out = String::from("\"");
                for (align, text) in lines {
                    out.push_str(&escape_label(&self.text(&text)));
                    out.push_str(match align {
                        Align::Left => "\\l",
                        Align::Center => "\\n",
                        Align::Right => "\\r",
                    });
                }
                out.push('"');
                out
            }
            TextObject::Table { .. } => format!("<{}>", self.html(obj)),
        }
    }

    fn html(&self, obj: &TextObject) -> String {
        match obj {
            TextObject::Plain(s) => html_escape(&self.text(s)).replace('\n', "<BR/>"),
            TextObject::Table { align, children } => {
                let mut out =
                    String::from("<TABLE BORDER=\"0\" CELLBORDER=\"0\" CELLSPACING=\"0\">");
                for row in TextObject::rows(align, children) {
                    out.push_str("<TR>");
                    for (col, cell) in row.iter().enumerate() {
                        let a = match align.get(col).copied().unwrap_or(Align::Left) {
                            Align::Left => "LEFT",
                            Align::Center => "CENTER",
                            Align::Right => "RIGHT",
                        };
                        let _ = write!(out, "<TD ALIGN=\"{a}\">");
                        if let Some(i) = cell {
                            out.push_str(&self.html(&children[*i]));
                        }
                        out.push_str("</TD>");
                    }
                    out.push_str("</TR>");
                }
                out.push_str("</TABLE>");
                out
            }
        }
    }
}

fn single_column(obj: &TextObject) -> bool {
    match obj {
        TextObject::Plain(_) => true,
        TextObject::Table { align, children } => {
            align.len() == 1 && children.iter().all(single_column)
        }
    }
}

fn column_lines(obj: &TextObject, align: Align, out: &mut Vec<(Align, String)>) {
    match obj {
        TextObject::Plain(s) => out.extend(s.lines().map(|l| (align, l.to_string()))),
        TextObject::Table { align: a, children } => {
            for child in children {
                column_lines(child, a[0], out);
            }
        }
    }
}

fn html_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            c => out.push(c),
        }
    }
    out
}
