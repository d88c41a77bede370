//! Shared test support: fixtures, a DOT grammar checker, and small
//! independent oracles used to cross-check the compiler.
#![allow(dead_code)]

pub mod suites;
pub mod tour_oracle;

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::PathBuf;

use proofflow::graph::{EdgeKind, ProofGraph};

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixtures_dir().join(name)).expect("fixture exists")
}

/// Every `.pf` file in the fixture directory, sorted by name.
pub fn corpus() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixtures_dir())
        .expect("fixture dir")
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "pf"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

pub type EdgeTriple = (String, String, EdgeKind);

/// Edges as sorted `(tail, head, kind)` triples.
pub fn edge_set(graph: &ProofGraph) -> Vec<EdgeTriple> {
    let mut v: Vec<EdgeTriple> = graph
        .edges
        .iter()
        .map(|e| (e.tail.id().to_string(), e.head.id().to_string(), e.kind))
        .collect();
    v.sort_by(|a, b| (&a.0, &a.1, a.2 as u8).cmp(&(&b.0, &b.1, b.2 as u8)));
    v
}

pub fn ded(t: &str, h: &str) -> EdgeTriple {
    (t.to_string(), h.to_string(), EdgeKind::Deduction)
}

pub fn flow(t: &str, h: &str) -> EdgeTriple {
    (t.to_string(), h.to_string(), EdgeKind::Flow)
}

// ---------------------------------------------------------------------------
// Reference interpreter
// ---------------------------------------------------------------------------

/// Straight-line interpreter for scripts made only of node names and the
/// words `so`, `by`, `go`, `now`. Written from the arrow rules directly,
/// without any of the compiler's state machinery:
///
/// - `X by R1 .. Rn` draws Ri -> X, where X is the most recently named node;
/// - `so C1 .. Cn` / `go C1 .. Cn` draw focus -> Ci, and the last Ci becomes
///   the focus;
/// - a bare name or `now N` moves the focus without drawing anything.
///
/// Duplicates collapse, and a deduction arrow absorbs a flow arrow on the
/// same pair. Returns `None` for scripts outside that fragment.
pub fn reference_edges(words: &[&str]) -> Option<Vec<EdgeTriple>> {
    let mut edges: BTreeMap<(String, String), EdgeKind> = BTreeMap::new();
    let mut draw = |t: &str, h: &str, k: EdgeKind| {
        let e = edges.entry((t.to_string(), h.to_string())).or_insert(k);
        if k == EdgeKind::Deduction {
            *e = k;
        }
    };
    let mut focus: Option<String> = None;
    let mut last: Option<String> = None;
    let mut verb = "";
    let mut by_target: Option<String> = None;
    let mut clause_tail: Option<String> = None;
    for w in words {
        match w.to_ascii_lowercase().as_str() {
            "so" | "go" => {
                clause_tail = Some(focus.clone()?);
                verb = if w.eq_ignore_ascii_case("so") {
                    "so"
                } else {
                    "go"
                };
            }
            "by" => {
                by_target = Some(last.clone()?);
                verb = "by";
            }
            "now" => verb = "",
            name if name.starts_with('a') => {
                let name = w.to_string();
                match verb {
                    "so" | "go" => {
                        let kind = if verb == "so" {
                            EdgeKind::Deduction
                        } else {
                            EdgeKind::Flow
                        };
                        draw(clause_tail.as_ref().unwrap(), &name, kind);
                        focus = Some(name.clone());
                    }
                    "by" => draw(&name, by_target.as_ref().unwrap(), EdgeKind::Deduction),
                    _ => focus = Some(name.clone()),
                }
                last = Some(name);
            }
            _ => return None,
        }
    }
    let mut v: Vec<EdgeTriple> = edges.into_iter().map(|((t, h), k)| (t, h, k)).collect();
    v.sort_by(|a, b| (&a.0, &a.1, a.2 as u8).cmp(&(&b.0, &b.1, b.2 as u8)));
    Some(v)
}

// ---------------------------------------------------------------------------
// Longest path by enumeration
// ---------------------------------------------------------------------------

/// Longest simple path, in edges, by trying every simple path.
pub fn brute_force_longest_path(n: usize, arcs: &[(usize, usize)]) -> usize {
    fn dfs(v: usize, adj: &[Vec<usize>], on_path: &mut [bool]) -> usize {
        on_path[v] = true;
        let mut best = 0;
        for &w in &adj[v] {
            if !on_path[w] {
                best = best.max(1 + dfs(w, adj, on_path));
            }
        }
        on_path[v] = false;
        best
    }
    let mut adj = vec![Vec::new(); n];
    for &(t, h) in arcs {
        adj[t].push(h);
    }
    let mut on_path = vec![false; n];
    (0..n)
        .map(|v| dfs(v, &adj, &mut on_path))
        .max()
        .unwrap_or(0)
}

// ---------------------------------------------------------------------------
// DOT checker
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Id(String),
    Quoted(String),
    Html(String),
    Punct(&'static str),
}

fn tokenize(src: &str) -> Result<Vec<Tok>, String> {
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut out = Vec::new();
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' {
            let mut s = String::new();
            i += 1;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated string".into()),
                    Some('"') => break,
                    Some('\\') => {
                        s.push('\\');
                        s.push(*chars.get(i + 1).ok_or("dangling escape")?);
                        i += 2;
                    }
                    Some(&c) => {
                        s.push(c);
                        i += 1;
                    }
                }
            }
            i += 1;
            out.push(Tok::Quoted(s));
        } else if c == '<' {
            let mut depth = 0;
            let start = i;
            loop {
                match chars.get(i) {
                    None => return Err("unterminated HTML label".into()),
                    Some('<') => depth += 1,
                    Some('>') => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    _ => {}
                }
                i += 1;
            }
            out.push(Tok::Html(chars[start + 1..i].iter().collect()));
            i += 1;
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            out.push(Tok::Punct("->"));
            i += 2;
        } else if let Some(p) = ["{", "}", "[", "]", ";", "=", ","]
            .into_iter()
            .find(|p| p.starts_with(c))
        {
            out.push(Tok::Punct(p));
            i += 1;
        } else if c.is_alphanumeric() || c == '_' || c == '.' || c == '-' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || "_.-".contains(chars[i])) {
                i += 1;
            }
            out.push(Tok::Id(chars[start..i].iter().collect()));
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

#[derive(Debug, Default)]
pub struct DotSummary {
    pub nodes: Vec<String>,
    pub node_attrs: BTreeMap<String, BTreeMap<String, String>>,
    pub edges: Vec<(String, String, BTreeMap<String, String>)>,
    pub clusters: Vec<String>,
    pub graph_attrs: BTreeMap<String, String>,
}

struct DotParser {
    toks: Vec<Tok>,
    pos: usize,
    out: DotSummary,
}

impl DotParser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Result<Tok, String> {
        let t = self.toks.get(self.pos).cloned().ok_or("unexpected end")?;
        self.pos += 1;
        Ok(t)
    }

    fn punct(&mut self, p: &str) -> Result<(), String> {
        match self.next()? {
            Tok::Punct(q) if q == p => Ok(()),
            t => Err(format!("expected `{p}`, found {t:?}")),
        }
    }

    fn is_punct(&self, p: &str) -> bool {
        matches!(self.peek(), Some(Tok::Punct(q)) if *q == p)
    }

    fn id(&mut self) -> Result<String, String> {
        match self.next()? {
            Tok::Id(s) | Tok::Quoted(s) | Tok::Html(s) => Ok(s),
            t => Err(format!("expected identifier, found {t:?}")),
        }
    }

    fn attrs(&mut self) -> Result<BTreeMap<String, String>, String> {
        let mut map = BTreeMap::new();
        while self.is_punct("[") {
            self.pos += 1;
            while !self.is_punct("]") {
                let k = self.id()?;
                self.punct("=")?;
                let v = self.id()?;
                if map.insert(k.clone(), v).is_some() {
                    return Err(format!("attribute `{k}` repeated"));
                }
                if self.is_punct(",") || self.is_punct(";") {
                    self.pos += 1;
                }
            }
            self.pos += 1;
        }
        Ok(map)
    }

    fn stmts(&mut self) -> Result<(), String> {
        self.punct("{")?;
        while !self.is_punct("}") {
            self.stmt()?;
            if self.is_punct(";") {
                self.pos += 1;
            }
        }
        self.punct("}")
    }

    fn stmt(&mut self) -> Result<(), String> {
        if let Some(Tok::Id(kw)) = self.peek() {
            match kw.as_str() {
                "graph" | "node" | "edge" => {
                    self.pos += 1;
                    self.attrs()?;
                    return Ok(());
                }
                "subgraph" => {
                    self.pos += 1;
                    if !self.is_punct("{") {
                        let name = self.id()?;
                        if self.out.clusters.contains(&name) {
                            return Err(format!("duplicate subgraph `{name}`"));
                        }
                        self.out.clusters.push(name);
                    }
                    return self.stmts();
                }
                _ => {}
            }
        }
        let first = self.id()?;
        if self.is_punct("=") {
            self.pos += 1;
            let v = self.id()?;
            self.out.graph_attrs.insert(first, v);
            return Ok(());
        }
        let mut chain = vec![first];
        while self.is_punct("->") {
            self.pos += 1;
            chain.push(self.id()?);
        }
        let attrs = self.attrs()?;
        if chain.len() == 1 {
            let name = chain.pop().unwrap();
            if self.out.node_attrs.insert(name.clone(), attrs).is_some() {
                return Err(format!("node `{name}` declared twice"));
            }
            self.out.nodes.push(name);
        } else {
            for w in chain.windows(2) {
                self.out
                    .edges
                    .push((w[0].clone(), w[1].clone(), attrs.clone()));
            }
        }
        Ok(())
    }
}

/// Parses `src` under a small DOT grammar (one `digraph`, statements,
/// subgraphs, attribute lists) and checks that every edge joins declared
/// nodes, no node is declared twice, subgraph names are unique, and every
/// `ltail`/`lhead` names an existing cluster.
pub fn check_dot(src: &str) -> Result<DotSummary, String> {
    let toks = tokenize(src)?;
    let mut p = DotParser {
        toks,
        pos: 0,
        out: DotSummary::default(),
    };
    match p.next()? {
        Tok::Id(s) if s == "digraph" => {}
        t => return Err(format!("expected `digraph`, found {t:?}")),
    }
    if !p.is_punct("{") {
        p.id()?;
    }
    p.stmts()?;
    if p.pos != p.toks.len() {
        return Err("trailing tokens after graph".into());
    }
    let out = p.out;
    let declared: HashSet<&String> = out.nodes.iter().collect();
    let clusters: BTreeSet<&String> = out.clusters.iter().collect();
    for (t, h, attrs) in &out.edges {
        for end in [t, h] {
            if !declared.contains(end) {
                return Err(format!("edge endpoint `{end}` is not declared"));
            }
        }
        for key in ["ltail", "lhead"] {
            if let Some(c) = attrs.get(key) {
                if !clusters.contains(c) {
                    return Err(format!("{key} names unknown cluster `{c}`"));
                }
            }
        }
    }
    Ok(out)
}

/// Undoes DOT string escaping; line-break escapes become `\n`.
pub fn unescape_label(s: &str) -> String {
    let mut out = String::new();
    let mut chars = s.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('n') | Some('l') | Some('r') => out.push('\n'),
            Some(c) => out.push(c),
            None => out.push('\\'),
        }
    }
    out
}
