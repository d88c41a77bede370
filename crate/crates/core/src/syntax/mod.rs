//! Source-level representation of a ProofFlow file.
//!
//! A file is a list of node declarations followed by a single
//! `link( ... )` block holding the proof script:
//!
//! ```text
//! I01 {s Let $X$ be an object}
//! A02 {l {s first line} {s second line}}
//! C03 ( Some_Theorem )
//! E04 [ {s $\exists a$ such that} {s $a$ has this property} ]
//! link( I01 go A02 so A03 by C03 )
//! ```

mod parser;
mod print;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagnostic::{Diagnostic, SourceSpan};

pub use parser::{parse_document, parse_text_object};

/// Declaration kind, fixed by the first letter of the node name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DeclKind {
    Assertion,
    Citation,
    Existence,
    Introduction,
    Premise,
}

impl DeclKind {
    pub fn from_letter(c: char) -> Option<DeclKind> {
        match c {
            'A' => Some(DeclKind::Assertion),
            'C' => Some(DeclKind::Citation),
            'E' => Some(DeclKind::Existence),
            'I' => Some(DeclKind::Introduction),
            'P' => Some(DeclKind::Premise),
            _ => None,
        }
    }
}

/// A validated node name: `[ACEIP][A-Za-z0-9]*`, not a script keyword.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeName(String);

impl NodeName {
    pub fn new(text: &str) -> Result<NodeName, String> {
        let mut chars = text.chars();
        match chars.next() {
            None => return Err("node name is empty".into()),
            Some(c) if DeclKind::from_letter(c).is_none() => {
                return Err(format!(
                    "node name `{text}` must start with one of A, C, E, I, P"
                ))
            }
            _ => {}
        }
        if let Some(bad) = text.chars().find(|c| !c.is_ascii_alphanumeric()) {
            return Err(format!(
                "node name `{text}` contains `{bad}`; only letters and digits are allowed"
            ));
        }
        if Keyword::lookup(text).is_some() {
            return Err(format!(
                "`{text}` is a script keyword and cannot name a node"
            ));
        }
        Ok(NodeName(text.to_string()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn kind(&self) -> DeclKind {
        // The constructor guarantees a valid first letter.
        DeclKind::from_letter(self.0.chars().next().unwrap_or('A')).unwrap_or(DeclKind::Assertion)
    }
}

impl fmt::Display for NodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Align {
    #[serde(rename = "l")]
    Left,
    #[serde(rename = "c")]
    Center,
    #[serde(rename = "r")]
    Right,
}

impl Align {
    pub fn from_letter(c: char) -> Option<Align> {
        match c {
            'l' => Some(Align::Left),
            'c' => Some(Align::Center),
            'r' => Some(Align::Right),
            _ => None,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Align::Left => 'l',
            Align::Center => 'c',
            Align::Right => 'r',
        }
    }
}

/// Text shown on a node.
///
/// A table lays its children out row-major, one cell per alignment letter;
/// a final short row is padded with empty cells.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TextObject {
    Plain(String),
    Table {
        align: Vec<Align>,
        children: Vec<TextObject>,
    },
}

impl TextObject {
    pub fn plain(text: impl Into<String>) -> Self {
        TextObject::Plain(text.into())
    }

    pub fn as_plain(&self) -> Option<&str> {
        match self {
            TextObject::Plain(s) => Some(s),
            TextObject::Table { .. } => None,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            TextObject::Plain(_) => 1,
            TextObject::Table { children, .. } => {
                1 + children.iter().map(TextObject::depth).max().unwrap_or(0)
            }
        }
    }

    /// Rows of cells for a table; `None` marks a padding cell.
    pub fn rows(align: &[Align], children: &[TextObject]) -> Vec<Vec<Option<usize>>> {
        let width = align.len().max(1);
        (0..children.len().div_ceil(width))
            .map(|r| {
                (0..width)
                    .map(|c| {
                        let i = r * width + c;
                        (i < children.len()).then_some(i)
                    })
                    .collect()
            })
            .collect()
    }

    /// Flattens the object to plain multi-line text: rows become lines and
    /// cells within a row are separated by a single space.
    pub fn to_plain_text(&self) -> String {
        self.lines().join("\n")
    }

    fn lines(&self) -> Vec<String> {
        match self {
            TextObject::Plain(s) => vec![s.clone()],
            TextObject::Table { align, children } => {
                let mut out = Vec::new();
                for row in TextObject::rows(align, children) {
                    let cells: Vec<Vec<String>> = row
                        .iter()
                        .filter_map(|c| c.map(|i| children[i].lines()))
                        .collect();
                    let height = cells.iter().map(Vec::len).max().unwrap_or(0);
                    for k in 0..height {
                        let parts: Vec<&str> = cells
                            .iter()
                            .filter_map(|c| c.get(k).map(String::as_str))
                            .filter(|s| !s.is_empty())
                            .collect();
                        out.push(parts.join(" "));
                    }
                }
                out
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Payload {
    Text(TextObject),
    Citation(String),
    Existence(Vec<TextObject>),
}

#[derive(Debug, Clone)]
pub struct NodeDecl {
    pub name: NodeName,
    pub kind: DeclKind,
    pub payload: Payload,
    pub span: SourceSpan,
}

impl NodeDecl {
    /// Number of boxes an existence declaration expands to; 1 otherwise.
    pub fn box_count(&self) -> usize {
        match &self.payload {
            Payload::Existence(items) => items.len(),
            _ => 1,
        }
    }
}

/// Canonical script keywords. Synonyms are folded at parse time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Keyword {
    So,
    By,
    Go,
    Now,
    Suppose,
    Using,
    End,
    ProofOpen,
    CasesOpen,
}

impl Keyword {
    /// Case-insensitive keyword lookup.
    pub fn lookup(word: &str) -> Option<Keyword> {
        let kw = match word.to_ascii_lowercase().as_str() {
            "so" | "then" => Keyword::So,
            "by" => Keyword::By,
            "go" | "next" => Keyword::Go,
            "now" | "and" | "but" => Keyword::Now,
            "suppose" | "case" => Keyword::Suppose,
            "using" => Keyword::Using,
            "end" => Keyword::End,
            "proof" => Keyword::ProofOpen,
            "cases" => Keyword::CasesOpen,
            _ => return None,
        };
        Some(kw)
    }

    pub fn canonical(self) -> &'static str {
        match self {
            Keyword::So => "so",
            Keyword::By => "by",
            Keyword::Go => "go",
            Keyword::Now => "now",
            Keyword::Suppose => "suppose",
            Keyword::Using => "using",
            Keyword::End => "end",
            Keyword::ProofOpen => "proof",
            Keyword::CasesOpen => "cases",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ScriptItemKind {
    Keyword(Keyword),
    NodeRef(String),
    Falsum,
    Question,
}

/// One token of the proof script. `word` keeps the source spelling,
/// lowercased for keywords, so `case` stays distinguishable from `suppose`.
#[derive(Debug, Clone)]
pub struct ScriptItem {
    pub kind: ScriptItemKind,
    pub word: String,
    pub span: SourceSpan,
}

impl ScriptItem {
    pub fn is_case(&self) -> bool {
        self.kind == ScriptItemKind::Keyword(Keyword::Suppose) && self.word == "case"
    }
}

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub decls: Vec<NodeDecl>,
    pub script: Vec<ScriptItem>,
    pub diagnostics: Vec<Diagnostic>,
}

impl Document {
    pub fn decl(&self, name: &str) -> Option<&NodeDecl> {
        self.decls.iter().find(|d| d.name.as_str() == name)
    }

    pub fn script_kinds(&self) -> Vec<ScriptItemKind> {
        self.script.iter().map(|i| i.kind.clone()).collect()
    }

    /// Span-free view used to compare documents structurally.
    pub fn shape(&self) -> DocumentShape {
        DocumentShape {
            decls: self
                .decls
                .iter()
                .map(|d| (d.name.to_string(), d.payload.clone()))
                .collect(),
            script: self.script_kinds(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DocumentShape {
    pub decls: Vec<(String, Payload)>,
    pub script: Vec<ScriptItemKind>,
}
