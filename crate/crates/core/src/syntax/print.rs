//! Canonical source rendering of a parsed document.

use std::fmt::{self, Write};

use super::{Document, Payload, ScriptItemKind, TextObject};

impl fmt::Display for TextObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TextObject::Plain(s) => write!(f, "{{s {s}}}"),
            TextObject::Table { align, children } => {
                f.write_char('{')?;
                for a in align {
                    f.write_char(a.letter())?;
                }
                for child in children {
                    write!(f, " {child}")?;
                }
                f.write_char('}')
            }
        }
    }
}

impl Document {
    /// Renders the declarations and the script with canonical keywords
    /// (`case` is kept as written).
    /// Parsing the result yields a document with the same [`Document::shape`].
    pub fn to_source(&self) -> String {
        let mut out = String::new();
        for decl in &self.decls {
            let _ = match &decl.payload {
                Payload::Text(t) => writeln!(out, "{} {t}", decl.name),
                Payload::Citation(c) => writeln!(out, "{} ( {c} )", decl.name),
                Payload::Existence(items) => {
                    let body: Vec<String> = items.iter().map(ToString::to_string).collect();
                    writeln!(out, "{} [ {} ]", decl.name, body.join(" "))
                }
            };
        }
        if !self.decls.is_empty() {
            out.push('\n');
        }
        out.push_str("link(");
        for item in &self.script {
            out.push(' ');
            match &item.kind {
                // `case` keeps its own spelling: it also checks for a `now`.
                ScriptItemKind::Keyword(_) if item.is_case() => out.push_str("case"),
                ScriptItemKind::Keyword(k) => out.push_str(k.canonical()),
                ScriptItemKind::NodeRef(name) => out.push_str(name),
                ScriptItemKind::Falsum => out.push_str("falsum"),
                ScriptItemKind::Question => out.push('?'),
            }
        }
        out.push_str(" )\n");
        out
    }
}
