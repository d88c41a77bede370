//! Output formats: DOT for layout tools and a JSON interchange document.

mod dot;
mod json;

use thiserror::Error;

pub use dot::to_dot;
pub use json::{from_json, to_json};

#[derive(Debug, Error)]
pub enum EmitError {
    #[error("citation URL template must contain `{{name}}` exactly once: `{0}`")]
    InvalidTemplate(String),
    #[error("malformed graph JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("graph JSON refers to unknown endpoint `{0}`")]
    UnknownEndpoint(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum RankDir {
    #[default]
    TopBottom,
    LeftRight,
}

impl RankDir {
    pub fn as_dot(self) -> &'static str {
        match self {
            RankDir::TopBottom => "TB",
            RankDir::LeftRight => "LR",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum TexMode {
    /// Labels are emitted exactly as written.
    #[default]
    Passthrough,
    /// Unescaped `$` math delimiters are dropped.
    StripMathDelimiters,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RenderOptions {
    citation_url_template: Option<String>,
    pub rankdir: RankDir,
    pub tex_mode: TexMode,
}

impl RenderOptions {
    /// Sets a URL template for citation nodes, e.g.
    /// `https://example.org/wiki/{name}`.
    pub fn with_citation_url(mut self, template: impl Into<String>) -> Result<Self, EmitError> {
        let template = template.into();
        if template.matches("{name}").count() != 1 {
            return Err(EmitError::InvalidTemplate(template));
        }
        self.citation_url_template = Some(template);
        Ok(self)
    }

    pub fn citation_url_template(&self) -> Option<&str> {
        self.citation_url_template.as_deref()
    }
}

/// Escapes text for use inside a double-quoted DOT label.
///
/// Backslashes are doubled so that LaTeX such as `\neq` is not read as a
/// DOT line-break escape; quotes are escaped and newlines become `\n`.
pub fn escape_label(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for c in text.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => {}
            c => out.push(c),
        }
    }
    out
}

fn apply_tex_mode(text: &str, mode: TexMode) -> String {
    match mode {
        TexMode::Passthrough => text.to_string(),
        TexMode::StripMathDelimiters => {
            let mut out = String::with_capacity(text.len());
            let mut escaped = false;
            for c in text.chars() {
                if c == '$' && !escaped {
                    continue;
                }
                escaped = c == '\\' && !escaped;
                out.push(c);
            }
            out
        }
    }
}
