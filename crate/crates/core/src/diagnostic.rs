//! Diagnostics shared by every compiler stage.
//!
//! Each diagnostic carries a stable [`Code`]. The code's prefix fixes the
//! severity: `E-` codes are errors, `W-` codes are warnings.

use std::fmt;

use serde::{Deserialize, Serialize};

/// A byte range in the source text plus the 1-based line/column of its start.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
    pub line: usize,
    pub column: usize,
}

impl SourceSpan {
    /// Builds a span over `start..end` of `source`, computing line and column.
    ///
    /// Offsets past the end of `source` are clamped.
    pub fn from_offsets(source: &str, start: usize, end: usize) -> Self {
        let start = start.min(source.len());
        let end = end.clamp(start, source.len());
        let before = &source.as_bytes()[..start];
        let line = 1 + before.iter().filter(|&&b| b == b'\n').count();
        let line_start = before
            .iter()
            .rposition(|&b| b == b'\n')
            .map_or(0, |i| i + 1);
        // Columns count characters, not bytes.
        let column = 1 + String::from_utf8_lossy(&before[line_start..])
            .chars()
            .count();
        SourceSpan {
            start,
            end,
            line,
            column,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Warning,
    Error,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Severity::Warning => f.write_str("warning"),
            Severity::Error => f.write_str("error"),
        }
    }
}

macro_rules! codes {
    ($($(#[$doc:meta])* $variant:ident => $text:literal,)*) => {
        /// Stable diagnostic identifiers.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum Code {
            $($(#[$doc])* $variant,)*
        }

        impl Code {
            pub const ALL: &'static [Code] = &[$(Code::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(Code::$variant => $text,)*
                }
            }

            pub fn from_str_code(s: &str) -> Option<Code> {
                match s {
                    $($text => Some(Code::$variant),)*
                    _ => None,
                }
            }
        }
    };
}

codes! {
    // syntax
    /// Two declarations share a name.
    DupDecl => "E-DUP-DECL",
    /// Node name with an illegal first letter or character, or a reserved word.
    BadName => "E-BAD-NAME",
    /// Unbalanced braces, brackets or parentheses.
    Unbalanced => "E-UNBALANCED",
    /// Missing, repeated or misplaced `link(...)` block.
    LinkBlock => "E-LINK-BLOCK",
    /// Script word that is neither a keyword nor a declared name.
    UnknownRef => "E-UNKNOWN-REF",
    /// Text object header is neither `s` nor a run of `l`/`c`/`r`.
    TextObjHeader => "E-TEXTOBJ-HEADER",
    /// Any other malformed input.
    Syntax => "E-SYNTAX",
    // graph
    DeduceIntoSubproof => "E-DEDUCE-INTO-SUBPROOF",
    MultiFlowOut => "E-MULTI-FLOW-OUT",
    RedundantFlow => "W-REDUNDANT-FLOW",
    DupEdge => "W-DUP-EDGE",
    Unreachable => "W-UNREACHABLE",
    DanglingDecl => "W-DANGLING-DECL",
    // linker
    NoFocus => "E-NO-FOCUS",
    NoTarget => "E-NO-TARGET",
    SubproofAsConsequence => "E-SUBPROOF-AS-CONSEQUENCE",
    EndUnmatched => "E-END-UNMATCHED",
    UnclosedSubproof => "E-UNCLOSED-SUBPROOF",
    SupposeNonAssertion => "E-SUPPOSE-NONASSERTION",
    UsingNonPlain => "E-USING-NONPLAIN",
    LabelNodeReferenced => "E-LABEL-NODE-REFERENCED",
    ESubRange => "E-ESUB-RANGE",
    CaseNoNow => "W-CASE-NO-NOW",
    AmbiguousBy => "W-AMBIGUOUS-BY",
    // metrics
    EmptyCorpus => "E-EMPTY-CORPUS",
}

impl Code {
    pub fn severity(self) -> Severity {
        if self.as_str().starts_with("W-") {
            Severity::Warning
        } else {
            Severity::Error
        }
    }
}

impl fmt::Display for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for Code {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Code {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Code::from_str_code(&s)
            .ok_or_else(|| serde::de::Error::custom(format!("unknown diagnostic code `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: Code,
    pub message: String,
    pub span: Option<SourceSpan>,
}

impl Diagnostic {
    pub fn new(code: Code, message: impl Into<String>) -> Self {
        Diagnostic {
            severity: code.severity(),
            code,
            message: message.into(),
            span: None,
        }
    }

    pub fn at(code: Code, message: impl Into<String>, span: SourceSpan) -> Self {
        Diagnostic::new(code, message).with_span(span)
    }

    pub fn with_span(mut self, span: SourceSpan) -> Self {
        self.span = Some(span);
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]: {}", self.severity, self.code, self.message)
    }
}

pub fn has_errors(diagnostics: &[Diagnostic]) -> bool {
    diagnostics.iter().any(Diagnostic::is_error)
}
