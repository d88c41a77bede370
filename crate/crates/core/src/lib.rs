//! ProofFlow: a small language for the inferential structure of proofs.
//!
//! The pipeline is [`syntax::parse_document`] → [`linker::link`] →
//! [`graph::ProofGraph::validate`] → [`emit`]. [`compile`] runs the first
//! three stages; [`metrics`] computes structural statistics over the result.

pub mod diagnostic;
pub mod emit;
pub mod graph;
pub mod linker;
pub mod metrics;
pub mod syntax;

pub use diagnostic::{Code, Diagnostic, Severity, SourceSpan};
pub use graph::ProofGraph;

/// Output of a successful front-end run.
#[derive(Debug, Clone)]
pub struct Compilation {
    pub document: syntax::Document,
    pub graph: ProofGraph,
    /// Parse, link and validation diagnostics, in that order.
    pub diagnostics: Vec<Diagnostic>,
}

impl Compilation {
    pub fn has_errors(&self) -> bool {
        diagnostic::has_errors(&self.diagnostics)
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }
}

/// Parses, links and validates `source`. `Err` carries the diagnostics of a
/// fatal parse failure.
pub fn compile(source: &str) -> Result<Compilation, Vec<Diagnostic>> {
    let document = syntax::parse_document(source)?;
    let linked = linker::link(&document);
    let mut diagnostics = document.diagnostics.clone();
    diagnostics.extend(linked.diagnostics);
    diagnostics.extend(linked.graph.validate());
    Ok(Compilation {
        document,
        graph: linked.graph,
        diagnostics,
    })
}
