use std::collections::HashMap;

use crate::diagnostic::{Code, Diagnostic, SourceSpan};

use super::{
    Align, DeclKind, Document, Keyword, NodeDecl, NodeName, Payload, ScriptItem, ScriptItemKind,
    TextObject,
};

/// Marker for an unrecoverable error; the diagnostic has already been recorded.
struct Fatal;

type PResult<T> = Result<T, Fatal>;

enum RawToken {
    Word(String),
    Question,
}

struct Parser<'s> {
    src: &'s str,
    pos: usize,
    diags: Vec<Diagnostic>,
}

/// Parses a whole ProofFlow file.
///
/// Recoverable problems are reported in [`Document::diagnostics`]. `Err` is
/// returned only when the top-level structure is lost (an unclosed
/// delimiter or no `link` block at all); it holds every diagnostic gathered
/// up to that point.
pub fn parse_document(source: &str) -> Result<Document, Vec<Diagnostic>> {
    let mut p = Parser {
        src: source,
        pos: 0,
        diags: Vec::new(),
    };
    match p.document() {
        Ok(doc) => Ok(doc),
        Err(Fatal) => Err(p.diags),
    }
}

/// Parses a single text object such as `{l {s a} {s b}}`.
pub fn parse_text_object(source: &str) -> Result<TextObject, Vec<Diagnostic>> {
    let mut p = Parser {
        src: source,
        pos: 0,
        diags: Vec::new(),
    };
    p.skip_ws();
    if p.peek() != Some('{') {
        let here = p.pos;
        p.error(
            Code::Syntax,
            "a text object must start with `{`",
            here,
            here,
        );
        return Err(p.diags);
    }
    let obj = match p.text_object() {
        Ok(obj) => obj,
        Err(Fatal) => return Err(p.diags),
    };
    p.skip_ws();
    if p.pos < p.src.len() {
        let (start, end) = (p.pos, p.src.len());
        p.error(
            Code::Syntax,
            "unexpected text after the text object",
            start,
            end,
        );
    }
    match obj {
        Some(obj) if p.diags.is_empty() => Ok(obj),
        _ => Err(p.diags),
    }
}

fn is_word_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl<'s> Parser<'s> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn span(&self, start: usize, end: usize) -> SourceSpan {
        SourceSpan::from_offsets(self.src, start, end)
    }

    fn error(&mut self, code: Code, message: impl Into<String>, start: usize, end: usize) {
        let span = self.span(start, end);
        self.diags.push(Diagnostic::at(code, message, span));
    }

    fn unclosed(&mut self, open: usize, what: char) -> Fatal {
        self.error(
            Code::Unbalanced,
            format!("`{what}` is never closed"),
            open,
            open + what.len_utf8(),
        );
        Fatal
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    /// Whitespace and `#` comments.
    fn skip_trivia(&mut self) {
        loop {
            self.skip_ws();
            if self.peek() != Some('#') {
                return;
            }
            while self.peek().is_some_and(|c| c != '\n') {
                self.bump();
            }
        }
    }

    fn word(&mut self) -> &'s str {
        let start = self.pos;
        while self.peek().is_some_and(is_word_char) {
            self.bump();
        }
        &self.src[start..self.pos]
    }

    fn document(&mut self) -> PResult<Document> {
        let mut decls: Vec<NodeDecl> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut script: Option<Vec<(RawToken, SourceSpan)>> = None;

        loop {
            self.skip_trivia();
            let Some(c) = self.peek() else { break };
            let start = self.pos;
            if is_word_char(c) {
                let word = self.word();
                if word.eq_ignore_ascii_case("link") {
                    let tokens = self.link_block(start)?;
                    if script.is_some() {
                        self.error(
                            Code::LinkBlock,
                            "a file may contain only one `link( ... )` block",
                            start,
                            self.pos,
                        );
                    } else {
                        script = Some(tokens);
                    }
                    continue;
                }
                let decl = self.decl(word, start)?;
                if script.is_some() {
                    self.error(
                        Code::LinkBlock,
                        format!("declaration of `{word}` after the `link` block; declare all nodes first"),
                        start,
                        self.pos,
                    );
                    continue;
                }
                let Some(decl) = decl else { continue };
                if let Some(&prev) = index.get(decl.name.as_str()) {
                    let line = decls[prev].span.line;
                    self.diags.push(Diagnostic::at(
                        Code::DupDecl,
                        format!("`{}` is already declared on line {line}", decl.name),
                        decl.span,
                    ));
                } else {
                    index.insert(decl.name.to_string(), decls.len());
                    decls.push(decl);
                }
            } else {
                self.unexpected(c, "expected a node declaration or the `link` block")?;
            }
        }

        let Some(tokens) = script else {
            let end = self.src.len();
            self.error(Code::LinkBlock, "missing `link( ... )` block", end, end);
            return Err(Fatal);
        };

        let script = self.resolve_script(&decls, tokens);
        Ok(Document {
            decls,
            script,
            diagnostics: std::mem::take(&mut self.diags),
        })
    }

    /// Reports a stray character and skips it, or the whole bracketed group
    /// it opens.
    fn unexpected(&mut self, c: char, context: &str) -> PResult<()> {
        let start = self.pos;
        match c {
            '{' | '(' | '[' => {
                self.skip_group()?;
                self.error(
                    Code::Syntax,
                    format!("unexpected `{c}`; {context}"),
                    start,
                    self.pos,
                );
            }
            '}' | ')' | ']' => {
                self.bump();
                self.error(
                    Code::Unbalanced,
                    format!("unmatched `{c}`"),
                    start,
                    self.pos,
                );
            }
            _ => {
                self.bump();
                self.error(
                    Code::Syntax,
                    format!("unexpected `{c}`; {context}"),
                    start,
                    self.pos,
                );
            }
        }
        Ok(())
    }

    /// Skips a balanced `{}`/`()`/`[]` group starting at the cursor.
    fn skip_group(&mut self) -> PResult<()> {
        let mut stack: Vec<(char, usize)> = Vec::new();
        loop {
            let at = self.pos;
            let Some(c) = self.bump() else {
                let (open, at) = stack.last().copied().unwrap_or(('(', at));
                return Err(self.unclosed(at, open));
            };
            match c {
                '\\' => {
                    self.bump();
                }
                '{' | '(' | '[' => stack.push((c, at)),
                '}' | ')' | ']' => {
                    stack.pop();
                    if stack.is_empty() {
                        return Ok(());
                    }
                }
                _ => {}
            }
        }
    }

    fn decl(&mut self, word: &'s str, start: usize) -> PResult<Option<NodeDecl>> {
        let name = match NodeName::new(word) {
            Ok(name) => Some(name),
            Err(msg) => {
                self.error(Code::BadName, msg, start, start + word.len());
                None
            }
        };
        self.skip_trivia();
        let payload = match self.peek() {
            Some('{') => self.text_object()?.map(Payload::Text),
            Some('(') => self.citation()?.map(Payload::Citation),
            Some('[') => self.existence()?.map(Payload::Existence),
            _ => {
                self.error(
                    Code::Syntax,
                    format!("expected `{{...}}`, `(...)` or `[...]` after `{word}`"),
                    start,
                    start + word.len(),
                );
                return Ok(None);
            }
        };
        let (Some(name), Some(payload)) = (name, payload) else {
            return Ok(None);
        };
        let kind = name.kind();
        let fits = matches!(
            (kind, &payload),
            (DeclKind::Citation, Payload::Citation(_))
                | (DeclKind::Existence, Payload::Existence(_))
                | (
                    DeclKind::Assertion | DeclKind::Introduction | DeclKind::Premise,
                    Payload::Text(_)
                )
        );
        if !fits {
            let expected = match kind {
                DeclKind::Citation => "a parenthesized citation `( ... )`",
                DeclKind::Existence => "a bracketed list of text objects `[ ... ]`",
                _ => "a single text object `{ ... }`",
            };
            self.error(
                Code::Syntax,
                format!("`{name}` takes {expected}"),
                start,
                self.pos,
            );
            return Ok(None);
        }
        Ok(Some(NodeDecl {
            name,
            kind,
            payload,
            span: self.span(start, self.pos),
        }))
    }

    /// Parses `{...}` at the cursor. `Ok(None)` means the object was malformed
    /// but skipped.
    fn text_object(&mut self) -> PResult<Option<TextObject>> {
        let open = self.pos;
        self.bump();
        self.skip_ws();
        let header_start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_alphabetic()) {
            self.bump();
        }
        let header = &self.src[header_start..self.pos];

        if header == "s" {
            let body = self.plain_body(open)?;
            return Ok(Some(TextObject::Plain(body.trim().to_string())));
        }

        let align: Option<Vec<Align>> = header.chars().map(Align::from_letter).collect();
        match align {
            Some(align) if !align.is_empty() => {
                let mut children = Vec::new();
                let mut ok = true;
                loop {
                    self.skip_ws();
                    match self.peek() {
                        None => return Err(self.unclosed(open, '{')),
                        Some('}') => {
                            self.bump();
                            break;
                        }
                        Some('{') => match self.text_object()? {
                            Some(child) => children.push(child),
                            None => ok = false,
                        },
                        Some(c) => {
                            ok = false;
                            self.unexpected(c, "table cells must be text objects `{...}`")?;
                        }
                    }
                }
                Ok(ok.then_some(TextObject::Table { align, children }))
            }
            _ => {
                self.error(
                    Code::TextObjHeader,
                    format!(
                        "text object must begin with `s` or a sequence of `l`, `c`, `r`; found `{header}`"
                    ),
                    open,
                    self.pos,
                );
                self.plain_body(open)?;
                Ok(None)
            }
        }
    }

    /// Consumes raw text up to the brace that closes the object opened at
    /// `open`. Nested braces must balance; `\{` and `\}` are literal.
    fn plain_body(&mut self, open: usize) -> PResult<&'s str> {
        let start = self.pos;
        let mut depth = 0usize;
        loop {
            let at = self.pos;
            match self.bump() {
                None => return Err(self.unclosed(open, '{')),
                Some('\\') => {
                    self.bump();
                }
                Some('{') => depth += 1,
                Some('}') if depth == 0 => return Ok(&self.src[start..at]),
                Some('}') => depth -= 1,
                Some(_) => {}
            }
        }
    }

    fn citation(&mut self) -> PResult<Option<String>> {
        let open = self.pos;
        self.bump();
        let start = self.pos;
        let mut depth = 0usize;
        let body = loop {
            let at = self.pos;
            match self.bump() {
                None => return Err(self.unclosed(open, '(')),
                Some('(') => depth += 1,
                Some(')') if depth == 0 => break &self.src[start..at],
                Some(')') => depth -= 1,
                Some(_) => {}
            }
        };
        let body = body.trim();
        if body.is_empty() {
            self.error(Code::Syntax, "citation is empty", open, self.pos);
            return Ok(None);
        }
        Ok(Some(body.to_string()))
    }

    fn existence(&mut self) -> PResult<Option<Vec<TextObject>>> {
        let open = self.pos;
        self.bump();
        let mut items = Vec::new();
        let mut ok = true;
        loop {
            self.skip_trivia();
            match self.peek() {
                None => return Err(self.unclosed(open, '[')),
                Some(']') => {
                    self.bump();
                    break;
                }
                Some('{') => match self.text_object()? {
                    Some(t) => items.push(t),
                    None => ok = false,
                },
                Some(c) => {
                    ok = false;
                    self.unexpected(c, "existence nodes take text objects `{...}`")?;
                }
            }
        }
        if ok && items.is_empty() {
            self.error(
                Code::Syntax,
                "existence node needs at least one text object",
                open,
                self.pos,
            );
            return Ok(None);
        }
        Ok(ok.then_some(items))
    }

    fn link_block(&mut self, start: usize) -> PResult<Vec<(RawToken, SourceSpan)>> {
        self.skip_trivia();
        if self.peek() != Some('(') {
            self.error(
                Code::LinkBlock,
                "expected `(` after `link`",
                start,
                self.pos,
            );
            return Ok(Vec::new());
        }
        let open = self.pos;
        self.bump();
        let mut tokens = Vec::new();
        loop {
            let at = self.pos;
            match self.peek() {
                None => return Err(self.unclosed(open, '(')),
                Some(')') => {
                    self.bump();
                    return Ok(tokens);
                }
                Some(c) if c.is_whitespace() || matches!(c, ';' | ',' | '.') => {
                    self.bump();
                }
                Some('#') => self.skip_trivia(),
                Some('?') => {
                    self.bump();
                    tokens.push((RawToken::Question, self.span(at, self.pos)));
                }
                Some(c) if is_word_char(c) => {
                    let word = self.word().to_string();
                    tokens.push((RawToken::Word(word), self.span(at, self.pos)));
                }
                Some(c) => self.unexpected(c, "not part of the proof script language")?,
            }
        }
    }

    fn resolve_script(
        &mut self,
        decls: &[NodeDecl],
        tokens: Vec<(RawToken, SourceSpan)>,
    ) -> Vec<ScriptItem> {
        let kinds: HashMap<&str, DeclKind> =
            decls.iter().map(|d| (d.name.as_str(), d.kind)).collect();
        let mut items = Vec::with_capacity(tokens.len());
        for (token, span) in tokens {
            let word = match token {
                RawToken::Question => {
                    items.push(ScriptItem {
                        kind: ScriptItemKind::Question,
                        word: "?".into(),
                        span,
                    });
                    continue;
                }
                RawToken::Word(w) => w,
            };
            let kind = if let Some(kw) = Keyword::lookup(&word) {
                ScriptItemKind::Keyword(kw)
            } else if word.eq_ignore_ascii_case("falsum") {
                ScriptItemKind::Falsum
            } else if kinds.contains_key(word.as_str()) || is_esub_name(&word, &kinds) {
                ScriptItemKind::NodeRef(word.clone())
            } else {
                let hint = kinds
                    .keys()
                    .find(|k| k.eq_ignore_ascii_case(&word))
                    .map(|k| format!(" (names are case-sensitive; did you mean `{k}`?)"))
                    .unwrap_or_default();
                self.diags.push(Diagnostic::at(
                    Code::UnknownRef,
                    format!("`{word}` is neither a keyword nor a declared node{hint}"),
                    span,
                ));
                continue;
            };
            let word = match kind {
                ScriptItemKind::NodeRef(_) => word,
                _ => word.to_ascii_lowercase(),
            };
            items.push(ScriptItem { kind, word, span });
        }
        items
    }
}

/// `Ename_k` for a declared existence node `Ename`. The index is range-checked
/// by the linker.
fn is_esub_name(word: &str, kinds: &HashMap<&str, DeclKind>) -> bool {
    word.rsplit_once('_').is_some_and(|(base, idx)| {
        !idx.is_empty()
            && idx.bytes().all(|b| b.is_ascii_digit())
            && kinds.get(base) == Some(&DeclKind::Existence)
    })
}
