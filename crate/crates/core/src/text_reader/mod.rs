//! Pull-style reader that walks a document one node at a time.
//!
//! Each call to [`Reader::read`] yields a whole node (tag, text run, comment,
//! ...), a [`MalformedToken`] describing a broken construct, or
//! [`ReadOutcome::EndOfInput`]. After a malformed construct the reader skips to
//! a safe point: the next `>` when it comes before the next `<`, otherwise
//! the next `<`. Scanning then carries on, so a single pass can surface many
//! problems.
//!
//! Problems that do not break the node structure (bad references, `]]>` in
//! text, characters outside the XML character range) are collected on the side
//! and handed out by [`Reader::take_diagnostics`].

mod chars;
mod references;
mod stack;

pub use chars::{is_name, is_name_char, is_name_start_char, is_xml_char, is_xml_whitespace};
pub use references::resolve_references;
pub(crate) use references::{expand, Normalize};
pub use stack::{CloseOutcome, ElementStack, OpenElement};

use crate::diagnostic::{Diagnostic, DiagnosticCode};
use crate::position::{LineCounter, SourcePosition, SourceSpan};
use crate::wellformedness::ParserOptions;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeKind {
    Declaration,
    StartElement,
    EndElement,
    Text,
    Comment,
    ProcessingInstruction,
    CData,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attribute {
    pub name: String,
    /// Value with references expanded and whitespace normalized.
    pub value: String,
    pub name_span: SourceSpan,
    /// Span of the quoted literal, quotes included.
    pub value_span: SourceSpan,
}

impl Attribute {
    pub fn new(name: impl Into<String>, value: impl Into<String>) -> Self {
        let span = SourceSpan::point(SourcePosition::START);
        Self {
            name: name.into(),
            value: value.into(),
            name_span: span,
            value_span: span,
        }
    }
}

/// One node of the document.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeEvent {
    pub kind: NodeKind,
    /// Element name or PI target; empty for other kinds.
    pub name: String,
    /// Element attributes, or the declaration's pseudo-attributes.
    pub attributes: Vec<Attribute>,
    /// Character data of Text, Comment, CData and PI nodes.
    pub text_content: String,
    pub is_empty_element: bool,
    pub depth: usize,
    pub span: SourceSpan,
}

impl NodeEvent {
    fn bare(kind: NodeKind) -> Self {
        Self {
            kind,
            name: String::new(),
            attributes: Vec::new(),
            text_content: String::new(),
            is_empty_element: false,
            depth: 0,
            span: SourceSpan::point(SourcePosition::START),
        }
    }

    pub fn declaration(pseudo_attributes: Vec<Attribute>) -> Self {
        Self {
            attributes: pseudo_attributes,
            ..Self::bare(NodeKind::Declaration)
        }
    }

    pub fn start_element(
        name: impl Into<String>,
        attributes: Vec<Attribute>,
        is_empty: bool,
    ) -> Self {
        Self {
            name: name.into(),
            attributes,
            is_empty_element: is_empty,
            ..Self::bare(NodeKind::StartElement)
        }
    }

    pub fn end_element(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..Self::bare(NodeKind::EndElement)
        }
    }

    pub fn text(content: impl Into<String>) -> Self {
        Self {
            text_content: content.into(),
            ..Self::bare(NodeKind::Text)
        }
    }

    pub fn comment(content: impl Into<String>) -> Self {
        Self {
            text_content: content.into(),
            ..Self::bare(NodeKind::Comment)
        }
    }

    pub fn cdata(content: impl Into<String>) -> Self {
        Self {
            text_content: content.into(),
            ..Self::bare(NodeKind::CData)
        }
    }

    pub fn processing_instruction(target: impl Into<String>, data: impl Into<String>) -> Self {
        Self {
            name: target.into(),
            text_content: data.into(),
            ..Self::bare(NodeKind::ProcessingInstruction)
        }
    }

    pub fn at_depth(mut self, depth: usize) -> Self {
        self.depth = depth;
        self
    }

    pub fn attribute(&self, name: &str) -> Option<&str> {
        self.attributes
            .iter()
            .find(|a| a.name == name)
            .map(|a| a.value.as_str())
    }

    pub fn is_whitespace_text(&self) -> bool {
        self.kind == NodeKind::Text && self.text_content.chars().all(is_xml_whitespace)
    }
}

/// A construct the reader could not scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MalformedToken {
    pub code: DiagnosticCode,
    /// What was expected and what was found instead.
    pub message: String,
    pub span: SourceSpan,
    /// Where scanning resumed.
    pub resume_at: SourcePosition,
    /// Best-effort node for a broken tag whose name could be read. It has
    /// already been applied to the reader's element stack.
    pub recovered: Option<NodeEvent>,
}

impl MalformedToken {
    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic::new(self.code, self.span, self.message.clone())
    }
}

impl std::fmt::Display for MalformedToken {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}: {}", self.span.start, self.code, self.message)
    }
}

impl std::error::Error for MalformedToken {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReadOutcome {
    Node(NodeEvent),
    Malformed(MalformedToken),
    EndOfInput,
}

/// Attribute scan failure: code, position, message.
type ScanError = (DiagnosticCode, SourcePosition, String);

pub struct Reader<'a> {
    source: &'a str,
    cursor: LineCounter,
    stack: ElementStack,
    document_uri: Option<String>,
    options: ParserOptions,
    pending: Vec<Diagnostic>,
    seen_element: bool,
    seen_doctype: bool,
}

impl<'a> Reader<'a> {
    /// Creates a reader positioned before the first node. A leading byte
    /// order mark is skipped without counting a column.
    pub fn new(source: &'a str, document_uri: Option<&str>, options: ParserOptions) -> Self {
        let start = if source.starts_with('\u{FEFF}') {
            SourcePosition::new(1, 1, '\u{FEFF}'.len_utf8())
        } else {
            SourcePosition::START
        };
        Self {
            source,
            cursor: LineCounter::at(start),
            stack: ElementStack::new(),
            document_uri: document_uri.map(str::to_owned),
            options,
            pending: Vec::new(),
            seen_element: false,
            seen_doctype: false,
        }
    }

    pub fn document_uri(&self) -> Option<&str> {
        self.document_uri.as_deref()
    }

    pub fn options(&self) -> &ParserOptions {
        &self.options
    }

    pub fn source(&self) -> &'a str {
        self.source
    }

    /// Position of the next unread character.
    pub fn position(&self) -> SourcePosition {
        self.cursor.position()
    }

    /// Depth the next content node will have.
    pub fn depth(&self) -> usize {
        self.stack.depth()
    }

    pub fn open_elements(&self) -> &ElementStack {
        &self.stack
    }

    /// Non-structural diagnostics found since the last call.
    pub fn take_diagnostics(&mut self) -> Vec<Diagnostic> {
        std::mem::take(&mut self.pending)
    }

    pub fn read(&mut self) -> ReadOutcome {
        loop {
            let start = self.pos();
            let rest = self.rest();
            if rest.is_empty() {
                return ReadOutcome::EndOfInput;
            }
            return if !rest.starts_with('<') {
                self.read_text(start)
            } else if rest.starts_with("<?") {
                self.read_pi(start)
            } else if rest.starts_with("<!--") {
                self.read_comment(start)
            } else if rest.starts_with("<![CDATA[") {
                self.read_cdata(start)
            } else if rest.starts_with("<!DOCTYPE") {
                match self.skip_doctype(start) {
                    Some(outcome) => outcome,
                    None => continue,
                }
            } else if rest.starts_with("<!") {
                self.bump_n(2);
                let at = self.pos();
                self.malformed_resync(
                    DiagnosticCode::MalformedTag,
                    SourceSpan::new(start, at),
                    "unrecognized markup declaration after '<!'".to_owned(),
                )
            } else if rest.starts_with("</") {
                self.read_end_tag(start)
            } else {
                self.read_start_tag(start)
            };
        }
    }

    // -- cursor primitives --------------------------------------------------

    fn pos(&self) -> SourcePosition {
        self.cursor.position()
    }

    fn rest(&self) -> &'a str {
        &self.source[self.pos().offset..]
    }

    fn peek(&self) -> Option<char> {
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        if !is_xml_char(c) {
            let at = self.pos();
            let mut end = self.cursor;
            end.advance(c);
            self.pending.push(Diagnostic::new(
                DiagnosticCode::InvalidEncoding,
                SourceSpan::new(at, end.position()),
                format!("character U+{:04X} is not allowed in XML", c as u32),
            ));
        }
        self.cursor.advance(c);
        Some(c)
    }

    /// Consumes `bytes` bytes, which must end on a character boundary.
    fn bump_n(&mut self, bytes: usize) {
        let target = self.pos().offset + bytes;
        while self.pos().offset < target && self.bump().is_some() {}
    }

    fn skip_ws(&mut self) -> bool {
        let mut any = false;
        while self.peek().is_some_and(is_xml_whitespace) {
            self.bump();
            any = true;
        }
        any
    }

    fn scan_name(&mut self) -> Option<String> {
        let rest = self.rest();
        let mut chars = rest.char_indices();
        match chars.next() {
            Some((_, c)) if is_name_start_char(c) => {}
            _ => return None,
        }
        let len = chars
            .find(|&(_, c)| !is_name_char(c))
            .map_or(rest.len(), |(i, _)| i);
        self.bump_n(len);
        Some(rest[..len].to_owned())
    }

    fn skip_to_lt(&mut self) {
        let len = self.rest().find('<').unwrap_or(self.rest().len());
        self.bump_n(len);
    }

    /// Recovery inside a broken tag. Consumes through the next `>` if it
    /// comes before the next `<` and reports whether it was `/>`; otherwise
    /// stops at the `<` (or end of input) and returns `None`.
    fn resync_in_tag(&mut self) -> Option<bool> {
        let rest = self.rest();
        match (rest.find('>'), rest.find('<')) {
            (Some(gt), lt) if lt.is_none_or(|lt| gt < lt) => {
                let self_closing = rest[..gt].ends_with('/');
                self.bump_n(gt + 1);
                Some(self_closing)
            }
            _ => {
                self.skip_to_lt();
                None
            }
        }
    }

    fn at_tag_boundary(&self) -> bool {
        matches!(self.peek(), None | Some('<'))
    }

    fn span_from(&self, start: SourcePosition) -> SourceSpan {
        SourceSpan::new(start, self.pos())
    }

    fn malformed(&self, code: DiagnosticCode, span: SourceSpan, message: String) -> ReadOutcome {
        ReadOutcome::Malformed(MalformedToken {
            code,
            message,
            span,
            resume_at: self.pos(),
            recovered: None,
        })
    }

    fn malformed_resync(
        &mut self,
        code: DiagnosticCode,
        span: SourceSpan,
        message: String,
    ) -> ReadOutcome {
        if !self.at_tag_boundary() {
            self.resync_in_tag();
        }
        self.malformed(code, span, message)
    }

    fn normalized(raw: &str) -> String {
        match raw.contains('\r') {
            true => raw.replace("\r\n", "\n").replace('\r', "\n"),
            false => raw.to_owned(),
        }
    }

    // -- node scanners -------------------------------------------------------

    fn read_text(&mut self, start: SourcePosition) -> ReadOutcome {
        let rest = self.rest();
        let raw = &rest[..rest.find('<').unwrap_or(rest.len())];
        for (idx, _) in raw.match_indices("]]>") {
            let mut at = LineCounter::at(start);
            at.advance_str(&raw[..idx]);
            let mut end = at;
            end.advance_str("]]>");
            self.pending.push(Diagnostic::new(
                DiagnosticCode::CdataEndInText,
                SourceSpan::new(at.position(), end.position()),
                "']]>' is not allowed in character data; write ']]&gt;'",
            ));
        }
        self.bump_n(raw.len());
        let text = expand(
            raw,
            SourceSpan::point(start),
            Normalize::Text,
            &mut self.pending,
        );
        ReadOutcome::Node(NodeEvent {
            text_content: text,
            depth: self.stack.depth(),
            span: self.span_from(start),
            ..NodeEvent::bare(NodeKind::Text)
        })
    }

    fn bad_name(&mut self, start: SourcePosition, what: &str) -> ReadOutcome {
        let at = self.pos();
        match self.peek() {
            None => self.malformed(
                DiagnosticCode::UnexpectedEof,
                self.span_from(start),
                format!("input ends where {what} name was expected"),
            ),
            Some(c) => {
                let message = if is_xml_whitespace(c) || c == '<' {
                    format!("expected {what} name after '<'; a literal '<' must be written '&lt;'")
                } else {
                    format!("'{}' cannot start {what} name", c.escape_debug())
                };
                let span = SourceSpan::new(at, at);
                self.malformed_resync(DiagnosticCode::InvalidName, span, message)
            }
        }
    }

    fn read_start_tag(&mut self, start: SourcePosition) -> ReadOutcome {
        self.bump();
        let Some(name) = self.scan_name() else {
            return self.bad_name(start, "an element");
        };
        let mut attributes = Vec::new();
        loop {
            let had_ws = self.skip_ws();
            let here = self.pos();
            let failure = match self.peek() {
                Some('>') => {
                    self.bump();
                    let node = self.open_element(start, name, attributes, false);
                    return ReadOutcome::Node(node);
                }
                Some('/') => {
                    self.bump();
                    if self.peek() == Some('>') {
                        self.bump();
                        let node = self.open_element(start, name, attributes, true);
                        return ReadOutcome::Node(node);
                    }
                    (
                        DiagnosticCode::MalformedTag,
                        here,
                        format!("expected '>' after '/' in start tag <{name}>"),
                    )
                }
                None => (
                    DiagnosticCode::UnexpectedEof,
                    start,
                    format!("input ends inside start tag <{name}>; expected '>'"),
                ),
                Some('<') => (
                    DiagnosticCode::MalformedTag,
                    start,
                    format!("start tag <{name}> is not closed; expected '>' before the next '<'"),
                ),
                Some(c) if is_name_start_char(c) && had_ws => match self.read_attribute(false) {
                    Ok(attribute) => {
                        attributes.push(attribute);
                        continue;
                    }
                    Err(failure) => failure,
                },
                Some(c) if is_name_start_char(c) => (
                    DiagnosticCode::MalformedTag,
                    here,
                    format!("expected whitespace before attribute in start tag <{name}>"),
                ),
                Some(c) => (
                    DiagnosticCode::MalformedTag,
                    here,
                    format!(
                        "unexpected character '{}' in start tag <{name}>; expected '>'",
                        c.escape_debug()
                    ),
                ),
            };
            let (code, at, message) = failure;
            let span = self.span_from(at);
            let self_closing = match self.at_tag_boundary() {
                true => false,
                false => self.resync_in_tag().unwrap_or(false),
            };
            let node = self.open_element(start, name, attributes, self_closing);
            return ReadOutcome::Malformed(MalformedToken {
                code,
                message,
                span,
                resume_at: self.pos(),
                recovered: Some(node),
            });
        }
    }

    fn open_element(
        &mut self,
        start: SourcePosition,
        name: String,
        attributes: Vec<Attribute>,
        is_empty: bool,
    ) -> NodeEvent {
        let span = self.span_from(start);
        let depth = self.stack.depth();
        if !is_empty {
            self.stack.push(&name, span);
        }
        self.seen_element = true;
        NodeEvent {
            name,
            attributes,
            is_empty_element: is_empty,
            depth,
            span,
            ..NodeEvent::bare(NodeKind::StartElement)
        }
    }

    /// Scans `name S? = S? "value"`. Declaration pseudo-attributes keep their
    /// literal value.
    fn read_attribute(&mut self, pseudo: bool) -> Result<Attribute, ScanError> {
        let name_start = self.pos();
        let name = self.scan_name().expect("caller checked name start");
        let name_span = self.span_from(name_start);
        self.skip_ws();
        match self.peek() {
            Some('=') => {
                self.bump();
            }
            None => {
                return Err((
                    DiagnosticCode::UnexpectedEof,
                    self.pos(),
                    format!("input ends after attribute name '{name}'; expected '='"),
                ))
            }
            Some(c) => {
                return Err((
                    DiagnosticCode::MalformedTag,
                    self.pos(),
                    format!(
                        "expected '=' after attribute name '{name}', found '{}'",
                        c.escape_debug()
                    ),
                ))
            }
        }
        self.skip_ws();
        let quote = match self.peek() {
            Some(q @ ('"' | '\'')) => q,
            None => {
                return Err((
                    DiagnosticCode::UnexpectedEof,
                    self.pos(),
                    format!("input ends before the value of attribute '{name}'"),
                ))
            }
            Some(_) => {
                return Err((
                    DiagnosticCode::UnquotedAttributeValue,
                    self.pos(),
                    format!("value of attribute '{name}' must be quoted"),
                ))
            }
        };
        let value_start = self.pos();
        self.bump();
        let raw_start = self.pos();
        loop {
            match self.peek() {
                Some(c) if c == quote => break,
                Some('<') => {
                    return Err((
                        DiagnosticCode::MalformedTag,
                        self.pos(),
                        format!("'<' is not allowed in the value of attribute '{name}'"),
                    ))
                }
                None => {
                    return Err((
                        DiagnosticCode::UnexpectedEof,
                        value_start,
                        format!("value of attribute '{name}' is never closed"),
                    ))
                }
                Some(_) => {
                    self.bump();
                }
            }
        }
        let raw = &self.source[raw_start.offset..self.pos().offset];
        self.bump();
        let value = match pseudo {
            true => raw.to_owned(),
            false => expand(
                raw,
                SourceSpan::point(raw_start),
                Normalize::Attribute,
                &mut self.pending,
            ),
        };
        Ok(Attribute {
            name,
            value,
            name_span,
            value_span: self.span_from(value_start),
        })
    }

    fn read_end_tag(&mut self, start: SourcePosition) -> ReadOutcome {
        self.bump_n(2);
        let Some(name) = self.scan_name() else {
            return self.bad_name(start, "an end tag");
        };
        self.skip_ws();
        let here = self.pos();
        let (code, at, message) = match self.peek() {
            Some('>') => {
                self.bump();
                return ReadOutcome::Node(self.close_element(start, name));
            }
            None => (
                DiagnosticCode::UnexpectedEof,
                start,
                format!("input ends inside end tag </{name}>; expected '>'"),
            ),
            Some('<') => (
                DiagnosticCode::MalformedTag,
                start,
                format!("end tag </{name}> is not closed; expected '>' before the next '<'"),
            ),
            Some(c) => (
                DiagnosticCode::MalformedTag,
                here,
                format!(
                    "unexpected character '{}' in end tag </{name}>; expected '>'",
                    c.escape_debug()
                ),
            ),
        };
        let span = self.span_from(at);
        if !self.at_tag_boundary() {
            self.resync_in_tag();
        }
        let node = self.close_element(start, name);
        ReadOutcome::Malformed(MalformedToken {
            code,
            message,
            span,
            resume_at: self.pos(),
            recovered: Some(node),
        })
    }

    fn close_element(&mut self, start: SourcePosition, name: String) -> NodeEvent {
        let depth = match self.stack.close(&name) {
            CloseOutcome::Matched(open) | CloseOutcome::ClosedAncestor { ancestor: open, .. } => {
                open.depth
            }
            CloseOutcome::Unmatched { .. } => self.stack.depth(),
        };
        NodeEvent {
            name,
            depth,
            span: self.span_from(start),
            ..NodeEvent::bare(NodeKind::EndElement)
        }
    }

    fn read_pi(&mut self, start: SourcePosition) -> ReadOutcome {
        self.bump_n(2);
        let Some(target) = self.scan_name() else {
            return self.bad_name(start, "a processing instruction target");
        };
        if target == "xml" {
            return self.read_declaration(start);
        }
        let xml_like = target
            .get(..3)
            .is_some_and(|p| p.eq_ignore_ascii_case("xml"));
        if target.eq_ignore_ascii_case("xml") {
            let span = self.span_from(start);
            return self.malformed_resync(
                DiagnosticCode::BadDeclaration,
                span,
                format!("the XML declaration must be written '<?xml', not '<?{target}'"),
            );
        }
        let here = self.pos();
        if self.rest().starts_with("?>") {
            self.bump_n(2);
            return ReadOutcome::Node(self.pi_node(start, target, String::new()));
        }
        match self.peek() {
            Some(c) if is_xml_whitespace(c) => {
                self.skip_ws();
                match self.rest().find("?>") {
                    Some(len) => {
                        let data = Self::normalized(&self.rest()[..len]);
                        self.bump_n(len + 2);
                        ReadOutcome::Node(self.pi_node(start, target, data))
                    }
                    None => {
                        self.skip_to_lt();
                        self.malformed(
                            DiagnosticCode::UnterminatedPi,
                            SourceSpan::new(start, here),
                            format!("processing instruction '{target}' is never closed with '?>'"),
                        )
                    }
                }
            }
            None => self.malformed(
                DiagnosticCode::UnterminatedPi,
                SourceSpan::new(start, here),
                format!("processing instruction '{target}' is never closed with '?>'"),
            ),
            Some(c) if xml_like => {
                let span = SourceSpan::new(start, here);
                self.malformed_resync(
                    DiagnosticCode::BadDeclaration,
                    span,
                    format!(
                        "malformed XML declaration: expected whitespace after '<?{}', found '{}'",
                        &target[..3],
                        c.escape_debug()
                    ),
                )
            }
            Some(c) => {
                let span = SourceSpan::new(here, here);
                self.malformed_resync(
                    DiagnosticCode::MalformedTag,
                    span,
                    format!(
                        "expected whitespace or '?>' after processing instruction target '{target}', found '{}'",
                        c.escape_debug()
                    ),
                )
            }
        }
    }

    fn pi_node(&self, start: SourcePosition, target: String, data: String) -> NodeEvent {
        NodeEvent {
            name: target,
            text_content: data,
            depth: self.stack.depth(),
            span: self.span_from(start),
            ..NodeEvent::bare(NodeKind::ProcessingInstruction)
        }
    }

    fn read_declaration(&mut self, start: SourcePosition) -> ReadOutcome {
        let mut attributes = Vec::new();
        loop {
            let had_ws = self.skip_ws();
            let here = self.pos();
            if self.rest().starts_with("?>") {
                self.bump_n(2);
                break;
            }
            let failure = match self.peek() {
                None => (
                    here,
                    "the XML declaration is never closed with '?>'".to_owned(),
                ),
                Some(c) if is_name_start_char(c) && had_ws => match self.read_attribute(true) {
                    Ok(attribute) => {
                        attributes.push(attribute);
                        continue;
                    }
                    Err((_, at, message)) => (at, message),
                },
                Some(c) => (
                    here,
                    format!(
                        "unexpected character '{}' in the XML declaration",
                        c.escape_debug()
                    ),
                ),
            };
            let (at, message) = failure;
            let span = self.span_from(at);
            return self.malformed_resync(
                DiagnosticCode::BadDeclaration,
                span,
                format!("malformed XML declaration: {message}"),
            );
        }
        ReadOutcome::Node(NodeEvent {
            attributes,
            depth: self.stack.depth(),
            span: self.span_from(start),
            ..NodeEvent::bare(NodeKind::Declaration)
        })
    }

    fn read_comment(&mut self, start: SourcePosition) -> ReadOutcome {
        self.bump_n(4);
        let content_start = self.pos();
        let Some(len) = self.rest().find("-->") else {
            self.skip_to_lt();
            return self.malformed(
                DiagnosticCode::UnterminatedComment,
                SourceSpan::new(start, content_start),
                "comment is never closed with '-->'".to_owned(),
            );
        };
        let content = &self.rest()[..len];
        let double_hyphen = content
            .find("--")
            .or_else(|| content.ends_with('-').then(|| content.len() - 1));
        self.bump_n(len + 3);
        let node = NodeEvent {
            text_content: Self::normalized(content),
            depth: self.stack.depth(),
            span: self.span_from(start),
            ..NodeEvent::bare(NodeKind::Comment)
        };
        match double_hyphen {
            None => ReadOutcome::Node(node),
            Some(idx) => {
                let mut at = LineCounter::at(content_start);
                at.advance_str(&content[..idx]);
                let mut end = at;
                end.advance_str(&content[idx..(idx + 2).min(content.len())]);
                ReadOutcome::Malformed(MalformedToken {
                    code: DiagnosticCode::DoubleHyphenInComment,
                    message:
                        "'--' is not allowed inside a comment, and a comment may not end with '-'"
                            .to_owned(),
                    span: SourceSpan::new(at.position(), end.position()),
                    resume_at: self.pos(),
                    recovered: Some(node),
                })
            }
        }
    }

    fn read_cdata(&mut self, start: SourcePosition) -> ReadOutcome {
        self.bump_n("<![CDATA[".len());
        let Some(len) = self.rest().find("]]>") else {
            let here = self.pos();
            self.skip_to_lt();
            return self.malformed(
                DiagnosticCode::UnterminatedCdata,
                SourceSpan::new(start, here),
                "CDATA section is never closed with ']]>'".to_owned(),
            );
        };
        let content = Self::normalized(&self.rest()[..len]);
        self.bump_n(len + 3);
        ReadOutcome::Node(NodeEvent {
            text_content: content,
            depth: self.stack.depth(),
            span: self.span_from(start),
            ..NodeEvent::bare(NodeKind::CData)
        })
    }

    /// Document type declarations are skipped, not interpreted. Returns a
    /// malformed outcome when one is misplaced or unterminated.
    fn skip_doctype(&mut self, start: SourcePosition) -> Option<ReadOutcome> {
        let misplaced = self.seen_element || self.seen_doctype;
        self.seen_doctype = true;
        let rest = self.rest();
        let mut quote = None;
        let mut brackets = 0usize;
        let mut end = None;
        for (idx, c) in rest.char_indices().skip("<!DOCTYPE".len()) {
            match (quote, c) {
                (Some(q), c) if c == q => quote = None,
                (Some(_), _) => {}
                (None, '"' | '\'') => quote = Some(c),
                (None, '[') => brackets += 1,
                (None, ']') => brackets = brackets.saturating_sub(1),
                (None, '>') if brackets == 0 => {
                    end = Some(idx + 1);
                    break;
                }
                _ => {}
            }
        }
        match end {
            Some(len) => {
                self.bump_n(len);
                misplaced.then(|| {
                    self.malformed(
                        DiagnosticCode::MalformedTag,
                        self.span_from(start),
                        "a document type declaration is only allowed once, before the root element"
                            .to_owned(),
                    )
                })
            }
            None => {
                self.bump_n(rest.len());
                Some(self.malformed(
                    DiagnosticCode::UnexpectedEof,
                    SourceSpan::new(start, start),
                    "input ends inside the document type declaration".to_owned(),
                ))
            }
        }
    }
}

impl Iterator for Reader<'_> {
    type Item = Result<NodeEvent, MalformedToken>;

    fn next(&mut self) -> Option<Self::Item> {
        match self.read() {
            ReadOutcome::Node(node) => Some(Ok(node)),
            ReadOutcome::Malformed(token) => Some(Err(token)),
            ReadOutcome::EndOfInput => None,
        }
    }
}
