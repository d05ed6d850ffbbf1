//! Well-formedness checking on top of the pull reader.
//!
//! [`CheckingReader`] wraps a [`Reader`] and enforces the document-level rules
//! the reader alone cannot see: exactly one root element, properly nested and
//! exactly matching end tags, unique attribute names, and a leading XML
//! declaration when one is required. Every problem becomes a [`Diagnostic`];
//! nothing is fatal. [`check_document`] runs the whole document and returns a
//! sorted [`ValidationReport`].

mod declaration;
mod options;

pub use options::{EncodingMode, ParserOptions};

use crate::diagnostic::{Diagnostic, DiagnosticCode, Severity};
use crate::document_io::LoadedDocument;
use crate::position::{LineCounter, SourcePosition, SourceSpan};
use crate::text_reader::{
    is_xml_whitespace, CloseOutcome, ElementStack, NodeEvent, NodeKind, ReadOutcome, Reader,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub well_formed: bool,
    /// Sorted by line, column, then code identifier.
    pub diagnostics: Vec<Diagnostic>,
    pub error_count: usize,
    pub warning_count: usize,
    pub document_uri: Option<String>,
}

impl ValidationReport {
    fn new(diagnostics: Vec<Diagnostic>, document_uri: Option<String>) -> Self {
        let error_count = diagnostics.iter().filter(|d| d.is_error()).count();
        Self {
            well_formed: error_count == 0,
            warning_count: diagnostics.len() - error_count,
            error_count,
            diagnostics,
            document_uri,
        }
    }

    pub fn codes(&self) -> Vec<DiagnosticCode> {
        self.diagnostics.iter().map(|d| d.code).collect()
    }

    pub fn errors(&self) -> impl Iterator<Item = &Diagnostic> {
        self.diagnostics.iter().filter(|d| d.is_error())
    }
}

/// Checks `source` and returns every well-formedness problem found.
pub fn check_document(
    source: &str,
    document_uri: Option<&str>,
    options: &ParserOptions,
) -> ValidationReport {
    CheckingReader::new(source, document_uri, options.clone()).finish()
}

/// Like [`check_document`], with the decoding problems found while loading
/// merged into the report.
pub fn check_loaded_document(
    document: &LoadedDocument,
    options: &ParserOptions,
) -> ValidationReport {
    let mut checker = CheckingReader::new(&document.text, Some(&document.uri), options.clone());
    for diagnostic in &document.load_diagnostics {
        checker.record(diagnostic.clone());
    }
    checker.finish()
}

/// Bounded diagnostic list. Once `max` entries are held, further ones are
/// only counted, except that an error always displaces a warning when no
/// error has been kept yet, so the verdict stays right.
#[derive(Debug)]
struct Accumulator {
    max: usize,
    kept: Vec<Diagnostic>,
    suppressed: usize,
    first_suppressed: Option<DiagnosticCode>,
}

impl Accumulator {
    fn new(max: usize) -> Self {
        Self {
            max,
            kept: Vec::new(),
            suppressed: 0,
            first_suppressed: None,
        }
    }

    /// Returns whether the diagnostic was kept.
    fn push(&mut self, diagnostic: Diagnostic) -> bool {
        if self.kept.len() < self.max {
            self.kept.push(diagnostic);
            return true;
        }
        let displace = diagnostic.is_error() && !self.kept.iter().any(Diagnostic::is_error);
        let dropped = match displace {
            true => {
                let idx = self.kept.len() - 1;
                std::mem::replace(&mut self.kept[idx], diagnostic).code
            }
            false => diagnostic.code,
        };
        self.suppressed += 1;
        self.first_suppressed.get_or_insert(dropped);
        displace
    }

    fn finish(mut self, end: SourcePosition) -> Vec<Diagnostic> {
        if self.suppressed > 0 && self.max >= 2 {
            // make room for the truncation notice without losing the last error
            let errors = self.kept.iter().filter(|d| d.is_error()).count();
            let idx = self
                .kept
                .iter()
                .rposition(|d| !(d.is_error() && errors == 1))
                .expect("at least two diagnostics kept");
            self.kept.remove(idx);
            self.suppressed += 1;
            let code = self
                .first_suppressed
                .expect("suppressed diagnostics recorded");
            self.kept.push(
                Diagnostic::new(
                    code,
                    SourceSpan::point(end),
                    format!(
                        "{} further diagnostics suppressed after reaching the limit of {}",
                        self.suppressed, self.max
                    ),
                )
                .with_severity(Severity::Warning),
            );
        }
        let mut kept = self.kept;
        kept.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        kept
    }
}

/// A reader that checks the document while it is being pulled.
///
/// Iterating yields the same nodes a [`Reader`] would, including the
/// best-effort nodes recovered from broken tags. Diagnostics are collected
/// as they are found and, if a handler is installed, passed to it.
type DiagnosticHandler<'a> = Box<dyn FnMut(&Diagnostic) + 'a>;

pub struct CheckingReader<'a> {
    reader: Reader<'a>,
    stack: ElementStack,
    accumulator: Accumulator,
    handler: Option<DiagnosticHandler<'a>>,
    root_seen: bool,
    first_seen: bool,
    finished: bool,
}

impl<'a> CheckingReader<'a> {
    pub fn new(source: &'a str, document_uri: Option<&str>, options: ParserOptions) -> Self {
        let max = options.max_errors.get();
        Self {
            reader: Reader::new(source, document_uri, options),
            stack: ElementStack::new(),
            accumulator: Accumulator::new(max),
            handler: None,
            root_seen: false,
            first_seen: false,
            finished: false,
        }
    }

    /// Installs a callback invoked for each diagnostic as it is recorded.
    pub fn on_diagnostic(mut self, handler: impl FnMut(&Diagnostic) + 'a) -> Self {
        self.handler = Some(Box::new(handler));
        self
    }

    pub fn reader(&self) -> &Reader<'a> {
        &self.reader
    }

    /// Reads the rest of the document and builds the report.
    pub fn finish(mut self) -> ValidationReport {
        while self.next().is_some() {}
        let end = self.reader.position();
        let uri = self.reader.document_uri().map(str::to_owned);
        ValidationReport::new(self.accumulator.finish(end), uri)
    }

    fn record(&mut self, diagnostic: Diagnostic) {
        if let Some(handler) = self.handler.as_mut() {
            if self.accumulator.kept.len() < self.accumulator.max {
                handler(&diagnostic);
            }
        }
        self.accumulator.push(diagnostic);
    }

    fn options(&self) -> &ParserOptions {
        self.reader.options()
    }

    fn note_first(&mut self, is_declaration: bool) {
        if std::mem::replace(&mut self.first_seen, true) {
            return;
        }
        if !is_declaration && self.options().require_declaration {
            let severity = self.options().treat_missing_declaration_as;
            self.record(
                Diagnostic::new(
                    DiagnosticCode::MissingDeclaration,
                    SourcePosition::START,
                    "the document must begin with an XML declaration such as <?xml version=\"1.0\"?>",
                )
                .with_severity(severity),
            );
        }
    }

    fn apply(&mut self, node: &NodeEvent) {
        match node.kind {
            NodeKind::Declaration => {
                if self.first_seen {
                    self.record(Diagnostic::new(
                        DiagnosticCode::BadDeclaration,
                        node.span,
                        "the XML declaration is only allowed at the very start of the document",
                    ));
                } else {
                    self.note_first(true);
                    for diagnostic in declaration::check_declaration(node) {
                        self.record(diagnostic);
                    }
                }
            }
            NodeKind::StartElement => {
                self.note_first(false);
                self.start_element(node);
            }
            NodeKind::EndElement => {
                self.note_first(false);
                self.end_element(node);
            }
            NodeKind::Text => {
                self.note_first(false);
                if self.stack.is_empty() {
                    self.text_outside_root(node);
                }
            }
            NodeKind::CData => {
                self.note_first(false);
                if self.stack.is_empty() {
                    self.record(Diagnostic::new(
                        DiagnosticCode::ContentOutsideRoot,
                        node.span,
                        "a CDATA section is only allowed inside the root element",
                    ));
                }
            }
            NodeKind::Comment | NodeKind::ProcessingInstruction => self.note_first(false),
        }
    }

    fn start_element(&mut self, node: &NodeEvent) {
        if self.stack.is_empty() {
            if self.root_seen {
                self.record(Diagnostic::new(
                    DiagnosticCode::MultipleRootElements,
                    node.span,
                    format!(
                        "element <{}> is a second top-level element; a document has exactly one root element",
                        node.name
                    ),
                ));
            }
            self.root_seen = true;
        }
        for (idx, attr) in node.attributes.iter().enumerate() {
            if let Some(first) = node.attributes[..idx].iter().find(|a| a.name == attr.name) {
                self.record(
                    Diagnostic::new(
                        DiagnosticCode::DuplicateAttribute,
                        attr.name_span,
                        format!(
                            "attribute '{}' is repeated in start tag <{}>",
                            attr.name, node.name
                        ),
                    )
                    .with_related(first.name_span),
                );
            }
        }
        if !node.is_empty_element {
            self.stack.push(&node.name, node.span);
        }
    }

    fn end_element(&mut self, node: &NodeEvent) {
        let name = &node.name;
        match self.stack.close(name) {
            CloseOutcome::Matched(_) => {}
            CloseOutcome::ClosedAncestor { unclosed, .. } => {
                let innermost = &unclosed[0];
                self.record(
                    Diagnostic::new(
                        DiagnosticCode::MismatchedEndTag,
                        node.span,
                        format!(
                            "end tag </{name}> does not match the open element <{}>; expected </{}>",
                            innermost.name, innermost.name
                        ),
                    )
                    .with_related(innermost.span),
                );
                for open in unclosed {
                    self.record(
                        Diagnostic::new(
                            DiagnosticCode::UnclosedElement,
                            node.span,
                            format!("element <{}> is not closed before </{name}>", open.name),
                        )
                        .with_related(open.span),
                    );
                }
            }
            CloseOutcome::Unmatched {
                innermost: Some(open),
            } => {
                self.record(
                    Diagnostic::new(
                        DiagnosticCode::MismatchedEndTag,
                        node.span,
                        format!(
                            "end tag </{name}> does not match the open element <{}>; expected </{}> (names are case sensitive)",
                            open.name, open.name
                        ),
                    )
                    .with_related(open.span),
                );
            }
            CloseOutcome::Unmatched { innermost: None } => {
                self.record(Diagnostic::new(
                    DiagnosticCode::StrayEndTag,
                    node.span,
                    format!("end tag </{name}> has no matching start tag"),
                ));
            }
        }
    }

    /// Flags the first non-whitespace character of a top-level text run,
    /// located in the raw source so references count as content.
    fn text_outside_root(&mut self, node: &NodeEvent) {
        let Some(end) = node.span.end else { return };
        let raw = &self.reader.source()[node.span.start.offset..end.offset];
        let Some(idx) = raw.find(|c| !is_xml_whitespace(c)) else {
            return;
        };
        let mut at = LineCounter::at(node.span.start);
        at.advance_str(&raw[..idx]);
        let snippet: String = raw[idx..].trim_end().chars().take(20).collect();
        self.record(Diagnostic::new(
            DiagnosticCode::ContentOutsideRoot,
            SourceSpan::new(at.position(), end),
            format!(
                "text '{}' appears outside the root element",
                snippet.escape_debug()
            ),
        ));
    }

    fn end_of_input(&mut self) {
        self.note_first(false);
        let end = self.reader.position();
        for open in self.stack.drain() {
            self.record(
                Diagnostic::new(
                    DiagnosticCode::UnclosedElement,
                    end,
                    format!("element <{}> is never closed", open.name),
                )
                .with_related(open.span),
            );
        }
        if !self.root_seen {
            self.record(Diagnostic::new(
                DiagnosticCode::NoRootElement,
                end,
                "the document has no root element",
            ));
        }
    }

    fn drain_reader_diagnostics(&mut self) {
        for diagnostic in self.reader.take_diagnostics() {
            self.record(diagnostic);
        }
    }
}

impl Iterator for CheckingReader<'_> {
    type Item = NodeEvent;

    fn next(&mut self) -> Option<NodeEvent> {
        loop {
            if self.finished {
                return None;
            }
            let outcome = self.reader.read();
            self.drain_reader_diagnostics();
            match outcome {
                ReadOutcome::Node(node) => {
                    self.apply(&node);
                    return Some(node);
                }
                ReadOutcome::Malformed(token) => {
                    self.note_first(token.code == DiagnosticCode::BadDeclaration);
                    self.record(token.to_diagnostic());
                    if let Some(node) = token.recovered {
                        self.apply(&node);
                        return Some(node);
                    }
                }
                ReadOutcome::EndOfInput => {
                    self.end_of_input();
                    self.finished = true;
                }
            }
        }
    }
}
