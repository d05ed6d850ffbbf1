//! Diagnostic codes, severities and the diagnostic record itself.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::position::SourceSpan;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

macro_rules! diagnostic_codes {
    ($($variant:ident => $id:literal, $desc:literal;)+) => {
        /// Every kind of well-formedness violation the checker reports.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
        #[serde(rename_all = "SCREAMING_SNAKE_CASE")]
        pub enum DiagnosticCode {
            $($variant,)+
        }

        impl DiagnosticCode {
            pub const ALL: &'static [DiagnosticCode] = &[$(DiagnosticCode::$variant,)+];

            /// Stable identifier used in text and JSON output.
            pub fn as_str(self) -> &'static str {
                match self {
                    $(DiagnosticCode::$variant => $id,)+
                }
            }

            pub fn description(self) -> &'static str {
                match self {
                    $(DiagnosticCode::$variant => $desc,)+
                }
            }
        }
    };
}

diagnostic_codes! {
    MissingDeclaration => "MISSING_DECLARATION", "the document does not begin with an XML declaration";
    BadDeclaration => "BAD_DECLARATION", "the XML declaration is malformed, misplaced or has invalid pseudo-attributes";
    NoRootElement => "NO_ROOT_ELEMENT", "the document contains no element";
    MultipleRootElements => "MULTIPLE_ROOT_ELEMENTS", "a second top-level element follows the root element";
    ContentOutsideRoot => "CONTENT_OUTSIDE_ROOT", "character data appears before or after the root element";
    MismatchedEndTag => "MISMATCHED_END_TAG", "an end tag does not match the innermost open element (names are case sensitive)";
    UnclosedElement => "UNCLOSED_ELEMENT", "an element is never closed";
    StrayEndTag => "STRAY_END_TAG", "an end tag appears with no element open";
    MalformedTag => "MALFORMED_TAG", "a tag or markup construct is syntactically broken";
    UnquotedAttributeValue => "UNQUOTED_ATTRIBUTE_VALUE", "an attribute value is not enclosed in quotes";
    DuplicateAttribute => "DUPLICATE_ATTRIBUTE", "an attribute name is repeated within one start tag";
    InvalidName => "INVALID_NAME", "a tag or target name does not start with a legal name character";
    UndefinedEntity => "UNDEFINED_ENTITY", "an entity reference is unknown or malformed, or '&' is unescaped";
    BadCharRef => "BAD_CHAR_REF", "a numeric character reference is malformed or denotes an illegal character";
    UnterminatedComment => "UNTERMINATED_COMMENT", "a comment is missing its closing '-->'";
    DoubleHyphenInComment => "DOUBLE_HYPHEN_IN_COMMENT", "a comment contains '--' or ends with '-'";
    UnterminatedCdata => "UNTERMINATED_CDATA", "a CDATA section is missing its closing ']]>'";
    CdataEndInText => "CDATA_END_IN_TEXT", "the sequence ']]>' appears in character data";
    UnterminatedPi => "UNTERMINATED_PI", "a processing instruction is missing its closing '?>'";
    InvalidEncoding => "INVALID_ENCODING", "a byte sequence could not be decoded or a character is not allowed in XML";
    UnexpectedEof => "UNEXPECTED_EOF", "the input ends inside a tag or attribute value";
}

impl DiagnosticCode {
    pub fn default_severity(self) -> Severity {
        Severity::Error
    }
}

impl fmt::Display for DiagnosticCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// One entry of [`diagnostic_catalog`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CatalogEntry {
    pub code: DiagnosticCode,
    pub identifier: &'static str,
    pub default_severity: Severity,
    pub description: &'static str,
}

/// Lists every diagnostic code with its identifier, default severity and a
/// one-line description.
pub fn diagnostic_catalog() -> Vec<CatalogEntry> {
    DiagnosticCode::ALL
        .iter()
        .map(|&code| CatalogEntry {
            code,
            identifier: code.as_str(),
            default_severity: code.default_severity(),
            description: code.description(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagnosticCode,
    pub severity: Severity,
    pub message: String,
    pub span: SourceSpan,
    /// Secondary location, e.g. the start tag of an element left unclosed.
    pub related_span: Option<SourceSpan>,
}

impl Diagnostic {
    pub fn new(
        code: DiagnosticCode,
        span: impl Into<SourceSpan>,
        message: impl Into<String>,
    ) -> Self {
        Self {
            code,
            severity: code.default_severity(),
            message: message.into(),
            span: span.into(),
            related_span: None,
        }
    }

    pub fn with_related(mut self, related: SourceSpan) -> Self {
        self.related_span = Some(related);
        self
    }

    pub fn with_severity(mut self, severity: Severity) -> Self {
        self.severity = severity;
        self
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }

    pub(crate) fn sort_key(&self) -> (usize, usize, &'static str) {
        (
            self.span.start.line,
            self.span.start.column,
            self.code.as_str(),
        )
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {}: {}: {}",
            self.span.start, self.severity, self.code, self.message
        )
    }
}
