//! Non-validating XML well-formedness checking.
//!
//! The crate is layered:
//!
//! * [`text_reader`]: a pull reader producing one [`NodeEvent`] per call,
//!   with exact 1-based line/column spans and recovery after broken markup.
//! * [`wellformedness`]: a checking reader on top of it that applies the
//!   document-level rules and collects every problem into a
//!   [`ValidationReport`].
//! * [`document_io`]: loading with encoding checks, atomic save, and an
//!   event-stream serializer.
//! * [`cli`] and [`service`]: the `xmlcheck` command and the HTTP API used by
//!   the browser editor. Both emit the JSON format in [`report_json`].
//!
//! ```
//! use xmlcheck::{check_document, DiagnosticCode, ParserOptions};
//!
//! let report = check_document("<CREW>Sydney Pollak</crew>", None, &ParserOptions::lenient());
//! assert!(!report.well_formed);
//! assert_eq!(report.diagnostics[0].code, DiagnosticCode::MismatchedEndTag);
//! assert_eq!(report.diagnostics[0].span.start.line_col(), (1, 20));
//! ```

pub mod cli;
pub mod diagnostic;
pub mod document_io;
pub mod position;
pub mod report_json;
pub mod service;
pub mod text_reader;
pub mod wellformedness;

pub use diagnostic::{diagnostic_catalog, CatalogEntry, Diagnostic, DiagnosticCode, Severity};
pub use document_io::{load_file, save_file, serialize_events, DetectedEncoding, LoadedDocument};
pub use position::{SourcePosition, SourceSpan};
pub use report_json::{JsonDiagnostic, JsonReport};
pub use text_reader::{Attribute, MalformedToken, NodeEvent, NodeKind, ReadOutcome, Reader};
pub use wellformedness::{
    check_document, check_loaded_document, CheckingReader, EncodingMode, ParserOptions,
    ValidationReport,
};
