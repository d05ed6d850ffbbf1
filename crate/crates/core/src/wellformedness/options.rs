use std::num::NonZeroUsize;

use serde::{Deserialize, Serialize};

use crate::diagnostic::Severity;

/// How raw bytes are decoded when a document is loaded from disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EncodingMode {
    #[default]
    Utf8,
    /// Seven-bit only; every byte above 127 is an encoding error.
    Ascii,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParserOptions {
    /// Report a document that does not start with `<?xml ...?>`.
    pub require_declaration: bool,
    /// Upper bound on the number of diagnostics in one report.
    pub max_errors: NonZeroUsize,
    pub encoding_mode: EncodingMode,
    /// Severity of MISSING_DECLARATION when it is reported.
    pub treat_missing_declaration_as: Severity,
}

impl ParserOptions {
    pub const DEFAULT_MAX_ERRORS: NonZeroUsize = NonZeroUsize::new(100).unwrap();

    /// Plain XML 1.0 rules: the declaration is optional.
    pub fn lenient() -> Self {
        Self {
            require_declaration: false,
            ..Self::default()
        }
    }

    pub fn with_require_declaration(mut self, require: bool) -> Self {
        self.require_declaration = require;
        self
    }

    /// # Panics
    ///
    /// If `max_errors` is zero.
    pub fn with_max_errors(mut self, max_errors: usize) -> Self {
        self.max_errors = NonZeroUsize::new(max_errors).expect("max_errors must be at least 1");
        self
    }

    pub fn with_encoding_mode(mut self, mode: EncodingMode) -> Self {
        self.encoding_mode = mode;
        self
    }

    pub fn with_missing_declaration_severity(mut self, severity: Severity) -> Self {
        self.treat_missing_declaration_as = severity;
        self
    }
}

impl Default for ParserOptions {
    fn default() -> Self {
        Self {
            require_declaration: true,
            max_errors: Self::DEFAULT_MAX_ERRORS,
            encoding_mode: EncodingMode::Utf8,
            treat_missing_declaration_as: Severity::Error,
        }
    }
}
