//! The JSON report format shared by the CLI (`--json`) and the HTTP service.

use serde::{Deserialize, Serialize};

use crate::diagnostic::{Diagnostic, DiagnosticCode, Severity};
use crate::wellformedness::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JsonReport {
    pub uri: Option<String>,
    pub well_formed: bool,
    pub error_count: usize,
    pub warning_count: usize,
    pub diagnostics: Vec<JsonDiagnostic>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JsonDiagnostic {
    pub code: DiagnosticCode,
    pub severity: Severity,
    pub message: String,
    pub line: usize,
    pub column: usize,
    pub end_line: Option<usize>,
    pub end_column: Option<usize>,
    pub related_line: Option<usize>,
    pub related_column: Option<usize>,
}

impl From<&Diagnostic> for JsonDiagnostic {
    fn from(d: &Diagnostic) -> Self {
        Self {
            code: d.code,
            severity: d.severity,
            message: d.message.clone(),
            line: d.span.start.line,
            column: d.span.start.column,
            end_line: d.span.end.map(|p| p.line),
            end_column: d.span.end.map(|p| p.column),
            related_line: d.related_span.map(|s| s.start.line),
            related_column: d.related_span.map(|s| s.start.column),
        }
    }
}

impl From<&ValidationReport> for JsonReport {
    fn from(report: &ValidationReport) -> Self {
        Self {
            uri: report.document_uri.clone(),
            well_formed: report.well_formed,
            error_count: report.error_count,
            warning_count: report.warning_count,
            diagnostics: report
                .diagnostics
                .iter()
                .map(JsonDiagnostic::from)
                .collect(),
        }
    }
}
