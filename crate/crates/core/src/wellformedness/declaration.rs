use crate::diagnostic::{Diagnostic, DiagnosticCode};
use crate::text_reader::NodeEvent;

const ORDER: [&str; 3] = ["version", "encoding", "standalone"];

/// Checks the pseudo-attributes of `<?xml ...?>`: `version` first with value
/// 1.0 or 1.1, then optionally `encoding`, then optionally `standalone`.
pub(crate) fn check_declaration(node: &NodeEvent) -> Vec<Diagnostic> {
    let mut diagnostics = Vec::new();
    let bad =
        |span, message: String| Diagnostic::new(DiagnosticCode::BadDeclaration, span, message);

    if node.attributes.first().map(|a| a.name.as_str()) != Some("version") {
        diagnostics.push(bad(
            node.span,
            "the XML declaration must start with a version pseudo-attribute".to_owned(),
        ));
    }

    let mut last_stage = None;
    for attr in &node.attributes {
        let Some(stage) = ORDER.iter().position(|&n| n == attr.name) else {
            diagnostics.push(bad(
                attr.name_span,
                format!("'{}' is not an XML declaration pseudo-attribute", attr.name),
            ));
            continue;
        };
        if last_stage.is_some_and(|last| stage <= last) {
            diagnostics.push(bad(
                attr.name_span,
                format!(
                    "pseudo-attribute '{}' is repeated or out of order (expected version, encoding, standalone)",
                    attr.name
                ),
            ));
        }
        last_stage = Some(stage);

        let value_ok = match stage {
            0 => matches!(attr.value.as_str(), "1.0" | "1.1"),
            1 => is_encoding_name(&attr.value),
            _ => matches!(attr.value.as_str(), "yes" | "no"),
        };
        if !value_ok {
            diagnostics.push(bad(
                attr.value_span,
                format!(
                    "invalid value '{}' for pseudo-attribute '{}'",
                    attr.value, attr.name
                ),
            ));
        }
    }
    diagnostics
}

fn is_encoding_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '.' | '_' | '-'))
}
