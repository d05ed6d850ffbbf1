//! Entity and character reference expansion.

use crate::diagnostic::{Diagnostic, DiagnosticCode};
use crate::position::{LineCounter, SourceSpan};

use super::chars::{is_name_char, is_name_start_char, is_xml_char};

/// How literal line breaks and whitespace are treated while expanding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Normalize {
    /// Leave every literal character as written.
    None,
    /// Character data: CRLF and lone CR become LF.
    Text,
    /// Attribute values: line breaks and tabs become a space.
    Attribute,
}

/// Replaces the predefined entities and numeric character references in
/// `raw`, which must be the literal source text starting at `span.start`.
///
/// Problems never abort expansion: the offending `&` is kept literally and a
/// diagnostic is returned for it.
pub fn resolve_references(raw: &str, span: SourceSpan) -> (String, Vec<Diagnostic>) {
    let mut diagnostics = Vec::new();
    let text = expand(raw, span, Normalize::None, &mut diagnostics);
    (text, diagnostics)
}

pub(crate) fn expand(
    raw: &str,
    span: SourceSpan,
    mode: Normalize,
    diagnostics: &mut Vec<Diagnostic>,
) -> String {
    if mode == Normalize::None && !raw.contains('&') {
        return raw.to_owned();
    }
    let mut out = String::with_capacity(raw.len());
    let mut counter = LineCounter::at(span.start);
    let mut rest = raw;
    while let Some(c) = rest.chars().next() {
        match c {
            '&' => {
                let start = counter.position();
                match parse_reference(rest) {
                    Ok((ch, len)) => {
                        out.push(ch);
                        counter.advance_str(&rest[..len]);
                        rest = &rest[len..];
                        continue;
                    }
                    Err((code, len, message)) => {
                        let mut end = counter;
                        end.advance_str(&rest[..len]);
                        diagnostics.push(Diagnostic::new(
                            code,
                            SourceSpan::new(start, end.position()),
                            message,
                        ));
                        out.push('&');
                    }
                }
            }
            '\r' if mode != Normalize::None => {
                if !rest[1..].starts_with('\n') {
                    out.push(if mode == Normalize::Text { '\n' } else { ' ' });
                }
            }
            '\n' | '\t' if mode == Normalize::Attribute => out.push(' '),
            _ => out.push(c),
        }
        counter.advance(c);
        rest = &rest[c.len_utf8()..];
    }
    out
}

type RefError = (DiagnosticCode, usize, String);

/// Parses the reference at the start of `s` (which begins with `&`).
/// Returns the replacement character and the reference's byte length; on
/// failure, the byte length the diagnostic should cover.
fn parse_reference(s: &str) -> Result<(char, usize), RefError> {
    let body = &s[1..];
    if let Some(num) = body.strip_prefix('#') {
        return parse_char_ref(num)
            .map(|(c, len)| (c, len + 2))
            .map_err(|(code, len, message)| (code, len + 2, message));
    }
    let name_len = scan_name(body);
    if name_len == 0 {
        return Err((
            DiagnosticCode::UndefinedEntity,
            1,
            "unescaped '&' in character data; write '&amp;' instead".to_owned(),
        ));
    }
    let name = &body[..name_len];
    if !body[name_len..].starts_with(';') {
        return Err((
            DiagnosticCode::UndefinedEntity,
            name_len + 1,
            format!("entity reference '&{name}' is missing its terminating ';'"),
        ));
    }
    let ch = match name {
        "amp" => '&',
        "lt" => '<',
        "gt" => '>',
        "apos" => '\'',
        "quot" => '"',
        _ => {
            return Err((
                DiagnosticCode::UndefinedEntity,
                name_len + 2,
                format!("undefined entity '&{name};'"),
            ))
        }
    };
    Ok((ch, name_len + 2))
}

/// `s` follows the `&#`; lengths are relative to it.
fn parse_char_ref(s: &str) -> Result<(char, usize), RefError> {
    let (digits, radix, prefix) = match s.strip_prefix('x') {
        Some(hex) => (hex, 16, 1),
        None => (s, 10, 0),
    };
    let len = digits
        .bytes()
        .take_while(|b| (*b as char).is_digit(radix))
        .count();
    let shown = &s[..prefix + len];
    if len == 0 || !digits[len..].starts_with(';') {
        return Err((
            DiagnosticCode::BadCharRef,
            prefix + len,
            format!("malformed character reference '&#{shown}'"),
        ));
    }
    let total = prefix + len + 1;
    u32::from_str_radix(&digits[..len], radix)
        .ok()
        .and_then(char::from_u32)
        .filter(|&c| is_xml_char(c))
        .map(|c| (c, total))
        .ok_or_else(|| {
            (
                DiagnosticCode::BadCharRef,
                total,
                format!("character reference '&#{shown};' does not denote a legal XML character"),
            )
        })
}

fn scan_name(s: &str) -> usize {
    let mut chars = s.char_indices();
    match chars.next() {
        Some((_, c)) if is_name_start_char(c) => {}
        _ => return 0,
    }
    chars
        .find(|&(_, c)| !is_name_char(c))
        .map_or(s.len(), |(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::position::SourcePosition;

    fn span() -> SourceSpan {
        SourceSpan::point(SourcePosition::START)
    }

    #[test]
    fn predefined_entities() {
        assert_eq!(
            resolve_references("a &amp; b", span()),
            ("a & b".into(), vec![])
        );
        let (text, diags) = resolve_references("&lt;&gt;&apos;&quot;", span());
        assert_eq!(text, "<>'\"");
        assert!(diags.is_empty());
    }

    #[test]
    fn numeric_references() {
        assert_eq!(resolve_references("&#65;", span()).0, "A");
        assert_eq!(resolve_references("&#x41;&#x1F600;", span()).0, "A😀");
    }

    #[test]
    fn unknown_entity_passes_through() {
        let (text, diags) = resolve_references("&foo;", span());
        assert_eq!(text, "&foo;");
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagnosticCode::UndefinedEntity);
        assert_eq!(diags[0].span.start.line_col(), (1, 1));
        assert!(diags[0].message.contains("foo"));
    }

    #[test]
    fn bad_char_refs() {
        for raw in [
            "&#;",
            "&#x;",
            "&#12",
            "&#0;",
            "&#xD800;",
            "&#99999999999;",
            "&#xZZ;",
        ] {
            let (text, diags) = resolve_references(raw, span());
            assert_eq!(text, raw);
            assert_eq!(diags.len(), 1, "{raw}");
            assert_eq!(diags[0].code, DiagnosticCode::BadCharRef, "{raw}");
        }
    }

    #[test]
    fn bare_ampersand_and_missing_semicolon() {
        let (text, diags) = resolve_references("a & b &amp c", span());
        assert_eq!(text, "a & b &amp c");
        let cols: Vec<_> = diags.iter().map(|d| d.span.start.column).collect();
        assert_eq!(cols, vec![3, 7]);
    }

    #[test]
    fn reference_positions_follow_line_breaks() {
        let start = SourcePosition::new(4, 10, 50);
        let (_, diags) = resolve_references("ab\r\n  &nope;", SourceSpan::point(start));
        assert_eq!(diags[0].span.start.line_col(), (5, 3));
        assert_eq!(diags[0].span.end.unwrap().line_col(), (5, 9));
    }

    #[test]
    fn normalization_modes() {
        let mut d = Vec::new();
        assert_eq!(
            expand("a\r\nb\rc", span(), Normalize::Text, &mut d),
            "a\nb\nc"
        );
        assert_eq!(
            expand("a\r\nb\tc\n", span(), Normalize::Attribute, &mut d),
            "a b c "
        );
        assert_eq!(
            expand("&#10;&#13;", span(), Normalize::Attribute, &mut d),
            "\n\r"
        );
        assert!(d.is_empty());
    }
}
