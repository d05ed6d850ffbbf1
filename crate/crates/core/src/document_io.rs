//! Loading documents from disk, saving them back, and writing event streams
//! out as XML text.

use std::io::Write;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::diagnostic::{Diagnostic, DiagnosticCode};
use crate::position::{LineCounter, SourceSpan};
use crate::text_reader::{NodeEvent, NodeKind};
use crate::wellformedness::EncodingMode;

pub const UTF8_BOM: [u8; 3] = [0xEF, 0xBB, 0xBF];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DetectedEncoding {
    Utf8,
    Utf8WithBom,
    Ascii,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadedDocument {
    /// Decoded text, without a byte order mark.
    pub text: String,
    pub detected_encoding: DetectedEncoding,
    pub uri: String,
    pub byte_length: usize,
    /// INVALID_ENCODING diagnostics, one per undecodable sequence.
    pub load_diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Error)]
pub enum IoError {
    #[error("cannot read {}: {source}", path.display())]
    Read {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot write {}: {source}", path.display())]
    Write {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub fn load_file(path: impl AsRef<Path>, mode: EncodingMode) -> Result<LoadedDocument, IoError> {
    let path = path.as_ref();
    let bytes = std::fs::read(path).map_err(|source| IoError::Read {
        path: path.to_owned(),
        source,
    })?;
    let (text, detected_encoding, load_diagnostics) = decode_bytes(&bytes, mode);
    Ok(LoadedDocument {
        text,
        detected_encoding,
        uri: path.display().to_string(),
        byte_length: bytes.len(),
        load_diagnostics,
    })
}

/// Decodes raw bytes. Never fails: every undecodable sequence becomes one
/// U+FFFD and one INVALID_ENCODING diagnostic at the position reached.
pub fn decode_bytes(
    bytes: &[u8],
    mode: EncodingMode,
) -> (String, DetectedEncoding, Vec<Diagnostic>) {
    let mut text = String::with_capacity(bytes.len());
    let mut counter = LineCounter::new();
    let mut diagnostics = Vec::new();
    let mut bad = |counter: &mut LineCounter, text: &mut String, bytes: &[u8]| {
        let hex: Vec<String> = bytes.iter().map(|b| format!("{b:02X}")).collect();
        let at = counter.position();
        counter.advance(char::REPLACEMENT_CHARACTER);
        diagnostics.push(Diagnostic::new(
            DiagnosticCode::InvalidEncoding,
            SourceSpan::new(at, counter.position()),
            format!(
                "byte sequence {} is not valid {}",
                hex.join(" "),
                mode_name(mode)
            ),
        ));
        text.push(char::REPLACEMENT_CHARACTER);
    };

    let detected = match mode {
        EncodingMode::Ascii => {
            for &b in bytes {
                if b.is_ascii() {
                    let c = b as char;
                    counter.advance(c);
                    text.push(c);
                } else {
                    bad(&mut counter, &mut text, &[b]);
                }
            }
            DetectedEncoding::Ascii
        }
        EncodingMode::Utf8 => {
            let (body, detected) = match bytes.strip_prefix(&UTF8_BOM) {
                Some(body) => (body, DetectedEncoding::Utf8WithBom),
                None => (bytes, DetectedEncoding::Utf8),
            };
            for chunk in body.utf8_chunks() {
                counter.advance_str(chunk.valid());
                text.push_str(chunk.valid());
                if !chunk.invalid().is_empty() {
                    bad(&mut counter, &mut text, chunk.invalid());
                }
            }
            detected
        }
    };
    (text, detected, diagnostics)
}

fn mode_name(mode: EncodingMode) -> &'static str {
    match mode {
        EncodingMode::Utf8 => "UTF-8",
        EncodingMode::Ascii => "ASCII",
    }
}

/// Writes `text` as UTF-8, optionally preceded by a byte order mark. The
/// file is written to a temporary sibling and renamed over the target.
pub fn save_file(path: impl AsRef<Path>, text: &str, write_bom: bool) -> Result<(), IoError> {
    let path = path.as_ref();
    let write_err = |source| IoError::Write {
        path: path.to_owned(),
        source,
    };
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(write_err)?;
    if write_bom {
        tmp.write_all(&UTF8_BOM).map_err(write_err)?;
    }
    tmp.write_all(text.as_bytes()).map_err(write_err)?;
    tmp.as_file().sync_all().map_err(write_err)?;
    tmp.persist(path).map_err(|e| write_err(e.error))?;
    Ok(())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SerializeError {
    #[error("event {index}: end tag </{name}> does not close the innermost open element")]
    UnexpectedEnd { index: usize, name: String },
    #[error("event {index}: element <{name}> is never closed")]
    Unclosed { index: usize, name: String },
}

/// Writes an event stream back out as XML text.
///
/// Attribute values are double-quoted with `& < > "` escaped; text escapes `&`
/// and `<`. Line breaks and tabs that would be normalized away on re-reading
/// are written as character references.
pub fn serialize_events(events: &[NodeEvent]) -> Result<String, SerializeError> {
    let mut out = String::new();
    let mut open: Vec<(usize, &NodeEvent)> = Vec::new();
    for (index, event) in events.iter().enumerate() {
        match event.kind {
            NodeKind::Declaration => {
                out.push_str("<?xml");
                for attr in &event.attributes {
                    let quote = if attr.value.contains('"') { '\'' } else { '"' };
                    out.push_str(&format!(" {}={quote}{}{quote}", attr.name, attr.value));
                }
                out.push_str("?>");
            }
            NodeKind::StartElement => {
                out.push('<');
                out.push_str(&event.name);
                for attr in &event.attributes {
                    out.push(' ');
                    out.push_str(&attr.name);
                    out.push_str("=\"");
                    escape_attribute(&attr.value, &mut out);
                    out.push('"');
                }
                if event.is_empty_element {
                    out.push_str("/>");
                } else {
                    out.push('>');
                    open.push((index, event));
                }
            }
            NodeKind::EndElement => match open.last() {
                Some((_, start)) if start.name == event.name && start.depth == event.depth => {
                    open.pop();
                    out.push_str("</");
                    out.push_str(&event.name);
                    out.push('>');
                }
                _ => {
                    return Err(SerializeError::UnexpectedEnd {
                        index,
                        name: event.name.clone(),
                    })
                }
            },
            NodeKind::Text => escape_text(&event.text_content, &mut out),
            NodeKind::Comment => {
                out.push_str("<!--");
                out.push_str(&event.text_content);
                out.push_str("-->");
            }
            NodeKind::ProcessingInstruction => {
                out.push_str("<?");
                out.push_str(&event.name);
                if !event.text_content.is_empty() {
                    out.push(' ');
                    out.push_str(&event.text_content);
                }
                out.push_str("?>");
            }
            NodeKind::CData => {
                out.push_str("<![CDATA[");
                out.push_str(&event.text_content);
                out.push_str("]]>");
            }
        }
    }
    match open.pop() {
        Some((index, start)) => Err(SerializeError::Unclosed {
            index,
            name: start.name.clone(),
        }),
        None => Ok(out),
    }
}

fn escape_text(text: &str, out: &mut String) {
    for c in text.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            // keeps "]]>" out of character data
            '>' if out.ends_with("]]") => out.push_str("&gt;"),
            '\r' => out.push_str("&#13;"),
            _ => out.push(c),
        }
    }
}

fn escape_attribute(value: &str, out: &mut String) {
    for c in value.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\t' => out.push_str("&#9;"),
            '\n' => out.push_str("&#10;"),
            '\r' => out.push_str("&#13;"),
            _ => out.push(c),
        }
    }
}
