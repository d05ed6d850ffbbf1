#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use xmlcheck::{DiagnosticCode, NodeKind, ParserOptions, Reader, SourcePosition, ValidationReport};

use DiagnosticCode::*;

pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub source: &'static str,
    pub require_declaration: bool,
    /// (code, line, column) in report order; empty for well-formed fixtures.
    pub expected: &'static [(DiagnosticCode, usize, usize)],
}

impl Fixture {
    pub fn options(&self) -> ParserOptions {
        ParserOptions::default().with_require_declaration(self.require_declaration)
    }

    pub fn path(&self) -> std::path::PathBuf {
        std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
            .join("tests/fixtures")
            .join(self.file)
    }
}

macro_rules! fixture {
    ($name:literal, $file:literal, $req:expr, [$($e:expr),*]) => {
        Fixture {
            name: $name,
            file: $file,
            source: include_str!(concat!("../fixtures/", $file)),
            require_declaration: $req,
            expected: &[$($e),*],
        }
    };
}

pub const FIXTURES: &[Fixture] = &[
    fixture!("one root", "one_root.xml", true, []),
    fixture!(
        "no single root",
        "no_root.xml",
        false,
        [
            (MultipleRootElements, 2, 1),
            (MultipleRootElements, 3, 1),
            (StrayEndTag, 4, 1),
            (ContentOutsideRoot, 4, 19)
        ]
    ),
    fixture!("tags closed", "tags_closed.xml", true, []),
    fixture!(
        "tag not closed",
        "tag_unclosed.xml",
        false,
        [(MalformedTag, 2, 15)]
    ),
    fixture!("case matched", "case_matched.xml", true, []),
    fixture!(
        "case mismatched",
        "case_mismatched.xml",
        false,
        [(MismatchedEndTag, 1, 20), (UnclosedElement, 1, 27)]
    ),
    fixture!("attribute quoted", "attribute_quoted.xml", true, []),
    fixture!(
        "attribute unquoted",
        "attribute_unquoted.xml",
        false,
        [(UnquotedAttributeValue, 1, 11)]
    ),
    fixture!("declaration present", "declaration_present.xml", true, []),
    fixture!(
        "declaration missing",
        "declaration_missing.xml",
        true,
        [(MissingDeclaration, 1, 1)]
    ),
];

pub fn summary(report: &ValidationReport) -> Vec<(DiagnosticCode, usize, usize)> {
    report
        .diagnostics
        .iter()
        .map(|d| (d.code, d.span.start.line, d.span.start.column))
        .collect()
}

/// Line and column of the first occurrence of `needle`, counted by hand.
pub fn locate(src: &str, needle: &str) -> (usize, usize) {
    let offset = src.find(needle).expect("needle present");
    position_at(src, offset)
}

/// Independent of the library's counter: splits on CRLF, CR and LF.
pub fn position_at(src: &str, offset: usize) -> (usize, usize) {
    let lines = split_lines(&src[..offset]);
    (lines.len(), lines.last().unwrap().chars().count() + 1)
}

pub fn split_lines(src: &str) -> Vec<&str> {
    let mut lines = Vec::new();
    let mut rest = src;
    loop {
        match rest.find(['\r', '\n']) {
            Some(i) => {
                lines.push(&rest[..i]);
                let skip = if rest[i..].starts_with("\r\n") { 2 } else { 1 };
                rest = &rest[i + skip..];
            }
            None => {
                lines.push(rest);
                return lines;
            }
        }
    }
}

/// Checks `pos` lies inside `src`: line within the line count and column
/// at most one past the end of that line.
pub fn contained(src: &str, pos: SourcePosition) -> bool {
    let src = src.strip_prefix('\u{FEFF}').unwrap_or(src);
    let lines = split_lines(src);
    pos.line >= 1
        && pos.column >= 1
        && pos.line <= lines.len()
        && pos.column <= lines[pos.line - 1].chars().count() + 1
}

pub fn report_invariants(report: &ValidationReport, options: &ParserOptions) -> Result<(), String> {
    let errors = report.diagnostics.iter().filter(|d| d.is_error()).count();
    let warnings = report.diagnostics.len() - errors;
    if errors != report.error_count || warnings != report.warning_count {
        return Err(format!(
            "counts {}/{} vs {errors}/{warnings}",
            report.error_count, report.warning_count
        ));
    }
    if report.well_formed != (errors == 0) {
        return Err("well_formed disagrees with error count".into());
    }
    if report.diagnostics.len() > options.max_errors.get() {
        return Err(format!(
            "{} diagnostics over cap {}",
            report.diagnostics.len(),
            options.max_errors
        ));
    }
    let keys: Vec<_> = report
        .diagnostics
        .iter()
        .map(|d| (d.span.start.line, d.span.start.column, d.code.as_str()))
        .collect();
    if keys.windows(2).any(|w| w[0] > w[1]) {
        return Err(format!("unsorted: {keys:?}"));
    }
    Ok(())
}

pub fn spans_contained(src: &str, report: &ValidationReport) -> Result<(), String> {
    for d in &report.diagnostics {
        let mut points = vec![d.span.start];
        points.extend(d.span.end);
        if let Some(r) = d.related_span {
            points.push(r.start);
            points.extend(r.end);
        }
        if let Some(p) = points.into_iter().find(|&p| !contained(src, p)) {
            return Err(format!("{} at {p} outside source", d.code));
        }
    }
    Ok(())
}

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

const NAME_STARTS: &[&str] = &[
    "a", "b", "title", "crew", "Item", "x_y", "données", "Ωmega", "_n", "v2",
];
const WORDS: &[&str] = &[
    "Tootsie", "Jurassic", "Park", "Sydney", "Pollak", "naïve", "日本", "x", "42", "  ",
];
const REFERENCES: &[&str] = &[
    "&amp;",
    "&lt;",
    "&gt;",
    "&quot;",
    "&apos;",
    "&#65;",
    "&#x42;",
    "&#x1F600;",
];

fn name(rng: &mut StdRng) -> String {
    let mut n = NAME_STARTS[rng.random_range(0..NAME_STARTS.len())].to_owned();
    if rng.random_bool(0.3) {
        n.push_str(["-1", ".v", "Z", "é"][rng.random_range(0..4)]);
    }
    n
}

fn text(rng: &mut StdRng, attribute: bool) -> String {
    let mut s = String::new();
    for _ in 0..rng.random_range(0..5) {
        match rng.random_range(0..10) {
            0 => s.push_str(REFERENCES[rng.random_range(0..REFERENCES.len())]),
            1 => s.push_str(["\n", "\r\n", "\t", " "][rng.random_range(0..4)]),
            2 if !attribute => s.push('>'),
            3 if attribute => s.push_str(["'", "\""][rng.random_range(0..2)]),
            _ => s.push_str(WORDS[rng.random_range(0..WORDS.len())]),
        }
    }
    if attribute {
        s = s.replace('"', "&quot;");
    }
    s.replace("]]>", "]]&gt;")
}

fn misc(rng: &mut StdRng, out: &mut String) {
    match rng.random_range(0..4) {
        0 => out.push_str(&format!(
            "<!--{}-->",
            text(rng, true).replace('-', "").replace('&', "+")
        )),
        1 => out.push_str(&format!(
            "<?proc {}?>",
            WORDS[rng.random_range(0..WORDS.len())]
        )),
        2 => out.push('\n'),
        _ => {}
    }
}

fn element(rng: &mut StdRng, depth: usize, out: &mut String) {
    let n = name(rng);
    out.push('<');
    out.push_str(&n);
    let mut used = Vec::new();
    for _ in 0..rng.random_range(0..3) {
        let a = name(rng);
        if used.contains(&a) {
            continue;
        }
        let space = [" ", "\n  ", " \t"][rng.random_range(0..3)];
        out.push_str(&format!("{space}{a}=\"{}\"", text(rng, true)));
        used.push(a);
    }
    if depth > 4 || rng.random_bool(0.2) {
        out.push_str("/>");
        return;
    }
    out.push('>');
    for _ in 0..rng.random_range(0..4) {
        match rng.random_range(0..6) {
            0 | 1 => element(rng, depth + 1, out),
            2 => out.push_str(&format!(
                "<![CDATA[{}]]>",
                text(rng, false).replace("]]", "] ]").replace('>', "<")
            )),
            3 => misc(rng, out),
            _ => out.push_str(&text(rng, false)),
        }
    }
    out.push_str("</");
    out.push_str(&n);
    out.push('>');
}

/// A well-formed document without a DTD, namespaces or non-predefined entities.
pub fn generate_document(rng: &mut StdRng) -> String {
    let mut out = String::new();
    if rng.random_bool(0.7) {
        let decl = [
            "<?xml version=\"1.0\"?>",
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>",
            "<?xml version='1.0' encoding='utf-8' standalone='yes'?>",
        ];
        out.push_str(decl[rng.random_range(0..decl.len())]);
        out.push('\n');
    }
    misc(rng, &mut out);
    element(rng, 0, &mut out);
    misc(rng, &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mutation {
    DeleteTagClose,
    SwapEndTagCase,
    UnquoteAttribute,
    DuplicateRoot,
    BareAmpersand,
    LessThanInText,
    DuplicateAttribute,
    DeleteEndTag,
    DoubleHyphenInComment,
    TextOutsideRoot,
}

impl Mutation {
    pub const ALL: [Mutation; 10] = [
        Mutation::DeleteTagClose,
        Mutation::SwapEndTagCase,
        Mutation::UnquoteAttribute,
        Mutation::DuplicateRoot,
        Mutation::BareAmpersand,
        Mutation::LessThanInText,
        Mutation::DuplicateAttribute,
        Mutation::DeleteEndTag,
        Mutation::DoubleHyphenInComment,
        Mutation::TextOutsideRoot,
    ];
}

/// Byte ranges of every tag (`<` up to and including `>`) that is not a
/// comment, PI, CDATA section or declaration, as (start, end, is_end_tag).
fn element_tags(doc: &str) -> Vec<(usize, usize, bool)> {
    let mut tags = Vec::new();
    let mut i = 0;
    while let Some(rel) = doc[i..].find('<') {
        let start = i + rel;
        let rest = &doc[start..];
        let close = if rest.starts_with("<!--") {
            rest.find("-->").map(|e| e + 3)
        } else if rest.starts_with("<![CDATA[") {
            rest.find("]]>").map(|e| e + 3)
        } else if rest.starts_with("<?") {
            rest.find("?>").map(|e| e + 2)
        } else {
            let mut quote = None;
            let mut end = None;
            for (j, c) in rest.char_indices() {
                match (quote, c) {
                    (None, '"' | '\'') => quote = Some(c),
                    (Some(q), _) if q == c => quote = None,
                    (None, '>') => {
                        end = Some(j + 1);
                        break;
                    }
                    _ => {}
                }
            }
            tags.push((start, start + end.unwrap(), rest.starts_with("</")));
            end
        };
        i = start + close.unwrap();
    }
    tags
}

fn root_range(doc: &str) -> (usize, usize) {
    let tags = element_tags(doc);
    (tags[0].0, tags.last().unwrap().1)
}

/// Applies `mutation` at a position chosen by `rng`. Returns `None` when the
/// document has no site for it (no attributes, no comment, ...).
pub fn mutate(doc: &str, mutation: Mutation, rng: &mut StdRng) -> Option<String> {
    let tags = element_tags(doc);
    let pick = |rng: &mut StdRng, n: usize| rng.random_range(0..n);
    let mut s = doc.to_owned();
    match mutation {
        Mutation::DeleteTagClose => {
            let sites: Vec<_> = tags
                .iter()
                .filter(|t| !doc[t.1..].trim_start().starts_with('>'))
                .collect();
            let &&(_, end, _) = sites.get(pick(rng, sites.len().max(1)))?;
            s.remove(end - 1);
        }
        Mutation::SwapEndTagCase => {
            let ends: Vec<_> = tags.iter().filter(|t| t.2).collect();
            let &&(start, end, _) = ends.get(pick(rng, ends.len().max(1)))?;
            let letters: Vec<_> = doc[start..end]
                .char_indices()
                .filter(|(_, c)| c.is_ascii_alphabetic())
                .collect();
            if letters.is_empty() {
                return None;
            }
            let (j, c) = letters[pick(rng, letters.len())];
            let swapped = if c.is_ascii_lowercase() {
                c.to_ascii_uppercase()
            } else {
                c.to_ascii_lowercase()
            };
            s.replace_range(start + j..start + j + 1, &swapped.to_string());
        }
        Mutation::UnquoteAttribute => {
            let sites = attribute_values(doc, &tags);
            let &(open, close) = sites.get(pick(rng, sites.len().max(1)))?;
            s.replace_range(close..close + 1, "");
            s.replace_range(open..open + 1, "");
        }
        Mutation::DuplicateRoot => {
            let (start, end) = root_range(doc);
            s.insert_str(end, &doc[start..end]);
        }
        Mutation::BareAmpersand | Mutation::LessThanInText => {
            let inner: Vec<_> = tags.windows(2).map(|w| w[0].1).collect();
            let &at = inner.get(pick(rng, inner.len().max(1)))?;
            let insert = if mutation == Mutation::BareAmpersand {
                "a & b"
            } else {
                "a < b"
            };
            s.insert_str(at, insert);
        }
        Mutation::DuplicateAttribute => {
            let starts: Vec<_> = tags
                .iter()
                .filter(|t| !t.2)
                .filter_map(|&(start, end, _)| {
                    let tag = &doc[start..end];
                    let eq = tag.find('=')?;
                    let name_start = tag[..eq].rfind(|c: char| c.is_whitespace())? + 1;
                    let name = &tag[name_start..eq];
                    let insert_at = if tag.ends_with("/>") {
                        end - 2
                    } else {
                        end - 1
                    };
                    Some((insert_at, format!(" {name}=\"dup\"")))
                })
                .collect();
            let (at, text) = starts.get(pick(rng, starts.len().max(1)))?.clone();
            s.insert_str(at, &text);
        }
        Mutation::DeleteEndTag => {
            let ends: Vec<_> = tags.iter().filter(|t| t.2).collect();
            let &&(start, end, _) = ends.get(pick(rng, ends.len().max(1)))?;
            s.replace_range(start..end, "");
        }
        Mutation::DoubleHyphenInComment => {
            let at = doc.find("<!--")? + 4;
            s.insert_str(at, "a--b");
        }
        Mutation::TextOutsideRoot => {
            let (start, end) = root_range(doc);
            let at = if rng.random_bool(0.5) { start } else { end };
            s.insert_str(at, "stray");
        }
    }
    Some(s)
}

fn attribute_values(doc: &str, tags: &[(usize, usize, bool)]) -> Vec<(usize, usize)> {
    let mut sites = Vec::new();
    for &(start, end, is_end) in tags {
        if is_end {
            continue;
        }
        let mut quote: Option<(char, usize)> = None;
        for (j, c) in doc[start..end].char_indices() {
            match quote {
                None if c == '"' || c == '\'' => quote = Some((c, start + j)),
                Some((q, open)) if q == c => {
                    let value = &doc[open + 1..start + j];
                    if !value.contains(['"', '\'']) {
                        sites.push((open, start + j));
                    }
                    quote = None;
                }
                _ => {}
            }
        }
    }
    sites
}

/// The reference processor's verdict.
pub fn oracle_accepts(doc: &str) -> bool {
    roxmltree::Document::parse(doc).is_ok()
}

/// A random input for totality checks: raw bytes, arbitrary text, or
/// markup-heavy fragments.
pub fn fuzz_input(rng: &mut StdRng) -> Vec<u8> {
    match rng.random_range(0..4) {
        0 => (0..rng.random_range(0..200))
            .map(|_| rng.random())
            .collect(),
        1 => (0..rng.random_range(0..200))
            .map(|_| rng.random::<char>())
            .collect::<String>()
            .into_bytes(),
        _ => {
            const PIECES: &[&str] = &[
                "<",
                ">",
                "</",
                "/>",
                "<?",
                "?>",
                "<!--",
                "-->",
                "--",
                "<![CDATA[",
                "]]>",
                "<!DOCTYPE ",
                "[",
                "]",
                "&",
                ";",
                "&#",
                "&#x",
                "&amp;",
                "=",
                "\"",
                "'",
                " ",
                "\n",
                "\r",
                "\r\n",
                "\t",
                "a",
                "B",
                "é",
                "日",
                "xml",
                "version=\"1.0\"",
                "\u{FEFF}",
                "\u{0}",
                "\u{1}",
                "\u{FFFE}",
                "title",
                "crew",
                "1",
            ];
            let mut bytes: Vec<u8> = (0..rng.random_range(0..80))
                .flat_map(|_| PIECES[rng.random_range(0..PIECES.len())].bytes())
                .collect();
            if rng.random_bool(0.1) {
                let at = rng.random_range(0..=bytes.len());
                bytes.insert(at, [0xFF, 0xC3, 0x80, 0xE2][rng.random_range(0..4)]);
            }
            bytes
        }
    }
}

/// Starts the service on an ephemeral port of the current runtime.
pub async fn start_service(asset_dir: &std::path::Path) -> std::net::SocketAddr {
    let listener = tokio::net::TcpListener::bind("127.0.0.1:0").await.unwrap();
    let addr = listener.local_addr().unwrap();
    let config = xmlcheck::service::ServiceConfig {
        listen: addr,
        asset_dir: asset_dir.to_owned(),
        ..Default::default()
    };
    tokio::spawn(xmlcheck::service::serve_on(listener, config));
    addr
}

/// JSON body for `POST /api/validate`.
pub fn validate_body(source: &str, require_declaration: bool) -> serde_json::Value {
    serde_json::json!({ "source": source, "options": { "requireDeclaration": require_declaration } })
}

/// `xmlcheck validate --json` on a file holding `source`.
pub fn cli_json(source: &str, require_declaration: bool) -> xmlcheck::JsonReport {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("doc.xml");
    std::fs::write(&path, source).unwrap();
    let mut cmd = std::process::Command::new(env!("CARGO_BIN_EXE_xmlcheck"));
    cmd.args(["validate", "--json"]).arg(&path);
    if !require_declaration {
        cmd.arg("--no-require-declaration");
    }
    let output = cmd.output().unwrap();
    let mut reports: Vec<xmlcheck::JsonReport> = serde_json::from_slice(&output.stdout).unwrap();
    reports.pop().unwrap()
}

/// The event fields compared by round-trip checks: kind, name, attribute
/// names and values, text, emptiness and depth.
pub type EventFields = (NodeKind, String, Vec<(String, String)>, String, bool, usize);

/// `None` if the reader reports any malformed construct.
pub fn event_fields(src: &str) -> Option<Vec<EventFields>> {
    Reader::new(src, None, ParserOptions::lenient())
        .map(|e| {
            e.ok().map(|e| {
                let attrs = e
                    .attributes
                    .iter()
                    .map(|a| (a.name.clone(), a.value.clone()))
                    .collect();
                (
                    e.kind,
                    e.name,
                    attrs,
                    e.text_content,
                    e.is_empty_element,
                    e.depth,
                )
            })
        })
        .collect()
}
