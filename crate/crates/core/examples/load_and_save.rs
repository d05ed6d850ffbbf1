//! Saves a document with and without a byte order mark, loads it back in
//! both encoding modes, and checks the loaded text.
//!
//!     cargo run --example load_and_save

use xmlcheck::{check_loaded_document, load_file, save_file, EncodingMode, ParserOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let text =
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<title lang=\"fr\">Les Misérables</title>\n";

    for bom in [false, true] {
        let path = dir
            .path()
            .join(if bom { "with-bom.xml" } else { "plain.xml" });
        save_file(&path, text, bom)?;
        let doc = load_file(&path, EncodingMode::Utf8)?;
        println!(
            "{}: {} bytes, {:?}, text unchanged: {}",
            path.file_name().unwrap().to_string_lossy(),
            doc.byte_length,
            doc.detected_encoding,
            doc.text == text
        );
    }

    let path = dir.path().join("plain.xml");
    let options = ParserOptions::default().with_encoding_mode(EncodingMode::Ascii);
    let doc = load_file(&path, EncodingMode::Ascii)?;
    let report = check_loaded_document(&doc, &options);
    println!("\nascii mode: well-formed = {}", report.well_formed);
    for d in &report.diagnostics {
        println!("  {}: {}: {}", d.span.start, d.code, d.message);
    }

    std::fs::write(&path, b"<t>caf\xE9</t>")?;
    let doc = load_file(&path, EncodingMode::Utf8)?;
    println!("\nlatin-1 byte read as utf-8: {:?}", doc.text);
    for d in &doc.load_diagnostics {
        println!("  {}: {}: {}", d.span.start, d.code, d.message);
    }
    Ok(())
}
