//! Walks a document node by node, printing each event with its span.
//!
//!     cargo run --example pull_reader [file]

use xmlcheck::{ParserOptions, ReadOutcome, Reader};

const DEFAULT: &str = "<?xml version=\"1.0\"?>
<videocollection>
  <!-- three films -->
  <title id=\"1\">Tootsie</title>
  <title id=\"2\">Jurassic Park &amp; friends</title>
  <title id=\"3\"><![CDATA[Mission <Impossible>]]></title>
</videocollection>
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let source = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => DEFAULT.to_owned(),
    };
    let mut reader = Reader::new(&source, None, ParserOptions::lenient());
    loop {
        match reader.read() {
            ReadOutcome::Node(node) if node.is_whitespace_text() => {}
            ReadOutcome::Node(node) => {
                let indent = "  ".repeat(node.depth);
                print!(
                    "{:>6}  {indent}{:?}",
                    node.span.start.to_string(),
                    node.kind
                );
                if !node.name.is_empty() {
                    print!(" {}", node.name);
                }
                for attr in &node.attributes {
                    print!(" {}={:?}", attr.name, attr.value);
                }
                if !node.text_content.is_empty() {
                    print!(" {:?}", node.text_content);
                }
                if node.is_empty_element {
                    print!(" (empty)");
                }
                println!();
            }
            ReadOutcome::Malformed(token) => {
                println!(
                    "{:>6}  !! {}: {} (resuming at {})",
                    token.span.start.to_string(),
                    token.code,
                    token.message,
                    token.resume_at
                );
            }
            ReadOutcome::EndOfInput => break,
        }
    }
    for d in reader.take_diagnostics() {
        println!(
            "{:>6}  !! {}: {}",
            d.span.start.to_string(),
            d.code,
            d.message
        );
    }
    Ok(())
}
