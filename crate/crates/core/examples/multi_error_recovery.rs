//! One pass over a badly broken document: every problem is reported, and the
//! reader recovers after each broken tag instead of stopping at the first.
//!
//!     cargo run --example multi_error_recovery

use xmlcheck::{CheckingReader, NodeKind, ParserOptions};

const BROKEN: &str = "<catalog>
  <title id=1>Tootsie</title>
  <title lang='en' lang='fr'>Jurassic Park</title
  <crew>Sydney Pollak</CREW>
  <note>fish &chips; &amp; 3 < 4</note>
  <!-- reviewed -- twice -->
</catalog>
<catalog/>
";

fn main() {
    let mut elements = Vec::new();
    let mut checker = CheckingReader::new(BROKEN, Some("broken.xml"), ParserOptions::lenient())
        .on_diagnostic(|d| println!("  seen while reading: {} at {}", d.code, d.span.start));
    for node in checker.by_ref() {
        if node.kind == NodeKind::StartElement {
            elements.push(node.name);
        }
    }
    let report = checker.finish();

    println!("\nelements read: {}", elements.join(", "));
    println!(
        "\n{} errors, {} warnings:",
        report.error_count, report.warning_count
    );
    for d in &report.diagnostics {
        print!("{}: {}: {}", d.span.start, d.code, d.message);
        if let Some(related) = d.related_span {
            print!(" (see {})", related.start);
        }
        println!();
    }

    let capped =
        CheckingReader::new(BROKEN, None, ParserOptions::lenient().with_max_errors(3)).finish();
    println!("\nwith --max-errors 3:");
    for d in &capped.diagnostics {
        println!(
            "{}: {}: {}: {}",
            d.span.start, d.severity, d.code, d.message
        );
    }
}
