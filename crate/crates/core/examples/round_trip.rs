//! Reads a document into events, edits the stream, and writes it back out.
//!
//!     cargo run --example round_trip

use xmlcheck::{check_document, serialize_events, NodeEvent, NodeKind, ParserOptions, Reader};

const SOURCE: &str = "<?xml version=\"1.0\"?>
<videocollection>
  <title year=\"1982\">Tootsie</title>
  <title year=\"1993\" note=\"dinos &amp; &quot;chaos&quot;\">Jurassic Park</title>
</videocollection>";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let events: Vec<NodeEvent> =
        Reader::new(SOURCE, None, ParserOptions::default()).collect::<Result<_, _>>()?;
    let unchanged = serialize_events(&events)?;
    println!("{unchanged}\n");

    let mut edited = Vec::new();
    for event in events {
        let closes_root = event.kind == NodeKind::EndElement && event.depth == 0;
        if closes_root {
            edited.push(NodeEvent::text("  ").at_depth(1));
            let title = vec![xmlcheck::Attribute::new("year", "1996")];
            edited.push(NodeEvent::start_element("title", title, false).at_depth(1));
            edited.push(NodeEvent::text("Mission <Impossible>").at_depth(2));
            edited.push(NodeEvent::end_element("title").at_depth(1));
            edited.push(NodeEvent::text("\n").at_depth(1));
        }
        edited.push(event);
    }
    let written = serialize_events(&edited)?;
    println!("{written}");
    let report = check_document(&written, None, &ParserOptions::default());
    println!("\nwell-formed: {}", report.well_formed);
    Ok(())
}
