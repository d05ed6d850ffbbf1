//! The JSON report used by `xmlcheck validate --json` and the HTTP service.
//!
//!     cargo run --example json_report

use xmlcheck::{check_document, JsonReport, ParserOptions};

fn main() -> Result<(), serde_json::Error> {
    let report = check_document(
        "<CREW>Sydney Pollak</crew>",
        Some("crew.xml"),
        &ParserOptions::default(),
    );
    let json = JsonReport::from(&report);
    println!("{}", serde_json::to_string_pretty(&json)?);

    let parsed: JsonReport = serde_json::from_str(&serde_json::to_string(&json)?)?;
    assert_eq!(parsed, json);
    Ok(())
}
