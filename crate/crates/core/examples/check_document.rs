//! Checks the five film-catalog documents, each in a well-formed and a broken
//! variant, and prints compiler-style reports.
//!
//!     cargo run --example check_document

use xmlcheck::cli::format_text_report;
use xmlcheck::{check_document, ParserOptions};

const PAIRS: [(&str, &str); 5] = [
    (
        "<?xml version=\"1.0\"?>\n<videocollection>\n<title>Tootsie</title>\n<title>Jurassic Park</title>\n<title>Mission Impossible</title>\n</videocollection>",
        "<title>Tootsie</title>\n<title>Jurassic Park</title>\n<title>Mission Impossible</title>\n</videocollection>>",
    ),
    (
        "<?xml version=\"1.0\"?>\n<videocollection>\n<title>Tootsie</title>\n</videocollection>",
        "<videocollection>\n<title>Tootsie</title\n<title>Jurassic Park</title>\n</videocollection>",
    ),
    ("<?xml version=\"1.0\"?>\n<crew>Sydney Pollak</crew>", "<CREW>Sydney Pollak</crew>"),
    ("<?xml version=\"1.0\"?>\n<title id=\"1\">Tootsie</title>", "<title id=1>Tootsie</title>"),
    ("<?xml version=\"1.0\"?>\n<title>tootsize</title>", "<title>tootsize</title>"),
];

fn main() {
    for (n, (good, bad)) in PAIRS.iter().enumerate() {
        let n = n + 1;
        let good_report = check_document(good, None, &ParserOptions::default());
        print!(
            "{}",
            format_text_report(&format!("example{n}-good.xml"), &good_report)
        );

        // the last pair is about the declaration itself
        let options = if n == 5 {
            ParserOptions::default()
        } else {
            ParserOptions::lenient()
        };
        let bad_report = check_document(bad, None, &options);
        print!(
            "{}",
            format_text_report(&format!("example{n}-bad.xml"), &bad_report)
        );
        println!();
    }
}
