//! Prints every diagnostic code the checker can report.
//!
//!     cargo run --example diagnostic_catalog

fn main() {
    for entry in xmlcheck::diagnostic_catalog() {
        println!(
            "{:<26} {:<8} {}",
            entry.identifier, entry.default_severity, entry.description
        );
    }
}
