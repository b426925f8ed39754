//! Check alignment and pointer ranges without extracting anything.
//!
//!     cargo run --example validate_corpus [ROOT]

use std::path::PathBuf;

use srl_extract::pipeline::{validate_corpus, CorpusLayout};

fn main() {
    let root = std::env::args().nth(1).map_or_else(
        || PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus"),
        PathBuf::from,
    );
    let (violations, files) = validate_corpus(&CorpusLayout::under(&root)).expect("corpus root");
    for v in &violations {
        println!("{v}");
    }
    println!("{files} files checked, {} violations", violations.len());
    if !violations.is_empty() {
        std::process::exit(1);
    }
}
