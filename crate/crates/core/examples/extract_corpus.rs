//! Run the full extraction over a corpus laid out as `ROOT/{prop,onf,parse}`
//! and print the summary and first rows.
//!
//!     cargo run --example extract_corpus [ROOT] [JOBS]

use std::path::PathBuf;

use srl_extract::pipeline::{extract, write_csv, CorpusLayout, ExtractOptions, Schema};
use srl_extract::TracePolicy;

fn main() {
    let mut args = std::env::args().skip(1);
    let root = args.next().map_or_else(
        || PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus"),
        PathBuf::from,
    );
    let jobs = args.next().map_or(1, |j| j.parse().expect("JOBS is a number"));

    let options = ExtractOptions {
        policy: TracePolicy::default(),
        strict: false,
        jobs,
    };
    let run = extract(&CorpusLayout::under(&root), &options).unwrap_or_else(|e| {
        eprintln!("error\t{}\t{e}", e.kind());
        std::process::exit(1);
    });

    println!("{}", serde_json::to_string_pretty(&run.summary).unwrap());
    for skip in &run.skips {
        println!("skipped {skip}");
    }
    let head = &run.records[..run.records.len().min(5)];
    write_csv(head, std::io::stdout(), Schema::Srl).unwrap();
}
