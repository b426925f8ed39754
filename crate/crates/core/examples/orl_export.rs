//! Relabel extracted rows as opinion roles and write both CSV schemas.
//!
//!     cargo run --example orl_export [OUT_DIR]

use std::path::PathBuf;

use srl_extract::pipeline::{export_csv, extract, map_to_orl, CorpusLayout, ExtractOptions, Schema};
use srl_extract::TracePolicy;

fn main() {
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus");
    let out = std::env::args().nth(1).map_or_else(std::env::temp_dir, PathBuf::from);
    let options = ExtractOptions {
        policy: TracePolicy::default(),
        strict: false,
        jobs: 1,
    };
    let run = extract(&CorpusLayout::under(corpus), &options).unwrap();

    for r in run.records.iter().take(4) {
        let o = map_to_orl(r);
        println!("holder={:?} expression={:?} target={:?}", o.holder, o.expression, o.target);
    }

    for schema in [Schema::Srl, Schema::Orl] {
        let path = out.join(format!("dataset.{schema}.csv"));
        export_csv(&run.records, &path, schema).unwrap();
        println!("wrote {}", path.display());
    }
}
