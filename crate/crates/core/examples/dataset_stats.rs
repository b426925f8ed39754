//! Argument breakdown, predicate frequencies, span lengths and sentiment
//! classes for an exported dataset.
//!
//!     cargo run --example dataset_stats [DATASET.csv] [LEXICON.tsv]

use std::path::PathBuf;

use srl_extract::pipeline::read_dataset_csv;
use srl_extract::stats::{compute_stats, render_text, SentimentLexicon, StatsConfig};

fn main() {
    let fixtures = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut args = std::env::args().skip(1);
    let csv = args.next().map_or_else(|| fixtures.join("golden/dataset.csv"), PathBuf::from);
    let lexicon = args.next().map_or_else(|| fixtures.join("lexicon.tsv"), PathBuf::from);

    let records = read_dataset_csv(&csv).expect("dataset CSV");
    let lexicon = SentimentLexicon::load(&lexicon).expect("lexicon");
    let config = StatsConfig {
        top_k: 5,
        source: Some(csv.display().to_string()),
        ..StatsConfig::default()
    };
    let stats = compute_stats(&records, &lexicon, &config).unwrap();
    print!("{}", render_text(&stats));
}
