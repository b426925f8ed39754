//! Read sentence pairs from an `.onf` file and trees from the matching
//! `.parse` file, checking they line up.
//!
//!     cargo run --example onf_reader [FILE.onf FILE.parse]

use std::fs;
use std::path::PathBuf;

use srl_extract::onf::{parse_onf, parse_trees_file};
use srl_extract::treebank::parse_tree;

fn main() {
    let corpus = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/corpus");
    let mut args = std::env::args().skip(1);
    let onf = args.next().map_or_else(|| corpus.join("onf/00/wsj_0001.onf"), PathBuf::from);
    let parse = args.next().map_or_else(|| corpus.join("parse/00/wsj_0001.parse"), PathBuf::from);

    let pairs = parse_onf(&fs::read_to_string(&onf).unwrap()).expect("well-formed .onf");
    let trees = parse_trees_file(&fs::read_to_string(&parse).unwrap());
    println!("{} sentences, {} trees", pairs.len(), trees.len());

    for (i, (pair, tree)) in pairs.iter().zip(&trees).enumerate() {
        let tree = parse_tree(tree).expect("valid tree");
        let leaves = tree.leaves().join(" ");
        println!("\n[{i}] plain       {}", pair.plain);
        println!("    treebanked  {}", pair.treebanked);
        println!("    tree leaves {}  ({})", leaves, if leaves == pair.treebanked { "match" } else { "differ" });
    }
}
