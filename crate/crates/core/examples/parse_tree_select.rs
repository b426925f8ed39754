//! Parse a bracketed tree and walk `terminal:height` pointers up from a leaf.
//!
//!     cargo run --example parse_tree_select

use srl_extract::treebank::parse_tree;

const TREE: &str = "( (S (NP-SBJ-1 (DT The) (NN vase))
     (VP (VBD was)
         (VP (VBN broken)
             (NP (-NONE- *-1))))
     (. .)) )";

fn main() {
    let tree = parse_tree(TREE).expect("valid tree");
    println!("{tree}\n");
    println!("{}\n", tree.pretty());

    for (i, (pos, token)) in tree.terminals().into_iter().enumerate() {
        println!("{i:>2}  {pos:<7} {token}");
    }

    for (terminal, height) in [(0, 0), (0, 1), (4, 1), (3, 1), (3, 2), (1, 9)] {
        match tree.select(terminal, height) {
            Ok(node) => println!("{terminal}:{height}  {:<8} {:?}", node.label(), node.text()),
            Err(e) => println!("{terminal}:{height}  error: {e}"),
        }
    }
}
