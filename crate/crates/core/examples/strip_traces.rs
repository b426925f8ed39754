//! Remove empty elements from token sequences, guided by the tree or by the
//! trace patterns alone.
//!
//!     cargo run --example strip_traces

use srl_extract::cleaning::{is_trace_token, strip_traces, TraceMode, TracePolicy};
use srl_extract::treebank::parse_tree;

fn main() {
    let tree = parse_tree(
        "(S (NP-SBJ-1 (NNS Workers)) (VP (VBP want) (S (NP-SBJ (-NONE- *PRO*-1)) \
         (VP (TO to) (VP (VB strike) (NP (-NONE- *T*-2)))))) (. .))",
    )
    .unwrap();
    let leaves = tree.leaves();
    println!("leaves   {}", leaves.join(" "));

    let guided = strip_traces(&leaves, &TracePolicy::new(TraceMode::TreeGuided), Some(&tree)).unwrap();
    let pattern = strip_traces(&leaves, &TracePolicy::new(TraceMode::PatternOnly), None).unwrap();
    println!("tree     {guided}");
    println!("pattern  {pattern}");

    for token in ["*PRO*-1", "*T*-2", "*-3", "*U*", "*", "0", "*star*", "fish"] {
        println!("{token:<8} trace={}", is_trace_token(token));
    }
}
