//! Semantic role dataset extraction from PropBank and OntoNotes.
//!
//! The crate turns `.prop` proposition files, `.parse` constituency trees and
//! `.onf` sentence files into one row per predicate with its ARG0, REL and
//! ARG1 spans, optionally relabelled as opinion roles (holder, expression,
//! target), and summarizes the resulting dataset.
//!
//! | module | does |
//! |--------|------|
//! | [`treebank`] | bracketed tree parsing, terminal indexing, `(terminal, height)` selection |
//! | [`propbank`] | proposition lines, pointer chains and splits, role suffixes |
//! | [`onf`] | plain/treebanked sentence pairs and tree strings |
//! | [`cleaning`] | trace and empty-element removal |
//! | [`pipeline`] | discovery, span resolution, records, filtering, CSV |
//! | [`stats`] | argument breakdown, predicate frequencies, span lengths, sentiment |
//! | [`cli`] | the `srl-extract` command |
//!
//! ```
//! use srl_extract::{cleaning::TracePolicy, pipeline::resolve_role, propbank::parse_prop_line, treebank::parse_tree};
//!
//! let tree = parse_tree("(S (NP-SBJ (-NONE- *PRO*-1)) (VP (TO to) (VP (VB eat) (NP (NN fish)))))").unwrap();
//! let prop = parse_prop_line("wsj/00/wsj_0001.mrg 0 2 gold eat-v eat.01 ----- 0:1-ARG0 2:0-rel 3:1-ARG1").unwrap();
//! let policy = TracePolicy::default();
//! let arg1 = resolve_role(prop.exprs(srl_extract::propbank::RoleLabel::Arg1), &tree, &policy).unwrap();
//! assert_eq!(arg1, "fish");
//! let arg0 = resolve_role(prop.exprs(srl_extract::propbank::RoleLabel::Arg0), &tree, &policy).unwrap();
//! assert_eq!(arg0, "");
//! ```

pub mod cleaning;
pub mod cli;
pub mod onf;
pub mod pipeline;
pub mod propbank;
pub mod stats;
pub mod treebank;

pub use cleaning::{is_trace_token, strip_traces, TraceMode, TracePolicy};
pub use onf::{parse_onf, parse_trees_file, SentencePair};
pub use pipeline::{
    build_records, discover_files, export_csv, extract, filter_records, map_to_orl, resolve_role,
    CorpusLayout, ExtractOptions, OrlRecord, Schema, SrlRecord,
};
pub use propbank::{parse_pointer, parse_pointer_expr, parse_prop_line, sort_propositions, PointerExpr, Proposition, RoleLabel, TreePointer};
pub use stats::{arg_breakdown, compute_stats, predicate_frequencies, sentiment_bucket, sentiment_score, span_length_stats, DatasetStats};
pub use treebank::{parse_tree, ParseTree};
