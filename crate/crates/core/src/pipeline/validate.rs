use std::fmt;

use super::{discover_files, load_file, CorpusLayout, PipelineError};
use crate::treebank::SelectError;

/// One problem found by [`validate_corpus`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub file_id: String,
    pub tree: Option<usize>,
    pub line: Option<usize>,
    pub pointer: Option<String>,
    pub kind: &'static str,
    pub detail: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let opt = |v: &Option<usize>| v.map_or_else(|| "-".to_string(), |n| n.to_string());
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.file_id,
            opt(&self.tree),
            opt(&self.line),
            self.pointer.as_deref().unwrap_or("-"),
            self.kind,
            self.detail
        )
    }
}

fn select_kind(e: &SelectError) -> &'static str {
    match e {
        SelectError::TerminalOutOfRange { .. } => "TerminalOutOfRange",
        SelectError::HeightOverflow { .. } => "HeightOverflow",
    }
}

/// Checks every complete triple: sentence/tree counts agree, every
/// proposition's tree index, predicate terminal and pointers are in range.
/// Returns the violations and the number of files checked.
pub fn validate_corpus(layout: &CorpusLayout) -> Result<(Vec<Violation>, usize), PipelineError> {
    let discovery = discover_files(layout)?;
    let mut out = Vec::new();

    for skip in discovery.skipped.iter().filter(|s| s.reason != "excluded") {
        out.push(Violation {
            file_id: skip.file_id.clone(),
            tree: None,
            line: None,
            pointer: None,
            kind: "IncompleteTriple",
            detail: skip.reason.clone(),
        });
    }

    for triple in &discovery.triples {
        let file = match load_file(triple) {
            Ok(f) => f,
            Err(e) => {
                let tree = match &e {
                    PipelineError::Tree { tree_index, .. } => Some(*tree_index),
                    _ => None,
                };
                out.push(Violation {
                    file_id: triple.id.clone(),
                    tree,
                    line: None,
                    pointer: None,
                    kind: e.kind(),
                    detail: e.to_string(),
                });
                continue;
            }
        };
        let violation = |tree, line, pointer, kind, detail| Violation {
            file_id: file.file_id.clone(),
            tree,
            line,
            pointer,
            kind,
            detail,
        };

        if !file.is_aligned() {
            out.push(violation(
                None,
                None,
                None,
                "AlignmentError",
                format!("{} sentences but {} trees", file.sentences.len(), file.trees.len()),
            ));
        }
        for (line, e) in &file.bad_lines {
            out.push(violation(None, Some(*line), None, "MalformedProposition", e.to_string()));
        }
        for prop in &file.propositions {
            let line = Some(prop.line_no);
            let tree_no = Some(prop.tree_index);
            let Some(tree) = file.trees.get(prop.tree_index) else {
                out.push(violation(
                    tree_no,
                    line,
                    None,
                    "AlignmentError",
                    format!("tree index {} out of range ({} trees)", prop.tree_index, file.trees.len()),
                ));
                continue;
            };
            if prop.predicate_terminal >= tree.terminal_count() {
                out.push(violation(
                    tree_no,
                    line,
                    None,
                    "TerminalOutOfRange",
                    format!(
                        "predicate terminal {} out of range ({} terminals)",
                        prop.predicate_terminal,
                        tree.terminal_count()
                    ),
                ));
            }
            for (label, expr) in &prop.roles {
                for ptr in expr.parts() {
                    if let Err(e) = tree.select(ptr.terminal, ptr.height) {
                        out.push(violation(
                            tree_no,
                            line,
                            Some(ptr.to_string()),
                            select_kind(&e),
                            format!("{label}: {e}"),
                        ));
                    }
                }
            }
        }
    }
    Ok((out, discovery.triples.len()))
}
