//! End-to-end extraction: discover aligned `.prop`/`.onf`/`.parse` triples,
//! resolve ARG0/REL/ARG1 pointers to cleaned spans, build and filter records,
//! and export them.
//!
//! Records are emitted in a total order (file id, tree index, predicate
//! terminal, source line), so the output does not depend on how many workers
//! process files.

mod discover;
mod export;
mod validate;

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::cleaning::{clean_tree_text, TracePolicy};
use crate::onf::{parse_onf, parse_trees_file, OnfError, SentencePair};
use crate::propbank::{
    parse_prop_line, sort_propositions, PointerExpr, PropError, Proposition, RoleLabel,
    TreePointer,
};
use crate::treebank::{parse_tree, ParseError, ParseTree, SelectError};

pub use discover::{discover_files, load_exclusions, CorpusLayout, Discovery, FileTriple};
pub use export::{export_csv, read_dataset, read_dataset_csv, write_csv, Schema, ORL_HEADER, SRL_HEADER};
pub use validate::{validate_corpus, Violation};

/// Separator between ARG0 and ARG1 in `merged_arguments`.
pub const MERGE_SEPARATOR: char = '|';
/// Replacement for literal separators inside spans.
pub const SEPARATOR_REPLACEMENT: char = '/';

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error("corpus root {} does not exist or is not a directory", .0.display())]
    MissingRoot(PathBuf),
    #[error("no complete .prop/.onf/.parse triples found")]
    EmptyCorpus,
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{file_id} line {line}: {source}")]
    Prop {
        file_id: String,
        line: usize,
        #[source]
        source: PropError,
    },
    #[error("{file_id}: {source}")]
    Onf {
        file_id: String,
        #[source]
        source: OnfError,
    },
    #[error("{file_id} tree {tree_index}: {source}")]
    Tree {
        file_id: String,
        tree_index: usize,
        #[source]
        source: ParseError,
    },
    #[error("{file_id}: {sentences} sentences but {trees} trees")]
    Alignment {
        file_id: String,
        sentences: usize,
        trees: usize,
    },
    #[error("{file_id} line {line}: tree index {tree_index} out of range ({trees} trees)")]
    TreeIndex {
        file_id: String,
        line: usize,
        tree_index: usize,
        trees: usize,
    },
    #[error("{file_id} line {line}: {role} pointer {pointer} in tree {tree_index}: {source}")]
    Resolve {
        file_id: String,
        line: usize,
        tree_index: usize,
        role: RoleLabel,
        pointer: TreePointer,
        #[source]
        source: SelectError,
    },
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("header mismatch: expected {expected:?}, found {found:?}")]
    HeaderMismatch { expected: String, found: String },
}

impl PipelineError {
    /// Short stable identifier for machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            PipelineError::MissingRoot(_) => "MissingRoot",
            PipelineError::EmptyCorpus => "EmptyCorpus",
            PipelineError::Io { .. } => "IoError",
            PipelineError::Prop { .. } => "MalformedProposition",
            PipelineError::Onf { .. } => "MalformedOnf",
            PipelineError::Tree { .. } => "MalformedTree",
            PipelineError::Alignment { .. } | PipelineError::TreeIndex { .. } => "AlignmentError",
            PipelineError::Resolve { source, .. } => match source {
                SelectError::TerminalOutOfRange { .. } => "TerminalOutOfRange",
                SelectError::HeightOverflow { .. } => "HeightOverflow",
            },
            PipelineError::Csv(_) => "CsvError",
            PipelineError::HeaderMismatch { .. } => "HeaderMismatch",
        }
    }
}

pub(crate) fn read_file(path: &Path) -> Result<String, PipelineError> {
    fs::read_to_string(path).map_err(|source| PipelineError::Io {
        path: path.to_path_buf(),
        source,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Provenance {
    pub file_id: String,
    pub tree_index: usize,
    pub predicate_terminal: usize,
    pub line_no: usize,
}

/// One output row.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SrlRecord {
    pub sentence: String,
    pub treebanked_sentence: String,
    pub predicate: String,
    pub arg0: String,
    pub arg1: String,
    /// `arg0 + "|" + arg1`.
    pub merged_arguments: String,
    /// Absent for records read back from CSV.
    pub provenance: Option<Provenance>,
}

fn sanitize_span(span: String) -> String {
    if span.contains(MERGE_SEPARATOR) {
        span.replace(MERGE_SEPARATOR, &SEPARATOR_REPLACEMENT.to_string())
    } else {
        span
    }
}

impl SrlRecord {
    /// Builds a record, replacing `|` inside spans so `merged_arguments`
    /// holds exactly one separator.
    pub fn new(
        sentence: impl Into<String>,
        treebanked_sentence: impl Into<String>,
        predicate: impl Into<String>,
        arg0: impl Into<String>,
        arg1: impl Into<String>,
        provenance: Option<Provenance>,
    ) -> Self {
        let arg0 = sanitize_span(arg0.into());
        let arg1 = sanitize_span(arg1.into());
        SrlRecord {
            sentence: sentence.into(),
            treebanked_sentence: treebanked_sentence.into(),
            predicate: sanitize_span(predicate.into()),
            merged_arguments: format!("{arg0}{MERGE_SEPARATOR}{arg1}"),
            arg0,
            arg1,
            provenance,
        }
    }

    /// True when neither core argument survived cleaning.
    pub fn is_argumentless(&self) -> bool {
        self.merged_arguments.len() == 1
    }
}

/// Holder/Expression/Target view of an [`SrlRecord`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrlRecord {
    pub holder: String,
    pub expression: String,
    pub target: String,
    pub sentence: String,
    pub treebanked_sentence: String,
    pub provenance: Option<Provenance>,
}

/// ARG0 → holder, REL → expression, ARG1 → target.
pub fn map_to_orl(record: &SrlRecord) -> OrlRecord {
    OrlRecord {
        holder: record.arg0.clone(),
        expression: record.predicate.clone(),
        target: record.arg1.clone(),
        sentence: record.sentence.clone(),
        treebanked_sentence: record.treebanked_sentence.clone(),
        provenance: record.provenance.clone(),
    }
}

/// Resolves a role's pointer expressions to cleaned text.
///
/// Every part of every expression is selected and cleaned; parts that clean
/// to nothing (bare traces) are dropped, the rest are joined with single
/// spaces in source order.
pub fn resolve_role<'a>(
    exprs: impl IntoIterator<Item = &'a PointerExpr>,
    tree: &ParseTree,
    policy: &TracePolicy,
) -> Result<String, (TreePointer, SelectError)> {
    let mut pieces = Vec::new();
    for expr in exprs {
        for &ptr in expr.parts() {
            let node = tree
                .select(ptr.terminal, ptr.height)
                .map_err(|e| (ptr, e))?;
            let text = clean_tree_text(node, policy);
            if !text.is_empty() {
                pieces.push(text);
            }
        }
    }
    Ok(pieces.join(" "))
}

/// Builds the record for one proposition.
pub fn build_record(
    file_id: &str,
    prop: &Proposition,
    trees: &[ParseTree],
    sentences: &[SentencePair],
    policy: &TracePolicy,
) -> Result<SrlRecord, PipelineError> {
    if sentences.len() != trees.len() {
        return Err(PipelineError::Alignment {
            file_id: file_id.to_string(),
            sentences: sentences.len(),
            trees: trees.len(),
        });
    }
    let tree = trees
        .get(prop.tree_index)
        .ok_or_else(|| PipelineError::TreeIndex {
            file_id: file_id.to_string(),
            line: prop.line_no,
            tree_index: prop.tree_index,
            trees: trees.len(),
        })?;
    let resolve = |label: RoleLabel| {
        resolve_role(prop.exprs(label), tree, policy).map_err(|(pointer, source)| {
            PipelineError::Resolve {
                file_id: file_id.to_string(),
                line: prop.line_no,
                tree_index: prop.tree_index,
                role: label,
                pointer,
                source,
            }
        })
    };
    let predicate = resolve(RoleLabel::Rel)?;
    let arg0 = resolve(RoleLabel::Arg0)?;
    let arg1 = resolve(RoleLabel::Arg1)?;
    let pair = &sentences[prop.tree_index];
    Ok(SrlRecord::new(
        pair.plain.clone(),
        pair.treebanked.clone(),
        predicate,
        arg0,
        arg1,
        Some(Provenance {
            file_id: file_id.to_string(),
            tree_index: prop.tree_index,
            predicate_terminal: prop.predicate_terminal,
            line_no: prop.line_no,
        }),
    ))
}

/// One record per proposition, failing on the first error.
pub fn build_records(
    file_id: &str,
    props: &[Proposition],
    trees: &[ParseTree],
    sentences: &[SentencePair],
    policy: &TracePolicy,
) -> Result<Vec<SrlRecord>, PipelineError> {
    props
        .iter()
        .map(|p| build_record(file_id, p, trees, sentences, policy))
        .collect()
}

/// Drops records whose `merged_arguments` is exactly `"|"`.
pub fn filter_records(records: Vec<SrlRecord>) -> Vec<SrlRecord> {
    records
        .into_iter()
        .filter(|r| !r.is_argumentless())
        .collect()
}

/// Parsed contents of one file triple.
#[derive(Debug, Clone)]
pub struct LoadedFile {
    pub file_id: String,
    /// Sorted by `(tree_index, predicate_terminal)`.
    pub propositions: Vec<Proposition>,
    /// Lines that failed to parse, with their 1-based line numbers.
    pub bad_lines: Vec<(usize, PropError)>,
    pub trees: Vec<ParseTree>,
    pub sentences: Vec<SentencePair>,
}

impl LoadedFile {
    pub fn proposition_count(&self) -> usize {
        self.propositions.len() + self.bad_lines.len()
    }

    pub fn is_aligned(&self) -> bool {
        self.trees.len() == self.sentences.len()
    }
}

pub(crate) fn count_prop_lines(text: &str) -> usize {
    text.lines().filter(|l| !l.trim().is_empty()).count()
}

/// Reads and parses one triple. Malformed proposition lines are collected
/// rather than fatal; unreadable files and malformed trees or `.onf`
/// sections fail the whole file.
pub fn load_file(triple: &FileTriple) -> Result<LoadedFile, PipelineError> {
    let prop_text = read_file(&triple.prop)?;
    let mut props = Vec::new();
    let mut bad_lines = Vec::new();
    for (i, line) in prop_text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_prop_line(line) {
            Ok(mut p) => {
                p.line_no = i + 1;
                props.push(p);
            }
            Err(e) => bad_lines.push((i + 1, e)),
        }
    }

    let sentences = parse_onf(&read_file(&triple.onf)?).map_err(|source| PipelineError::Onf {
        file_id: triple.id.clone(),
        source,
    })?;
    let trees = parse_trees_file(&read_file(&triple.parse)?)
        .iter()
        .enumerate()
        .map(|(i, t)| {
            parse_tree(t).map_err(|source| PipelineError::Tree {
                file_id: triple.id.clone(),
                tree_index: i,
                source,
            })
        })
        .collect::<Result<Vec<_>, _>>()?;

    Ok(LoadedFile {
        file_id: triple.id.clone(),
        propositions: sort_propositions(props),
        bad_lines,
        trees,
        sentences,
    })
}

#[derive(Debug, Clone)]
pub struct ExtractOptions {
    pub policy: TracePolicy,
    /// Abort on the first bad proposition or file instead of skipping it.
    pub strict: bool,
    /// Worker threads, at least 1.
    pub jobs: usize,
}

impl Default for ExtractOptions {
    fn default() -> Self {
        ExtractOptions {
            policy: TracePolicy::default(),
            strict: false,
            jobs: 1,
        }
    }
}

/// `file_id<TAB>reason` entry of the skip log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkipEntry {
    pub file_id: String,
    pub reason: String,
}

impl std::fmt::Display for SkipEntry {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let reason = self.reason.replace(['\t', '\n'], " ");
        write!(f, "{}\t{}", self.file_id, reason)
    }
}

/// Counts reported by an extraction run.
///
/// `rows_emitted == propositions - propositions_skipped - error_rows - rows_filtered`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize)]
pub struct ExtractSummary {
    pub files_discovered: usize,
    pub files_processed: usize,
    pub files_skipped: usize,
    /// Proposition lines across every discovered `.prop` file.
    pub propositions: usize,
    /// Propositions in excluded, incomplete or unreadable files.
    pub propositions_skipped: usize,
    /// Propositions that failed to parse or resolve.
    pub error_rows: usize,
    /// Rows with neither ARG0 nor ARG1.
    pub rows_filtered: usize,
    pub rows_emitted: usize,
}

#[derive(Debug, Clone)]
pub struct Extraction {
    pub records: Vec<SrlRecord>,
    pub skips: Vec<SkipEntry>,
    pub summary: ExtractSummary,
}

struct FileOutcome {
    records: Vec<SrlRecord>,
    /// Per-proposition errors.
    errors: Vec<PipelineError>,
    /// Whole-file failure.
    failure: Option<PipelineError>,
    propositions: usize,
}

fn process_file(triple: &FileTriple, policy: &TracePolicy) -> FileOutcome {
    let loaded = match load_file(triple) {
        Ok(l) => l,
        Err(e) => {
            let propositions = fs::read_to_string(&triple.prop)
                .map(|t| count_prop_lines(&t))
                .unwrap_or(0);
            return FileOutcome {
                records: Vec::new(),
                errors: Vec::new(),
                failure: Some(e),
                propositions,
            };
        }
    };
    let propositions = loaded.proposition_count();
    if !loaded.is_aligned() {
        return FileOutcome {
            records: Vec::new(),
            errors: Vec::new(),
            failure: Some(PipelineError::Alignment {
                file_id: loaded.file_id.clone(),
                sentences: loaded.sentences.len(),
                trees: loaded.trees.len(),
            }),
            propositions,
        };
    }

    let mut errors: Vec<(usize, PipelineError)> = loaded
        .bad_lines
        .iter()
        .map(|(line, e)| {
            (
                *line,
                PipelineError::Prop {
                    file_id: loaded.file_id.clone(),
                    line: *line,
                    source: e.clone(),
                },
            )
        })
        .collect();
    let mut records = Vec::with_capacity(loaded.propositions.len());
    for prop in &loaded.propositions {
        match build_record(&loaded.file_id, prop, &loaded.trees, &loaded.sentences, policy) {
            Ok(r) => records.push(r),
            Err(e) => errors.push((prop.line_no, e)),
        }
    }
    errors.sort_by_key(|(line, _)| *line);
    FileOutcome {
        records,
        errors: errors.into_iter().map(|(_, e)| e).collect(),
        failure: None,
        propositions,
    }
}

/// Runs discovery, per-file extraction and filtering.
///
/// Without `strict`, bad propositions and broken files are logged in
/// [`Extraction::skips`] and the run continues.
pub fn extract(layout: &CorpusLayout, options: &ExtractOptions) -> Result<Extraction, PipelineError> {
    let discovery = discover_files(layout)?;
    let policy = &options.policy;
    let outcomes: Vec<FileOutcome> = if options.jobs <= 1 {
        discovery
            .triples
            .iter()
            .map(|t| process_file(t, policy))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(options.jobs)
            .build()
            .expect("thread pool");
        pool.install(|| {
            discovery
                .triples
                .par_iter()
                .map(|t| process_file(t, policy))
                .collect()
        })
    };

    let mut summary = ExtractSummary {
        files_discovered: discovery.triples.len() + discovery.skipped.len(),
        files_skipped: discovery.skipped.len(),
        propositions: discovery.skipped_propositions,
        propositions_skipped: discovery.skipped_propositions,
        ..ExtractSummary::default()
    };
    let mut skips: Vec<SkipEntry> = discovery.skipped;
    let mut records = Vec::new();

    for (triple, outcome) in discovery.triples.iter().zip(outcomes) {
        summary.propositions += outcome.propositions;
        if let Some(failure) = outcome.failure {
            if options.strict {
                return Err(failure);
            }
            summary.files_skipped += 1;
            summary.propositions_skipped += outcome.propositions;
            skips.push(SkipEntry {
                file_id: triple.id.clone(),
                reason: failure.to_string(),
            });
            continue;
        }
        summary.files_processed += 1;
        if options.strict && !outcome.errors.is_empty() {
            return Err(outcome.errors.into_iter().next().expect("non-empty"));
        }
        summary.error_rows += outcome.errors.len();
        skips.extend(outcome.errors.into_iter().map(|e| SkipEntry {
            file_id: triple.id.clone(),
            reason: e.to_string(),
        }));
        records.extend(outcome.records);
    }

    let before = records.len();
    let records = filter_records(records);
    summary.rows_filtered = before - records.len();
    summary.rows_emitted = records.len();
    Ok(Extraction {
        records,
        skips,
        summary,
    })
}
