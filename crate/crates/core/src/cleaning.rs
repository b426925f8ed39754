//! Trace and empty-element removal.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use regex::Regex;
use thiserror::Error;

use crate::treebank::{ParseTree, EMPTY_ELEMENT_POS};

/// Default token-level trace patterns:
/// starred tokens with an optional `-N` index (`*`, `*U*`, `*?*`, `*T*-1`,
/// `*PRO*-2`), and bare indexed stars (`*-1`).
pub const DEFAULT_TRACE_PATTERNS: [&str; 2] = [r"^\*(?:\S*\*)?(?:-\d+)?$", r"^\*-\d+$"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CleaningError {
    #[error("tree leaves do not match the token sequence")]
    TreeMismatch,
    #[error("unknown trace mode {0:?} (expected `tree` or `pattern`)")]
    UnknownMode(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TraceMode {
    /// Drop tokens whose POS is `-NONE-`.
    #[default]
    TreeGuided,
    /// Drop tokens matching the trace patterns.
    PatternOnly,
}

impl FromStr for TraceMode {
    type Err = CleaningError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "tree" => Ok(TraceMode::TreeGuided),
            "pattern" => Ok(TraceMode::PatternOnly),
            other => Err(CleaningError::UnknownMode(other.to_string())),
        }
    }
}

impl fmt::Display for TraceMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceMode::TreeGuided => "tree",
            TraceMode::PatternOnly => "pattern",
        })
    }
}

#[derive(Debug, Clone)]
pub struct TracePolicy {
    pub mode: TraceMode,
    patterns: Vec<Regex>,
}

fn default_patterns() -> &'static [Regex] {
    static PATTERNS: OnceLock<Vec<Regex>> = OnceLock::new();
    PATTERNS.get_or_init(|| {
        DEFAULT_TRACE_PATTERNS
            .iter()
            .map(|p| Regex::new(p).expect("valid trace pattern"))
            .collect()
    })
}

impl TracePolicy {
    pub fn new(mode: TraceMode) -> Self {
        TracePolicy {
            mode,
            patterns: default_patterns().to_vec(),
        }
    }

    pub fn with_patterns(mode: TraceMode, patterns: Vec<Regex>) -> Self {
        TracePolicy { mode, patterns }
    }

    pub fn patterns(&self) -> &[Regex] {
        &self.patterns
    }

    pub fn is_trace(&self, token: &str) -> bool {
        self.patterns.iter().any(|p| p.is_match(token))
    }
}

impl Default for TracePolicy {
    fn default() -> Self {
        TracePolicy::new(TraceMode::default())
    }
}

/// True if `token` matches the default trace patterns. A literal `0` is
/// never a trace by pattern; it is only dropped under `-NONE-` in tree mode.
pub fn is_trace_token(token: &str) -> bool {
    default_patterns().iter().any(|p| p.is_match(token))
}

/// Removes trace tokens and joins the survivors with single spaces.
///
/// Tree-guided mode needs `tree` and falls back to pattern matching without
/// it.
pub fn strip_traces(
    tokens: &[&str],
    policy: &TracePolicy,
    tree: Option<&ParseTree>,
) -> Result<String, CleaningError> {
    match (policy.mode, tree) {
        (TraceMode::TreeGuided, Some(tree)) => {
            let terminals = tree.terminals();
            if terminals.len() != tokens.len()
                || terminals.iter().zip(tokens).any(|((_, t), tok)| t != tok)
            {
                return Err(CleaningError::TreeMismatch);
            }
            Ok(join_tokens(
                terminals
                    .into_iter()
                    .filter(|(pos, _)| *pos != EMPTY_ELEMENT_POS)
                    .map(|(_, tok)| tok),
            ))
        }
        _ => Ok(join_tokens(
            tokens.iter().copied().filter(|t| !policy.is_trace(t)),
        )),
    }
}

/// Cleaned surface text of a (sub)tree.
pub fn clean_tree_text(tree: &ParseTree, policy: &TracePolicy) -> String {
    let leaves = tree.leaves();
    strip_traces(&leaves, policy, Some(tree)).expect("leaves come from the same tree")
}

/// Re-tokenizes on whitespace and strips traces by pattern.
pub fn clean_text(text: &str, policy: &TracePolicy) -> String {
    join_tokens(text.split_whitespace().filter(|t| !policy.is_trace(t)))
}

fn join_tokens<'a>(tokens: impl Iterator<Item = &'a str>) -> String {
    // no double or edge spaces
    tokens
        .flat_map(str::split_whitespace)
        .collect::<Vec<_>>()
        .join(" ")
}
