//! Sentence text from OntoNotes `.onf` files and tree strings from `.parse`
//! files.
//!
//! An `.onf` file is a sequence of blank-line separated blocks. Inside a
//! block, a line of at least [`MIN_DELIMITER_HYPHENS`] hyphens opens a
//! section whose heading is the line just above it:
//!
//! ```text
//! ------------------------------------------------------------
//! Plain sentence:
//! ---------------
//!     John wants to eat fish .
//!
//! Treebanked sentence:
//! --------------------
//!     John wants *PRO*-1 to eat fish .
//! ```
//!
//! Only the plain and treebanked sections are read; tree, leaves, coreference
//! and name sections are skipped.

use thiserror::Error;

pub const MIN_DELIMITER_HYPHENS: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OnfError {
    #[error("malformed .onf at line {line}: {reason}")]
    MalformedOnf { line: usize, reason: &'static str },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SentencePair {
    /// Standard text, no trace markers.
    pub plain: String,
    /// Treebank tokens with trace anchors such as `*PRO*-1`.
    pub treebanked: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileSentences {
    pub file_id: String,
    pub sentences: Vec<SentencePair>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Plain,
    Treebanked,
}

fn is_delimiter(line: &str) -> bool {
    let t = line.trim();
    t.len() >= MIN_DELIMITER_HYPHENS && t.bytes().all(|b| b == b'-')
}

fn classify(heading: &str) -> Option<Section> {
    let h = heading.trim().to_ascii_lowercase();
    if h.starts_with("plain sentence") {
        Some(Section::Plain)
    } else if h.starts_with("treebanked sentence") {
        Some(Section::Treebanked)
    } else {
        None
    }
}

/// Splits text into blank-line separated blocks of `(line_no, line)` pairs.
fn blocks(text: &str) -> Vec<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            if !cur.is_empty() {
                out.push(std::mem::take(&mut cur));
            }
        } else {
            cur.push((i + 1, line));
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

pub fn parse_onf(text: &str) -> Result<Vec<SentencePair>, OnfError> {
    let mut pairs = Vec::new();
    let mut pending_plain: Option<(usize, String)> = None;

    for block in blocks(text) {
        let delims: Vec<usize> = (0..block.len())
            .filter(|&k| is_delimiter(block[k].1))
            .collect();
        for (n, &k) in delims.iter().enumerate() {
            if k == 0 || is_delimiter(block[k - 1].1) {
                continue;
            }
            let Some(section) = classify(block[k - 1].1) else {
                continue;
            };
            let heading_line = block[k - 1].0;
            // Content runs up to the next delimiter, minus its heading line.
            let end = delims.get(n + 1).map_or(block.len(), |&next| {
                if block[next - 1].1.trim_end().ends_with(':') {
                    next - 1
                } else {
                    next
                }
            });
            let content = block[k + 1..end.max(k + 1)]
                .iter()
                .map(|(_, l)| l.trim())
                .collect::<Vec<_>>()
                .join(" ");
            if content.is_empty() {
                return Err(OnfError::MalformedOnf {
                    line: heading_line,
                    reason: "sentence heading without sentence text",
                });
            }
            match section {
                Section::Plain => {
                    if pending_plain.is_some() {
                        return Err(OnfError::MalformedOnf {
                            line: heading_line,
                            reason: "plain sentence without a treebanked counterpart",
                        });
                    }
                    pending_plain = Some((heading_line, content));
                }
                Section::Treebanked => {
                    let Some((_, plain)) = pending_plain.take() else {
                        return Err(OnfError::MalformedOnf {
                            line: heading_line,
                            reason: "treebanked sentence without a plain sentence",
                        });
                    };
                    pairs.push(SentencePair {
                        plain,
                        treebanked: content,
                    });
                }
            }
        }
    }

    if let Some((line, _)) = pending_plain {
        return Err(OnfError::MalformedOnf {
            line,
            reason: "plain sentence without a treebanked counterpart",
        });
    }
    Ok(pairs)
}

/// Splits a `.parse` file into trimmed tree strings, one per blank-line
/// separated chunk. Trees are not validated here.
pub fn parse_trees_file(text: &str) -> Vec<String> {
    blocks(text)
        .into_iter()
        .map(|block| {
            block
                .iter()
                .map(|(_, l)| l.trim_end())
                .collect::<Vec<_>>()
                .join("\n")
                .trim()
                .to_string()
        })
        .collect()
}
