use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::ops::RangeInclusive;
use std::path::{Path, PathBuf};

use super::{count_prop_lines, read_file, PipelineError, SkipEntry};

/// Where the three annotation layers live.
///
/// Each root is scanned directly and through its two-digit section folders
/// (`00` .. `24` by default), matching the WSJ directory layout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusLayout {
    pub prop_root: PathBuf,
    pub onf_root: PathBuf,
    pub parse_root: PathBuf,
    pub folder_range: RangeInclusive<u32>,
    /// File ids (e.g. `wsj_0001`) to leave out.
    pub exclusions: BTreeSet<String>,
}

impl CorpusLayout {
    pub fn new(
        prop_root: impl Into<PathBuf>,
        onf_root: impl Into<PathBuf>,
        parse_root: impl Into<PathBuf>,
    ) -> Self {
        CorpusLayout {
            prop_root: prop_root.into(),
            onf_root: onf_root.into(),
            parse_root: parse_root.into(),
            folder_range: 0..=24,
            exclusions: BTreeSet::new(),
        }
    }

    /// Layout with `prop/`, `onf/` and `parse/` under one directory.
    pub fn under(root: impl AsRef<Path>) -> Self {
        let root = root.as_ref();
        CorpusLayout::new(root.join("prop"), root.join("onf"), root.join("parse"))
    }

    pub fn with_exclusions<I, S>(mut self, ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.exclusions.extend(ids.into_iter().map(Into::into));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FileTriple {
    pub id: String,
    pub prop: PathBuf,
    pub onf: PathBuf,
    pub parse: PathBuf,
}

#[derive(Debug, Clone)]
pub struct Discovery {
    /// Complete triples, sorted by file id.
    pub triples: Vec<FileTriple>,
    /// Excluded and incomplete ids, sorted by file id.
    pub skipped: Vec<SkipEntry>,
    /// Proposition lines in the `.prop` files of skipped ids.
    pub skipped_propositions: usize,
}

fn scan(root: &Path, ext: &str, folders: &RangeInclusive<u32>) -> Result<BTreeMap<String, PathBuf>, PipelineError> {
    if !root.is_dir() {
        return Err(PipelineError::MissingRoot(root.to_path_buf()));
    }
    let mut dirs = vec![root.to_path_buf()];
    dirs.extend(folders.clone().map(|n| root.join(format!("{n:02}"))));

    let mut found = BTreeMap::new();
    for dir in dirs.iter().filter(|d| d.is_dir()) {
        let entries = fs::read_dir(dir).map_err(|source| PipelineError::Io {
            path: dir.clone(),
            source,
        })?;
        let mut paths = Vec::new();
        for entry in entries {
            let entry = entry.map_err(|source| PipelineError::Io {
                path: dir.clone(),
                source,
            })?;
            paths.push(entry.path());
        }
        paths.sort();
        for path in paths {
            if !path.is_file() || path.extension().and_then(|e| e.to_str()) != Some(ext) {
                continue;
            }
            if let Some(id) = path.file_stem().and_then(|s| s.to_str()) {
                found.entry(id.to_string()).or_insert(path);
            }
        }
    }
    Ok(found)
}

/// Pairs up `.prop`, `.onf` and `.parse` files by file id.
pub fn discover_files(layout: &CorpusLayout) -> Result<Discovery, PipelineError> {
    let folders = &layout.folder_range;
    let mut props = scan(&layout.prop_root, "prop", folders)?;
    let mut onfs = scan(&layout.onf_root, "onf", folders)?;
    let mut parses = scan(&layout.parse_root, "parse", folders)?;

    let ids: BTreeSet<String> = props
        .keys()
        .chain(onfs.keys())
        .chain(parses.keys())
        .cloned()
        .collect();

    let mut triples = Vec::new();
    let mut skipped = Vec::new();
    let mut skipped_propositions = 0;
    for id in ids {
        let prop = props.remove(&id);
        let onf = onfs.remove(&id);
        let parse = parses.remove(&id);
        let reason = if layout.exclusions.contains(&id) {
            Some("excluded".to_string())
        } else {
            let missing: Vec<&str> = [(".prop", prop.is_none()), (".onf", onf.is_none()), (".parse", parse.is_none())]
                .into_iter()
                .filter_map(|(ext, absent)| absent.then_some(ext))
                .collect();
            (!missing.is_empty()).then(|| format!("missing {}", missing.join(", ")))
        };
        match (reason, prop, onf, parse) {
            (None, Some(prop), Some(onf), Some(parse)) => triples.push(FileTriple { id, prop, onf, parse }),
            (reason, prop, _, _) => {
                if let Some(prop) = prop {
                    skipped_propositions += count_prop_lines(&read_file(&prop)?);
                }
                skipped.push(SkipEntry {
                    file_id: id,
                    reason: reason.unwrap_or_default(),
                });
            }
        }
    }

    if triples.is_empty() {
        return Err(PipelineError::EmptyCorpus);
    }
    Ok(Discovery {
        triples,
        skipped,
        skipped_propositions,
    })
}

/// Reads an exclusion list: one file id per line, `#` starts a comment.
pub fn load_exclusions(path: &Path) -> Result<BTreeSet<String>, PipelineError> {
    Ok(read_file(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(str::to_string)
        .collect())
}
