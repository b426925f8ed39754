#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

use srl_extract::pipeline::CorpusLayout;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn corpus() -> PathBuf {
    fixtures().join("corpus")
}

pub fn golden() -> PathBuf {
    fixtures().join("golden/dataset.csv")
}

pub fn fixture_layout() -> CorpusLayout {
    CorpusLayout::under(corpus())
}

fn copy_dir(src: &Path, dst: &Path) {
    fs::create_dir_all(dst).unwrap();
    for entry in fs::read_dir(src).unwrap() {
        let path = entry.unwrap().path();
        let target = dst.join(path.file_name().unwrap());
        if path.is_dir() {
            copy_dir(&path, &target);
        } else {
            fs::copy(&path, &target).unwrap();
        }
    }
}

/// A writable copy of the fixture corpus.
pub fn corpus_copy() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path().join("corpus");
    copy_dir(&corpus(), &root);
    (dir, root)
}

/// Writes one `.prop`/`.onf`/`.parse` triple under `root` in folder `00`.
pub fn write_triple(root: &Path, id: &str, prop: &str, onf: &str, parse: &str) {
    for (sub, ext, text) in [("prop", "prop", prop), ("onf", "onf", onf), ("parse", "parse", parse)] {
        let dir = root.join(sub).join("00");
        fs::create_dir_all(&dir).unwrap();
        fs::write(dir.join(format!("{id}.{ext}")), text).unwrap();
    }
}

pub fn onf_text(pairs: &[(&str, &str)]) -> String {
    let mut out = String::new();
    for (plain, treebanked) in pairs {
        out.push_str(&format!(
            "{}\n\nPlain sentence:\n---------------\n    {plain}\n\n\
             Treebanked sentence:\n--------------------\n    {treebanked}\n\n",
            "-".repeat(60)
        ));
    }
    out
}

pub fn corpus_args(root: &Path) -> Vec<String> {
    ["prop", "onf", "parse"]
        .iter()
        .flat_map(|d| [format!("--{d}"), root.join(d).display().to_string()])
        .collect()
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn cli<S: AsRef<str>>(args: &[S]) -> Output {
    let mut argv = vec!["srl-extract".to_string()];
    argv.extend(args.iter().map(|s| s.as_ref().to_string()));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = srl_extract::cli::run(argv, &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}
