mod common;

use std::fs;
use std::process::Command;

use common::*;

fn error_line(stderr: &str) -> Vec<&str> {
    let line = stderr.lines().find(|l| l.starts_with("error\t")).expect("error line on stderr");
    line.splitn(3, '\t').collect()
}

fn extract_args(root: &std::path::Path, out: &std::path::Path) -> Vec<String> {
    let mut args = vec!["extract".to_string()];
    args.extend(corpus_args(root));
    args.extend(["--out".to_string(), out.display().to_string()]);
    args
}

#[test]
fn extract_writes_golden_and_prints_counts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dataset.csv");
    let o = cli(&extract_args(&corpus(), &out));
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(fs::read(&out).unwrap(), fs::read(golden()).unwrap());
    for (label, n) in [("files processed", 5), ("files skipped", 0), ("propositions", 22), ("rows emitted", 20)] {
        let line = o.stdout.lines().find(|l| l.starts_with(label)).unwrap();
        assert_eq!(line.split_whitespace().last().unwrap(), n.to_string(), "{line}");
    }
    assert!(o.stdout.contains("filtered (no ARG0/ARG1)         2"));
    assert!(o.stderr.is_empty());
}

#[test]
fn binary_runs_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("dataset.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_srl-extract"))
        .args(extract_args(&corpus(), &out))
        .args(["--jobs", "4"])
        .output()
        .unwrap();
    assert!(status.status.success());
    assert_eq!(fs::read(&out).unwrap(), fs::read(golden()).unwrap());

    let bad = Command::new(env!("CARGO_BIN_EXE_srl-extract")).args(["stats"]).output().unwrap();
    assert!(!bad.status.success());
    assert!(String::from_utf8_lossy(&bad.stderr).starts_with("error\tUsageError\tmissing --csv"));
}

#[test]
fn repeated_runs_are_bytewise_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for (n, jobs) in ["1", "1", "2", "8"].iter().enumerate() {
        let out = dir.path().join(format!("{n}.csv"));
        let mut args = extract_args(&corpus(), &out);
        args.extend(["--jobs".into(), jobs.to_string()]);
        assert_eq!(cli(&args).code, 0);
        outputs.push(fs::read(out).unwrap());
    }
    assert!(outputs.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn empty_corpus_fails() {
    let dir = tempfile::tempdir().unwrap();
    for sub in ["prop", "onf", "parse"] {
        fs::create_dir(dir.path().join(sub)).unwrap();
    }
    let o = cli(&extract_args(dir.path(), &dir.path().join("x.csv")));
    assert_ne!(o.code, 0);
    assert_eq!(error_line(&o.stderr)[1], "EmptyCorpus");
}

#[test]
fn missing_root_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&extract_args(&dir.path().join("nope"), &dir.path().join("x.csv")));
    assert_ne!(o.code, 0);
    assert_eq!(error_line(&o.stderr)[1], "MissingRoot");
}

#[test]
fn strict_bad_pointer_names_file_and_line() {
    let (dir, root) = corpus_copy();
    let prop = root.join("prop/01/wsj_0004.prop");
    let mut text = fs::read_to_string(&prop).unwrap();
    text.push_str("wsj/01/wsj_0004.mrg 1 7 gold fail-v fail.01 ----- 40:0-ARG1 7:0-rel\n");
    fs::write(&prop, text).unwrap();
    let out = dir.path().join("x.csv");

    let mut args = extract_args(&root, &out);
    args.push("--strict".into());
    let o = cli(&args);
    assert_ne!(o.code, 0);
    let e = error_line(&o.stderr);
    assert_eq!(e[1], "TerminalOutOfRange");
    assert!(e[2].starts_with("wsj_0004 line 5: ARG1 pointer 40:0"), "{}", e[2]);

    // Without --strict the row is logged and skipped.
    let log = dir.path().join("skips.tsv");
    let mut args = extract_args(&root, &out);
    args.extend(["--skip-log".into(), log.display().to_string()]);
    let o = cli(&args);
    assert_eq!(o.code, 0);
    let skips = fs::read_to_string(&log).unwrap();
    assert_eq!(skips.lines().count(), 1);
    assert!(skips.starts_with("wsj_0004\twsj_0004 line 5:"));
    assert_eq!(fs::read(&out).unwrap(), fs::read(golden()).unwrap());
}

#[test]
fn skips_go_to_stderr_without_a_log() {
    let dir = tempfile::tempdir().unwrap();
    let excl = dir.path().join("exclude.txt");
    fs::write(&excl, "wsj_0003\n").unwrap();
    let mut args = extract_args(&corpus(), &dir.path().join("x.csv"));
    args.extend(["--exclude".into(), excl.display().to_string()]);
    let o = cli(&args);
    assert_eq!(o.code, 0);
    assert_eq!(o.stderr, "wsj_0003\texcluded\n");
}

#[test]
fn orl_schema_header() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("orl.csv");
    let mut args = extract_args(&corpus(), &out);
    args.extend(["--schema".into(), "orl".into()]);
    assert_eq!(cli(&args).code, 0);
    let text = fs::read_to_string(out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "sentence,treebanked_sentence,holder,expression,target");
    assert_eq!(text.lines().count(), 21);
}

#[test]
fn bad_flag_values_are_usage_errors() {
    let o = cli(&["extract", "--schema", "xml"]);
    assert_eq!(o.code, 2);
    assert_eq!(error_line(&o.stderr)[1], "UsageError");
    let o = cli(&["extract", "--prop", "a", "--onf", "b", "--parse", "c", "--jobs", "0"]);
    assert_eq!(error_line(&o.stderr)[1], "UsageError");
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    let corpus = corpus();
    fs::write(
        &cfg,
        format!(
            "prop = {:?}\nonf = {:?}\nparse = {:?}\nschema = \"orl\"\nout = \"from-config.csv\"\njobs = 2\n",
            corpus.join("prop"),
            corpus.join("onf"),
            corpus.join("parse")
        ),
    )
    .unwrap();
    let o = cli(&["--config", cfg.to_str().unwrap(), "extract"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let from_config = fs::read_to_string(dir.path().join("from-config.csv")).unwrap();
    assert!(from_config.starts_with("sentence,treebanked_sentence,holder"));

    let flag_out = dir.path().join("flag.csv");
    let o = cli(&[
        "extract",
        "--config",
        cfg.to_str().unwrap(),
        "--schema",
        "srl",
        "--out",
        flag_out.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(fs::read(flag_out).unwrap(), fs::read(golden()).unwrap());
}

#[test]
fn config_file_rejects_unknown_keys() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    fs::write(&cfg, "threads = 4\n").unwrap();
    let o = cli(&["--config", cfg.to_str().unwrap(), "stats"]);
    assert_eq!(error_line(&o.stderr)[1], "ConfigError");
}

#[test]
fn stats_prints_breakdown_and_writes_reports() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&["stats", "--csv", golden().to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.contains("Both ARG0 & ARG1   50.0"));
    assert!(o.stdout.contains("Only ARG1          25.0"));
    assert!(o.stdout.contains("Only ARG0          25.0"));
    assert!(o.stdout.contains("mean ARG0 words    1.9"));
    assert!(o.stdout.contains("mean ARG1 words    3.5"));
    assert!(o.stdout.contains("  said             6"));
    assert!(dir.path().join("stats.json").is_file());
    assert!(dir.path().join("stats.txt").is_file());
}

#[test]
fn stats_echoes_thresholds() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&[
        "stats",
        "--csv",
        golden().to_str().unwrap(),
        "--t1",
        "0.1",
        "--t2",
        "0.6",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("stats.json")).unwrap()).unwrap();
    assert_eq!(json["metadata"]["thresholds"]["t1"], 0.1);
    assert_eq!(json["metadata"]["thresholds"]["t2"], 0.6);
}

#[test]
fn stats_rejects_bad_thresholds() {
    let o = cli(&["stats", "--csv", golden().to_str().unwrap(), "--t1", "0.6", "--t2", "0.5"]);
    assert_eq!(error_line(&o.stderr)[1], "BadThresholds");
}

#[test]
fn stats_on_missing_column_is_header_mismatch() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("short.csv");
    fs::write(&csv, "sentence,treebanked_sentence,predicate,arg0,arg1\na,a,b,c,d\n").unwrap();
    let o = cli(&["stats", "--csv", csv.to_str().unwrap(), "--out", dir.path().to_str().unwrap()]);
    assert_ne!(o.code, 0);
    assert_eq!(error_line(&o.stderr)[1], "HeaderMismatch");
}

#[test]
fn stats_with_lexicon_counts_polar_predicates() {
    let dir = tempfile::tempdir().unwrap();
    let o = cli(&[
        "stats",
        "--csv",
        golden().to_str().unwrap(),
        "--lexicon",
        fixtures().join("lexicon.tsv").to_str().unwrap(),
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let json: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("stats.json")).unwrap()).unwrap();
    let by_type = &json["sentiment"]["classes_by_type"];
    let total: u64 = ["very_negative", "negative", "neutral", "positive", "very_positive"]
        .iter()
        .map(|k| by_type[k].as_u64().unwrap())
        .sum();
    assert_eq!(total, 15);
    assert!(by_type["neutral"].as_u64().unwrap() < 15);
}

#[test]
fn validate_clean_corpus() {
    let mut args = vec!["validate".to_string()];
    args.extend(corpus_args(&corpus()));
    let o = cli(&args);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert!(o.stdout.ends_with("5 files checked, 0 violations\n"));
}

#[test]
fn validate_reports_out_of_range_pointer() {
    let (_dir, root) = corpus_copy();
    let prop = root.join("prop/00/wsj_0002.prop");
    let mut text = fs::read_to_string(&prop).unwrap();
    text.push_str("wsj/00/wsj_0002.mrg 1 1 gold fall-v fall.01 ----- 12:0-ARG1 1:0-rel\n");
    fs::write(&prop, text).unwrap();
    let mut args = vec!["validate".to_string()];
    args.extend(corpus_args(&root));
    let o = cli(&args);
    assert_ne!(o.code, 0);
    let rows: Vec<&str> = o.stdout.lines().skip(1).filter(|l| l.starts_with("wsj_")).collect();
    assert_eq!(rows.len(), 1, "{}", o.stdout);
    let cols: Vec<&str> = rows[0].split('\t').collect();
    assert_eq!(&cols[..5], ["wsj_0002", "1", "4", "12:0", "TerminalOutOfRange"]);
    assert!(o.stdout.contains("1 violations"));
    assert_eq!(error_line(&o.stderr)[1], "ValidationFailed");
}

#[test]
fn validate_reports_misalignment() {
    let dir = tempfile::tempdir().unwrap();
    write_triple(
        dir.path(),
        "wsj_0200",
        "wsj/00/wsj_0200.mrg 0 1 gold rain-v rain.01 ----- 0:1-ARG0 1:0-rel\n",
        &onf_text(&[("It rained .", "It rained ."), ("It stopped .", "It stopped .")]),
        "(TOP (S (NP (PRP It)) (VP (VBD rained)) (. .)))\n",
    );
    let mut args = vec!["validate".to_string()];
    args.extend(corpus_args(dir.path()));
    let o = cli(&args);
    assert_ne!(o.code, 0);
    let row = o.stdout.lines().find(|l| l.starts_with("wsj_0200")).unwrap();
    assert!(row.contains("AlignmentError"), "{row}");
    assert!(row.contains("2 sentences but 1 trees"), "{row}");
}

#[test]
fn inspect_lists_terminals_and_spans() {
    let mut args = vec!["inspect".to_string(), "--file".into(), "wsj_0001".into(), "--tree".into(), "0".into()];
    args.extend(corpus_args(&corpus()));
    let o = cli(&args);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let terminals: Vec<&str> = o
        .stdout
        .lines()
        .skip_while(|l| *l != "terminals")
        .skip(1)
        .take_while(|l| !l.is_empty())
        .collect();
    let tokens: Vec<&str> = terminals.iter().map(|l| l.split_whitespace().last().unwrap()).collect();
    assert_eq!(tokens, ["John", "wants", "*PRO*-1", "to", "eat", "fish", "."]);
    let indices: Vec<&str> = terminals.iter().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(indices, ["0", "1", "2", "3", "4", "5", "6"]);
    assert!(o.stdout.contains("plain       John wants to eat fish ."));
    assert!(o.stdout.contains("ARG0  2:1*0:1          \"John\""));
    assert!(o.stdout.contains("ARG1  2:2              \"to eat fish\""));
}

#[test]
fn inspect_errors() {
    let mut args = vec!["inspect".to_string(), "--file".into(), "wsj_0404".into(), "--tree".into(), "0".into()];
    args.extend(corpus_args(&corpus()));
    let o = cli(&args);
    assert_eq!(error_line(&o.stderr)[1], "UnknownFile");

    let mut args = vec!["inspect".to_string(), "--file".into(), "wsj_0001".into(), "--tree".into(), "2".into()];
    args.extend(corpus_args(&corpus()));
    let o = cli(&args);
    assert_ne!(o.code, 0);
    let e = error_line(&o.stderr);
    assert_eq!(e[1], "IndexOutOfRange");
    assert_eq!(e[2], "wsj_0001 has 2 trees; index 2 is out of range");
}

#[test]
fn every_error_is_one_line() {
    let o = cli(&["stats", "--csv", "/nonexistent.csv"]);
    assert_ne!(o.code, 0);
    assert_eq!(o.stderr.lines().count(), 1);
    assert_eq!(error_line(&o.stderr).len(), 3);
}
