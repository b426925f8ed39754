mod common;

use std::fs;

use common::*;
use srl_extract::cleaning::{TraceMode, TracePolicy};
use srl_extract::pipeline::{
    build_record, discover_files, export_csv, extract, filter_records, load_exclusions, map_to_orl, read_dataset_csv,
    resolve_role, CorpusLayout, ExtractOptions, PipelineError, Schema, SrlRecord,
};
use srl_extract::propbank::{parse_pointer_expr, parse_prop_line, RoleLabel};
use srl_extract::treebank::parse_tree;
use srl_extract::SentencePair;

fn options() -> ExtractOptions {
    ExtractOptions {
        policy: TracePolicy::default(),
        strict: false,
        jobs: 1,
    }
}

fn strict() -> ExtractOptions {
    ExtractOptions {
        strict: true,
        ..options()
    }
}

#[test]
fn fixture_summary_counts() {
    let run = extract(&fixture_layout(), &options()).unwrap();
    let s = run.summary;
    assert_eq!(s.files_discovered, 5);
    assert_eq!(s.files_processed, 5);
    assert_eq!(s.files_skipped, 0);
    assert_eq!(s.propositions, 22);
    assert_eq!(s.propositions_skipped, 0);
    assert_eq!(s.error_rows, 0);
    assert_eq!(s.rows_filtered, 2);
    assert_eq!(s.rows_emitted, 20);
    assert!(run.skips.is_empty());
}

#[test]
fn fixture_rows_match_golden() {
    let run = extract(&fixture_layout(), &options()).unwrap();
    let rows = read_dataset_csv(&golden()).unwrap();
    let got: Vec<SrlRecord> = run
        .records
        .into_iter()
        .map(|r| SrlRecord { provenance: None, ..r })
        .collect();
    assert_eq!(got, rows);
}

#[test]
fn rows_are_ordered_by_file_tree_terminal_line() {
    let run = extract(&fixture_layout(), &options()).unwrap();
    let keys: Vec<_> = run
        .records
        .iter()
        .map(|r| {
            let p = r.provenance.as_ref().unwrap();
            (p.file_id.clone(), p.tree_index, p.predicate_terminal, p.line_no)
        })
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn spans_are_subsequences_of_their_sentence() {
    fn is_subsequence(needle: &[&str], hay: &[&str]) -> bool {
        let mut it = hay.iter();
        needle.iter().all(|n| it.any(|h| h == n))
    }
    let run = extract(&fixture_layout(), &options()).unwrap();
    for r in &run.records {
        let sentence: Vec<&str> = r.sentence.split_whitespace().collect();
        for span in [&r.arg0, &r.arg1, &r.predicate] {
            let tokens: Vec<&str> = span.split_whitespace().collect();
            assert!(is_subsequence(&tokens, &sentence), "{span:?} not in {:?}", r.sentence);
        }
    }
}

#[test]
fn completeness_identity_holds_with_skips_and_errors() {
    let (_dir, root) = corpus_copy();
    // One unreadable triple, one bad pointer, one malformed line.
    fs::remove_file(root.join("onf/01/wsj_0005.onf")).unwrap();
    let prop = root.join("prop/00/wsj_0003.prop");
    let mut text = fs::read_to_string(&prop).unwrap();
    text.push_str("wsj/00/wsj_0003.mrg 2 1 gold smile-v smile.01 ----- 0:1-ARG0 1:0-rel 9:0-ARG1\n");
    text.push_str("wsj/00/wsj_0003.mrg x 1 gold smile-v smile.01 ----- 0:1-ARG0 1:0-rel\n");
    fs::write(&prop, text).unwrap();

    let run = extract(&CorpusLayout::under(&root), &options()).unwrap();
    let s = run.summary;
    assert_eq!(s.propositions, 24);
    assert_eq!(s.propositions_skipped, 6);
    assert_eq!(s.error_rows, 2);
    assert_eq!(s.rows_filtered, 1);
    assert_eq!(s.rows_emitted, 15);
    assert_eq!(
        s.rows_emitted,
        s.propositions - s.propositions_skipped - s.error_rows - s.rows_filtered
    );
    assert_eq!(run.records.len(), s.rows_emitted);

    let log: Vec<String> = run.skips.iter().map(|e| e.to_string()).collect();
    assert_eq!(log.len(), 3);
    assert!(log[0].starts_with("wsj_0005\tmissing .onf"), "{log:?}");
    assert!(log[1].starts_with("wsj_0003\twsj_0003 line 5: ARG1 pointer 9:0"), "{log:?}");
    assert!(log[2].starts_with("wsj_0003\twsj_0003 line 6:"), "{log:?}");
}

#[test]
fn strict_mode_fails_on_bad_pointer_with_file_and_line() {
    let (_dir, root) = corpus_copy();
    let prop = root.join("prop/00/wsj_0002.prop");
    let mut text = fs::read_to_string(&prop).unwrap();
    text.push_str("wsj/00/wsj_0002.mrg 1 1 gold fall-v fall.01 ----- 0:7-ARG1 1:0-rel\n");
    fs::write(&prop, text).unwrap();

    let err = extract(&CorpusLayout::under(&root), &strict()).unwrap_err();
    assert_eq!(err.kind(), "HeightOverflow");
    match err {
        PipelineError::Resolve { file_id, line, .. } => assert_eq!((file_id.as_str(), line), ("wsj_0002", 4)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn strict_mode_ignores_exclusions_and_incomplete_triples() {
    let (_dir, root) = corpus_copy();
    fs::remove_file(root.join("parse/00/wsj_0001.parse")).unwrap();
    let layout = CorpusLayout::under(&root).with_exclusions(["wsj_0002"]);
    let run = extract(&layout, &strict()).unwrap();
    assert_eq!(run.summary.files_skipped, 2);
    assert_eq!(run.summary.rows_emitted, 20 - 5 - 2);
}

#[test]
fn misaligned_file_is_skipped_whole() {
    let (_dir, root) = corpus_copy();
    let parse = root.join("parse/00/wsj_0003.parse");
    let text = fs::read_to_string(&parse).unwrap();
    let first_two: Vec<&str> = text.split("\n\n").take(2).collect();
    fs::write(&parse, first_two.join("\n\n")).unwrap();

    let run = extract(&CorpusLayout::under(&root), &options()).unwrap();
    assert_eq!(run.summary.files_skipped, 1);
    assert_eq!(run.summary.propositions_skipped, 4);
    assert_eq!(run.summary.rows_emitted, 16);
    assert_eq!(run.skips[0].reason, "wsj_0003: 3 sentences but 2 trees");

    let err = extract(&CorpusLayout::under(&root), &strict()).unwrap_err();
    assert_eq!(err.kind(), "AlignmentError");
}

#[test]
fn discovery_reports_missing_members() {
    let (_dir, root) = corpus_copy();
    fs::remove_file(root.join("onf/00/wsj_0002.onf")).unwrap();
    let d = discover_files(&CorpusLayout::under(&root)).unwrap();
    let ids: Vec<&str> = d.triples.iter().map(|t| t.id.as_str()).collect();
    assert_eq!(ids, ["wsj_0001", "wsj_0003", "wsj_0004", "wsj_0005"]);
    assert_eq!(d.skipped.len(), 1);
    assert_eq!(d.skipped[0].file_id, "wsj_0002");
    assert_eq!(d.skipped_propositions, 3);
}

#[test]
fn excluding_everything_is_an_empty_corpus() {
    let ids = ["wsj_0001", "wsj_0002", "wsj_0003", "wsj_0004", "wsj_0005"];
    let layout = fixture_layout().with_exclusions(ids);
    assert!(matches!(extract(&layout, &options()), Err(PipelineError::EmptyCorpus)));
}

#[test]
fn exclusion_file_drops_listed_ids() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exclude.txt");
    fs::write(&path, "# structurally broken\nwsj_0002\n\nwsj_0004  # misaligned\n").unwrap();
    let ids = load_exclusions(&path).unwrap();
    assert_eq!(ids.iter().map(String::as_str).collect::<Vec<_>>(), ["wsj_0002", "wsj_0004"]);
    let run = extract(&fixture_layout().with_exclusions(ids), &options()).unwrap();
    assert_eq!(run.summary.rows_emitted, 20 - 2 - 4);
    assert_eq!(run.summary.propositions_skipped, 7);
}

#[test]
fn missing_root_is_reported() {
    let layout = CorpusLayout::under("/nonexistent/corpus");
    assert_eq!(extract(&layout, &options()).unwrap_err().kind(), "MissingRoot");
}

#[test]
fn parallel_and_sequential_records_agree() {
    let one = extract(&fixture_layout(), &options()).unwrap();
    for jobs in [2, 3, 8] {
        let many = extract(&fixture_layout(), &ExtractOptions { jobs, ..options() }).unwrap();
        assert_eq!(one.records, many.records);
        assert_eq!(one.summary, many.summary);
    }
}

#[test]
fn pattern_mode_gives_same_records() {
    let tree = extract(&fixture_layout(), &options()).unwrap();
    let pattern = extract(
        &fixture_layout(),
        &ExtractOptions {
            policy: TracePolicy::new(TraceMode::PatternOnly),
            ..options()
        },
    )
    .unwrap();
    assert_eq!(tree.records, pattern.records);
}

const BOARD: &str = "(S (NP-SBJ (-NONE- *T*-1)) (NP (DT the) (NN board)) (WHNP (WDT that)) (VP (VBZ meets)))";

#[test]
fn chain_with_trace_head_keeps_the_rest() {
    let tree = parse_tree(BOARD).unwrap();
    let expr = parse_pointer_expr("0:1*1:1*3:1").unwrap();
    assert_eq!(resolve_role([&expr], &tree, &TracePolicy::default()).unwrap(), "the board that");
}

#[test]
fn single_pointer_and_trace_only_spans() {
    let cat = parse_tree("(S (NP (DT The) (NN cat)) (VP (VBZ sits)))").unwrap();
    let expr = parse_pointer_expr("0:1").unwrap();
    assert_eq!(resolve_role([&expr], &cat, &TracePolicy::default()).unwrap(), "The cat");

    let tree = parse_tree(BOARD).unwrap();
    let trace = parse_pointer_expr("0:1").unwrap();
    assert_eq!(resolve_role([&trace], &tree, &TracePolicy::default()).unwrap(), "");
}

#[test]
fn resolve_reports_the_failing_pointer() {
    let tree = parse_tree(BOARD).unwrap();
    let expr = parse_pointer_expr("1:1,9:0").unwrap();
    let (ptr, _) = resolve_role([&expr], &tree, &TracePolicy::default()).unwrap_err();
    assert_eq!(ptr.to_string(), "9:0");
}

fn board_record(line: &str) -> SrlRecord {
    let trees = [parse_tree(BOARD).unwrap()];
    let sentences = [SentencePair {
        plain: "the board that meets".into(),
        treebanked: "*T*-1 the board that meets".into(),
    }];
    let prop = parse_prop_line(line).unwrap();
    build_record("wsj_9999", &prop, &trees, &sentences, &TracePolicy::default()).unwrap()
}

#[test]
fn record_shapes() {
    let both = board_record("f 0 4 gold meet.01 ----- 1:1-ARG0 4:0-rel 3:0-ARG1");
    assert_eq!(both.merged_arguments, "the board|that");
    assert_eq!(both.treebanked_sentence, "*T*-1 the board that meets");

    let rel_only = board_record("f 0 4 gold meet.01 ----- 4:0-rel");
    assert_eq!(rel_only.merged_arguments, "|");
    assert!(rel_only.is_argumentless());

    let arg1_only = board_record("f 0 4 gold meet.01 ----- 0:1-ARG0 4:0-rel 1:1-ARG1");
    assert_eq!(arg1_only.merged_arguments, "|the board");
    assert_eq!(arg1_only.predicate, "meets");

    let kept = filter_records(vec![both.clone(), rel_only, arg1_only.clone()]);
    assert_eq!(kept, [both, arg1_only]);
    assert!(filter_records(Vec::new()).is_empty());
}

#[test]
fn pipes_inside_spans_become_slashes() {
    let dir = tempfile::tempdir().unwrap();
    let root = dir.path();
    write_triple(
        root,
        "wsj_0100",
        "wsj/00/wsj_0100.mrg 0 1 gold say-v say.01 ----- 0:1-ARG0 1:0-rel 2:1-ARG1\n",
        &onf_text(&[("A|B said yes|no", "A|B said yes|no")]),
        "(TOP (S (NP (NNP A|B)) (VP (VBD said)) (NP (UH yes|no))))\n",
    );
    let run = extract(&CorpusLayout::under(root), &options()).unwrap();
    let r = &run.records[0];
    assert_eq!((r.arg0.as_str(), r.arg1.as_str()), ("A/B", "yes/no"));
    assert_eq!(r.merged_arguments, "A/B|yes/no");
    assert_eq!(r.sentence, "A|B said yes|no");
}

#[test]
fn orl_fields_mirror_srl_fields() {
    let r = SrlRecord::new("He said it rained .", "He said it rained .", "said", "He", "it rained", None);
    let o = map_to_orl(&r);
    assert_eq!((o.holder.as_str(), o.expression.as_str(), o.target.as_str()), ("He", "said", "it rained"));
    let empty = map_to_orl(&SrlRecord::new("s", "s", "fell", "", "the vase", None));
    assert_eq!(empty.holder, "");
}

#[test]
fn export_round_trips_both_schemas() {
    let rows = read_dataset_csv(&golden()).unwrap();
    let dir = tempfile::tempdir().unwrap();
    for schema in [Schema::Srl, Schema::Orl] {
        let path = dir.path().join(format!("{schema}.csv"));
        export_csv(&rows, &path, schema).unwrap();
        assert_eq!(read_dataset_csv(&path).unwrap(), rows);
    }
    let srl = fs::read(dir.path().join("srl.csv")).unwrap();
    assert_eq!(srl, fs::read(golden()).unwrap());
}

#[test]
fn export_small_and_empty() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two.csv");
    let rows = read_dataset_csv(&golden()).unwrap();
    export_csv(&rows[..2], &path, Schema::Srl).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    let want: String = fs::read_to_string(golden()).unwrap().lines().take(3).map(|l| format!("{l}\n")).collect();
    assert_eq!(text, want);

    export_csv(&[], &path, Schema::Srl).unwrap();
    assert_eq!(
        fs::read_to_string(&path).unwrap(),
        "sentence,treebanked_sentence,predicate,arg0,arg1,merged_arguments\n"
    );
}

#[test]
fn role_helpers_cover_line_order() {
    let prop = parse_prop_line("f 1 4 gold say.01 ----- 3:1-ARG0 4:0-rel 0:1,6:1-ARG1").unwrap();
    let arg1: Vec<String> = prop.exprs(RoleLabel::Arg1).map(|e| e.to_string()).collect();
    assert_eq!(arg1, ["0:1,6:1"]);
}
