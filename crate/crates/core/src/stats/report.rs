use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use super::{DatasetStats, SentimentClass, StatsError};

pub const REPORT_JSON: &str = "stats.json";
pub const REPORT_TXT: &str = "stats.txt";

const BAR_WIDTH: usize = 40;

fn bar(count: f64, max: f64) -> String {
    if count <= 0.0 || max <= 0.0 {
        return String::new();
    }
    let n = ((count / max) * BAR_WIDTH as f64).round().max(1.0) as usize;
    "#".repeat(n)
}

fn heading(out: &mut String, title: &str) {
    let _ = writeln!(out, "\n{title}\n{}", "-".repeat(title.len()));
}

/// Plain-text report with ASCII bar histograms.
pub fn render_text(stats: &DatasetStats) -> String {
    let mut out = String::new();
    let meta = &stats.metadata;
    let _ = writeln!(out, "Dataset statistics");
    let _ = writeln!(out, "==================");
    if let Some(src) = &meta.source {
        let _ = writeln!(out, "source:     {src}");
    }
    let _ = writeln!(out, "records:    {}", stats.records);
    let _ = writeln!(out, "predicates: {} distinct", stats.distinct_predicates);

    let b = &stats.breakdown;
    heading(&mut out, "Argument presence");
    for (name, n, pct) in [
        ("Both ARG0 & ARG1", b.both, b.both_pct),
        ("Only ARG1", b.only_arg1, b.only_arg1_pct),
        ("Only ARG0", b.only_arg0, b.only_arg0_pct),
    ] {
        let _ = writeln!(out, "{name:<18} {pct:>5.1}%  {n:>8}  {}", bar(pct, 100.0));
    }

    heading(&mut out, &format!("Top predicates (k={})", meta.top_k));
    let max = stats.top_predicates.first().map_or(0, |p| p.count) as f64;
    let width = stats
        .top_predicates
        .iter()
        .map(|p| p.predicate.chars().count())
        .max()
        .unwrap_or(0)
        .max(9);
    for p in &stats.top_predicates {
        let _ = writeln!(
            out,
            "{:<width$} {:>8}  {}",
            p.predicate,
            p.count,
            bar(p.count as f64, max)
        );
    }

    heading(&mut out, "Mean span length (words)");
    let s = &stats.span_lengths;
    let max = s.arg0.mean.max(s.arg1.mean);
    for (name, m) in [("ARG0", &s.arg0), ("ARG1", &s.arg1)] {
        let note = if m.undefined { "  (undefined)" } else { "" };
        let _ = writeln!(
            out,
            "{name}  {:>5.1}  {:>8} spans  {}{note}",
            m.mean,
            m.spans,
            bar(m.mean, max)
        );
    }

    let sent = &stats.sentiment;
    heading(&mut out, "Predicate compound scores (distinct predicates)");
    let _ = writeln!(
        out,
        "boundaries: -t2={:.3} -t1={:.3} t1={:.3} t2={:.3}  alpha={}",
        -sent.thresholds.t2, -sent.thresholds.t1, sent.thresholds.t1, sent.thresholds.t2, sent.alpha
    );
    let max = sent.score_histogram.iter().map(|b| b.count).max().unwrap_or(0) as f64;
    for bin in &sent.score_histogram {
        let _ = writeln!(
            out,
            "[{:>4.1}, {:>4.1}{} {:>8}  {}",
            bin.lower,
            bin.upper,
            if bin.upper >= 1.0 { "]" } else { ")" },
            bin.count,
            bar(bin.count as f64, max)
        );
    }

    heading(&mut out, "Sentiment classes");
    let _ = writeln!(out, "{:<20} {:>8} {:>12}", "class", "types", "occurrences");
    let max = sent.classes_by_occurrence.total() as f64;
    for class in SentimentClass::ALL {
        let types = sent.classes_by_type.get(class);
        let occ = sent.classes_by_occurrence.get(class);
        let _ = writeln!(
            out,
            "{:<20} {types:>8} {occ:>12}  {}",
            class.to_string(),
            bar(occ as f64, max)
        );
    }
    let _ = writeln!(
        out,
        "neutral share: {:.1}% of types, {:.1}% of occurrences",
        sent.neutral_pct_by_type, sent.neutral_pct_by_occurrence
    );
    out.lines().map(|l| format!("{}\n", l.trim_end())).collect()
}

/// Writes `stats.json` and `stats.txt` into `dir`, creating it if needed.
pub fn emit_report(stats: &DatasetStats, dir: &Path) -> Result<(PathBuf, PathBuf), StatsError> {
    let io_err = |path: &Path| {
        let path = path.to_path_buf();
        move |source| StatsError::Io { path, source }
    };
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let json_path = dir.join(REPORT_JSON);
    let txt_path = dir.join(REPORT_TXT);
    let mut json = serde_json::to_string_pretty(stats).expect("stats serialize");
    json.push('\n');
    fs::write(&json_path, json).map_err(io_err(&json_path))?;
    fs::write(&txt_path, render_text(stats)).map_err(io_err(&txt_path))?;
    Ok((json_path, txt_path))
}
