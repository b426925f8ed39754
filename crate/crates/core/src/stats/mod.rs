//! Dataset statistics: argument presence breakdown, predicate frequencies,
//! mean span lengths and predicate sentiment.

mod report;
mod sentiment;

use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pipeline::SrlRecord;

pub use report::{emit_report, render_text, REPORT_JSON, REPORT_TXT};
pub use sentiment::{
    normalize, sentiment_bucket, sentiment_score, SentimentClass, SentimentLexicon, Thresholds,
    MAX_VALENCE, NORMALIZATION_ALPHA,
};

#[derive(Debug, Error)]
pub enum StatsError {
    #[error("no records to summarize")]
    EmptyInput,
    #[error("top-k must be at least 1")]
    BadTopK,
    #[error("thresholds must satisfy 0 < t1 < t2 <= 1 (got t1={t1}, t2={t2})")]
    BadThresholds { t1: f64, t2: f64 },
    #[error("lexicon line {line}: {reason}")]
    Lexicon { line: usize, reason: String },
    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl StatsError {
    pub fn kind(&self) -> &'static str {
        match self {
            StatsError::EmptyInput => "EmptyInput",
            StatsError::BadTopK => "BadTopK",
            StatsError::BadThresholds { .. } => "BadThresholds",
            StatsError::Lexicon { .. } => "BadLexicon",
            StatsError::Io { .. } => "IoError",
        }
    }
}

pub(crate) fn round1(x: f64) -> f64 {
    (x * 10.0).round() / 10.0
}

fn word_count(span: &str) -> usize {
    span.split_whitespace().count()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArgBreakdown {
    pub total: usize,
    pub both: usize,
    pub only_arg1: usize,
    pub only_arg0: usize,
    pub both_pct: f64,
    pub only_arg1_pct: f64,
    pub only_arg0_pct: f64,
}

/// Share of records with both core arguments, only ARG1, and only ARG0,
/// each rounded to one decimal. Argumentless records are not counted.
pub fn arg_breakdown(records: &[SrlRecord]) -> Result<ArgBreakdown, StatsError> {
    let (mut both, mut only_arg1, mut only_arg0) = (0, 0, 0);
    for r in records {
        match (r.arg0.is_empty(), r.arg1.is_empty()) {
            (false, false) => both += 1,
            (true, false) => only_arg1 += 1,
            (false, true) => only_arg0 += 1,
            (true, true) => {}
        }
    }
    let total = both + only_arg1 + only_arg0;
    if total == 0 {
        return Err(StatsError::EmptyInput);
    }
    let pct = |n: usize| round1(100.0 * n as f64 / total as f64);
    Ok(ArgBreakdown {
        total,
        both,
        only_arg1,
        only_arg0,
        both_pct: pct(both),
        only_arg1_pct: pct(only_arg1),
        only_arg0_pct: pct(only_arg0),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredicateCount {
    pub predicate: String,
    pub count: usize,
}

fn predicate_counts(records: &[SrlRecord]) -> HashMap<&str, usize> {
    let mut counts: HashMap<&str, usize> = HashMap::new();
    for r in records {
        *counts.entry(r.predicate.as_str()).or_default() += 1;
    }
    counts
}

/// Exact-string predicate counts, most frequent first, ties in lexicographic
/// order, truncated to `k`.
pub fn predicate_frequencies(records: &[SrlRecord], k: usize) -> Result<Vec<PredicateCount>, StatsError> {
    if k == 0 {
        return Err(StatsError::BadTopK);
    }
    if records.is_empty() {
        return Err(StatsError::EmptyInput);
    }
    let mut ranked: Vec<(&str, usize)> = predicate_counts(records).into_iter().collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(b.0)));
    Ok(ranked
        .into_iter()
        .take(k)
        .map(|(predicate, count)| PredicateCount {
            predicate: predicate.to_string(),
            count,
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpanMean {
    /// Non-empty spans.
    pub spans: usize,
    pub words: usize,
    /// Words per span, one decimal; 0.0 when `undefined`.
    pub mean: f64,
    /// No non-empty span of this role exists.
    pub undefined: bool,
}

impl SpanMean {
    fn from_spans<'a>(spans: impl Iterator<Item = &'a str>) -> Self {
        let (mut n, mut words) = (0, 0);
        for s in spans.filter(|s| !s.is_empty()) {
            n += 1;
            words += word_count(s);
        }
        SpanMean {
            spans: n,
            words,
            mean: if n == 0 { 0.0 } else { round1(words as f64 / n as f64) },
            undefined: n == 0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpanLengths {
    pub arg0: SpanMean,
    pub arg1: SpanMean,
}

/// Mean whitespace-token length of non-empty ARG0 and ARG1 spans.
pub fn span_length_stats(records: &[SrlRecord]) -> Result<SpanLengths, StatsError> {
    let lengths = SpanLengths {
        arg0: SpanMean::from_spans(records.iter().map(|r| r.arg0.as_str())),
        arg1: SpanMean::from_spans(records.iter().map(|r| r.arg1.as_str())),
    };
    if lengths.arg0.undefined && lengths.arg1.undefined {
        return Err(StatsError::EmptyInput);
    }
    Ok(lengths)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassHistogram {
    pub very_negative: usize,
    pub negative: usize,
    pub neutral: usize,
    pub positive: usize,
    pub very_positive: usize,
}

impl ClassHistogram {
    pub fn add(&mut self, class: SentimentClass, n: usize) {
        *self.slot(class) += n;
    }

    fn slot(&mut self, class: SentimentClass) -> &mut usize {
        match class {
            SentimentClass::VeryNegative => &mut self.very_negative,
            SentimentClass::Negative => &mut self.negative,
            SentimentClass::Neutral => &mut self.neutral,
            SentimentClass::Positive => &mut self.positive,
            SentimentClass::VeryPositive => &mut self.very_positive,
        }
    }

    pub fn get(&self, class: SentimentClass) -> usize {
        match class {
            SentimentClass::VeryNegative => self.very_negative,
            SentimentClass::Negative => self.negative,
            SentimentClass::Neutral => self.neutral,
            SentimentClass::Positive => self.positive,
            SentimentClass::VeryPositive => self.very_positive,
        }
    }

    pub fn total(&self) -> usize {
        SentimentClass::ALL.iter().map(|&c| self.get(c)).sum()
    }

    pub fn neutral_pct(&self) -> f64 {
        match self.total() {
            0 => 0.0,
            t => round1(100.0 * self.neutral as f64 / t as f64),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreBin {
    pub lower: f64,
    pub upper: f64,
    pub count: usize,
}

pub const SCORE_BINS: usize = 20;

/// Equal-width bins over `[-1, 1]`; the last bin includes 1.0.
pub fn score_histogram(scores: impl IntoIterator<Item = f64>) -> Vec<ScoreBin> {
    let width = 2.0 / SCORE_BINS as f64;
    let mut bins: Vec<ScoreBin> = (0..SCORE_BINS)
        .map(|i| ScoreBin {
            lower: round1(-1.0 + i as f64 * width),
            upper: round1(-1.0 + (i + 1) as f64 * width),
            count: 0,
        })
        .collect();
    for s in scores {
        let i = (((s.clamp(-1.0, 1.0) + 1.0) / width).floor() as usize).min(SCORE_BINS - 1);
        bins[i].count += 1;
    }
    bins
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SentimentSummary {
    pub thresholds: Thresholds,
    pub alpha: f64,
    /// One entry per distinct predicate string.
    pub classes_by_type: ClassHistogram,
    /// One entry per record.
    pub classes_by_occurrence: ClassHistogram,
    pub neutral_pct_by_type: f64,
    pub neutral_pct_by_occurrence: f64,
    /// Compound scores of distinct predicates.
    pub score_histogram: Vec<ScoreBin>,
}

pub fn sentiment_summary(
    records: &[SrlRecord],
    lexicon: &SentimentLexicon,
    thresholds: Thresholds,
) -> SentimentSummary {
    // BTreeMap keeps the fold order fixed.
    let counts: BTreeMap<&str, usize> = predicate_counts(records).into_iter().collect();
    let mut by_type = ClassHistogram::default();
    let mut by_occurrence = ClassHistogram::default();
    let mut scores = Vec::with_capacity(counts.len());
    for (predicate, n) in counts {
        let score = sentiment_score(predicate, lexicon);
        let class = thresholds.bucket(score);
        by_type.add(class, 1);
        by_occurrence.add(class, n);
        scores.push(score);
    }
    SentimentSummary {
        thresholds,
        alpha: NORMALIZATION_ALPHA,
        neutral_pct_by_type: by_type.neutral_pct(),
        neutral_pct_by_occurrence: by_occurrence.neutral_pct(),
        classes_by_type: by_type,
        classes_by_occurrence: by_occurrence,
        score_histogram: score_histogram(scores),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatsConfig {
    pub thresholds: Thresholds,
    pub top_k: usize,
    /// Where the records came from, echoed into the report.
    pub source: Option<String>,
    pub lexicon: Option<String>,
}

impl Default for StatsConfig {
    fn default() -> Self {
        StatsConfig {
            thresholds: Thresholds::default(),
            top_k: 10,
            source: None,
            lexicon: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DatasetStats {
    pub metadata: StatsConfig,
    pub records: usize,
    pub distinct_predicates: usize,
    pub breakdown: ArgBreakdown,
    pub top_predicates: Vec<PredicateCount>,
    pub span_lengths: SpanLengths,
    pub sentiment: SentimentSummary,
}

pub fn compute_stats(
    records: &[SrlRecord],
    lexicon: &SentimentLexicon,
    config: &StatsConfig,
) -> Result<DatasetStats, StatsError> {
    Ok(DatasetStats {
        metadata: config.clone(),
        records: records.len(),
        distinct_predicates: predicate_counts(records).len(),
        breakdown: arg_breakdown(records)?,
        top_predicates: predicate_frequencies(records, config.top_k)?,
        span_lengths: span_length_stats(records)?,
        sentiment: sentiment_summary(records, lexicon, config.thresholds),
    })
}
