//! Lexicon-based compound scoring and five-way bucketing of predicates.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::StatsError;

/// Normalization constant in `s / sqrt(s^2 + alpha)`.
pub const NORMALIZATION_ALPHA: f64 = 15.0;
pub const MAX_VALENCE: f64 = 4.0;

/// Token → valence in `[-4, 4]`, case-insensitive.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SentimentLexicon {
    valences: HashMap<String, f64>,
}

impl SentimentLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, token: &str, valence: f64) -> Result<(), StatsError> {
        if !valence.is_finite() || valence.abs() > MAX_VALENCE {
            return Err(StatsError::Lexicon {
                line: 0,
                reason: format!("valence {valence} for {token:?} outside [-4, 4]"),
            });
        }
        self.valences.insert(token.to_lowercase(), valence);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.valences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.valences.is_empty()
    }

    /// Unknown tokens score 0.
    pub fn valence(&self, token: &str) -> f64 {
        self.valences
            .get(&token.to_lowercase())
            .copied()
            .unwrap_or(0.0)
    }

    /// Parses `token<TAB>valence` lines. Lines starting with `#` are comments;
    /// extra tab-separated columns are ignored.
    pub fn parse(text: &str) -> Result<Self, StatsError> {
        let mut lex = SentimentLexicon::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let mut fields = line.split('\t');
            let token = fields.next().unwrap_or("").trim();
            let valence = fields.next().map(str::trim);
            let (token, valence) = match (token, valence) {
                (t, Some(v)) if !t.is_empty() => (t, v),
                _ => {
                    return Err(StatsError::Lexicon {
                        line: line_no,
                        reason: "expected token<TAB>valence".to_string(),
                    })
                }
            };
            let valence: f64 = valence.parse().map_err(|_| StatsError::Lexicon {
                line: line_no,
                reason: format!("valence {valence:?} is not a number"),
            })?;
            lex.insert(token, valence).map_err(|e| match e {
                StatsError::Lexicon { reason, .. } => StatsError::Lexicon {
                    line: line_no,
                    reason,
                },
                other => other,
            })?;
        }
        Ok(lex)
    }

    pub fn load(path: &Path) -> Result<Self, StatsError> {
        let text = std::fs::read_to_string(path).map_err(|source| StatsError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }
}

impl<'a> FromIterator<(&'a str, f64)> for SentimentLexicon {
    /// Out-of-range valences are clamped.
    fn from_iter<I: IntoIterator<Item = (&'a str, f64)>>(iter: I) -> Self {
        SentimentLexicon {
            valences: iter
                .into_iter()
                .map(|(t, v)| (t.to_lowercase(), v.clamp(-MAX_VALENCE, MAX_VALENCE)))
                .collect(),
        }
    }
}

/// Normalizes a raw valence sum into `[-1, 1]`.
pub fn normalize(sum: f64) -> f64 {
    (sum / (sum * sum + NORMALIZATION_ALPHA).sqrt()).clamp(-1.0, 1.0)
}

/// Compound score of a predicate: summed token valences, normalized.
pub fn sentiment_score(predicate: &str, lexicon: &SentimentLexicon) -> f64 {
    let sum: f64 = predicate
        .split_whitespace()
        .map(|t| lexicon.valence(t))
        .sum();
    normalize(sum)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SentimentClass {
    VeryNegative = -2,
    Negative = -1,
    Neutral = 0,
    Positive = 1,
    VeryPositive = 2,
}

impl SentimentClass {
    pub const ALL: [SentimentClass; 5] = [
        SentimentClass::VeryNegative,
        SentimentClass::Negative,
        SentimentClass::Neutral,
        SentimentClass::Positive,
        SentimentClass::VeryPositive,
    ];

    pub fn value(self) -> i8 {
        self as i8
    }

    pub fn name(self) -> &'static str {
        match self {
            SentimentClass::VeryNegative => "very negative",
            SentimentClass::Negative => "negative",
            SentimentClass::Neutral => "neutral",
            SentimentClass::Positive => "positive",
            SentimentClass::VeryPositive => "very positive",
        }
    }
}

impl fmt::Display for SentimentClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({:+})", self.name(), self.value())
    }
}

/// Bucket boundaries, `0 < t1 < t2 <= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub t1: f64,
    pub t2: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { t1: 0.05, t2: 0.5 }
    }
}

impl Thresholds {
    pub fn new(t1: f64, t2: f64) -> Result<Self, StatsError> {
        if !(t1 > 0.0 && t1 < t2 && t2 <= 1.0) {
            return Err(StatsError::BadThresholds { t1, t2 });
        }
        Ok(Thresholds { t1, t2 })
    }

    /// `±t1` is neutral, `±t2` is `±1`; only scores strictly beyond `t2`
    /// are very positive or very negative.
    pub fn bucket(&self, score: f64) -> SentimentClass {
        let Thresholds { t1, t2 } = *self;
        if score < -t2 {
            SentimentClass::VeryNegative
        } else if score < -t1 {
            SentimentClass::Negative
        } else if score <= t1 {
            SentimentClass::Neutral
        } else if score <= t2 {
            SentimentClass::Positive
        } else {
            SentimentClass::VeryPositive
        }
    }
}

pub fn sentiment_bucket(score: f64, t1: f64, t2: f64) -> Result<SentimentClass, StatsError> {
    Ok(Thresholds::new(t1, t2)?.bucket(score))
}
