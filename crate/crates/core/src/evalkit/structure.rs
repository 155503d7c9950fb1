use std::collections::BTreeSet;
use std::str::FromStr;

use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};

use super::EvalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SentenceLabel {
    Description,
    Explanation,
    Comment,
}

impl FromStr for SentenceLabel {
    type Err = EvalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_lowercase().as_str() {
            "description" | "d" => Ok(SentenceLabel::Description),
            "explanation" | "e" => Ok(SentenceLabel::Explanation),
            "comment" | "commentary" | "c" => Ok(SentenceLabel::Comment),
            other => Err(EvalError::UnknownLabel(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompositionReport {
    pub sentences: usize,
    pub description: f64,
    pub explanation: f64,
    pub comment: f64,
    /// Description makes up less than half of the text.
    pub low_description: bool,
}

/// Percentage composition of labelled sentences. A sentence with several
/// labels splits its weight evenly between them.
pub fn structural_tally(labels: &[BTreeSet<SentenceLabel>]) -> Result<CompositionReport, EvalError> {
    if labels.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut shares = [0.0f64; 3];
    for (i, set) in labels.iter().enumerate() {
        if set.is_empty() {
            return Err(EvalError::UnlabeledSentence(i));
        }
        let w = 1.0 / set.len() as f64;
        for label in set {
            shares[*label as usize] += w;
        }
    }
    let n = labels.len() as f64;
    let [d, e, c] = shares.map(|s| 100.0 * s / n);
    Ok(CompositionReport { sentences: labels.len(), description: d, explanation: e, comment: c, low_description: d < 50.0 })
}

static ITEM: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?:^|\s)(\d+)[.)]").unwrap());
static SPLIT: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?i)\s*(?:\band\b|[,/&+])\s*").unwrap());

/// Parses numbered classifier output such as
/// `1.Description 2.Commentary 3.Description and Explanation`.
/// Items must be numbered 1, 2, 3, ... in order.
pub fn parse_label_list(text: &str) -> Result<Vec<BTreeSet<SentenceLabel>>, EvalError> {
    let marks: Vec<_> = ITEM.captures_iter(text).collect();
    let mut out = Vec::new();
    for (i, cap) in marks.iter().enumerate() {
        let n: usize = cap[1].parse().map_err(|_| EvalError::Parse(cap[1].to_string()))?;
        if n != out.len() + 1 {
            return Err(EvalError::Parse(format!("expected item {}, found {n}", out.len() + 1)));
        }
        let start = cap.get(0).unwrap().end();
        let end = marks.get(i + 1).map_or(text.len(), |next| next.get(0).unwrap().start());
        let set = SPLIT
            .split(text[start..end].trim())
            .filter(|s| !s.trim().is_empty())
            .map(SentenceLabel::from_str)
            .collect::<Result<BTreeSet<_>, _>>()?;
        if set.is_empty() {
            return Err(EvalError::UnlabeledSentence(out.len()));
        }
        out.push(set);
    }
    if out.is_empty() {
        return Err(EvalError::Parse("no numbered labels found".into()));
    }
    Ok(out)
}
