//! Alignment metrics, claim extraction and verification, and structural
//! composition of commentary.

mod claims;
mod metrics;
mod structure;
mod verify;

use thiserror::Error;

pub use claims::{extract_claims, Claim, ClaimKind, ClaimPayload, CountScope, EventContext, EventFamily};
pub use metrics::{alignment_accuracy, AccuracyReport, AccuracySplit, PredictionRecord, Variant};
pub use structure::{parse_label_list, structural_tally, CompositionReport, SentenceLabel};
pub use verify::{
    verify_claims, verify_segment, ClaimAnnotation, CommentaryRecord, Status, Verdict,
    VerificationSummary, VerifyOptions,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvalError {
    #[error("no records to evaluate")]
    EmptyInput,
    #[error("invalid record {index}: {message}")]
    InvalidRecord { index: usize, message: String },
    #[error("sentence {0} has no label")]
    UnlabeledSentence(usize),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl EvalError {
    pub fn kind(&self) -> &'static str {
        match self {
            EvalError::EmptyInput => "empty_input",
            EvalError::InvalidRecord { .. } => "invalid_record",
            EvalError::UnlabeledSentence(_) => "unlabeled_sentence",
            EvalError::UnknownLabel(_) => "unknown_label",
            EvalError::Parse(_) => "parse_error",
        }
    }
}
