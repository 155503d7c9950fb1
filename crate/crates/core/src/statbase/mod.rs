//! Statistics store over past matches, a small query language, and an
//! executor that never looks at matches kicking off on or after the query's
//! `BEFORE` instant.

mod exec;
mod query;
mod store;

use thiserror::Error;

pub use exec::{
    execute, execute_with_provenance, player_background, validate_answers, AnswerPartition, Citation,
    AnsweredQuery, DiscardReason, MatchSummary, Outcome, StatAnswer,
};
pub use query::{parse_query, print_query, GoalMethod, Stat, StatQuery, Subject, Venue, Verb};
pub use store::{
    normalize_name, MatchRecord, PlayerRecord, StatEventKind, StatEventRecord, StatStore,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StatError {
    #[error("syntax error at {pos}: {message}")]
    SyntaxError { pos: usize, message: String },
    #[error("query has no BEFORE clause")]
    MissingBefore,
    #[error("unsupported statistic {0:?}")]
    UnsupportedStat(String),
    #[error("unknown entity {0:?}")]
    UnknownEntity(String),
    #[error("{count} records share the name {name:?}")]
    DuplicateEntity { name: String, count: usize },
    #[error("invalid store: {0}")]
    InvalidStore(String),
    #[error("io error: {0}")]
    Io(String),
}

impl StatError {
    pub fn kind(&self) -> &'static str {
        match self {
            StatError::SyntaxError { .. } => "syntax_error",
            StatError::MissingBefore => "missing_before",
            StatError::UnsupportedStat(_) => "unsupported_stat",
            StatError::UnknownEntity(_) => "unknown_entity",
            StatError::DuplicateEntity { .. } => "duplicate_entity",
            StatError::InvalidStore(_) => "invalid_store",
            StatError::Io(_) => "io_error",
        }
    }
}
