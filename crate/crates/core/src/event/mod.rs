//! Event-sourced match state.
//!
//! A [`MatchLog`] is the source of truth for one fixture. [`replay`] folds its
//! events over the starting lineups to produce the [`GameState`] at any clock:
//! the score, the active elevens, the goal/card timeline and the most recent
//! commentary entries.

mod log;
mod reconcile;
mod state;
mod types;

use thiserror::Error;

pub use log::{
    filter_single_entity, is_single_player, IngestMode, Lineups, MatchLog, MatchMeta,
    SingleEntityCommentary, COACH_TOKEN, PLAYER_TOKEN, REFEREE_TOKEN, TEAM_TOKEN,
};
pub use reconcile::{reconcile_goal_timelines, GoalTimeline, ReconcileReport, SecondaryGoal};
pub use state::{apply_event, replay, Boundary, GameState, Lineup, ReplayOptions, LINEUP_SIZE};
pub use types::{Clock, EventKind, Half, MatchEvent, PlayerRef, Position, Side, TeamSide, MAX_OFFSET_S};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EventError {
    #[error("substitution violation: {0}")]
    SubstitutionViolation(String),
    #[error("event at {event} precedes state clock {state}")]
    ClockRegression { state: Clock, event: Clock },
    #[error("{name} is not in the active {side} lineup")]
    ActorNotInLineup { name: String, side: Side },
    #[error("malformed event: {0}")]
    MalformedEvent(String),
    #[error("invalid clock: {0}")]
    InvalidClock(String),
    #[error("invalid match log: {0}")]
    InvalidLog(String),
    #[error("unknown fields: {}", .0.join(", "))]
    UnknownFields(Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("fixture mismatch: {0}")]
    FixtureMismatch(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("event #{index}: {source}")]
    AtEvent { index: usize, source: Box<EventError> },
}

impl EventError {
    pub fn kind(&self) -> &'static str {
        match self {
            EventError::SubstitutionViolation(_) => "substitution_violation",
            EventError::ClockRegression { .. } => "clock_regression",
            EventError::ActorNotInLineup { .. } => "actor_not_in_lineup",
            EventError::MalformedEvent(_) => "malformed_event",
            EventError::InvalidClock(_) => "invalid_clock",
            EventError::InvalidLog(_) => "invalid_log",
            EventError::UnknownFields(_) => "unknown_fields",
            EventError::Parse(_) => "parse_error",
            EventError::FixtureMismatch(_) => "fixture_mismatch",
            EventError::Io(_) => "io_error",
            EventError::AtEvent { source, .. } => source.kind(),
        }
    }
}
