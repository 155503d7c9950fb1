//! Stage I entity alignment and Stage II knowledge enhancement, driven
//! through a [`ModelClient`](crate::client::ModelClient).

mod answer;
mod bundle;
mod context;
mod enrich;
mod stage1;
pub mod template;

use thiserror::Error;

use crate::client::ClientError;
use crate::event::EventError;
use crate::grounding::GroundingError;
use crate::scene::SceneError;
use crate::statbase::StatError;

pub use answer::{parse_alignment, AlignmentAnswer, Choice, ResponseFormat};
pub use bundle::{run_bundle, CommentarySpec, SegmentBundle, SegmentOutput, SegmentSpec};
pub use context::{
    assemble_context, format_seconds, option_letter, AnswerFormat, Commentary, CommentaryStage,
    ContextInputs, QueryVariant, RenderedPrompt, JSON_EXAMPLE,
};
pub use enrich::{
    answer_questions, generate_questions, internal_knowledge, run_stage2, GoalInfo,
    InternalKnowledge, QuestionOutcome, QUESTION_COUNT,
};
pub use stage1::{run_stage1, SegmentInputs, Stage1Output};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("template placeholder {{{0}}} has no value")]
    UnresolvedPlaceholder(String),
    #[error("malformed response: {0}")]
    MalformedResponse(String),
    #[error("answer {answer:?} is not one of {count} options")]
    UnknownOption { answer: String, count: usize },
    #[error("predicted player {0:?} is not in the active lineups")]
    NotInLineup(String),
    #[error("expected {expected} questions, got {got}")]
    WrongQuestionCount { expected: usize, got: usize },
    #[error("invalid segment: {0}")]
    InvalidSegment(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Client(#[from] ClientError),
    #[error(transparent)]
    Event(#[from] EventError),
    #[error(transparent)]
    Scene(#[from] SceneError),
    #[error(transparent)]
    Grounding(#[from] GroundingError),
    #[error(transparent)]
    Stat(#[from] StatError),
    #[error("segment {id}: {source}")]
    Segment { id: String, source: Box<PipelineError> },
}

impl PipelineError {
    pub fn kind(&self) -> &'static str {
        match self {
            PipelineError::UnresolvedPlaceholder(_) => "unresolved_placeholder",
            PipelineError::MalformedResponse(_) => "malformed_response",
            PipelineError::UnknownOption { .. } => "unknown_option",
            PipelineError::NotInLineup(_) => "not_in_lineup",
            PipelineError::WrongQuestionCount { .. } => "wrong_question_count",
            PipelineError::InvalidSegment(_) => "invalid_segment",
            PipelineError::Io(_) => "io_error",
            PipelineError::Client(e) => e.kind(),
            PipelineError::Event(e) => e.kind(),
            PipelineError::Scene(e) => e.kind(),
            PipelineError::Grounding(e) => e.kind(),
            PipelineError::Stat(e) => e.kind(),
            PipelineError::Segment { source, .. } => source.kind(),
        }
    }

    pub fn is_client_error(&self) -> bool {
        match self {
            PipelineError::Client(_) => true,
            PipelineError::Segment { source, .. } => source.is_client_error(),
            _ => false,
        }
    }

    pub(crate) fn in_segment(self, id: &str) -> PipelineError {
        match self {
            e @ PipelineError::Segment { .. } => e,
            e => PipelineError::Segment { id: id.to_string(), source: Box::new(e) },
        }
    }
}
