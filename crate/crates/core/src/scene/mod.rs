//! Shot segmentation, view gating, face matching, jersey records and
//! team colour resolution. Recognition models sit behind [`crate::client`].

mod colors;
mod faces;
mod recognition;
mod report;
mod shots;

use thiserror::Error;

use crate::client::ClientError;

pub use colors::{
    normalize_color, resolve_team_colors, AmbiguityReport, CanonicalColor, ColorClaim,
    ColorResolution, ColorSource, TeamColors,
};
pub use faces::{match_faces, FaceMetric, FaceObservation};
pub use recognition::{
    classify_view, parse_jersey_records, recognize_jerseys, JERSEY_PROMPT, VIEW_PROMPT,
};
pub use report::{build_scene_report, JerseyRecord, SceneReport, Shot};
pub use shots::{
    content_scores, detect_shots, load_features_csv, read_features_csv, FrameFeature, ShotSpan,
    View,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SceneError {
    #[error("empty frame sequence")]
    EmptySequence,
    #[error("threshold must be positive and finite, got {0}")]
    InvalidThreshold(f64),
    #[error("tau must lie in (0, 1), got {0}")]
    InvalidTau(f64),
    #[error("shot index {index} out of range for {shots} shots")]
    ShotOutOfRange { index: usize, shots: usize },
    #[error("keyframe slot must be 1..=3, got {0}")]
    InvalidKeyframeSlot(u8),
    #[error("face score must lie in [0, 1], got {0}")]
    InvalidScore(f64),
    #[error("face candidate {0} is not in the lineup")]
    CandidateNotInLineup(String),
    #[error("jersey record needs a name or a number")]
    AnonymousJersey,
    #[error("unknown view label {0:?}")]
    UnknownView(String),
    #[error("length mismatch: {0}")]
    LengthMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
    #[error(transparent)]
    Client(ClientError),
}

impl SceneError {
    pub fn kind(&self) -> &'static str {
        match self {
            SceneError::EmptySequence => "empty_sequence",
            SceneError::InvalidThreshold(_) => "invalid_threshold",
            SceneError::InvalidTau(_) => "invalid_tau",
            SceneError::ShotOutOfRange { .. } => "shot_out_of_range",
            SceneError::InvalidKeyframeSlot(_) => "invalid_keyframe_slot",
            SceneError::InvalidScore(_) => "invalid_score",
            SceneError::CandidateNotInLineup(_) => "candidate_not_in_lineup",
            SceneError::AnonymousJersey => "anonymous_jersey",
            SceneError::UnknownView(_) => "unknown_view",
            SceneError::LengthMismatch(_) => "length_mismatch",
            SceneError::Parse(_) => "parse_error",
            SceneError::Io(_) => "io_error",
            SceneError::Client(e) => e.kind(),
        }
    }
}
