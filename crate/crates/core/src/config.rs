//! Default thresholds and the run configuration shared by the CLI and the pipeline.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

/// Content-difference threshold for shot boundaries, on 0-255 scaled channels.
pub const CONTENT_THRESHOLD: f64 = 16.0;
/// Frame rate the shot detector and keyframe selection operate at.
pub const SHOT_FPS: f64 = 25.0;
/// Face-match threshold.
pub const FACE_TAU: f64 = 0.6;
/// Number of top frames passed to the reasoner as grounding guidance.
pub const TOP_FRAMES: usize = 5;
/// Frame rate of the frame-relevance vector (one frame per second).
pub const GROUNDING_FPS: f64 = 1.0;
/// Commentary entries kept in the history timeline.
pub const HISTORY_K: usize = 1;
/// Clock window for matching goals across timelines, in seconds.
pub const RECONCILE_WINDOW_S: u32 = 60;
/// Environment variable that overrides the reasoner endpoint.
pub const ENDPOINT_ENV: &str = "TOUCHLINE_ENDPOINT";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    pub content: f64,
    pub tau: f64,
    pub top_k: usize,
    pub history_k: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            content: CONTENT_THRESHOLD,
            tau: FACE_TAU,
            top_k: TOP_FRAMES,
            history_k: HISTORY_K,
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<(), String> {
        if !(self.content > 0.0) {
            return Err(format!("content threshold must be positive, got {}", self.content));
        }
        if !(self.tau > 0.0 && self.tau < 1.0) {
            return Err(format!("tau must lie in (0, 1), got {}", self.tau));
        }
        if self.top_k == 0 {
            return Err("top_k must be positive".into());
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub match_log: Option<PathBuf>,
    pub stats_dir: Option<PathBuf>,
    pub attention: Option<PathBuf>,
    pub frame_features: Option<PathBuf>,
    pub recorded_store: Option<PathBuf>,
    pub endpoint: Option<String>,
    pub thresholds: Thresholds,
    pub lenient_ingest: bool,
    pub strict_scoreline: bool,
}

impl RunConfig {
    /// Endpoint from the environment wins over the configured one.
    pub fn resolved_endpoint(&self) -> Option<String> {
        std::env::var(ENDPOINT_ENV)
            .ok()
            .filter(|s| !s.trim().is_empty())
            .or_else(|| self.endpoint.clone())
    }
}
