//! Frame-level event grounding from exported cross-attention.
//!
//! The attention of every query over the video frames is averaged across
//! layers and heads, then the query rows are mixed with weights proportional
//! to each query output's L2 norm. The result assigns one relevance weight to
//! each frame; the highest-weighted frames become the grounding hint given to
//! the reasoner.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::TOP_FRAMES;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GroundingError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("attention entry {index} is negative or not finite ({value})")]
    InvalidAttention { index: usize, value: f64 },
    #[error("query norm {index} is negative or not finite ({value})")]
    InvalidNorm { index: usize, value: f64 },
    #[error("all query norms are zero")]
    AllZeroNorms,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(String),
}

impl GroundingError {
    pub fn kind(&self) -> &'static str {
        match self {
            GroundingError::DimensionMismatch(_) => "dimension_mismatch",
            GroundingError::InvalidAttention { .. } => "invalid_attention",
            GroundingError::InvalidNorm { .. } => "invalid_norm",
            GroundingError::AllZeroNorms => "all_zero_norms",
            GroundingError::Parse(_) => "parse_error",
            GroundingError::Io(_) => "io_error",
        }
    }
}

/// Cross-attention weights of shape layers × heads × queries × frames,
/// stored row-major, plus the L2 norm of each query's output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttentionBundle {
    pub layers: usize,
    pub heads: usize,
    pub queries: usize,
    pub frames: usize,
    pub attention: Vec<f64>,
    pub query_norms: Vec<f64>,
}

impl AttentionBundle {
    pub fn from_json(text: &str) -> Result<Self, GroundingError> {
        let bundle: AttentionBundle =
            serde_json::from_str(text).map_err(|e| GroundingError::Parse(e.to_string()))?;
        bundle.validate()?;
        Ok(bundle)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, GroundingError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroundingError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<(), GroundingError> {
        let dims = [self.layers, self.heads, self.queries, self.frames];
        if dims.contains(&0) {
            return Err(GroundingError::DimensionMismatch(format!(
                "all dimensions must be positive, got {dims:?}"
            )));
        }
        let expected = dims.iter().product::<usize>();
        if self.attention.len() != expected {
            return Err(GroundingError::DimensionMismatch(format!(
                "attention has {} entries, expected {expected} for {dims:?}",
                self.attention.len()
            )));
        }
        if self.query_norms.len() != self.queries {
            return Err(GroundingError::DimensionMismatch(format!(
                "{} query norms for {} queries",
                self.query_norms.len(),
                self.queries
            )));
        }
        if let Some((index, &value)) =
            self.attention.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(GroundingError::InvalidAttention { index, value });
        }
        if let Some((index, &value)) =
            self.query_norms.iter().enumerate().find(|(_, v)| !(v.is_finite() && **v >= 0.0))
        {
            return Err(GroundingError::InvalidNorm { index, value });
        }
        if self.query_norms.iter().all(|&v| v == 0.0) {
            return Err(GroundingError::AllZeroNorms);
        }
        Ok(())
    }

    #[inline]
    fn slice(&self, layer: usize, head: usize, query: usize) -> &[f64] {
        let start = ((layer * self.heads + head) * self.queries + query) * self.frames;
        &self.attention[start..start + self.frames]
    }
}

/// Attention averaged over layers and heads, one row per query.
pub fn mean_attention(bundle: &AttentionBundle) -> Result<Vec<Vec<f64>>, GroundingError> {
    bundle.validate()?;
    let scale = (bundle.layers * bundle.heads) as f64;
    let mut out = vec![vec![0.0; bundle.frames]; bundle.queries];
    for layer in 0..bundle.layers {
        for head in 0..bundle.heads {
            for (q, row) in out.iter_mut().enumerate() {
                for (acc, a) in row.iter_mut().zip(bundle.slice(layer, head, q)) {
                    *acc += a;
                }
            }
        }
    }
    for row in &mut out {
        for v in row.iter_mut() {
            *v /= scale;
        }
    }
    Ok(out)
}

/// Each query's share of the total output norm.
pub fn query_importance(bundle: &AttentionBundle) -> Result<Vec<f64>, GroundingError> {
    bundle.validate()?;
    let total: f64 = bundle.query_norms.iter().sum();
    Ok(bundle.query_norms.iter().map(|n| n / total).collect())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameRelevance {
    pub weights: Vec<f64>,
    pub top_k: Vec<usize>,
}

/// Frame weights with the default number of top frames.
pub fn aggregate(bundle: &AttentionBundle) -> Result<FrameRelevance, GroundingError> {
    aggregate_top(bundle, TOP_FRAMES)
}

pub fn aggregate_top(bundle: &AttentionBundle, k: usize) -> Result<FrameRelevance, GroundingError> {
    let mean = mean_attention(bundle)?;
    let alpha = query_importance(bundle)?;
    let mut weights = vec![0.0; bundle.frames];
    for (row, a) in mean.iter().zip(&alpha) {
        for (w, m) in weights.iter_mut().zip(row) {
            *w += a * m;
        }
    }
    let top_k = top_indices(&weights, k);
    Ok(FrameRelevance { weights, top_k })
}

/// Indices of the `k` largest values, descending; ties go to the earlier index.
pub fn top_indices(values: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
    idx.truncate(k);
    idx
}

/// Converts the top frame indices to seconds at the given frame rate.
pub fn top_frames_to_seconds(rel: &FrameRelevance, fps: f64) -> Vec<f64> {
    rel.top_k.iter().map(|&i| i as f64 / fps).collect()
}
