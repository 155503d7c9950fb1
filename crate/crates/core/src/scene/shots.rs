use std::fmt;
use std::io::Read;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::SceneError;

/// Per-frame feature vector, e.g. mean colour channels scaled to 0-255.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrameFeature {
    pub frame_index: usize,
    pub channels: Vec<f64>,
}

/// Reads `frame_index,c1,c2,...` rows (header row required).
pub fn read_features_csv(reader: impl Read) -> Result<Vec<FrameFeature>, SceneError> {
    let mut rdr = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(reader);
    let mut out = Vec::new();
    for (row, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| SceneError::Parse(e.to_string()))?;
        let mut fields = record.iter();
        let frame_index = fields
            .next()
            .and_then(|f| f.parse::<usize>().ok())
            .ok_or_else(|| SceneError::Parse(format!("row {}: bad frame_index", row + 1)))?;
        let channels = fields
            .map(|f| f.parse::<f64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| SceneError::Parse(format!("row {}: {e}", row + 1)))?;
        out.push(FrameFeature { frame_index, channels });
    }
    check_features(&out)?;
    Ok(out)
}

pub fn load_features_csv(path: impl AsRef<Path>) -> Result<Vec<FrameFeature>, SceneError> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| SceneError::Io(format!("{}: {e}", path.display())))?;
    read_features_csv(file)
}

fn check_features(features: &[FrameFeature]) -> Result<(), SceneError> {
    let Some(first) = features.first() else { return Ok(()) };
    let width = first.channels.len();
    for (i, f) in features.iter().enumerate() {
        if f.frame_index != i {
            return Err(SceneError::Parse(format!(
                "frame indices must be contiguous from 0; row {i} has {}",
                f.frame_index
            )));
        }
        if f.channels.len() != width || width == 0 {
            return Err(SceneError::Parse(format!(
                "frame {i} has {} channels, expected {width}",
                f.channels.len()
            )));
        }
        if f.channels.iter().any(|c| !c.is_finite()) {
            return Err(SceneError::Parse(format!("frame {i} has a non-finite channel")));
        }
    }
    Ok(())
}

/// Mean absolute channel difference between each frame and its predecessor.
/// Entry `n - 1` scores the cut before frame `n`.
pub fn content_scores(features: &[FrameFeature]) -> Vec<f64> {
    features
        .windows(2)
        .map(|w| {
            let (a, b) = (&w[0].channels, &w[1].channels);
            a.iter().zip(b).map(|(x, y)| (x - y).abs()).sum::<f64>() / a.len() as f64
        })
        .collect()
}

/// Half-open frame interval `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShotSpan {
    pub start: usize,
    pub end: usize,
}

impl ShotSpan {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    /// First, middle and last frame of the shot.
    pub fn keyframes(&self) -> [usize; 3] {
        [self.start, self.start + (self.len() - 1) / 2, self.end - 1]
    }
}

/// Places a boundary before frame `n` whenever the content score between
/// frames `n - 1` and `n` exceeds `threshold`.
pub fn detect_shots(features: &[FrameFeature], threshold: f64) -> Result<Vec<ShotSpan>, SceneError> {
    if features.is_empty() {
        return Err(SceneError::EmptySequence);
    }
    if !(threshold > 0.0) {
        return Err(SceneError::InvalidThreshold(threshold));
    }
    check_features(features)?;
    let mut shots = Vec::new();
    let mut start = 0;
    for (i, score) in content_scores(features).into_iter().enumerate() {
        if score > threshold {
            shots.push(ShotSpan { start, end: i + 1 });
            start = i + 1;
        }
    }
    shots.push(ShotSpan { start, end: features.len() });
    Ok(shots)
}

/// Shot view classes. Medium and close-up together form the "close" views.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum View {
    Long,
    Medium,
    CloseUp,
    OutOfField,
}

impl View {
    pub fn is_close(self) -> bool {
        matches!(self, View::Medium | View::CloseUp)
    }

    pub fn label(self) -> &'static str {
        match self {
            View::Long => "long view",
            View::Medium => "medium view",
            View::CloseUp => "close-up view",
            View::OutOfField => "out-of-field view",
        }
    }
}

impl fmt::Display for View {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for View {
    type Err = SceneError;

    /// Lenient parse of classifier output such as "Close-up view." or "long".
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .to_ascii_lowercase()
            .chars()
            .filter(|c| c.is_ascii_alphabetic())
            .collect();
        let norm = norm.strip_suffix("view").unwrap_or(&norm);
        match norm {
            "long" => Ok(View::Long),
            "medium" => Ok(View::Medium),
            "closeup" | "close" => Ok(View::CloseUp),
            "outoffield" | "audience" => Ok(View::OutOfField),
            _ => Err(SceneError::UnknownView(s.trim().to_string())),
        }
    }
}
