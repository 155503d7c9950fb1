use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::colors::TeamColors;
use super::shots::{ShotSpan, View};
use super::SceneError;
use crate::event::PlayerRef;

/// OCR/caption output for one player in a close view: `(Name, Number, Color): Action`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawJersey")]
pub struct JerseyRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub number: Option<u8>,
    pub color: String,
    pub action: String,
}

#[derive(Deserialize)]
struct RawJersey {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    number: Option<u8>,
    #[serde(default)]
    color: String,
    #[serde(default)]
    action: String,
}

impl TryFrom<RawJersey> for JerseyRecord {
    type Error = SceneError;

    fn try_from(raw: RawJersey) -> Result<Self, Self::Error> {
        JerseyRecord::new(raw.name, raw.number, raw.color, raw.action)
    }
}

impl JerseyRecord {
    pub fn new(
        name: Option<String>,
        number: Option<u8>,
        color: impl Into<String>,
        action: impl Into<String>,
    ) -> Result<Self, SceneError> {
        let name = name.map(|n| n.trim().to_string()).filter(|n| !n.is_empty());
        if name.is_none() && number.is_none() {
            return Err(SceneError::AnonymousJersey);
        }
        Ok(Self { name, number, color: color.into(), action: action.into() })
    }
}

impl fmt::Display for JerseyRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = self.name.as_deref().unwrap_or("unknown");
        let number = self.number.map_or_else(|| "unknown".to_string(), |n| n.to_string());
        write!(f, "({name}, {number}, {}): {}", self.color, self.action)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Shot {
    pub start_frame: usize,
    pub end_frame: usize,
    pub view: View,
}

/// Fine-grained visual details of one video segment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SceneReport {
    pub shots: Vec<Shot>,
    pub recognized: Vec<Vec<PlayerRef>>,
    pub jerseys: Vec<Vec<JerseyRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolved_colors: Option<TeamColors>,
}

/// Assembles the report. Faces and jerseys survive only on close-view shots.
///
/// `recognized` and `jerseys` are indexed by shot; an empty slice means none.
pub fn build_scene_report(
    shots: &[ShotSpan],
    views: &[View],
    recognized: &[BTreeSet<PlayerRef>],
    jerseys: &[Vec<JerseyRecord>],
    resolved_colors: Option<TeamColors>,
) -> Result<SceneReport, SceneError> {
    if views.len() != shots.len() {
        return Err(SceneError::LengthMismatch(format!(
            "{} view labels for {} shots",
            views.len(),
            shots.len()
        )));
    }
    for (what, len) in [("face sets", recognized.len()), ("jersey lists", jerseys.len())] {
        if len != 0 && len != shots.len() {
            return Err(SceneError::LengthMismatch(format!("{len} {what} for {} shots", shots.len())));
        }
    }
    let mut report = SceneReport {
        shots: Vec::with_capacity(shots.len()),
        recognized: Vec::with_capacity(shots.len()),
        jerseys: Vec::with_capacity(shots.len()),
        resolved_colors,
    };
    for (i, (span, view)) in shots.iter().zip(views).enumerate() {
        report.shots.push(Shot { start_frame: span.start, end_frame: span.end, view: *view });
        if view.is_close() {
            report
                .recognized
                .push(recognized.get(i).map(|s| s.iter().cloned().collect()).unwrap_or_default());
            report.jerseys.push(jerseys.get(i).cloned().unwrap_or_default());
        } else {
            report.recognized.push(Vec::new());
            report.jerseys.push(Vec::new());
        }
    }
    Ok(report)
}

impl SceneReport {
    pub fn close_shot_count(&self) -> usize {
        self.shots.iter().filter(|s| s.view.is_close()).count()
    }

    /// One line per shot, timestamps in seconds at `fps`.
    pub fn render(&self, fps: f64) -> String {
        let mut lines = Vec::with_capacity(self.shots.len());
        for (i, shot) in self.shots.iter().enumerate() {
            let mut line = format!(
                "Shot {} ({:.1}s-{:.1}s): {}",
                i + 1,
                shot.start_frame as f64 / fps,
                shot.end_frame as f64 / fps,
                shot.view
            );
            let faces = &self.recognized[i];
            if !faces.is_empty() {
                let names: Vec<String> =
                    faces.iter().map(|p| format!("{} (#{})", p.name, p.number)).collect();
                line.push_str(&format!("; recognized faces: {}", names.join(", ")));
            }
            let jerseys = &self.jerseys[i];
            if !jerseys.is_empty() {
                let recs: Vec<String> = jerseys.iter().map(ToString::to_string).collect();
                line.push_str(&format!("; jerseys: {}", recs.join(", ")));
            }
            lines.push(line);
        }
        lines.join("\n")
    }
}
