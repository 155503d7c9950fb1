use once_cell::sync::Lazy;
use regex::Regex;

use super::report::JerseyRecord;
use super::shots::View;
use super::SceneError;
use crate::client::{ClientRequest, ModelClient};

pub const VIEW_PROMPT: &str = include_str!("../../templates/v1/view_classification.txt");
pub const JERSEY_PROMPT: &str = include_str!("../../templates/v1/jersey_recognition.txt");

/// Asks the classifier for the view class of one shot image.
pub fn classify_view(client: &dyn ModelClient, image_ref: &str) -> Result<View, SceneError> {
    let req = ClientRequest::new("classify_view", VIEW_PROMPT.trim_end())
        .with_video(Some(image_ref.to_string()));
    let text = client.complete(&req).map_err(SceneError::Client)?;
    text.parse()
}

/// Asks the captioner for jersey records in one close-view shot.
pub fn recognize_jerseys(
    client: &dyn ModelClient,
    shot_ref: &str,
) -> Result<Vec<JerseyRecord>, SceneError> {
    let req = ClientRequest::new("recognize_jerseys", JERSEY_PROMPT.trim_end())
        .with_video(Some(shot_ref.to_string()));
    let text = client.complete(&req).map_err(SceneError::Client)?;
    parse_jersey_records(&text)
}

static TUPLE: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"\(\s*([^,()]*?)\s*,\s*([^,()]*?)\s*,\s*([^,()]*?)\s*\)\s*:\s*([^\n;]*)").unwrap()
});

/// Accepts a JSON array of records or `(Name, Number, Color): Action` lines.
/// Entries with neither name nor number are skipped.
pub fn parse_jersey_records(text: &str) -> Result<Vec<JerseyRecord>, SceneError> {
    let trimmed = text.trim();
    if trimmed.starts_with('[') {
        let values: Vec<serde_json::Value> =
            serde_json::from_str(trimmed).map_err(|e| SceneError::Parse(e.to_string()))?;
        return Ok(values
            .into_iter()
            .filter_map(|v| serde_json::from_value::<JerseyRecord>(v).ok())
            .collect());
    }
    let unknown = |s: &str| {
        let l = s.trim().to_ascii_lowercase();
        l.is_empty() || l == "unknown" || l == "none" || l == "n/a" || l == "-"
    };
    let mut out = Vec::new();
    for cap in TUPLE.captures_iter(trimmed) {
        let name = (!unknown(&cap[1])).then(|| cap[1].trim().to_string());
        let number = cap[2].trim().trim_start_matches('#').parse::<u8>().ok();
        if let Ok(rec) = JerseyRecord::new(name, number, cap[3].trim(), cap[4].trim()) {
            out.push(rec);
        }
    }
    Ok(out)
}
