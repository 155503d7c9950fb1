use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::PipelineError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponseFormat {
    Json,
    Tagged,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Choice {
    /// One of the offered options.
    Option { index: usize, value: String },
    /// Free text that names none of the options, e.g. a player name.
    Unlisted { text: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentAnswer {
    pub format: ResponseFormat,
    pub choice: Choice,
    pub grounding_seconds: Vec<f64>,
    /// Ranked choices, first equal to `choice`; empty when not given.
    pub top3: Vec<Choice>,
}

static ANSWER_TAG: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?s)<answer>(.*?)</answer>").unwrap());
static LETTER: Lazy<Regex> = Lazy::new(|| Regex::new(r"^\(?([A-Za-z])(?:[.):\]]|$)").unwrap());
static NUMBER: Lazy<Regex> = Lazy::new(|| Regex::new(r"\d+(?:\.\d+)?").unwrap());

fn resolve(raw: &str, options: &[String]) -> Result<Choice, PipelineError> {
    let text = raw.trim().trim_matches(|c: char| c == '"' || c == '\'' || c == '`').trim();
    let text = text.strip_suffix('.').unwrap_or(text).trim();
    if let Some(i) = options.iter().position(|o| o.eq_ignore_ascii_case(text)) {
        return Ok(Choice::Option { index: i, value: options[i].clone() });
    }
    if let Some(cap) = LETTER.captures(text) {
        let letter = cap[1].to_ascii_uppercase().chars().next().unwrap();
        let index = (letter as u8 - b'A') as usize;
        return match options.get(index) {
            Some(v) => Ok(Choice::Option { index, value: v.clone() }),
            None => Err(PipelineError::UnknownOption { answer: text.to_string(), count: options.len() }),
        };
    }
    let lower = text.to_lowercase();
    if let Some(i) = options.iter().position(|o| lower.contains(&o.to_lowercase())) {
        return Ok(Choice::Option { index: i, value: options[i].clone() });
    }
    if options.len() == 2 && options[0] == "hometeam" {
        let words: Vec<&str> = lower.split(|c: char| !c.is_alphanumeric()).collect();
        let home = words.contains(&"home");
        let away = words.contains(&"away");
        if home != away {
            let index = usize::from(away);
            return Ok(Choice::Option { index, value: options[index].clone() });
        }
    }
    Ok(Choice::Unlisted { text: text.to_string() })
}

fn seconds_of(v: &Value) -> Vec<f64> {
    match v {
        Value::Number(n) => n.as_f64().into_iter().collect(),
        Value::String(s) => NUMBER.find_iter(s).filter_map(|m| m.as_str().parse().ok()).collect(),
        Value::Array(items) => items.iter().flat_map(seconds_of).collect(),
        _ => Vec::new(),
    }
}

fn answer_text(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Number(n) => Some(n.to_string()),
        _ => None,
    }
}

fn from_json(obj: &serde_json::Map<String, Value>, options: &[String]) -> Result<AlignmentAnswer, PipelineError> {
    let raw = answer_text(&obj["answer"])
        .ok_or_else(|| PipelineError::MalformedResponse("JSON answer field is not text".into()))?;
    let choice = resolve(&raw, options)?;
    let grounding_seconds = ["grounding_segment", "grounding", "segment"]
        .iter()
        .find_map(|k| obj.get(*k))
        .map(seconds_of)
        .unwrap_or_default();
    let mut top3 = Vec::new();
    if let Some(Value::Array(items)) = obj.get("top3") {
        for item in items {
            if let Some(t) = answer_text(item) {
                top3.push(resolve(&t, options)?);
            }
        }
    }
    if !top3.is_empty() {
        top3.retain(|c| c != &choice);
        top3.insert(0, choice.clone());
        top3.truncate(3);
    }
    Ok(AlignmentAnswer { format: ResponseFormat::Json, choice, grounding_seconds, top3 })
}

/// Extracts the answer from a reasoner response. The earliest well-formed
/// block wins: a JSON object with an `answer` key, or `<answer>X</answer>`.
pub fn parse_alignment(response: &str, options: &[String]) -> Result<AlignmentAnswer, PipelineError> {
    if options.len() != 2 && options.len() != 22 {
        return Err(PipelineError::MalformedResponse(format!(
            "expected 2 or 22 options, got {}",
            options.len()
        )));
    }
    let tag = ANSWER_TAG.captures(response);
    let tag_pos = tag.as_ref().map_or(usize::MAX, |c| c.get(0).unwrap().start());
    for (pos, _) in response.match_indices('{') {
        if pos > tag_pos {
            break;
        }
        let mut stream = serde_json::Deserializer::from_str(&response[pos..]).into_iter::<Value>();
        if let Some(Ok(Value::Object(obj))) = stream.next() {
            if obj.contains_key("answer") {
                return from_json(&obj, options);
            }
        }
    }
    if let Some(cap) = tag {
        let choice = resolve(&cap[1], options)?;
        return Ok(AlignmentAnswer { format: ResponseFormat::Tagged, choice, grounding_seconds: Vec::new(), top3: Vec::new() });
    }
    Err(PipelineError::MalformedResponse("no JSON answer block or <answer> tag found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hashes() -> Vec<String> {
        (0..22).map(|i| format!("{i:08x}")).collect()
    }

    fn teams() -> Vec<String> {
        vec!["hometeam".into(), "awayteam".into()]
    }

    #[test]
    fn tagged_letter_maps_through_options() {
        let a = parse_alignment("<think>the striker</think> <answer>B</answer>", &hashes()).unwrap();
        assert_eq!(a.choice, Choice::Option { index: 1, value: "00000001".into() });
        assert_eq!(a.format, ResponseFormat::Tagged);
        let a = parse_alignment("<answer> V. 00000015 </answer>", &hashes()).unwrap();
        assert_eq!(a.choice, Choice::Option { index: 21, value: "00000015".into() });
    }

    #[test]
    fn letter_out_of_range() {
        assert!(matches!(
            parse_alignment("<answer>C</answer>", &teams()),
            Err(PipelineError::UnknownOption { count: 2, .. })
        ));
        assert!(matches!(parse_alignment("<answer>W</answer>", &hashes()), Err(PipelineError::UnknownOption { .. })));
    }

    #[test]
    fn json_block_with_grounding_and_top3() {
        let text = "Reasoning... the close-up at 14s shows number 9.\n```json\n{\"grounding_segment\": \"13-16 seconds\", \"answer\": \"00000009\", \"top3\": [\"00000003\", \"00000009\", \"00000004\"]}\n```";
        let a = parse_alignment(text, &hashes()).unwrap();
        assert_eq!(a.choice, Choice::Option { index: 9, value: "00000009".into() });
        assert_eq!(a.grounding_seconds, vec![13.0, 16.0]);
        let idx: Vec<usize> = a.top3.iter().map(|c| match c { Choice::Option { index, .. } => *index, _ => 99 }).collect();
        assert_eq!(idx, [9, 3, 4]);
    }

    #[test]
    fn first_block_wins() {
        let text = r#"<answer>A</answer> then {"answer": "B"}"#;
        assert_eq!(parse_alignment(text, &teams()).unwrap().choice, Choice::Option { index: 0, value: "hometeam".into() });
        let text = r#"{"note": 1} {"answer": "awayteam", "grounding_segment": [4, 6]} <answer>A</answer>"#;
        let a = parse_alignment(text, &teams()).unwrap();
        assert_eq!(a.choice, Choice::Option { index: 1, value: "awayteam".into() });
        assert_eq!(a.grounding_seconds, vec![4.0, 6.0]);
    }

    #[test]
    fn free_text_is_malformed() {
        assert!(matches!(parse_alignment("I think it was the home side.", &teams()), Err(PipelineError::MalformedResponse(_))));
        assert!(matches!(parse_alignment("<answer>A</answer>", &hashes()[..5]), Err(PipelineError::MalformedResponse(_))));
    }

    #[test]
    fn unlisted_names_are_kept_as_text() {
        let a = parse_alignment(r#"{"answer": "Lionel Messi"}"#, &hashes()).unwrap();
        assert_eq!(a.choice, Choice::Unlisted { text: "Lionel Messi".into() });
        let a = parse_alignment(r#"{"answer": "The away team"}"#, &teams()).unwrap();
        assert_eq!(a.choice, Choice::Option { index: 1, value: "awayteam".into() });
    }
}
