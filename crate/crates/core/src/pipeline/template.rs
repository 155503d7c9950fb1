use std::collections::BTreeMap;

use once_cell::sync::Lazy;
use regex::Regex;

use super::PipelineError;

pub const TEMPLATE_VERSION: &str = "v1";

pub const TEAM_QUERY: &str = include_str!("../../templates/v1/team_query.txt");
pub const PLAYER_QUERY: &str = include_str!("../../templates/v1/player_query.txt");
pub const TEAM_QUERY_GUIDED: &str = include_str!("../../templates/v1/team_query_guided.txt");
pub const PLAYER_QUERY_GUIDED: &str = include_str!("../../templates/v1/player_query_guided.txt");
pub const ANSWER_JSON: &str = include_str!("../../templates/v1/answer_json.txt");
pub const ANSWER_TAGGED: &str = include_str!("../../templates/v1/answer_tagged.txt");
pub const KNOWLEDGE_EXTRACTION: &str = include_str!("../../templates/v1/knowledge_extraction.txt");
pub const QUESTION_GENERATION: &str = include_str!("../../templates/v1/question_generation.txt");
pub const DSL_TRANSLATION: &str = include_str!("../../templates/v1/dsl_translation.txt");
pub const REFINEMENT: &str = include_str!("../../templates/v1/refinement.txt");
pub const COMMENTARY_CLASSIFICATION: &str = include_str!("../../templates/v1/commentary_classification.txt");

static PLACEHOLDER: Lazy<Regex> = Lazy::new(|| Regex::new(r"\{([A-Za-z][A-Za-z0-9_]*)\}").unwrap());

/// Placeholder names used by `template`, in order of first appearance.
pub fn placeholders(template: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for cap in PLACEHOLDER.captures_iter(template) {
        if !out.iter().any(|n| n == &cap[1]) {
            out.push(cap[1].to_string());
        }
    }
    out
}

/// Substitutes every `{Name}` in one pass. Substituted text is not rescanned,
/// so values may contain braces.
pub fn render(template: &str, values: &BTreeMap<&str, String>) -> Result<String, PipelineError> {
    let mut out = String::with_capacity(template.len() * 2);
    let mut last = 0;
    for cap in PLACEHOLDER.captures_iter(template) {
        let whole = cap.get(0).unwrap();
        let value = values
            .get(&cap[1])
            .ok_or_else(|| PipelineError::UnresolvedPlaceholder(cap[1].to_string()))?;
        out.push_str(&template[last..whole.start()]);
        out.push_str(value);
        last = whole.end();
    }
    out.push_str(&template[last..]);
    Ok(out.trim_end().to_string())
}
