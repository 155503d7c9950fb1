use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::template::{self, render};
use super::PipelineError;
use crate::event::{Clock, GameState, Lineup, MatchMeta, Side, PLAYER_TOKEN, TEAM_TOKEN};
use crate::grounding::{top_frames_to_seconds, FrameRelevance};
use crate::scene::SceneReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommentaryStage {
    Anonymized,
    EntityAligned,
    KnowledgeEnhanced,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Commentary {
    pub stage: CommentaryStage,
    pub body: String,
    #[serde(with = "crate::time::serde_clock")]
    pub clock: Clock,
    pub event_label: String,
}

impl Commentary {
    pub fn anonymized(body: impl Into<String>, clock: Clock, event_label: impl Into<String>) -> Result<Self, PipelineError> {
        let body = body.into();
        if !has_placeholder(&body) {
            return Err(PipelineError::InvalidSegment(format!(
                "anonymized commentary has no {PLAYER_TOKEN} or {TEAM_TOKEN}: {body:?}"
            )));
        }
        Ok(Self { stage: CommentaryStage::Anonymized, body, clock, event_label: event_label.into() })
    }

    pub(crate) fn advance(&self, stage: CommentaryStage, body: String) -> Self {
        Self { stage, body, clock: self.clock, event_label: self.event_label.clone() }
    }
}

pub(crate) fn has_placeholder(body: &str) -> bool {
    body.contains(PLAYER_TOKEN) || body.contains(TEAM_TOKEN)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QueryVariant {
    TeamQuery,
    #[default]
    PlayerQuery,
    PlayerQueryGivenTeam,
}

impl QueryVariant {
    pub fn as_str(self) -> &'static str {
        match self {
            QueryVariant::TeamQuery => "team_query",
            QueryVariant::PlayerQuery => "player_query",
            QueryVariant::PlayerQueryGivenTeam => "player_query_given_team",
        }
    }

    pub fn is_player(self) -> bool {
        self != QueryVariant::TeamQuery
    }
}

impl fmt::Display for QueryVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the reasoner is asked to format its final answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnswerFormat {
    #[default]
    Json,
    Tagged,
}

pub const JSON_EXAMPLE: &str =
    r#"{"grounding_segment": "<start>-<end> seconds", "answer": "<option>", "top3": ["<option>", "<option>", "<option>"]}"#;

pub struct ContextInputs<'a> {
    pub meta: &'a MatchMeta,
    pub state: &'a GameState,
    pub scene: &'a SceneReport,
    pub relevance: &'a FrameRelevance,
    pub commentary: &'a Commentary,
    pub variant: QueryVariant,
    pub format: AnswerFormat,
    /// Required by [`QueryVariant::PlayerQueryGivenTeam`].
    pub given_team: Option<Side>,
    pub grounding_fps: f64,
    pub shot_fps: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedPrompt {
    pub text: String,
    /// Answer options in letter order: two team labels or 22 lineup hashes.
    pub options: Vec<String>,
}

/// `A`, `B`, ... for option indices.
pub fn option_letter(index: usize) -> char {
    (b'A' + index as u8) as char
}

/// Integral seconds print without a fraction.
pub fn format_seconds(s: f64) -> String {
    if s.fract() == 0.0 {
        format!("{s:.0}")
    } else {
        let t = format!("{s:.3}");
        t.trim_end_matches('0').to_string()
    }
}

fn render_lineup(lineup: &Lineup) -> String {
    let players: Vec<String> = lineup
        .players
        .iter()
        .map(|p| format!("{} (#{}, {}, hash {})", p.name, p.number, p.position, p.hash()))
        .collect();
    let mut out = players.join(", ");
    if !lineup.coach.is_empty() {
        out.push_str(&format!("; coach: {}", lineup.coach));
    }
    out
}

fn render_history(meta: &MatchMeta, state: &GameState) -> String {
    if state.history_events.is_empty() {
        return "none".into();
    }
    let lines: Vec<String> = state
        .history_events
        .iter()
        .map(|e| format!("{} [{}] {}", e.clock(), meta.team_name(e.team), e.detail.as_deref().unwrap_or("")))
        .collect();
    lines.join(" | ")
}

fn options_for(variant: QueryVariant, state: &GameState) -> Vec<String> {
    if variant.is_player() {
        state.lineup_home.players.iter().chain(&state.lineup_away.players).map(|p| p.hash()).collect()
    } else {
        vec!["hometeam".into(), "awayteam".into()]
    }
}

/// Renders the Stage I prompt. The key-event timeline is deliberately left
/// out; only the history timeline of `state` is shown.
pub fn assemble_context(inputs: &ContextInputs<'_>) -> Result<RenderedPrompt, PipelineError> {
    let ContextInputs { meta, state, scene, relevance, commentary, variant, format, .. } = *inputs;
    let options = options_for(variant, state);

    let mut v: BTreeMap<&str, String> = BTreeMap::new();
    v.insert("Commentary", commentary.body.clone());
    v.insert("Label", commentary.event_label.clone());
    v.insert("Team_h", meta.home.clone());
    v.insert("Color_h", meta.home_color.clone());
    v.insert("Team_a", meta.away.clone());
    v.insert("Color_a", meta.away_color.clone());
    let seconds: Vec<String> =
        top_frames_to_seconds(relevance, inputs.grounding_fps).into_iter().map(format_seconds).collect();
    v.insert("W_top5", seconds.join(", "));

    let answer_format = match format {
        AnswerFormat::Json => {
            let mut a = BTreeMap::new();
            a.insert("Example", JSON_EXAMPLE.to_string());
            render(template::ANSWER_JSON, &a)?
        }
        AnswerFormat::Tagged => {
            let listed: Vec<String> =
                options.iter().enumerate().map(|(i, o)| format!("{}. {o}", option_letter(i))).collect();
            let mut a = BTreeMap::new();
            a.insert("Options", listed.join(" "));
            render(template::ANSWER_TAGGED, &a)?
        }
    };
    v.insert("Answer_format", answer_format);

    let tpl = match variant {
        QueryVariant::TeamQuery => template::TEAM_QUERY,
        QueryVariant::PlayerQuery | QueryVariant::PlayerQueryGivenTeam => {
            let question = match variant {
                QueryVariant::PlayerQueryGivenTeam => {
                    let side = inputs.given_team.ok_or_else(|| PipelineError::UnresolvedPlaceholder("Team_g".into()))?;
                    format!("Who is the anonymized {PLAYER_TOKEN} from {} mentioned in the commentary?", meta.team_name(side))
                }
                _ => format!("Who is the anonymized {PLAYER_TOKEN} mentioned in the commentary?"),
            };
            v.insert("Question", question);
            v.insert("Lineup_h", render_lineup(&state.lineup_home));
            v.insert("Lineup_a", render_lineup(&state.lineup_away));
            v.insert("History", render_history(meta, state));
            let s = scene.render(inputs.shot_fps);
            v.insert("Scene", if s.is_empty() { "none".into() } else { s });
            template::PLAYER_QUERY
        }
    };
    Ok(RenderedPrompt { text: render(tpl, &v)?, options })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{GROUNDING_FPS, SHOT_FPS};
    use crate::event::testing::{sample_log, squad};
    use crate::event::{replay, EventKind, MatchEvent, ReplayOptions};
    use crate::scene::{build_scene_report, ShotSpan, View};

    fn fixture() -> (crate::event::MatchLog, SceneReport, FrameRelevance, Commentary) {
        let home = squad("H", 0);
        let mut log = sample_log(vec![
            MatchEvent::commentary(Clock::new(1, 100).unwrap(), Side::Home, "[PLAYER] shoots wide"),
            MatchEvent::new(Clock::new(1, 200).unwrap(), EventKind::Goal, Side::Home).with_actor(home[9].clone()),
        ]);
        log.events.sort_by_key(|e| e.clock());
        let scene = build_scene_report(
            &[ShotSpan { start: 0, end: 250 }, ShotSpan { start: 250, end: 750 }],
            &[View::Long, View::CloseUp],
            &[],
            &[],
            None,
        )
        .unwrap();
        let rel = FrameRelevance { weights: vec![0.0; 30], top_k: vec![14, 15, 13, 2, 1] };
        let c = Commentary::anonymized("[PLAYER] scores for [TEAM]!", Clock::new(1, 210).unwrap(), "goal").unwrap();
        (log, scene, rel, c)
    }

    fn inputs<'a>(
        log: &'a crate::event::MatchLog,
        state: &'a GameState,
        scene: &'a SceneReport,
        rel: &'a FrameRelevance,
        c: &'a Commentary,
        variant: QueryVariant,
    ) -> ContextInputs<'a> {
        ContextInputs {
            meta: &log.meta,
            state,
            scene,
            relevance: rel,
            commentary: c,
            variant,
            format: AnswerFormat::Json,
            given_team: Some(Side::Away),
            grounding_fps: GROUNDING_FPS,
            shot_fps: SHOT_FPS,
        }
    }

    #[test]
    fn player_prompt_fills_every_slot() {
        let (log, scene, rel, c) = fixture();
        let state = replay(&log, c.clock, ReplayOptions::default()).unwrap();
        let p = assemble_context(&inputs(&log, &state, &scene, &rel, &c, QueryVariant::PlayerQuery)).unwrap();
        assert_eq!(p.options.len(), 22);
        assert!(!p.text.contains('{') || p.text.contains(JSON_EXAMPLE));
        assert!(p.text.contains("coarsely grounded at around 14, 15, 13, 2, 1 seconds"));
        assert!(p.text.contains("home team: Home FC (red jersey)"));
        assert!(p.text.contains("[Home FC] [PLAYER] shoots wide"));
        assert!(p.text.contains("Shot 2 (10.0s-30.0s): close-up view"));
        assert_eq!(p.text.matches("[PLAYER] scores for [TEAM]!").count(), 1);
        // Goals are key events and stay out of the Stage I prompt.
        assert!(!p.text.contains("1 - 03:20"));
    }

    #[test]
    fn given_team_variant_names_the_team() {
        let (log, scene, rel, c) = fixture();
        let state = replay(&log, c.clock, ReplayOptions::default()).unwrap();
        let p = assemble_context(&inputs(&log, &state, &scene, &rel, &c, QueryVariant::PlayerQueryGivenTeam)).unwrap();
        assert!(p.text.contains("Who is the anonymized [PLAYER] from Away FC mentioned in the commentary?"));
        let mut no_team = inputs(&log, &state, &scene, &rel, &c, QueryVariant::PlayerQueryGivenTeam);
        no_team.given_team = None;
        assert_eq!(assemble_context(&no_team), Err(PipelineError::UnresolvedPlaceholder("Team_g".into())));
    }

    #[test]
    fn team_prompt_and_tagged_options() {
        let (log, scene, rel, c) = fixture();
        let state = replay(&log, c.clock, ReplayOptions::default()).unwrap();
        let mut i = inputs(&log, &state, &scene, &rel, &c, QueryVariant::TeamQuery);
        i.format = AnswerFormat::Tagged;
        let p = assemble_context(&i).unwrap();
        assert_eq!(p.options, ["hometeam", "awayteam"]);
        assert!(p.text.ends_with("A. hometeam B. awayteam"));
        assert!(!p.text.contains("lineup"));
    }

    #[test]
    fn rendering_is_deterministic() {
        let (log, scene, rel, c) = fixture();
        let state = replay(&log, c.clock, ReplayOptions::default()).unwrap();
        let a = assemble_context(&inputs(&log, &state, &scene, &rel, &c, QueryVariant::PlayerQuery)).unwrap();
        let b = assemble_context(&inputs(&log, &state, &scene, &rel, &c, QueryVariant::PlayerQuery)).unwrap();
        assert_eq!(a.text.as_bytes(), b.text.as_bytes());
    }

    #[test]
    fn commentary_needs_placeholder() {
        assert!(Commentary::anonymized("Kane scores", Clock::KICKOFF, "goal").is_err());
        let c = Commentary::anonymized("[PLAYER] scores", Clock::new(2, 75).unwrap(), "goal").unwrap();
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains(r#""clock":"2 - 01:15""#));
        assert_eq!(serde_json::from_str::<Commentary>(&json).unwrap(), c);
    }

    #[test]
    fn seconds_formatting() {
        assert_eq!(format_seconds(14.0), "14");
        assert_eq!(format_seconds(2.5), "2.5");
        assert_eq!(format_seconds(0.04), "0.04");
    }
}
