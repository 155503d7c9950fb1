use serde::{Deserialize, Serialize};

use super::answer::{parse_alignment, AlignmentAnswer, Choice};
use super::context::{assemble_context, AnswerFormat, Commentary, CommentaryStage, ContextInputs, QueryVariant};
use super::PipelineError;
use crate::client::{ClientRequest, ModelClient};
use crate::config::{GROUNDING_FPS, HISTORY_K, SHOT_FPS};
use crate::event::{replay, GameState, MatchLog, PlayerRef, ReplayOptions, Side, PLAYER_TOKEN, TEAM_TOKEN};
use crate::grounding::FrameRelevance;
use crate::scene::SceneReport;
use crate::statbase::normalize_name;

/// Everything Stage I needs for one commentary segment.
#[derive(Debug, Clone)]
pub struct SegmentInputs {
    pub id: String,
    pub scene: SceneReport,
    pub relevance: FrameRelevance,
    pub commentary: Commentary,
    pub video: Option<String>,
    pub variant: QueryVariant,
    pub format: AnswerFormat,
    pub given_team: Option<Side>,
    pub history_k: usize,
    pub grounding_fps: f64,
    pub shot_fps: f64,
}

impl SegmentInputs {
    pub fn new(id: impl Into<String>, scene: SceneReport, relevance: FrameRelevance, commentary: Commentary) -> Self {
        Self {
            id: id.into(),
            scene,
            relevance,
            commentary,
            video: None,
            variant: QueryVariant::default(),
            format: AnswerFormat::default(),
            given_team: None,
            history_k: HISTORY_K,
            grounding_fps: GROUNDING_FPS,
            shot_fps: SHOT_FPS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Stage1Output {
    pub segment_id: String,
    pub commentary: Commentary,
    pub answer: AlignmentAnswer,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub player: Option<PlayerRef>,
    pub team: Side,
    pub request_digest: String,
}

fn resolve_player(state: &GameState, choice: &Choice) -> Result<(PlayerRef, Side), PipelineError> {
    match choice {
        Choice::Option { index, .. } => {
            let (side, i) = if *index < state.lineup_home.players.len() {
                (Side::Home, *index)
            } else {
                (Side::Away, index - state.lineup_home.players.len())
            };
            state
                .lineup(side)
                .players
                .get(i)
                .map(|p| (p.clone(), side))
                .ok_or_else(|| PipelineError::NotInLineup(format!("option {index}")))
        }
        Choice::Unlisted { text } => {
            let key = normalize_name(text);
            state
                .active_players()
                .find(|(_, p)| normalize_name(&p.name) == key || p.hash() == key)
                .map(|(side, p)| (p.clone(), side))
                .ok_or_else(|| PipelineError::NotInLineup(text.clone()))
        }
    }
}

/// Resolves the placeholders of one anonymized commentary line.
///
/// The prediction must name a player active at the commentary's clock;
/// anything else is rejected without substitution.
pub fn run_stage1(
    log: &MatchLog,
    seg: &SegmentInputs,
    client: &dyn ModelClient,
) -> Result<Stage1Output, PipelineError> {
    run(log, seg, client).map_err(|e| e.in_segment(&seg.id))
}

fn run(log: &MatchLog, seg: &SegmentInputs, client: &dyn ModelClient) -> Result<Stage1Output, PipelineError> {
    if seg.commentary.stage != CommentaryStage::Anonymized {
        return Err(PipelineError::InvalidSegment("Stage I expects anonymized commentary".into()));
    }
    if seg.variant == QueryVariant::TeamQuery && seg.commentary.body.contains(PLAYER_TOKEN) {
        return Err(PipelineError::InvalidSegment(format!("a team query cannot resolve {PLAYER_TOKEN}")));
    }
    let state = replay(log, seg.commentary.clock, ReplayOptions::default().with_history(seg.history_k))?;
    let prompt = assemble_context(&ContextInputs {
        meta: &log.meta,
        state: &state,
        scene: &seg.scene,
        relevance: &seg.relevance,
        commentary: &seg.commentary,
        variant: seg.variant,
        format: seg.format,
        given_team: seg.given_team,
        grounding_fps: seg.grounding_fps,
        shot_fps: seg.shot_fps,
    })?;
    let request = ClientRequest::new(format!("align_{}", seg.variant), prompt.text)
        .with_video(seg.video.clone())
        .with_options(prompt.options.clone());
    let response = client.complete(&request)?;
    let answer = parse_alignment(&response, &prompt.options)?;

    let (player, team) = if seg.variant.is_player() {
        let (p, side) = resolve_player(&state, &answer.choice)?;
        (Some(p), side)
    } else {
        match answer.choice {
            Choice::Option { index, .. } => (None, if index == 0 { Side::Home } else { Side::Away }),
            Choice::Unlisted { ref text } => {
                return Err(PipelineError::MalformedResponse(format!("answer {text:?} names no team")));
            }
        }
    };
    let mut body = seg.commentary.body.clone();
    if let Some(p) = &player {
        body = body.replace(PLAYER_TOKEN, &p.name);
    }
    body = body.replace(TEAM_TOKEN, log.meta.team_name(team));
    Ok(Stage1Output {
        segment_id: seg.id.clone(),
        commentary: seg.commentary.advance(CommentaryStage::EntityAligned, body),
        answer,
        player,
        team,
        request_digest: request.digest(),
    })
}
