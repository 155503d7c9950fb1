use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::context::{Commentary, CommentaryStage};
use super::template::{self, render};
use super::PipelineError;
use crate::client::{ClientRequest, ModelClient};
use crate::event::{replay, EventKind, MatchLog, MatchMeta, PlayerRef, ReplayOptions};
use crate::statbase::{execute_with_provenance, parse_query, player_background, AnsweredQuery, PlayerRecord, StatStore};

pub const QUESTION_COUNT: usize = 4;

const QUESTIONS_EXAMPLE: &str = r#"{"questions": ["<question 1>", "<question 2>", "<question 3>", "<question 4>"]}"#;

fn match_values(meta: &MatchMeta) -> BTreeMap<&'static str, String> {
    let mut v = BTreeMap::new();
    v.insert("Team_h", meta.home.clone());
    v.insert("Team_a", meta.away.clone());
    v.insert("Teams", format!("{} vs {}", meta.home, meta.away));
    v.insert("League", meta.league.clone());
    v.insert("Season", meta.season.clone());
    v.insert("Date", meta.kickoff.format("%Y-%m-%d %H:%M UTC").to_string());
    v
}

fn first_json(text: &str) -> Option<Value> {
    text.char_indices()
        .filter(|(_, c)| *c == '{' || *c == '[')
        .find_map(|(i, _)| serde_json::Deserializer::from_str(&text[i..]).into_iter::<Value>().next()?.ok())
}

/// Asks the refiner for exactly four statistics questions.
pub fn generate_questions(
    c_ea: &Commentary,
    meta: &MatchMeta,
    client: &dyn ModelClient,
) -> Result<Vec<String>, PipelineError> {
    let mut v = match_values(meta);
    v.insert("Commentary", c_ea.body.clone());
    v.insert("Example", QUESTIONS_EXAMPLE.to_string());
    let request = ClientRequest::new("generate_questions", render(template::QUESTION_GENERATION, &v)?);
    let response = client.complete(&request)?;
    let items = match first_json(&response) {
        Some(Value::Array(items)) => items,
        Some(Value::Object(mut obj)) => match obj.remove("questions") {
            Some(Value::Array(items)) => items,
            _ => return Err(PipelineError::MalformedResponse("JSON has no questions array".into())),
        },
        _ => return Err(PipelineError::MalformedResponse("no JSON question list found".into())),
    };
    let questions: Vec<String> = items
        .into_iter()
        .filter_map(|q| q.as_str().map(|s| s.trim().to_string()))
        .filter(|q| !q.is_empty())
        .collect();
    if questions.len() != QUESTION_COUNT {
        return Err(PipelineError::WrongQuestionCount { expected: QUESTION_COUNT, got: questions.len() });
    }
    Ok(questions)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuestionOutcome {
    pub question: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dsl: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub answer: Option<AnsweredQuery>,
    /// Error kind when translation, parsing or execution failed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

fn extract_dsl(response: &str) -> String {
    response
        .lines()
        .map(|l| l.trim().trim_matches('`').trim())
        .find(|l| !l.is_empty() && !l.eq_ignore_ascii_case("dsl") && !l.eq_ignore_ascii_case("text"))
        .unwrap_or("")
        .to_string()
}

/// Translates each question to a query through the client, then runs it.
/// A failing question is flagged and the others proceed.
pub fn answer_questions(
    questions: &[String],
    meta: &MatchMeta,
    store: &StatStore,
    client: &dyn ModelClient,
) -> Result<Vec<QuestionOutcome>, PipelineError> {
    let mut out = Vec::with_capacity(questions.len());
    for q in questions {
        let mut v = match_values(meta);
        v.insert("Question", q.clone());
        let request = ClientRequest::new("translate_dsl", render(template::DSL_TRANSLATION, &v)?);
        let dsl = extract_dsl(&client.complete(&request)?);
        let result = parse_query(&dsl).and_then(|query| execute_with_provenance(store, &query));
        let (answer, error) = match result {
            Ok(a) => (Some(a), None),
            Err(e) => (None, Some(e.kind().to_string())),
        };
        out.push(QuestionOutcome { question: q.clone(), dsl: Some(dsl), answer, error });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalInfo {
    pub scorer: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub assist: Option<String>,
    pub method: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InternalKnowledge {
    pub home: String,
    pub away: String,
    pub score_home: u32,
    pub score_away: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub event_kind: Option<EventKind>,
    /// Earlier and current events of the same kind, one line each.
    pub timeline: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub goal: Option<GoalInfo>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub background: Option<PlayerRecord>,
}

fn same_family(a: EventKind, b: EventKind) -> bool {
    if a.is_goal() {
        b.is_goal()
    } else {
        a == b
    }
}

fn goal_method(kind: EventKind) -> &'static str {
    match kind {
        EventKind::PenaltyGoal => "penalty",
        EventKind::HeaderGoal => "header",
        EventKind::OwnGoal => "own goal",
        _ => "open play",
    }
}

/// Match context as of the commentary's clock, including events stamped at
/// that clock.
pub fn internal_knowledge(
    log: &MatchLog,
    c_ea: &Commentary,
    player: Option<&PlayerRef>,
    store: Option<&StatStore>,
) -> Result<InternalKnowledge, PipelineError> {
    let state = replay(log, c_ea.clock, ReplayOptions::default().inclusive())?;
    let event_kind = EventKind::from_label(&c_ea.event_label).filter(|k| *k != EventKind::Commentary);
    let mut timeline = Vec::new();
    let mut goal = None;
    if let Some(kind) = event_kind {
        for e in log.timeline(c_ea.clock, true, move |e| same_family(kind, e.kind)) {
            let mut line = format!("{} {} {}", e.clock(), e.kind, log.meta.team_name(e.team));
            if let Some(a) = &e.actor {
                line.push_str(&format!(": {}", a.name));
            }
            timeline.push(line);
        }
        if kind.is_goal() {
            goal = log.events.iter().find(|e| e.clock() == c_ea.clock && e.kind.is_goal()).and_then(|e| {
                Some(GoalInfo {
                    scorer: e.actor.as_ref()?.name.clone(),
                    assist: e.assist.as_ref().map(|a| a.name.clone()),
                    method: goal_method(e.kind).to_string(),
                })
            });
        }
    }
    let background = match (player, store) {
        (Some(p), Some(s)) => player_background(s, &p.name).ok(),
        _ => None,
    };
    Ok(InternalKnowledge {
        home: log.meta.home.clone(),
        away: log.meta.away.clone(),
        score_home: state.score_home,
        score_away: state.score_away,
        event_kind,
        timeline,
        goal,
        background,
    })
}

impl InternalKnowledge {
    pub fn render(&self) -> String {
        let mut parts = vec![format!("Current score: {} {}-{} {}.", self.home, self.score_home, self.score_away, self.away)];
        if let Some(kind) = self.event_kind {
            if !self.timeline.is_empty() {
                parts.push(format!("{} timeline so far: {}.", kind, self.timeline.join("; ")));
            }
        }
        if let Some(g) = &self.goal {
            let mut s = format!("Goal scorer: {}", g.scorer);
            if let Some(a) = &g.assist {
                s.push_str(&format!(", assisted by {a}"));
            }
            s.push_str(&format!(", method: {}.", g.method));
            parts.push(s);
        }
        if let Some(b) = &self.background {
            parts.push(format!(
                "Player background: {}, nationality {}, height {} cm, born {}.",
                b.name,
                b.nationality,
                b.height_cm,
                b.birthdate.format("%Y-%m-%d")
            ));
        }
        parts.join(" ")
    }
}

/// Refines aligned commentary with validated external answers and the
/// internal match context.
pub fn run_stage2(
    meta: &MatchMeta,
    c_ea: &Commentary,
    internal: &InternalKnowledge,
    external: &[AnsweredQuery],
    client: &dyn ModelClient,
) -> Result<Commentary, PipelineError> {
    if c_ea.stage != CommentaryStage::EntityAligned {
        return Err(PipelineError::InvalidSegment("Stage II expects entity-aligned commentary".into()));
    }
    let mut v = match_values(meta);
    v.insert("Commentary", c_ea.body.clone());
    v.insert("Label", c_ea.event_label.clone());
    v.insert("GameTime", c_ea.clock.to_string());
    let ext: Vec<String> = external.iter().map(AnsweredQuery::render).collect();
    v.insert("External_knowledge", ext.join("; "));
    v.insert("Internal_knowledge", internal.render());
    let request = ClientRequest::new("refine", render(template::REFINEMENT, &v)?);
    let text = client.complete(&request)?;
    Ok(c_ea.advance(CommentaryStage::KnowledgeEnhanced, text.trim().to_string()))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::client::{RecordedStore, RecordingClient, ReplayClient};
    use crate::event::testing::sample_log;
    use crate::event::{Clock, MatchEvent, Side};

    /// Answers every request by purpose, so tests need not reproduce prompts.
    struct ByPurpose(BTreeMap<&'static str, Vec<&'static str>>, std::sync::Mutex<usize>);

    impl ModelClient for ByPurpose {
        fn complete(&self, req: &ClientRequest) -> Result<String, crate::client::ClientError> {
            let answers = &self.0[req.purpose.as_str()];
            let mut n = self.1.lock().unwrap();
            let out = answers[*n % answers.len()].to_string();
            *n += 1;
            Ok(out)
        }
    }

    fn by_purpose(purpose: &'static str, answers: Vec<&'static str>) -> ByPurpose {
        ByPurpose([(purpose, answers)].into_iter().collect(), std::sync::Mutex::new(0))
    }

    fn aligned(body: &str, clock: Clock, label: &str) -> Commentary {
        Commentary { stage: CommentaryStage::EntityAligned, body: body.into(), clock, event_label: label.into() }
    }

    #[test]
    fn four_questions_required() {
        let log = sample_log(vec![]);
        let c = aligned("X scores", Clock::KICKOFF, "goal");
        let ok = by_purpose("generate_questions", vec![r#"{"questions": ["a", "b", "c", "d"]}"#]);
        assert_eq!(generate_questions(&c, &log.meta, &ok).unwrap().len(), 4);
        let three = by_purpose("generate_questions", vec![r#"["a", "b", "c"]"#]);
        assert_eq!(
            generate_questions(&c, &log.meta, &three),
            Err(PipelineError::WrongQuestionCount { expected: 4, got: 3 })
        );
    }

    #[test]
    fn bad_translation_is_flagged_not_fatal() {
        let log = sample_log(vec![]);
        let store = StatStore::from_csv(
            "match_id,home,away,league,season,kickoff,final_score\nm1,Home FC,Other,Test League,2016-2017,2016-10-01,1-0\n",
            "match_id,clock,kind,team,player,method\nm1,1 - 10:00,goal,Home FC,H Player 10,\n",
            "name,nationality,height_cm,birthdate\n",
        )
        .unwrap();
        let client = by_purpose(
            "translate_dsl",
            vec![
                "COUNT goals PLAYER \"H Player 10\" BEFORE 2016-11-22",
                "how many goals?",
                "```\nCOUNT goals TEAM \"Home FC\" BEFORE 2016-11-22\n```",
                "COUNT possession TEAM \"Home FC\" BEFORE 2016-11-22",
            ],
        );
        let qs: Vec<String> = ["q1", "q2", "q3", "q4"].map(String::from).to_vec();
        let out = answer_questions(&qs, &log.meta, &store, &client).unwrap();
        assert!(out[0].answer.is_some());
        assert_eq!(out[1].error.as_deref(), Some("syntax_error"));
        assert!(out[2].answer.is_some());
        assert_eq!(out[3].error.as_deref(), Some("unsupported_stat"));
    }

    #[test]
    fn internal_block_has_post_goal_score() {
        let log = sample_log(vec![
            MatchEvent::new(Clock::new(1, 300).unwrap(), EventKind::Goal, Side::Away).with_actor(sample_log(vec![]).lineups.away[9].clone()),
            MatchEvent::new(Clock::new(2, 60).unwrap(), EventKind::HeaderGoal, Side::Home)
                .with_actor(sample_log(vec![]).lineups.home[9].clone())
                .with_assist(sample_log(vec![]).lineups.home[7].clone()),
        ]);
        let c = aligned("H Player 10 heads it in!", Clock::new(2, 60).unwrap(), "goal");
        let k = internal_knowledge(&log, &c, None, None).unwrap();
        assert_eq!((k.score_home, k.score_away), (1, 1));
        assert_eq!(k.timeline.len(), 2);
        let g = k.goal.clone().unwrap();
        assert_eq!((g.scorer.as_str(), g.assist.as_deref(), g.method.as_str()), ("H Player 10", Some("H Player 8"), "header"));
        assert!(k.render().starts_with("Current score: Home FC 1-1 Away FC."));
    }

    #[test]
    fn stage2_replays_recorded_refinement() {
        let log = sample_log(vec![]);
        let c = aligned("H Player 2 takes the corner.", Clock::new(1, 30).unwrap(), "corner");
        let k = internal_knowledge(&log, &c, None, None).unwrap();
        let store = Arc::new(RecordedStore::in_memory());
        let recorder = RecordingClient::new(by_purpose("refine", vec!["  Refined text.  "]), store.clone());
        let first = run_stage2(&log.meta, &c, &k, &[], &recorder).unwrap();
        assert_eq!(first.body, "Refined text.");
        assert_eq!(first.stage, CommentaryStage::KnowledgeEnhanced);
        let replayed = run_stage2(&log.meta, &c, &k, &[], &ReplayClient::new(store)).unwrap();
        assert_eq!(replayed, first);
    }
}
