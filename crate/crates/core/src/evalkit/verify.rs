use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::claims::{extract_claims, names_player, Claim, ClaimPayload, CountScope, EventContext, EventFamily};
use super::EvalError;
use crate::event::{replay, Clock, EventKind, MatchEvent, MatchLog, ReplayOptions};
use crate::statbase::{execute, parse_query, Stat, StatAnswer, StatError, StatStore, Verb};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Supported,
    Contradicted,
    Unverifiable,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub segment_id: String,
    pub claim: Claim,
    pub status: Status,
    pub expected: Option<Value>,
    pub claimed: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Reject scorelines that only match with the sides swapped.
    pub strict_scoreline: bool,
}

/// A statistic claim supplied alongside the commentary as a DSL query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClaimAnnotation {
    pub query: String,
    pub claimed: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub text: Option<String>,
}

/// One commentary line to verify, as read from a line-delimited file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommentaryRecord {
    pub segment_id: String,
    pub body: String,
    #[serde(with = "crate::time::serde_clock")]
    pub clock: Clock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub event_label: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annotations: Vec<ClaimAnnotation>,
}

fn counted(e: &MatchEvent, event: EventFamily, scope: &CountScope) -> bool {
    if e.kind == EventKind::Commentary || !event.matches(e.kind) {
        return false;
    }
    match scope {
        CountScope::Match => true,
        CountScope::Team(side) if event == EventFamily::Goal => e.credited_side() == Some(*side),
        CountScope::Team(side) => e.team == *side,
        CountScope::Player(name) => {
            let scorer_ok = event != EventFamily::Goal || e.kind.is_scoring_goal();
            scorer_ok && e.actor.as_ref().is_some_and(|p| names_player(name, &p.name))
        }
    }
}

fn verdict(segment_id: &str, claim: &Claim, status: Status, expected: Option<Value>, claimed: Value, note: Option<&str>) -> Verdict {
    Verdict {
        segment_id: segment_id.to_string(),
        claim: claim.clone(),
        status,
        expected,
        claimed,
        note: note.map(str::to_string),
    }
}

fn claimed_number(v: &Value) -> Option<u64> {
    match v {
        Value::Number(n) => n.as_u64(),
        Value::String(s) => s.trim().parse().ok(),
        _ => None,
    }
}

fn claimed_record(v: &Value) -> Option<[u32; 3]> {
    let parts: Vec<u32> = match v {
        Value::Array(items) => items.iter().filter_map(|i| i.as_u64().map(|n| n as u32)).collect(),
        Value::String(s) => s.split(['-', '/']).filter_map(|p| p.trim().parse().ok()).collect(),
        Value::Object(o) => ["wins", "draws", "losses"].iter().filter_map(|k| o.get(*k)?.as_u64().map(|n| n as u32)).collect(),
        _ => return None,
    };
    parts.try_into().ok()
}

fn verify_external(segment_id: &str, claim: &Claim, query: &str, claimed: &Value, store: Option<&StatStore>) -> Verdict {
    let unverifiable = |note: String| verdict(segment_id, claim, Status::Unverifiable, None, claimed.clone(), Some(&note));
    let q = match parse_query(query) {
        Ok(q) => q,
        Err(StatError::UnsupportedStat(s)) => return unverifiable(format!("statistic {s:?} is not recorded")),
        Err(e) => return unverifiable(format!("query does not parse: {e}")),
    };
    let Some(store) = store else { return unverifiable("no statistics store".into()) };
    let answer = match execute(store, &q) {
        Ok(a) => a,
        Err(e) => return unverifiable(e.to_string()),
    };
    let (expected, matches) = match &answer {
        StatAnswer::Count { value } => (json!(value), claimed_number(claimed).map(|c| c == *value)),
        StatAnswer::Matches { matches } => (
            json!(matches.iter().map(|m| &m.match_id).collect::<Vec<_>>()),
            claimed_number(claimed).map(|c| c == matches.len() as u64),
        ),
        StatAnswer::Record { wins, draws, losses } => {
            (json!([wins, draws, losses]), claimed_record(claimed).map(|c| c == [*wins, *draws, *losses]))
        }
    };
    match matches {
        Some(true) => verdict(segment_id, claim, Status::Supported, Some(expected), claimed.clone(), None),
        Some(false) => verdict(segment_id, claim, Status::Contradicted, Some(expected), claimed.clone(), None),
        None => verdict(segment_id, claim, Status::Unverifiable, Some(expected), claimed.clone(), Some("claimed value has the wrong shape")),
    }
}

/// Checks claims against the log as of `ctx.clock`, counting the event at
/// that clock. Events after the clock never affect a verdict.
pub fn verify_claims(
    segment_id: &str,
    claims: &[Claim],
    log: &MatchLog,
    ctx: &EventContext,
    store: Option<&StatStore>,
    opts: VerifyOptions,
) -> Result<Vec<Verdict>, EvalError> {
    let state = replay(log, ctx.clock, ReplayOptions::default().inclusive())
        .map_err(|e| EvalError::Parse(e.to_string()))?;
    let mut out = Vec::with_capacity(claims.len());
    for claim in claims {
        let v = match &claim.payload {
            ClaimPayload::Scoreline { first, second } => {
                let (h, a) = state.score();
                let claimed = json!([first, second]);
                let expected = Some(json!([h, a]));
                if (*first, *second) == (h, a) {
                    verdict(segment_id, claim, Status::Supported, expected, claimed, None)
                } else if (*first, *second) == (a, h) && !opts.strict_scoreline {
                    verdict(segment_id, claim, Status::Supported, expected, claimed, Some("matches with sides swapped"))
                } else {
                    verdict(segment_id, claim, Status::Contradicted, expected, claimed, None)
                }
            }
            ClaimPayload::EventCount { count, event, scope } => {
                let actual = log.timeline(ctx.clock, true, |e| counted(e, *event, scope)).count() as u32;
                let status = if actual == *count { Status::Supported } else { Status::Contradicted };
                verdict(segment_id, claim, status, Some(json!(actual)), json!(count), None)
            }
            ClaimPayload::ExternalStat { query, claimed } => verify_external(segment_id, claim, query, claimed, store),
        };
        out.push(v);
    }
    Ok(out)
}

/// Extracts and verifies the claims of one commentary record.
pub fn verify_segment(
    record: &CommentaryRecord,
    log: &MatchLog,
    store: Option<&StatStore>,
    opts: VerifyOptions,
) -> Result<Vec<Verdict>, EvalError> {
    let ctx = EventContext::from_log(log, record.clock, record.event_label.as_deref());
    let mut claims = extract_claims(&record.body, &ctx);
    claims.extend(
        record
            .annotations
            .iter()
            .map(|a| Claim::external(a.query.clone(), a.claimed.clone(), &record.body, a.text.as_deref())),
    );
    verify_claims(&record.segment_id, &claims, log, &ctx, store, opts)
}

impl Claim {
    /// Scorelines, goal counts and goal or assist statistics.
    pub fn is_goal_related(&self) -> bool {
        match &self.payload {
            ClaimPayload::Scoreline { .. } => true,
            ClaimPayload::EventCount { event, .. } => *event == EventFamily::Goal,
            ClaimPayload::ExternalStat { query, .. } => parse_query(query).is_ok_and(|q| {
                matches!(q.verb, Verb::Count { stat: Stat::Goals | Stat::Assists, .. })
            }),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct GroupSummary {
    pub claims: usize,
    pub supported: usize,
    pub contradicted: usize,
    pub unverifiable: usize,
    /// Supported share of all claims in the group, in percent.
    pub accuracy: Option<f64>,
}

impl GroupSummary {
    fn add(&mut self, status: Status) {
        self.claims += 1;
        match status {
            Status::Supported => self.supported += 1,
            Status::Contradicted => self.contradicted += 1,
            Status::Unverifiable => self.unverifiable += 1,
        }
        self.accuracy = Some(100.0 * self.supported as f64 / self.claims as f64);
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerificationSummary {
    pub all: GroupSummary,
    pub icl_goal: GroupSummary,
    pub icl_other: GroupSummary,
}

impl VerificationSummary {
    pub fn of(verdicts: &[Verdict]) -> Self {
        let mut s = Self::default();
        for v in verdicts {
            s.all.add(v.status);
            if v.claim.is_goal_related() {
                s.icl_goal.add(v.status);
            } else {
                s.icl_other.add(v.status);
            }
        }
        s
    }
}
