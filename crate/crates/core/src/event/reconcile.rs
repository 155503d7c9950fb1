use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::log::{from_json_checked, IngestMode, MatchLog};
use super::types::{Clock, EventKind, Half, MatchEvent, PlayerRef, Side};
use super::EventError;
use crate::time::serde_datetime;

/// Goal timeline of the same fixture fetched from a second source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoalTimeline {
    pub home: String,
    pub away: String,
    #[serde(with = "serde_datetime")]
    pub kickoff: DateTime<Utc>,
    pub goals: Vec<SecondaryGoal>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SecondaryGoal {
    pub half: Half,
    pub offset_s: u32,
    /// Side of the scorer, as in [`MatchEvent::team`].
    pub team: Side,
    pub actor: PlayerRef,
    #[serde(default = "default_goal_kind")]
    pub kind: EventKind,
}

fn default_goal_kind() -> EventKind {
    EventKind::Goal
}

impl GoalTimeline {
    pub fn from_json(text: &str, mode: IngestMode) -> Result<Self, EventError> {
        from_json_checked(text, mode)
    }

    pub fn load(path: impl AsRef<std::path::Path>, mode: IngestMode) -> Result<Self, EventError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| EventError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, mode)
    }
}

impl SecondaryGoal {
    pub fn clock(&self) -> Clock {
        Clock { half: self.half, offset_s: self.offset_s }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReconcileReport {
    pub added: usize,
    /// Indices of the inserted events in the merged log.
    pub positions: Vec<usize>,
}

/// Inserts goals from `secondary` that have no counterpart in `primary`.
///
/// A secondary goal matches an unmatched primary goal of the same side in the
/// same half within `window_s` seconds. Exact-clock pairs are taken first, then
/// the remaining goals greedily in clock order.
pub fn reconcile_goal_timelines(
    primary: &MatchLog,
    secondary: &GoalTimeline,
    window_s: u32,
) -> Result<(MatchLog, ReconcileReport), EventError> {
    if primary.meta.home != secondary.home
        || primary.meta.away != secondary.away
        || primary.meta.kickoff != secondary.kickoff
    {
        return Err(EventError::FixtureMismatch(format!(
            "{} v {} at {} against {} v {} at {}",
            primary.meta.home,
            primary.meta.away,
            primary.meta.kickoff,
            secondary.home,
            secondary.away,
            secondary.kickoff
        )));
    }
    if let Some(bad) = secondary.goals.iter().find(|g| !g.kind.is_goal()) {
        return Err(EventError::MalformedEvent(format!(
            "secondary timeline entry of kind {} is not a goal",
            bad.kind
        )));
    }

    let primary_goals: Vec<(Clock, Side)> = primary
        .events
        .iter()
        .filter(|e| e.kind.is_goal())
        .map(|e| (e.clock(), e.team))
        .collect();
    let mut taken = vec![false; primary_goals.len()];
    let mut order: Vec<usize> = (0..secondary.goals.len()).collect();
    order.sort_by_key(|&i| secondary.goals[i].clock());
    let mut matched = vec![false; secondary.goals.len()];

    for &i in &order {
        let g = &secondary.goals[i];
        if let Some(j) = (0..primary_goals.len())
            .find(|&j| !taken[j] && primary_goals[j] == (g.clock(), g.team))
        {
            taken[j] = true;
            matched[i] = true;
        }
    }
    for &i in &order {
        if matched[i] {
            continue;
        }
        let g = &secondary.goals[i];
        let candidate = (0..primary_goals.len()).find(|&j| {
            let (clock, team) = primary_goals[j];
            !taken[j]
                && team == g.team
                && clock.distance_within_half(&g.clock()).is_some_and(|d| d <= window_s)
        });
        if let Some(j) = candidate {
            taken[j] = true;
            matched[i] = true;
        }
    }

    let mut merged = primary.clone();
    let mut inserted: Vec<MatchEvent> = order
        .iter()
        .filter(|&&i| !matched[i])
        .map(|&i| {
            let g = &secondary.goals[i];
            MatchEvent::new(g.clock(), g.kind, g.team).with_actor(g.actor.clone())
        })
        .collect();
    inserted.sort_by_key(|e| e.clock());

    let mut positions = Vec::with_capacity(inserted.len());
    for ev in inserted {
        let at = merged.events.partition_point(|e| e.clock() <= ev.clock());
        // Later insertions never land before earlier ones, so recorded indices stay valid.
        merged.events.insert(at, ev);
        positions.push(at);
    }
    let report = ReconcileReport { added: positions.len(), positions };
    Ok((merged, report))
}
