use std::collections::HashSet;
use std::path::Path;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::state::{GameState, Lineup, LINEUP_SIZE};
use super::types::{Clock, EventKind, MatchEvent, PlayerRef, Side, TeamSide, MAX_OFFSET_S};
use super::EventError;
use crate::time::serde_datetime;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchMeta {
    pub home: String,
    pub away: String,
    pub league: String,
    pub season: String,
    #[serde(with = "serde_datetime")]
    pub kickoff: DateTime<Utc>,
    pub home_color: String,
    pub away_color: String,
}

impl MatchMeta {
    pub fn team(&self, side: Side) -> TeamSide {
        let (team_name, jersey_color) = match side {
            Side::Home => (&self.home, &self.home_color),
            Side::Away => (&self.away, &self.away_color),
        };
        TeamSide { side, team_name: team_name.clone(), jersey_color: jersey_color.clone() }
    }

    pub fn team_name(&self, side: Side) -> &str {
        match side {
            Side::Home => &self.home,
            Side::Away => &self.away,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lineups {
    pub home: Vec<PlayerRef>,
    pub away: Vec<PlayerRef>,
    pub home_coach: String,
    pub away_coach: String,
}

/// Replayable record of one match: metadata, starting elevens and the ordered event list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchLog {
    pub meta: MatchMeta,
    pub lineups: Lineups,
    #[serde(default)]
    pub events: Vec<MatchEvent>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum IngestMode {
    /// Unknown fields are an error.
    #[default]
    Strict,
    /// Unknown fields are ignored.
    Lenient,
}

/// Parses a JSON document, rejecting unknown fields in strict mode.
pub(crate) fn from_json_checked<T: serde::de::DeserializeOwned>(
    text: &str,
    mode: IngestMode,
) -> Result<T, EventError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let mut unknown = Vec::new();
    let value: T = serde_ignored::deserialize(&mut de, |path| unknown.push(path.to_string()))
        .map_err(|e| EventError::Parse(e.to_string()))?;
    de.end().map_err(|e| EventError::Parse(e.to_string()))?;
    if mode == IngestMode::Strict && !unknown.is_empty() {
        return Err(EventError::UnknownFields(unknown));
    }
    Ok(value)
}

impl MatchLog {
    /// Parses and validates a match log document.
    pub fn from_json(text: &str, mode: IngestMode) -> Result<Self, EventError> {
        let log: MatchLog = from_json_checked(text, mode)?;
        log.validate()?;
        Ok(log)
    }

    pub fn load(path: impl AsRef<Path>, mode: IngestMode) -> Result<Self, EventError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| EventError::Io(format!("{}: {e}", path.display())))?;
        Self::from_json(&text, mode)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("match log serializes")
    }

    pub fn starting_state(&self, history_k: usize) -> GameState {
        GameState::kickoff(
            Lineup { players: self.lineups.home.clone(), coach: self.lineups.home_coach.clone() },
            Lineup { players: self.lineups.away.clone(), coach: self.lineups.away_coach.clone() },
            history_k,
        )
    }

    /// Checks structure, ordering and lineup membership of every event.
    pub fn validate(&self) -> Result<(), EventError> {
        if self.meta.home.trim().is_empty() || self.meta.away.trim().is_empty() {
            return Err(EventError::InvalidLog("team names must be non-empty".into()));
        }
        if self.meta.home == self.meta.away {
            return Err(EventError::InvalidLog(format!(
                "home and away are both `{}`",
                self.meta.home
            )));
        }
        for (side, squad) in [(Side::Home, &self.lineups.home), (Side::Away, &self.lineups.away)] {
            check_squad(side, squad)?;
        }
        for (index, ev) in self.events.iter().enumerate() {
            if ev.offset_s > MAX_OFFSET_S {
                return Err(EventError::AtEvent {
                    index,
                    source: Box::new(EventError::InvalidClock(format!(
                        "offset {}s exceeds {MAX_OFFSET_S}s",
                        ev.offset_s
                    ))),
                });
            }
        }
        if let Some(index) = self.events.windows(2).position(|w| w[1].clock() < w[0].clock()) {
            return Err(EventError::AtEvent {
                index: index + 1,
                source: Box::new(EventError::ClockRegression {
                    state: self.events[index].clock(),
                    event: self.events[index + 1].clock(),
                }),
            });
        }
        // A full replay enforces substitution rules and actor membership.
        let mut state = self.starting_state(0);
        for (index, ev) in self.events.iter().enumerate() {
            state
                .apply(ev)
                .map_err(|source| EventError::AtEvent { index, source: Box::new(source) })?;
        }
        Ok(())
    }

    /// Events of the given kinds up to `at`, optionally restricted to one side.
    pub fn timeline<'a>(
        &'a self,
        at: Clock,
        inclusive: bool,
        mut keep: impl FnMut(&MatchEvent) -> bool + 'a,
    ) -> impl Iterator<Item = &'a MatchEvent> + 'a {
        self.events
            .iter()
            .take_while(move |e| if inclusive { e.clock() <= at } else { e.clock() < at })
            .filter(move |e| keep(e))
    }

    /// The event of `kind` stamped exactly at `at`, if any.
    pub fn event_at(&self, at: Clock, kind: Option<EventKind>) -> Option<&MatchEvent> {
        self.events
            .iter()
            .find(|e| e.clock() == at && kind.is_none_or(|k| e.kind == k))
    }
}

fn check_squad(side: Side, squad: &[PlayerRef]) -> Result<(), EventError> {
    if squad.len() != LINEUP_SIZE {
        return Err(EventError::InvalidLog(format!(
            "{side} lineup has {} players, expected {LINEUP_SIZE}",
            squad.len()
        )));
    }
    let mut numbers = HashSet::new();
    for p in squad {
        if p.name.trim().is_empty() {
            return Err(EventError::InvalidLog(format!("{side} lineup has an unnamed player")));
        }
        if !(1..=99).contains(&p.number) {
            return Err(EventError::InvalidLog(format!(
                "{} has jersey number {} outside 1-99",
                p.name, p.number
            )));
        }
        if !numbers.insert(p.number) {
            return Err(EventError::InvalidLog(format!(
                "{side} lineup repeats number {}",
                p.number
            )));
        }
    }
    Ok(())
}

pub const PLAYER_TOKEN: &str = "[PLAYER]";
pub const TEAM_TOKEN: &str = "[TEAM]";
pub const COACH_TOKEN: &str = "[COACH]";
pub const REFEREE_TOKEN: &str = "[REFEREE]";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingleEntityCommentary {
    pub kept: Vec<MatchEvent>,
    pub dropped: usize,
}

/// Keeps commentary naming exactly one `[PLAYER]` and no coach or referee.
pub fn filter_single_entity(log: &MatchLog) -> SingleEntityCommentary {
    let mut kept = Vec::new();
    let mut dropped = 0;
    for ev in log.events.iter().filter(|e| e.kind == EventKind::Commentary) {
        let body = ev.detail.as_deref().unwrap_or("");
        if is_single_player(body) {
            kept.push(ev.clone());
        } else {
            dropped += 1;
        }
    }
    SingleEntityCommentary { kept, dropped }
}

pub fn is_single_player(body: &str) -> bool {
    body.matches(PLAYER_TOKEN).count() == 1
        && !body.contains(COACH_TOKEN)
        && !body.contains(REFEREE_TOKEN)
}
