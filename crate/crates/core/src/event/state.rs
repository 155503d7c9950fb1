use serde::{Deserialize, Serialize};

use super::log::MatchLog;
use super::types::{Clock, EventKind, MatchEvent, PlayerRef, Side};
use super::EventError;
use crate::config::HISTORY_K;

pub const LINEUP_SIZE: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Lineup {
    pub players: Vec<PlayerRef>,
    pub coach: String,
}

impl Lineup {
    pub fn contains(&self, player: &PlayerRef) -> bool {
        self.players.iter().any(|p| p == player)
    }

    pub fn by_number(&self, number: u8) -> Option<&PlayerRef> {
        self.players.iter().find(|p| p.number == number)
    }
}

/// Whether replay includes events stamped exactly at the target clock.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    #[default]
    StrictlyBefore,
    Inclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayOptions {
    pub history_k: usize,
    pub boundary: Boundary,
}

impl Default for ReplayOptions {
    fn default() -> Self {
        Self { history_k: HISTORY_K, boundary: Boundary::StrictlyBefore }
    }
}

impl ReplayOptions {
    pub fn inclusive(mut self) -> Self {
        self.boundary = Boundary::Inclusive;
        self
    }

    pub fn with_history(mut self, k: usize) -> Self {
        self.history_k = k;
        self
    }

    fn admits(&self, event: Clock, at: Clock) -> bool {
        match self.boundary {
            Boundary::StrictlyBefore => event < at,
            Boundary::Inclusive => event <= at,
        }
    }
}

/// Game context at one instant: score, active lineups and the two timelines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GameState {
    pub score_home: u32,
    pub score_away: u32,
    pub lineup_home: Lineup,
    pub lineup_away: Lineup,
    pub key_events: Vec<MatchEvent>,
    pub history_events: Vec<MatchEvent>,
    pub history_k: usize,
    pub clock: Clock,
}

impl GameState {
    pub fn kickoff(home: Lineup, away: Lineup, history_k: usize) -> Self {
        Self {
            score_home: 0,
            score_away: 0,
            lineup_home: home,
            lineup_away: away,
            key_events: Vec::new(),
            history_events: Vec::new(),
            history_k,
            clock: Clock::KICKOFF,
        }
    }

    pub fn lineup(&self, side: Side) -> &Lineup {
        match side {
            Side::Home => &self.lineup_home,
            Side::Away => &self.lineup_away,
        }
    }

    fn lineup_mut(&mut self, side: Side) -> &mut Lineup {
        match side {
            Side::Home => &mut self.lineup_home,
            Side::Away => &mut self.lineup_away,
        }
    }

    pub fn score(&self) -> (u32, u32) {
        (self.score_home, self.score_away)
    }

    /// Side of an active player, if on the pitch.
    pub fn side_of(&self, player: &PlayerRef) -> Option<Side> {
        if self.lineup_home.contains(player) {
            Some(Side::Home)
        } else if self.lineup_away.contains(player) {
            Some(Side::Away)
        } else {
            None
        }
    }

    /// All 22 active players, home first.
    pub fn active_players(&self) -> impl Iterator<Item = (Side, &PlayerRef)> {
        self.lineup_home
            .players
            .iter()
            .map(|p| (Side::Home, p))
            .chain(self.lineup_away.players.iter().map(|p| (Side::Away, p)))
    }

    fn require_active(&self, side: Side, player: &PlayerRef) -> Result<(), EventError> {
        if self.lineup(side).contains(player) {
            Ok(())
        } else {
            Err(EventError::ActorNotInLineup { name: player.name.clone(), side })
        }
    }

    /// Applies one event in place. On error the state is left untouched.
    pub fn apply(&mut self, event: &MatchEvent) -> Result<(), EventError> {
        let clock = event.clock();
        if clock < self.clock {
            return Err(EventError::ClockRegression { state: self.clock, event: clock });
        }

        if event.kind == EventKind::Substitution {
            let (out, sub_in) = match (&event.sub_out, &event.sub_in) {
                (Some(o), Some(i)) => (o, i),
                _ => {
                    return Err(EventError::SubstitutionViolation(
                        "substitution must name both outgoing and incoming players".into(),
                    ))
                }
            };
            if !self.lineup(event.team).contains(out) {
                return Err(EventError::SubstitutionViolation(format!(
                    "outgoing player {} is not active for {}",
                    out.name, event.team
                )));
            }
            if self.side_of(sub_in).is_some() {
                return Err(EventError::SubstitutionViolation(format!(
                    "incoming player {} is already active",
                    sub_in.name
                )));
            }
            let lineup = self.lineup_mut(event.team);
            if lineup.players.iter().any(|p| p.number == sub_in.number) {
                return Err(EventError::SubstitutionViolation(format!(
                    "number {} already worn by an active {} player",
                    sub_in.number, event.team
                )));
            }
            let slot = lineup.players.iter().position(|p| p == out).expect("checked above");
            lineup.players[slot] = sub_in.clone();
            self.clock = clock;
            return Ok(());
        }

        if event.kind.is_goal() && event.actor.is_none() {
            return Err(EventError::MalformedEvent(format!("{} without a scorer", event.kind)));
        }
        if let Some(actor) = &event.actor {
            self.require_active(event.team, actor)?;
        }
        if let Some(assist) = &event.assist {
            self.require_active(event.team, assist)?;
        }

        match event.credited_side() {
            Some(Side::Home) => self.score_home += 1,
            Some(Side::Away) => self.score_away += 1,
            None => {}
        }
        if event.kind.is_key() {
            self.key_events.push(event.clone());
        }
        if event.kind == EventKind::Commentary && self.history_k > 0 {
            self.history_events.push(event.clone());
            let excess = self.history_events.len().saturating_sub(self.history_k);
            self.history_events.drain(..excess);
        }
        self.clock = clock;
        Ok(())
    }
}

/// Pure form of [`GameState::apply`].
pub fn apply_event(state: &GameState, event: &MatchEvent) -> Result<GameState, EventError> {
    let mut next = state.clone();
    next.apply(event)?;
    Ok(next)
}

/// Folds every event admitted by `opts.boundary` at `at` over the starting state.
pub fn replay(log: &MatchLog, at: Clock, opts: ReplayOptions) -> Result<GameState, EventError> {
    let mut state = log.starting_state(opts.history_k);
    for (index, event) in log.events.iter().enumerate() {
        if !opts.admits(event.clock(), at) {
            break;
        }
        state
            .apply(event)
            .map_err(|source| EventError::AtEvent { index, source: Box::new(source) })?;
    }
    state.clock = state.clock.max(at);
    Ok(state)
}
