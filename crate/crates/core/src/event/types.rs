use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::EventError;

/// Longest supported offset within a half, in seconds.
pub const MAX_OFFSET_S: u32 = 3600;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Position {
    Goalkeeper,
    Defender,
    Midfielder,
    Forward,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Position::Goalkeeper => "goalkeeper",
            Position::Defender => "defender",
            Position::Midfielder => "midfielder",
            Position::Forward => "forward",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlayerRef {
    pub name: String,
    pub number: u8,
    pub position: Position,
}

impl PlayerRef {
    pub fn new(name: impl Into<String>, number: u8, position: Position) -> Self {
        Self { name: name.into(), number, position }
    }

    /// Short stable identifier used as the answer option for this player.
    pub fn hash(&self) -> String {
        let digest = Sha256::digest(format!("{}#{}", self.name, self.number).as_bytes());
        hex::encode(&digest[..4])
    }
}

impl fmt::Display for PlayerRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (#{}, {})", self.name, self.number, self.position)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Home,
    Away,
}

impl Side {
    pub fn opponent(self) -> Side {
        match self {
            Side::Home => Side::Away,
            Side::Away => Side::Home,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Home => "home",
            Side::Away => "away",
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Side {
    type Err = EventError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "home" | "hometeam" | "h" => Ok(Side::Home),
            "away" | "awayteam" | "a" => Ok(Side::Away),
            other => Err(EventError::InvalidLog(format!("unknown side `{other}`"))),
        }
    }
}

/// A team as it appears in one fixture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeamSide {
    pub side: Side,
    pub team_name: String,
    pub jersey_color: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Half {
    First,
    Second,
}

impl TryFrom<u8> for Half {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        match v {
            1 => Ok(Half::First),
            2 => Ok(Half::Second),
            other => Err(format!("half must be 1 or 2, got {other}")),
        }
    }
}

impl From<Half> for u8 {
    fn from(h: Half) -> u8 {
        match h {
            Half::First => 1,
            Half::Second => 2,
        }
    }
}

/// Match clock as (half, seconds into the half). Orders lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Clock {
    pub half: Half,
    pub offset_s: u32,
}

impl Clock {
    pub const KICKOFF: Clock = Clock { half: Half::First, offset_s: 0 };
    pub const FULL_TIME: Clock = Clock { half: Half::Second, offset_s: MAX_OFFSET_S };

    pub fn new(half: u8, offset_s: u32) -> Result<Self, EventError> {
        let half = Half::try_from(half).map_err(EventError::InvalidClock)?;
        if offset_s > MAX_OFFSET_S {
            return Err(EventError::InvalidClock(format!(
                "offset {offset_s}s exceeds {MAX_OFFSET_S}s"
            )));
        }
        Ok(Self { half, offset_s })
    }

    pub fn half_number(&self) -> u8 {
        self.half.into()
    }

    /// Seconds between two clocks in the same half; `None` across halves.
    pub fn distance_within_half(&self, other: &Clock) -> Option<u32> {
        (self.half == other.half).then(|| self.offset_s.abs_diff(other.offset_s))
    }
}

impl fmt::Display for Clock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} - {:02}:{:02}",
            self.half_number(),
            self.offset_s / 60,
            self.offset_s % 60
        )
    }
}

impl FromStr for Clock {
    type Err = EventError;

    /// Accepts `"H - MM:SS"` and `"H:MM:SS"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || EventError::InvalidClock(format!("expected `H - MM:SS` or `H:MM:SS`, got `{s}`"));
        let trimmed = s.trim();
        let (half, rest) = match trimmed.split_once('-') {
            Some((h, rest)) => (h.trim(), rest.trim()),
            None => trimmed.split_once(':').ok_or_else(bad)?,
        };
        let (mm, ss) = rest.split_once(':').ok_or_else(bad)?;
        let half: u8 = half.parse().map_err(|_| bad())?;
        let mm: u32 = mm.trim().parse().map_err(|_| bad())?;
        let ss: u32 = ss.trim().parse().map_err(|_| bad())?;
        if ss >= 60 {
            return Err(bad());
        }
        Clock::new(half, mm * 60 + ss)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Goal,
    OwnGoal,
    PenaltyGoal,
    HeaderGoal,
    YellowCard,
    RedCard,
    Substitution,
    Corner,
    Foul,
    FreeKick,
    PenaltyAwarded,
    Offside,
    Commentary,
}

impl EventKind {
    pub const ALL: [EventKind; 13] = [
        EventKind::Goal,
        EventKind::OwnGoal,
        EventKind::PenaltyGoal,
        EventKind::HeaderGoal,
        EventKind::YellowCard,
        EventKind::RedCard,
        EventKind::Substitution,
        EventKind::Corner,
        EventKind::Foul,
        EventKind::FreeKick,
        EventKind::PenaltyAwarded,
        EventKind::Offside,
        EventKind::Commentary,
    ];

    /// Goals credited to the actor's own side.
    pub fn is_scoring_goal(self) -> bool {
        matches!(self, EventKind::Goal | EventKind::PenaltyGoal | EventKind::HeaderGoal)
    }

    pub fn is_goal(self) -> bool {
        self.is_scoring_goal() || self == EventKind::OwnGoal
    }

    pub fn is_card(self) -> bool {
        matches!(self, EventKind::YellowCard | EventKind::RedCard)
    }

    /// Goals and cards make up the key-event timeline.
    pub fn is_key(self) -> bool {
        self.is_goal() || self.is_card()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Goal => "goal",
            EventKind::OwnGoal => "own_goal",
            EventKind::PenaltyGoal => "penalty_goal",
            EventKind::HeaderGoal => "header_goal",
            EventKind::YellowCard => "yellow_card",
            EventKind::RedCard => "red_card",
            EventKind::Substitution => "substitution",
            EventKind::Corner => "corner",
            EventKind::Foul => "foul",
            EventKind::FreeKick => "free_kick",
            EventKind::PenaltyAwarded => "penalty_awarded",
            EventKind::Offside => "offside",
            EventKind::Commentary => "commentary",
        }
    }

    /// Maps a free-form event label ("Yellow card", "Shots on target", "Goal")
    /// to the closest kind, if any.
    pub fn from_label(label: &str) -> Option<EventKind> {
        let norm: String = label
            .trim()
            .to_ascii_lowercase()
            .chars()
            .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
            .collect();
        let norm = norm.trim_matches('_');
        if let Some(kind) = EventKind::ALL.iter().find(|k| k.as_str() == norm) {
            return Some(*kind);
        }
        Some(match norm {
            "yellow" | "yellow__red_card" | "yellow_red_card" | "yellow_to_red_card" | "card" => {
                EventKind::YellowCard
            }
            "red" => EventKind::RedCard,
            "corner_kick" => EventKind::Corner,
            "free_kick" | "direct_free_kick" | "indirect_free_kick" | "freekick" => EventKind::FreeKick,
            "penalty" => EventKind::PenaltyAwarded,
            "header" => EventKind::HeaderGoal,
            "own_goal" | "owngoal" => EventKind::OwnGoal,
            "sub" => EventKind::Substitution,
            _ => return None,
        })
    }
}

impl fmt::Display for EventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One timestamped entry of a match log.
///
/// `team` is the side the actor plays for. For an own goal that is the
/// conceding side; the score goes to the opponent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchEvent {
    pub half: Half,
    pub offset_s: u32,
    pub kind: EventKind,
    pub team: Side,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub actor: Option<PlayerRef>,
    #[serde(rename = "in", default, skip_serializing_if = "Option::is_none")]
    pub sub_in: Option<PlayerRef>,
    #[serde(rename = "out", default, skip_serializing_if = "Option::is_none")]
    pub sub_out: Option<PlayerRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assist: Option<PlayerRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl MatchEvent {
    pub fn new(clock: Clock, kind: EventKind, team: Side) -> Self {
        Self {
            half: clock.half,
            offset_s: clock.offset_s,
            kind,
            team,
            actor: None,
            sub_in: None,
            sub_out: None,
            assist: None,
            detail: None,
        }
    }

    pub fn with_actor(mut self, actor: PlayerRef) -> Self {
        self.actor = Some(actor);
        self
    }

    pub fn with_assist(mut self, assist: PlayerRef) -> Self {
        self.assist = Some(assist);
        self
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn substitution(clock: Clock, team: Side, out: PlayerRef, sub_in: PlayerRef) -> Self {
        let mut ev = Self::new(clock, EventKind::Substitution, team);
        ev.sub_out = Some(out);
        ev.sub_in = Some(sub_in);
        ev
    }

    pub fn commentary(clock: Clock, team: Side, body: impl Into<String>) -> Self {
        Self::new(clock, EventKind::Commentary, team).with_detail(body)
    }

    pub fn clock(&self) -> Clock {
        Clock { half: self.half, offset_s: self.offset_s }
    }

    /// Side whose score changes if this event is a goal.
    pub fn credited_side(&self) -> Option<Side> {
        if self.kind.is_scoring_goal() {
            Some(self.team)
        } else if self.kind == EventKind::OwnGoal {
            Some(self.team.opponent())
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clock_parses_both_forms() {
        let c: Clock = "1 - 23:45".parse().unwrap();
        assert_eq!(c, Clock::new(1, 23 * 60 + 45).unwrap());
        let c: Clock = "2:47:05".parse().unwrap();
        assert_eq!(c, Clock::new(2, 47 * 60 + 5).unwrap());
        assert_eq!(c.to_string(), "2 - 47:05");
        assert!("3 - 00:10".parse::<Clock>().is_err());
        assert!("1 - 61:00".parse::<Clock>().is_err());
        assert!("1 - 10:75".parse::<Clock>().is_err());
        assert!("nonsense".parse::<Clock>().is_err());
    }

    #[test]
    fn clocks_order_by_half_then_offset() {
        let a = Clock::new(1, 3000).unwrap();
        let b = Clock::new(2, 0).unwrap();
        assert!(a < b);
        assert_eq!(a.distance_within_half(&b), None);
    }

    #[test]
    fn own_goal_credits_opponent() {
        let c = Clock::new(1, 10).unwrap();
        assert_eq!(MatchEvent::new(c, EventKind::OwnGoal, Side::Away).credited_side(), Some(Side::Home));
        assert_eq!(MatchEvent::new(c, EventKind::HeaderGoal, Side::Away).credited_side(), Some(Side::Away));
        assert_eq!(MatchEvent::new(c, EventKind::Corner, Side::Away).credited_side(), None);
    }

    #[test]
    fn labels_map_to_kinds() {
        assert_eq!(EventKind::from_label("Yellow card"), Some(EventKind::YellowCard));
        assert_eq!(EventKind::from_label("Corner"), Some(EventKind::Corner));
        assert_eq!(EventKind::from_label("Direct free-kick"), Some(EventKind::FreeKick));
        assert_eq!(EventKind::from_label("Shots on target"), None);
    }

    #[test]
    fn event_serializes_in_out_keys() {
        let p = PlayerRef::new("A", 1, Position::Forward);
        let q = PlayerRef::new("B", 2, Position::Forward);
        let ev = MatchEvent::substitution(Clock::new(2, 100).unwrap(), Side::Home, p, q);
        let v = serde_json::to_value(&ev).unwrap();
        assert_eq!(v["half"], 2);
        assert!(v.get("in").is_some() && v.get("out").is_some());
        let back: MatchEvent = serde_json::from_value(v).unwrap();
        assert_eq!(back, ev);
    }

    #[test]
    fn player_hash_is_stable() {
        let p = PlayerRef::new("Lionel Messi", 10, Position::Forward);
        assert_eq!(p.hash(), p.clone().hash());
        assert_eq!(p.hash().len(), 8);
        assert_ne!(p.hash(), PlayerRef::new("Lionel Messi", 19, Position::Forward).hash());
    }
}
