use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use chrono::{DateTime, NaiveDate, Utc};
use serde::{Deserialize, Serialize};
use unicode_normalization::UnicodeNormalization;

use super::query::GoalMethod;
use super::StatError;
use crate::event::Clock;
use crate::time::{format_datetime, parse_date, parse_datetime};

pub const MATCHES_FILE: &str = "matches.csv";
pub const EVENTS_FILE: &str = "stat_events.csv";
pub const PLAYERS_FILE: &str = "players.csv";

const MATCH_COLUMNS: [&str; 7] = ["match_id", "home", "away", "league", "season", "kickoff", "final_score"];
const EVENT_COLUMNS: [&str; 6] = ["match_id", "clock", "kind", "team", "player", "method"];
const PLAYER_COLUMNS: [&str; 4] = ["name", "nationality", "height_cm", "birthdate"];

/// NFC followed by lowercase. Used for every entity-name comparison.
pub fn normalize_name(name: &str) -> String {
    name.trim().nfc().collect::<String>().to_lowercase()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchRecord {
    pub match_id: String,
    pub home: String,
    pub away: String,
    pub league: String,
    pub season: String,
    #[serde(with = "crate::time::serde_datetime")]
    pub kickoff: DateTime<Utc>,
    pub score_home: u32,
    pub score_away: u32,
}

impl MatchRecord {
    pub fn involves(&self, team_key: &str) -> bool {
        normalize_name(&self.home) == team_key || normalize_name(&self.away) == team_key
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StatEventKind {
    Goal,
    Assist,
    YellowCard,
    RedCard,
    Foul,
    Corner,
    PenaltyAwarded,
    FreeKick,
}

impl StatEventKind {
    pub const ALL: [StatEventKind; 8] = [
        StatEventKind::Goal,
        StatEventKind::Assist,
        StatEventKind::YellowCard,
        StatEventKind::RedCard,
        StatEventKind::Foul,
        StatEventKind::Corner,
        StatEventKind::PenaltyAwarded,
        StatEventKind::FreeKick,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            StatEventKind::Goal => "goal",
            StatEventKind::Assist => "assist",
            StatEventKind::YellowCard => "yellow_card",
            StatEventKind::RedCard => "red_card",
            StatEventKind::Foul => "foul",
            StatEventKind::Corner => "corner",
            StatEventKind::PenaltyAwarded => "penalty_awarded",
            StatEventKind::FreeKick => "free_kick",
        }
    }
}

impl fmt::Display for StatEventKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StatEventKind {
    type Err = StatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim().to_ascii_lowercase();
        StatEventKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| StatError::InvalidStore(format!("unknown stat event kind {s:?}")))
    }
}

/// One row of `stat_events.csv`. `team` is the acting player's team; an own
/// goal is recorded under the scorer's team with method `own_goal`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatEventRecord {
    pub match_id: String,
    pub clock: Clock,
    pub kind: StatEventKind,
    pub team: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub player: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<GoalMethod>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlayerRecord {
    pub name: String,
    pub nationality: String,
    pub height_cm: u16,
    #[serde(with = "crate::time::serde_date")]
    pub birthdate: NaiveDate,
}

/// Immutable after construction; safe to share between threads.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct StatStore {
    matches: Vec<MatchRecord>,
    events: Vec<StatEventRecord>,
    players: Vec<PlayerRecord>,
    match_index: HashMap<String, usize>,
}

impl StatStore {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_parts(
        matches: Vec<MatchRecord>,
        events: Vec<StatEventRecord>,
        players: Vec<PlayerRecord>,
    ) -> Result<Self, StatError> {
        let mut match_index = HashMap::with_capacity(matches.len());
        for (i, m) in matches.iter().enumerate() {
            if m.match_id.trim().is_empty() {
                return Err(StatError::InvalidStore(format!("match row {} has an empty match_id", i + 1)));
            }
            if normalize_name(&m.home) == normalize_name(&m.away) {
                return Err(StatError::InvalidStore(format!("match {} has the same team twice", m.match_id)));
            }
            if match_index.insert(m.match_id.clone(), i).is_some() {
                return Err(StatError::InvalidStore(format!("duplicate match_id {}", m.match_id)));
            }
        }
        for (i, e) in events.iter().enumerate() {
            let Some(&mi) = match_index.get(&e.match_id) else {
                return Err(StatError::InvalidStore(format!(
                    "event row {} references unknown match {}",
                    i + 1,
                    e.match_id
                )));
            };
            if !matches[mi].involves(&normalize_name(&e.team)) {
                return Err(StatError::InvalidStore(format!(
                    "event row {}: team {} did not play in match {}",
                    i + 1,
                    e.team,
                    e.match_id
                )));
            }
            if e.method.is_some() && e.kind != StatEventKind::Goal {
                return Err(StatError::InvalidStore(format!("event row {}: method on a non-goal event", i + 1)));
            }
            if e.method == Some(GoalMethod::Any) {
                return Err(StatError::InvalidStore(format!("event row {}: `any` is not a stored method", i + 1)));
            }
        }
        Ok(Self { matches, events, players, match_index })
    }

    pub fn matches(&self) -> &[MatchRecord] {
        &self.matches
    }

    pub fn events(&self) -> &[StatEventRecord] {
        &self.events
    }

    pub fn players(&self) -> &[PlayerRecord] {
        &self.players
    }

    pub fn match_by_id(&self, id: &str) -> Option<&MatchRecord> {
        self.match_index.get(id).map(|&i| &self.matches[i])
    }

    /// Loads `matches.csv`, `stat_events.csv` and `players.csv` from `dir`.
    pub fn load_dir(dir: impl AsRef<Path>) -> Result<Self, StatError> {
        let dir = dir.as_ref();
        let open = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|e| StatError::Io(format!("{}: {e}", path.display())))
        };
        Self::from_csv(&open(MATCHES_FILE)?, &open(EVENTS_FILE)?, &open(PLAYERS_FILE)?)
    }

    pub fn from_csv(matches: &str, events: &str, players: &str) -> Result<Self, StatError> {
        let matches = read_rows(MATCHES_FILE, matches, &MATCH_COLUMNS, |r| {
            let kickoff = parse_datetime(&r[5]).ok_or_else(|| format!("bad kickoff {:?}", &r[5]))?;
            let (h, a) = r[6].split_once('-').ok_or_else(|| format!("bad final_score {:?}", &r[6]))?;
            let goals = |s: &str| s.trim().parse::<u32>().map_err(|_| format!("bad final_score {:?}", &r[6]));
            Ok(MatchRecord {
                match_id: r[0].to_string(),
                home: r[1].to_string(),
                away: r[2].to_string(),
                league: r[3].to_string(),
                season: r[4].to_string(),
                kickoff,
                score_home: goals(h)?,
                score_away: goals(a)?,
            })
        })?;
        let events = read_rows(EVENTS_FILE, events, &EVENT_COLUMNS, |r| {
            let clock = r[1].parse::<Clock>().map_err(|e| e.to_string())?;
            let kind = r[2].parse::<StatEventKind>().map_err(|e| e.to_string())?;
            let method = match r[5].trim() {
                "" => None,
                m => Some(m.parse::<GoalMethod>().map_err(|e| e.to_string())?),
            };
            Ok(StatEventRecord {
                match_id: r[0].to_string(),
                clock,
                kind,
                team: r[3].to_string(),
                player: Some(r[4].trim().to_string()).filter(|p| !p.is_empty()),
                method,
            })
        })?;
        let players = read_rows(PLAYERS_FILE, players, &PLAYER_COLUMNS, |r| {
            Ok(PlayerRecord {
                name: r[0].to_string(),
                nationality: r[1].to_string(),
                height_cm: r[2].trim().parse().map_err(|_| format!("bad height_cm {:?}", &r[2]))?,
                birthdate: parse_date(&r[3]).ok_or_else(|| format!("bad birthdate {:?}", &r[3]))?,
            })
        })?;
        Self::from_parts(matches, events, players)
    }

    /// Writes the three tables back out in the canonical column order.
    pub fn write_dir(&self, dir: impl AsRef<Path>) -> Result<(), StatError> {
        let dir = dir.as_ref();
        let io = |e: &dyn fmt::Display| StatError::Io(format!("{}: {e}", dir.display()));
        std::fs::create_dir_all(dir).map_err(|e| io(&e))?;

        let mut w = csv::Writer::from_path(dir.join(MATCHES_FILE)).map_err(|e| io(&e))?;
        w.write_record(MATCH_COLUMNS).map_err(|e| io(&e))?;
        for m in &self.matches {
            let score = format!("{}-{}", m.score_home, m.score_away);
            let kickoff = format_datetime(&m.kickoff);
            w.write_record([&m.match_id, &m.home, &m.away, &m.league, &m.season, &kickoff, &score])
                .map_err(|e| io(&e))?;
        }
        w.flush().map_err(|e| io(&e))?;

        let mut w = csv::Writer::from_path(dir.join(EVENTS_FILE)).map_err(|e| io(&e))?;
        w.write_record(EVENT_COLUMNS).map_err(|e| io(&e))?;
        for e in &self.events {
            w.write_record([
                e.match_id.as_str(),
                &e.clock.to_string(),
                e.kind.as_str(),
                &e.team,
                e.player.as_deref().unwrap_or(""),
                e.method.map(GoalMethod::as_str).unwrap_or(""),
            ])
            .map_err(|e| io(&e))?;
        }
        w.flush().map_err(|e| io(&e))?;

        let mut w = csv::Writer::from_path(dir.join(PLAYERS_FILE)).map_err(|e| io(&e))?;
        w.write_record(PLAYER_COLUMNS).map_err(|e| io(&e))?;
        for p in &self.players {
            let birthdate = p.birthdate.format("%Y-%m-%d").to_string();
            w.write_record([&p.name, &p.nationality, &p.height_cm.to_string(), &birthdate])
                .map_err(|e| io(&e))?;
        }
        w.flush().map_err(|e| io(&e))
    }
}

fn read_rows<T>(
    file: &str,
    text: &str,
    columns: &[&str],
    mut row: impl FnMut(&csv::StringRecord) -> Result<T, String>,
) -> Result<Vec<T>, StatError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
    let header = reader.headers().map_err(|e| StatError::InvalidStore(format!("{file}: {e}")))?;
    let found: Vec<&str> = header.iter().map(str::trim).collect();
    if found != columns {
        return Err(StatError::InvalidStore(format!(
            "{file}: expected header {}, found {}",
            columns.join(","),
            found.join(",")
        )));
    }
    let mut out = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| StatError::InvalidStore(format!("{file}: {e}")))?;
        out.push(row(&rec).map_err(|e| StatError::InvalidStore(format!("{file} row {}: {e}", i + 1)))?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MATCHES: &str = "match_id,home,away,league,season,kickoff,final_score\n\
        m1,Arsenal,Paris SG,UEFA Champions League,2016-2017,2016-11-22T19:45:00Z,2-2\n";
    const EVENTS: &str = "match_id,clock,kind,team,player,method\n\
        m1,1 - 01:10,goal,Paris SG,Edinson Cavani,\n\
        m1,2 - 32:00,goal,Paris SG,Marco Verratti,own_goal\n\
        m1,2 - 33:00,corner,Arsenal,,\n";
    const PLAYERS: &str = "name,nationality,height_cm,birthdate\nEdinson Cavani,Uruguay,184,1987-02-14\n";

    #[test]
    fn parses_all_tables() {
        let store = StatStore::from_csv(MATCHES, EVENTS, PLAYERS).unwrap();
        assert_eq!(store.matches()[0].score_away, 2);
        assert_eq!(store.events()[1].method, Some(GoalMethod::OwnGoal));
        assert_eq!(store.events()[2].player, None);
        assert_eq!(store.players()[0].height_cm, 184);
    }

    #[test]
    fn rejects_bad_header_and_dangling_event() {
        let bad = MATCHES.replacen("final_score", "score", 1);
        assert!(matches!(StatStore::from_csv(&bad, EVENTS, PLAYERS), Err(StatError::InvalidStore(_))));
        let dangling = format!("{EVENTS}m9,1 - 00:10,foul,Arsenal,X,\n");
        assert!(StatStore::from_csv(MATCHES, &dangling, PLAYERS).is_err());
        let dup = format!("{MATCHES}m1,A,B,L,S,2016-01-01,0-0\n");
        assert!(StatStore::from_csv(&dup, EVENTS, PLAYERS).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let store = StatStore::from_csv(MATCHES, EVENTS, PLAYERS).unwrap();
        let dir = tempfile::tempdir().unwrap();
        store.write_dir(dir.path()).unwrap();
        assert_eq!(StatStore::load_dir(dir.path()).unwrap(), store);
    }

    #[test]
    fn name_normalization() {
        assert_eq!(normalize_name("Sergio Agu\u{0065}\u{0301}ro"), normalize_name("sergio agu\u{e9}ro"));
        assert_eq!(normalize_name(" Paris SG "), "paris sg");
    }
}
