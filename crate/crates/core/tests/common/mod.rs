//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use chrono::{DateTime, Duration, NaiveDate, Utc};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use touchline_core::event::{Clock, EventKind, Lineups, MatchEvent, MatchLog, MatchMeta, PlayerRef, Position, Side};
use touchline_core::grounding::AttentionBundle;
use touchline_core::statbase::{
    GoalMethod, MatchRecord, PlayerRecord, Stat, StatAnswer, StatEventKind, StatEventRecord, StatQuery, Subject, Venue, Verb,
};
use touchline_core::time::parse_datetime;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn squad(prefix: &str, first_number: u8) -> Vec<PlayerRef> {
    (0..11u8)
        .map(|i| {
            let pos = match i {
                0 => Position::Goalkeeper,
                1..=4 => Position::Defender,
                5..=7 => Position::Midfielder,
                _ => Position::Forward,
            };
            PlayerRef::new(format!("{prefix} {}", i + 1), first_number + i, pos)
        })
        .collect()
}

pub fn empty_log() -> MatchLog {
    MatchLog {
        meta: MatchMeta {
            home: "North FC".into(),
            away: "South United".into(),
            league: "Test League".into(),
            season: "2016-2017".into(),
            kickoff: parse_datetime("2016-11-22T19:45:00Z").unwrap(),
            home_color: "red".into(),
            away_color: "blue".into(),
        },
        lineups: Lineups {
            home: squad("North", 1),
            away: squad("South", 1),
            home_coach: "North Coach".into(),
            away_coach: "South Coach".into(),
        },
        events: Vec::new(),
    }
}

const PLAIN_KINDS: [EventKind; 11] = [
    EventKind::Goal,
    EventKind::OwnGoal,
    EventKind::PenaltyGoal,
    EventKind::HeaderGoal,
    EventKind::YellowCard,
    EventKind::RedCard,
    EventKind::Corner,
    EventKind::Foul,
    EventKind::FreeKick,
    EventKind::Offside,
    EventKind::Commentary,
];

/// A valid log of up to `max_events` events. Clocks never decrease and may
/// repeat; substitutions bring on numbered bench players.
pub fn random_log(rng: &mut ChaCha8Rng, max_events: usize) -> MatchLog {
    let mut log = empty_log();
    let mut active = [log.lineups.home.clone(), log.lineups.away.clone()];
    let mut bench_next = [12u8, 12u8];
    let n = rng.gen_range(0..=max_events);
    let mut clocks: Vec<Clock> =
        (0..n).map(|_| Clock::new(rng.gen_range(1..=2), rng.gen_range(0..=3000)).unwrap()).collect();
    if n > 1 && rng.gen_bool(0.3) {
        clocks[n - 1] = clocks[n - 2];
    }
    clocks.sort();
    for clock in clocks {
        let side = if rng.gen_bool(0.5) { Side::Home } else { Side::Away };
        let s = side as usize;
        if rng.gen_bool(0.08) && bench_next[s] < 40 {
            let slot = rng.gen_range(0..11);
            let out = active[s][slot].clone();
            let prefix = if side == Side::Home { "North" } else { "South" };
            let sub_in = PlayerRef::new(format!("{prefix} Sub {}", bench_next[s]), bench_next[s], Position::Midfielder);
            bench_next[s] += 1;
            active[s][slot] = sub_in.clone();
            log.events.push(MatchEvent::substitution(clock, side, out, sub_in));
            continue;
        }
        let kind = PLAIN_KINDS[rng.gen_range(0..PLAIN_KINDS.len())];
        let actor = active[s][rng.gen_range(0..11)].clone();
        let ev = if kind == EventKind::Commentary {
            MatchEvent::commentary(clock, side, format!("line {}", log.events.len()))
        } else {
            MatchEvent::new(clock, kind, side).with_actor(actor)
        };
        log.events.push(ev);
    }
    log
}

/// Row-major bundle; with `stochastic` every frame row sums to one.
pub fn random_bundle(rng: &mut ChaCha8Rng, dims: [usize; 4], stochastic: bool) -> AttentionBundle {
    let [l, h, q, n] = dims;
    let mut attention = Vec::with_capacity(l * h * q * n);
    for _ in 0..l * h * q {
        let row: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
        let total: f64 = row.iter().sum();
        attention.extend(row.into_iter().map(|v| if stochastic { v / total } else { v }));
    }
    let mut query_norms: Vec<f64> = (0..q).map(|_| rng.gen_range(0.0..3.0)).collect();
    query_norms[0] += 0.1;
    AttentionBundle { layers: l, heads: h, queries: q, frames: n, attention, query_norms }
}

/// Frame weights by a direct quadruple loop over the flat buffer.
pub fn naive_relevance(b: &AttentionBundle) -> Vec<f64> {
    let norm_total: f64 = b.query_norms.iter().sum();
    let mut out = vec![0.0; b.frames];
    for (frame, w) in out.iter_mut().enumerate() {
        for q in 0..b.queries {
            let mut acc = 0.0;
            for l in 0..b.layers {
                for h in 0..b.heads {
                    let idx = ((l * b.heads + h) * b.queries + q) * b.frames + frame;
                    acc += b.attention[idx];
                }
            }
            *w += (b.query_norms[q] / norm_total) * acc / (b.layers * b.heads) as f64;
        }
    }
    out
}

/// Boundaries by a linear scan over raw per-frame metrics.
pub fn naive_boundaries(values: &[Vec<f64>], threshold: f64) -> Vec<(usize, usize)> {
    let mut cuts = vec![0];
    for i in 1..values.len() {
        let diff: f64 = values[i].iter().zip(&values[i - 1]).map(|(a, b)| (a - b).abs()).sum::<f64>()
            / values[i].len() as f64;
        if diff > threshold {
            cuts.push(i);
        }
    }
    cuts.push(values.len());
    cuts.windows(2).map(|w| (w[0], w[1])).collect()
}

/// The shipped store's CSV files as plain string rows.
pub struct RawStore {
    pub matches: Vec<HashMap<String, String>>,
    pub events: Vec<HashMap<String, String>>,
    pub players: Vec<HashMap<String, String>>,
}

fn read_rows(path: PathBuf) -> Vec<HashMap<String, String>> {
    let mut rdr = csv::Reader::from_path(&path).unwrap();
    let headers = rdr.headers().unwrap().clone();
    rdr.records()
        .map(|r| headers.iter().map(String::from).zip(r.unwrap().iter().map(String::from)).collect())
        .collect()
}

impl RawStore {
    pub fn load() -> Self {
        let dir = fixtures().join("stats");
        Self {
            matches: read_rows(dir.join("matches.csv")),
            events: read_rows(dir.join("stat_events.csv")),
            players: read_rows(dir.join("players.csv")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleAnswer {
    Count(u64),
    Matches(Vec<String>),
    Record(u32, u32, u32),
}

impl OracleAnswer {
    pub fn of(answer: &StatAnswer) -> Self {
        match answer {
            StatAnswer::Count { value } => OracleAnswer::Count(*value),
            StatAnswer::Matches { matches } => OracleAnswer::Matches(matches.iter().map(|m| m.match_id.clone()).collect()),
            StatAnswer::Record { wins, draws, losses } => OracleAnswer::Record(*wins, *draws, *losses),
        }
    }
}

fn stat_kind_names(stat: Stat) -> &'static [&'static str] {
    match stat {
        Stat::Goals => &["goal"],
        Stat::Assists => &["assist"],
        Stat::YellowCards => &["yellow_card"],
        Stat::RedCards => &["red_card"],
        Stat::CardsAny => &["yellow_card", "red_card"],
        Stat::Fouls => &["foul"],
        Stat::Corners => &["corner"],
        Stat::PenaltiesAwarded => &["penalty_awarded"],
        Stat::FreeKicks => &["free_kick"],
    }
}

fn kickoff(row: &HashMap<String, String>) -> DateTime<Utc> {
    DateTime::parse_from_rfc3339(&row["kickoff"]).unwrap().with_timezone(&Utc)
}

fn score(row: &HashMap<String, String>) -> (u32, u32) {
    let (h, a) = row["final_score"].split_once('-').unwrap();
    (h.trim().parse().unwrap(), a.trim().parse().unwrap())
}

fn same(a: &str, b: &str) -> bool {
    a.trim().to_lowercase() == b.trim().to_lowercase()
}

/// Full scan over the raw rows. `None` means the subject is unknown as of
/// the query instant.
pub fn oracle_answer(raw: &RawStore, q: &StatQuery) -> Option<OracleAnswer> {
    let visible: Vec<&HashMap<String, String>> = raw.matches.iter().filter(|m| kickoff(m) < q.as_of).collect();
    let name = q.subject.name();
    let known = match &q.subject {
        Subject::Team { .. } => visible.iter().any(|m| same(&m["home"], name) || same(&m["away"], name)),
        Subject::Player { .. } => {
            raw.players.iter().any(|p| same(&p["name"], name))
                || raw.events.iter().any(|e| {
                    same(&e["player"], name) && visible.iter().any(|m| m["match_id"] == e["match_id"])
                })
        }
    };
    if !known {
        return None;
    }
    let qualifying: Vec<&HashMap<String, String>> = visible
        .into_iter()
        .filter(|m| q.season.as_ref().is_none_or(|s| &m["season"] == s))
        .filter(|m| q.league.as_ref().is_none_or(|l| &m["league"] == l))
        .collect();

    if let Verb::Count { stat, method } = q.verb {
        let mut n = 0;
        for e in &raw.events {
            let Some(m) = qualifying.iter().find(|m| m["match_id"] == e["match_id"]) else { continue };
            if !stat_kind_names(stat).contains(&e["kind"].as_str()) {
                continue;
            }
            if let Some(want) = method.filter(|w| *w != GoalMethod::Any) {
                if e["method"] != want.as_str() {
                    continue;
                }
            }
            let hit = match &q.subject {
                Subject::Player { .. } => {
                    same(&e["player"], name)
                        && q.for_team.as_ref().is_none_or(|t| same(&e["team"], t))
                        && q.venue.is_none_or(|v| same(&e["team"], &m[v.as_str()]))
                }
                Subject::Team { .. } => {
                    let beneficiary = if e["kind"] == "goal" && e["method"] == "own_goal" {
                        if same(&e["team"], &m["home"]) { &m["away"] } else { &m["home"] }
                    } else {
                        &e["team"]
                    };
                    same(beneficiary, name) && q.venue.is_none_or(|v| same(&m[v.as_str()], name))
                }
            };
            if hit {
                n += 1;
            }
        }
        return Some(OracleAnswer::Count(n));
    }

    let mut played: Vec<&HashMap<String, String>> = qualifying
        .into_iter()
        .filter(|m| match q.venue {
            Some(v) => same(&m[v.as_str()], name),
            None => same(&m["home"], name) || same(&m["away"], name),
        })
        .collect();
    played.sort_by(|a, b| (kickoff(a), &a["match_id"]).cmp(&(kickoff(b), &b["match_id"])));
    match q.verb {
        Verb::ListMatches => Some(OracleAnswer::Matches(played.iter().map(|m| m["match_id"].clone()).collect())),
        Verb::LastResults { n } => Some(OracleAnswer::Matches(
            played.iter().rev().take(n as usize).map(|m| m["match_id"].clone()).collect(),
        )),
        Verb::TeamRecord => {
            let (mut w, mut d, mut l) = (0, 0, 0);
            for m in played {
                let (h, a) = score(m);
                let (us, them) = if same(&m["home"], name) { (h, a) } else { (a, h) };
                if us > them {
                    w += 1;
                } else if us == them {
                    d += 1;
                } else {
                    l += 1;
                }
            }
            Some(OracleAnswer::Record(w, d, l))
        }
        Verb::Count { .. } => unreachable!(),
    }
}

const NAME_PARTS: [&str; 8] = ["Ana", "Bo \"Q\"", "Çelik", "O'Neil", "back\\slash", "José", "  spaced  ", "Zed"];

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.gen_range(0..items.len())]
}

fn maybe<T>(rng: &mut ChaCha8Rng, f: impl FnOnce(&mut ChaCha8Rng) -> T) -> Option<T> {
    if rng.gen_bool(0.5) {
        Some(f(rng))
    } else {
        None
    }
}

fn instant(rng: &mut ChaCha8Rng) -> DateTime<Utc> {
    let base = parse_datetime("2014-01-01T00:00:00Z").unwrap();
    if rng.gen_bool(0.5) {
        base + Duration::days(rng.gen_range(0..1500))
    } else {
        base + Duration::seconds(rng.gen_range(0..130_000_000))
    }
}

/// Any well-formed AST, including awkward names.
pub fn random_ast(rng: &mut ChaCha8Rng) -> StatQuery {
    let name = |rng: &mut ChaCha8Rng| {
        let n = rng.gen_range(1..=3);
        (0..n).map(|_| *pick(rng, &NAME_PARTS)).collect::<Vec<_>>().join(" ")
    };
    let verb = match rng.gen_range(0..4) {
        0 => {
            let stat = *pick(rng, &Stat::ALL);
            let method = if stat == Stat::Goals { maybe(rng, |r| *pick(r, &GoalMethod::ALL)) } else { None };
            Verb::Count { stat, method }
        }
        1 => Verb::ListMatches,
        2 => Verb::TeamRecord,
        _ => Verb::LastResults { n: rng.gen_range(1..=20) },
    };
    let player = matches!(verb, Verb::Count { .. }) && rng.gen_bool(0.5);
    let subject = if player { Subject::Player { name: name(rng) } } else { Subject::Team { name: name(rng) } };
    StatQuery {
        verb,
        subject,
        season: maybe(rng, |r| pick(r, &["2015-2016", "2016/17", "season one", "x\"y"]).to_string()),
        league: maybe(rng, |r| name(r)),
        venue: maybe(rng, |r| if r.gen_bool(0.5) { Venue::Home } else { Venue::Away }),
        for_team: if player { maybe(rng, |r| name(r)) } else { None },
        as_of: instant(rng),
    }
}

const TEAMS: [&str; 5] = ["Alpha", "Beta", "Gamma", "Delta", "Epsilon"];
const PLAYERS: [&str; 6] = ["P One", "P Two", "P Three", "P Four", "P Five", "P Six"];
const SEASONS: [&str; 2] = ["2015-2016", "2016-2017"];
const LEAGUES: [&str; 2] = ["League A", "Cup B"];

fn day(n: i64) -> DateTime<Utc> {
    parse_datetime("2016-01-01T15:00:00Z").unwrap() + Duration::days(n)
}

fn random_match(rng: &mut ChaCha8Rng, id: String, kickoff: DateTime<Utc>, teams: &[&str]) -> MatchRecord {
    let home = *pick(rng, teams);
    let away = loop {
        let t = *pick(rng, teams);
        if t != home {
            break t;
        }
    };
    MatchRecord {
        match_id: id,
        home: home.into(),
        away: away.into(),
        league: pick(rng, &LEAGUES).to_string(),
        season: pick(rng, &SEASONS).to_string(),
        kickoff,
        score_home: rng.gen_range(0..4),
        score_away: rng.gen_range(0..4),
    }
}

fn random_events(rng: &mut ChaCha8Rng, m: &MatchRecord, players: &[&str], out: &mut Vec<StatEventRecord>) {
    for _ in 0..rng.gen_range(0..8) {
        let kind = *pick(rng, &StatEventKind::ALL);
        let method = if kind == StatEventKind::Goal {
            *pick(rng, &[None, Some(GoalMethod::Penalty), Some(GoalMethod::Header), Some(GoalMethod::OwnGoal)])
        } else {
            None
        };
        out.push(StatEventRecord {
            match_id: m.match_id.clone(),
            clock: Clock::new(rng.gen_range(1..=2), rng.gen_range(0..2700)).unwrap(),
            kind,
            team: if rng.gen_bool(0.5) { m.home.clone() } else { m.away.clone() },
            player: maybe(rng, |r| pick(r, players).to_string()),
            method,
        });
    }
}

/// A small store plus a query over the same names.
pub fn random_store_and_query(rng: &mut ChaCha8Rng) -> (Vec<MatchRecord>, Vec<StatEventRecord>, Vec<PlayerRecord>, StatQuery) {
    let mut matches = Vec::new();
    let mut events = Vec::new();
    for i in 0..rng.gen_range(0..12) {
        let kickoff = day(rng.gen_range(0..40));
        let m = random_match(rng, format!("m{i}"), kickoff, &TEAMS);
        random_events(rng, &m, &PLAYERS, &mut events);
        matches.push(m);
    }
    let players = PLAYERS[..3]
        .iter()
        .map(|n| PlayerRecord {
            name: n.to_string(),
            nationality: "X".into(),
            height_cm: 180,
            birthdate: NaiveDate::from_ymd_opt(1990, 1, 1).unwrap(),
        })
        .collect();
    let mut q = random_ast(rng);
    q.subject = match q.subject {
        Subject::Player { .. } => Subject::Player { name: PLAYERS[rng.gen_range(0..PLAYERS.len())].to_string() },
        Subject::Team { .. } => Subject::Team { name: TEAMS[rng.gen_range(0..TEAMS.len())].to_string() },
    };
    q.season = maybe(rng, |r| pick(r, &SEASONS).to_string());
    q.league = maybe(rng, |r| pick(r, &LEAGUES).to_string());
    if q.for_team.is_some() {
        q.for_team = Some(pick(rng, &TEAMS).to_string());
    }
    q.as_of = if rng.gen_bool(0.3) {
        day(rng.gen_range(0..40))
    } else {
        day(rng.gen_range(0..40)) + Duration::seconds(rng.gen_range(-7200..7200))
    };
    (matches, events, players, q)
}

/// Matches (with events) kicking off at or after `as_of`, over known and
/// brand-new teams and players.
pub fn future_records(
    rng: &mut ChaCha8Rng,
    as_of: DateTime<Utc>,
    first_id: usize,
) -> (Vec<MatchRecord>, Vec<StatEventRecord>) {
    let teams: Vec<&str> = TEAMS.iter().copied().chain(["Newcomers"]).collect();
    let players: Vec<&str> = PLAYERS.iter().copied().chain(["Fresh Face"]).collect();
    let mut matches = Vec::new();
    let mut events = Vec::new();
    for i in 0..rng.gen_range(1..5) {
        let kickoff = if i == 0 { as_of } else { as_of + Duration::seconds(rng.gen_range(0..5_000_000)) };
        let m = random_match(rng, format!("f{}", first_id + i), kickoff, &teams);
        random_events(rng, &m, &players, &mut events);
        matches.push(m);
    }
    (matches, events)
}
