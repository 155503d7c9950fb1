//! Seeded statistics store: fixtures, per-match events and player records.

use chrono::{DateTime, Duration, NaiveDate, TimeZone, Utc};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use touchline_core::event::{Clock, EventKind, MatchLog};
use touchline_core::statbase::{GoalMethod, MatchRecord, PlayerRecord, StatEventKind, StatEventRecord, StatStore};

use crate::data::{self, GROUP_SCHEDULE, SEASONS, UCL};

struct Fixture {
    home: String,
    away: String,
    league: String,
    season: String,
    kickoff: DateTime<Utc>,
}

fn at(date: &str, hour: u32, minute: u32) -> DateTime<Utc> {
    let d = NaiveDate::parse_from_str(date, "%Y-%m-%d").expect("calendar date");
    Utc.from_utc_datetime(&d.and_hms_opt(hour, minute, 0).unwrap())
}

/// Double round robin by the circle method, first round in mid-August.
fn domestic(league: &str, season: &str, out: &mut Vec<Fixture>) {
    let mut teams: Vec<Option<&str>> = data::league_teams(league, season).into_iter().map(Some).collect();
    if teams.len() % 2 == 1 {
        teams.push(None);
    }
    let n = teams.len();
    let rounds = 2 * (n - 1);
    let year: i32 = season[..4].parse().unwrap();
    let start = at(&format!("{year}-08-16"), 14, 0);
    let step = 266 / rounds as i64;
    for r in 0..rounds {
        let date = start + Duration::days(step * r as i64);
        let mut order = teams.clone();
        order[1..].rotate_right(r % (n - 1));
        for i in 0..n / 2 {
            let (a, b) = (order[i], order[n - 1 - i]);
            let (Some(a), Some(b)) = (a, b) else { continue };
            let (home, away) = if (r < n - 1) == (i % 2 == 0) { (a, b) } else { (b, a) };
            out.push(Fixture {
                home: home.into(),
                away: away.into(),
                league: league.into(),
                season: season.into(),
                kickoff: date,
            });
        }
    }
}

fn champions_league(out: &mut Vec<Fixture>) {
    for s in data::ucl_seasons() {
        for (g, group) in s.groups.iter().enumerate() {
            for (md, pairs) in GROUP_SCHEDULE.iter().enumerate() {
                let day = at(s.matchdays[md], 19, 45) + Duration::days((g / 4) as i64);
                for &(h, a) in pairs {
                    out.push(Fixture {
                        home: group[h].into(),
                        away: group[a].into(),
                        league: UCL.into(),
                        season: s.season.into(),
                        kickoff: day,
                    });
                }
            }
        }
        for &(home, away, date) in &s.knockouts {
            out.push(Fixture {
                home: home.into(),
                away: away.into(),
                league: UCL.into(),
                season: s.season.into(),
                kickoff: at(date, 19, 45),
            });
        }
    }
}

fn squad_player(rng: &mut ChaCha8Rng, team: &str, attacking: bool) -> String {
    let squad = data::squad(team);
    if attacking {
        // Outfield players, weighted toward the end of the list (forwards).
        let weights: Vec<usize> = (0..squad.len()).map(|i| if i == 0 { 0 } else { i }).collect();
        let total: usize = weights.iter().sum();
        let mut pick = rng.gen_range(0..total);
        for (i, w) in weights.iter().enumerate() {
            if pick < *w {
                return squad[i].clone();
            }
            pick -= w;
        }
        unreachable!()
    } else {
        squad[rng.gen_range(1..squad.len())].clone()
    }
}

fn random_clock(rng: &mut ChaCha8Rng) -> Clock {
    Clock::new(rng.gen_range(1..=2), rng.gen_range(30..2820)).unwrap()
}

fn goals(rng: &mut ChaCha8Rng) -> u32 {
    let table = [(0, 25), (1, 33), (2, 23), (3, 12), (4, 5), (5, 2)];
    let mut pick = rng.gen_range(0..100);
    for (g, w) in table {
        if pick < w {
            return g;
        }
        pick -= w;
    }
    0
}

fn event(m: &str, clock: Clock, kind: StatEventKind, team: &str, player: Option<String>) -> StatEventRecord {
    StatEventRecord { match_id: m.into(), clock, kind, team: team.into(), player, method: None }
}

/// Randomised but score-consistent events for one match.
fn synthesize(rng: &mut ChaCha8Rng, id: &str, home: &str, away: &str) -> (u32, u32, Vec<StatEventRecord>) {
    let mut out = Vec::new();
    let (gh, ga) = (goals(rng), goals(rng));
    for (team, opp, n) in [(home, away, gh), (away, home, ga)] {
        for _ in 0..n {
            let clock = random_clock(rng);
            let roll: f64 = rng.gen();
            if roll < 0.08 {
                let mut e = event(id, clock, StatEventKind::Goal, opp, Some(squad_player(rng, opp, false)));
                e.method = Some(GoalMethod::OwnGoal);
                out.push(e);
                continue;
            }
            let scorer = squad_player(rng, team, true);
            let mut e = event(id, clock, StatEventKind::Goal, team, Some(scorer.clone()));
            if roll < 0.20 {
                e.method = Some(GoalMethod::Penalty);
                let fouled = squad_player(rng, team, true);
                let awarded = Clock::new(clock.half_number(), clock.offset_s - 30).unwrap();
                out.push(event(id, awarded, StatEventKind::PenaltyAwarded, team, Some(fouled)));
            } else {
                if roll < 0.35 {
                    e.method = Some(GoalMethod::Header);
                }
                if rng.gen_bool(0.65) {
                    let assist = loop {
                        let p = squad_player(rng, team, false);
                        if p != scorer {
                            break p;
                        }
                    };
                    out.push(event(id, clock, StatEventKind::Assist, team, Some(assist)));
                }
            }
            out.push(e);
        }
    }
    for team in [home, away] {
        for (kind, lo, hi) in [
            (StatEventKind::YellowCard, 0, 5),
            (StatEventKind::Foul, 8, 16),
            (StatEventKind::Corner, 2, 10),
            (StatEventKind::FreeKick, 1, 5),
        ] {
            for _ in 0..rng.gen_range(lo..hi) {
                let p = squad_player(rng, team, kind == StatEventKind::Corner);
                out.push(event(id, random_clock(rng), kind, team, Some(p)));
            }
        }
        if rng.gen_bool(0.05) {
            out.push(event(id, random_clock(rng), StatEventKind::RedCard, team, Some(squad_player(rng, team, false))));
        }
        if rng.gen_bool(0.06) {
            out.push(event(id, random_clock(rng), StatEventKind::PenaltyAwarded, team, None));
        }
    }
    (gh, ga, out)
}

/// Stat rows of a fully logged match; the score comes from the log.
fn from_log(id: &str, log: &MatchLog) -> (u32, u32, Vec<StatEventRecord>) {
    let mut out = Vec::new();
    let (mut gh, mut ga) = (0, 0);
    for e in &log.events {
        let team = log.meta.team_name(e.team);
        let player = e.actor.as_ref().map(|p| p.name.clone());
        let kind = match e.kind {
            k if k.is_goal() => {
                match e.credited_side() {
                    Some(touchline_core::event::Side::Home) => gh += 1,
                    _ => ga += 1,
                }
                let mut r = event(id, e.clock(), StatEventKind::Goal, team, player);
                r.method = match e.kind {
                    EventKind::OwnGoal => Some(GoalMethod::OwnGoal),
                    EventKind::PenaltyGoal => Some(GoalMethod::Penalty),
                    EventKind::HeaderGoal => Some(GoalMethod::Header),
                    _ => None,
                };
                out.push(r);
                if let Some(a) = &e.assist {
                    out.push(event(id, e.clock(), StatEventKind::Assist, team, Some(a.name.clone())));
                }
                continue;
            }
            EventKind::YellowCard => StatEventKind::YellowCard,
            EventKind::RedCard => StatEventKind::RedCard,
            EventKind::Foul => StatEventKind::Foul,
            EventKind::Corner => StatEventKind::Corner,
            EventKind::FreeKick => StatEventKind::FreeKick,
            EventKind::PenaltyAwarded => StatEventKind::PenaltyAwarded,
            _ => continue,
        };
        out.push(event(id, e.clock(), kind, team, player));
    }
    (gh, ga, out)
}

fn players(rng: &mut ChaCha8Rng, teams: &[String]) -> Vec<PlayerRecord> {
    let mut out = Vec::new();
    for team in teams {
        for name in data::squad(team) {
            let (nationality, height_cm, birthdate) = match data::known_player(&name) {
                Some((n, h, b)) => (n.to_string(), h, NaiveDate::parse_from_str(b, "%Y-%m-%d").unwrap()),
                None => {
                    let born = NaiveDate::from_ymd_opt(1984, 1, 1).unwrap() + Duration::days(rng.gen_range(0..4700));
                    (data::country(team).to_string(), rng.gen_range(168..196), born)
                }
            };
            out.push(PlayerRecord { name, nationality, height_cm, birthdate });
        }
    }
    out
}

/// Builds the store. Matches that have a fixture log take their score and
/// events from it and replace the generated fixture of the same pairing.
pub fn build(seed: u64, logs: &[MatchLog]) -> StatStore {
    use rand::SeedableRng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut fixtures = Vec::new();
    for season in SEASONS {
        for league in [data::PREMIER_LEAGUE, data::LA_LIGA, data::BUNDESLIGA, data::SERIE_A, data::LIGUE_1] {
            domestic(league, season, &mut fixtures);
        }
    }
    champions_league(&mut fixtures);
    for log in logs {
        let m = &log.meta;
        let slot = fixtures
            .iter()
            .position(|f| f.home == m.home && f.away == m.away && f.league == m.league && f.season == m.season)
            .unwrap_or_else(|| panic!("no generated fixture for {} v {} ({})", m.home, m.away, m.season));
        fixtures[slot].kickoff = m.kickoff;
    }
    fixtures.sort_by(|a, b| (a.kickoff, &a.home).cmp(&(b.kickoff, &b.home)));

    let mut matches = Vec::new();
    let mut events = Vec::new();
    for (i, f) in fixtures.iter().enumerate() {
        let id = format!("m{:04}", i + 1);
        let logged = logs.iter().find(|l| l.meta.home == f.home && l.meta.away == f.away && l.meta.kickoff == f.kickoff);
        let (score_home, score_away, mut evs) = match logged {
            Some(log) => from_log(&id, log),
            None => synthesize(&mut rng, &id, &f.home, &f.away),
        };
        evs.sort_by_key(|e| e.clock);
        events.extend(evs);
        matches.push(MatchRecord {
            match_id: id,
            home: f.home.clone(),
            away: f.away.clone(),
            league: f.league.clone(),
            season: f.season.clone(),
            kickoff: f.kickoff,
            score_home,
            score_away,
        });
    }
    let mut teams: Vec<String> = fixtures.iter().flat_map(|f| [f.home.clone(), f.away.clone()]).collect();
    teams.sort();
    teams.dedup();
    let players = players(&mut rng, &teams);
    StatStore::from_parts(matches, events, players).expect("generated store is consistent")
}
