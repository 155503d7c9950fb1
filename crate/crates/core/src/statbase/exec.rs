use std::collections::HashSet;
use std::fmt;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::query::{GoalMethod, Stat, StatQuery, Subject, Venue, Verb};
use super::store::{normalize_name, MatchRecord, PlayerRecord, StatEventKind, StatEventRecord, StatStore};
use super::StatError;
use crate::time::format_datetime;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Win,
    Draw,
    Loss,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MatchSummary {
    pub match_id: String,
    #[serde(with = "crate::time::serde_datetime")]
    pub kickoff: DateTime<Utc>,
    pub home: String,
    pub away: String,
    pub league: String,
    pub season: String,
    pub score_home: u32,
    pub score_away: u32,
    /// Result from the queried team's point of view.
    pub outcome: Outcome,
}

impl fmt::Display for MatchSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let outcome = match self.outcome {
            Outcome::Win => "W",
            Outcome::Draw => "D",
            Outcome::Loss => "L",
        };
        write!(
            f,
            "{} {} {}-{} {} ({})",
            self.kickoff.format("%Y-%m-%d"),
            self.home,
            self.score_home,
            self.score_away,
            self.away,
            outcome
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum StatAnswer {
    Count { value: u64 },
    Matches { matches: Vec<MatchSummary> },
    Record { wins: u32, draws: u32, losses: u32 },
}

impl fmt::Display for StatAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StatAnswer::Count { value } => write!(f, "{value}"),
            StatAnswer::Record { wins, draws, losses } => {
                write!(f, "{wins} wins, {draws} draws, {losses} losses")
            }
            StatAnswer::Matches { matches } if matches.is_empty() => f.write_str("no matches"),
            StatAnswer::Matches { matches } => {
                let rows: Vec<String> = matches.iter().map(ToString::to_string).collect();
                f.write_str(&rows.join("; "))
            }
        }
    }
}

/// A match that contributed to an answer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Citation {
    pub match_id: String,
    #[serde(with = "crate::time::serde_datetime")]
    pub kickoff: DateTime<Utc>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AnsweredQuery {
    pub query: StatQuery,
    pub answer: StatAnswer,
    pub provenance: Vec<Citation>,
}

impl AnsweredQuery {
    pub fn render(&self) -> String {
        format!("{} => {}", self.query, self.answer)
    }
}

pub fn execute(store: &StatStore, q: &StatQuery) -> Result<StatAnswer, StatError> {
    execute_with_provenance(store, q).map(|a| a.answer)
}

pub fn execute_with_provenance(store: &StatStore, q: &StatQuery) -> Result<AnsweredQuery, StatError> {
    let subject_key = normalize_name(q.subject.name());
    let visible: Vec<&MatchRecord> = store.matches().iter().filter(|m| m.kickoff < q.as_of).collect();
    ensure_known(store, &q.subject, &subject_key, &visible)?;

    let qualifying: Vec<&MatchRecord> = visible
        .into_iter()
        .filter(|m| q.season.as_ref().is_none_or(|s| &m.season == s))
        .filter(|m| q.league.as_ref().is_none_or(|l| &m.league == l))
        .collect();

    let (answer, cited) = match q.verb {
        Verb::Count { stat, method } => {
            let for_key = q.for_team.as_deref().map(normalize_name);
            let mut value = 0u64;
            let mut cited = Vec::new();
            for m in &qualifying {
                let before = value;
                for e in store.events().iter().filter(|e| e.match_id == m.match_id) {
                    if counts(e, m, stat, method, &q.subject, &subject_key, for_key.as_deref(), q.venue) {
                        value += 1;
                    }
                }
                if value > before {
                    cited.push(*m);
                }
            }
            (StatAnswer::Count { value }, cited)
        }
        Verb::ListMatches | Verb::TeamRecord | Verb::LastResults { .. } => {
            let mut played: Vec<&MatchRecord> = qualifying
                .into_iter()
                .filter(|m| team_venue(m, &subject_key).is_some_and(|v| q.venue.is_none_or(|want| want == v)))
                .collect();
            played.sort_by(|a, b| a.kickoff.cmp(&b.kickoff).then_with(|| a.match_id.cmp(&b.match_id)));
            match q.verb {
                Verb::ListMatches => {
                    let matches = played.iter().map(|m| summary(m, &subject_key)).collect();
                    (StatAnswer::Matches { matches }, played)
                }
                Verb::TeamRecord => {
                    let (mut wins, mut draws, mut losses) = (0, 0, 0);
                    for m in &played {
                        match outcome(m, &subject_key) {
                            Outcome::Win => wins += 1,
                            Outcome::Draw => draws += 1,
                            Outcome::Loss => losses += 1,
                        }
                    }
                    (StatAnswer::Record { wins, draws, losses }, played)
                }
                Verb::LastResults { n } => {
                    played.reverse();
                    played.truncate(n as usize);
                    let matches = played.iter().map(|m| summary(m, &subject_key)).collect();
                    (StatAnswer::Matches { matches }, played)
                }
                Verb::Count { .. } => unreachable!(),
            }
        }
    };
    let provenance =
        cited.iter().map(|m| Citation { match_id: m.match_id.clone(), kickoff: m.kickoff }).collect();
    Ok(AnsweredQuery { query: q.clone(), answer, provenance })
}

/// A subject is known if it appears in a visible match, or for players in
/// the players table. Matches on or after `as_of` never make a name known.
fn ensure_known(
    store: &StatStore,
    subject: &Subject,
    key: &str,
    visible: &[&MatchRecord],
) -> Result<(), StatError> {
    let known = match subject {
        Subject::Team { .. } => visible.iter().any(|m| m.involves(key)),
        Subject::Player { .. } => {
            store.players().iter().any(|p| normalize_name(&p.name) == key) || {
                let ids: HashSet<&str> = visible.iter().map(|m| m.match_id.as_str()).collect();
                store.events().iter().any(|e| {
                    ids.contains(e.match_id.as_str()) && e.player.as_deref().is_some_and(|p| normalize_name(p) == key)
                })
            }
        }
    };
    if known {
        Ok(())
    } else {
        Err(StatError::UnknownEntity(subject.name().to_string()))
    }
}

fn team_venue(m: &MatchRecord, team_key: &str) -> Option<Venue> {
    if normalize_name(&m.home) == team_key {
        Some(Venue::Home)
    } else if normalize_name(&m.away) == team_key {
        Some(Venue::Away)
    } else {
        None
    }
}

fn opponent_key(m: &MatchRecord, team_key: &str) -> String {
    if normalize_name(&m.home) == team_key {
        normalize_name(&m.away)
    } else {
        normalize_name(&m.home)
    }
}

fn stat_kinds(stat: Stat) -> &'static [StatEventKind] {
    match stat {
        Stat::Goals => &[StatEventKind::Goal],
        Stat::Assists => &[StatEventKind::Assist],
        Stat::YellowCards => &[StatEventKind::YellowCard],
        Stat::RedCards => &[StatEventKind::RedCard],
        Stat::CardsAny => &[StatEventKind::YellowCard, StatEventKind::RedCard],
        Stat::Fouls => &[StatEventKind::Foul],
        Stat::Corners => &[StatEventKind::Corner],
        Stat::PenaltiesAwarded => &[StatEventKind::PenaltyAwarded],
        Stat::FreeKicks => &[StatEventKind::FreeKick],
    }
}

#[allow(clippy::too_many_arguments)]
fn counts(
    e: &StatEventRecord,
    m: &MatchRecord,
    stat: Stat,
    method: Option<GoalMethod>,
    subject: &Subject,
    subject_key: &str,
    for_key: Option<&str>,
    venue: Option<Venue>,
) -> bool {
    if !stat_kinds(stat).contains(&e.kind) {
        return false;
    }
    if let Some(want) = method.filter(|m| *m != GoalMethod::Any) {
        if e.method != Some(want) {
            return false;
        }
    }
    let acting_team = normalize_name(&e.team);
    // Goals go to the side whose score they raised.
    let credited_team = if e.kind == StatEventKind::Goal && e.method == Some(GoalMethod::OwnGoal) {
        opponent_key(m, &acting_team)
    } else {
        acting_team.clone()
    };
    match subject {
        Subject::Player { .. } => {
            if !e.player.as_deref().is_some_and(|p| normalize_name(p) == subject_key) {
                return false;
            }
            if for_key.is_some_and(|t| t != acting_team) {
                return false;
            }
            venue.is_none_or(|v| team_venue(m, &acting_team) == Some(v))
        }
        Subject::Team { .. } => {
            credited_team == subject_key && venue.is_none_or(|v| team_venue(m, subject_key) == Some(v))
        }
    }
}

fn outcome(m: &MatchRecord, team_key: &str) -> Outcome {
    let (us, them) = if normalize_name(&m.home) == team_key {
        (m.score_home, m.score_away)
    } else {
        (m.score_away, m.score_home)
    };
    match us.cmp(&them) {
        std::cmp::Ordering::Greater => Outcome::Win,
        std::cmp::Ordering::Equal => Outcome::Draw,
        std::cmp::Ordering::Less => Outcome::Loss,
    }
}

fn summary(m: &MatchRecord, team_key: &str) -> MatchSummary {
    MatchSummary {
        match_id: m.match_id.clone(),
        kickoff: m.kickoff,
        home: m.home.clone(),
        away: m.away.clone(),
        league: m.league.clone(),
        season: m.season.clone(),
        score_home: m.score_home,
        score_away: m.score_away,
        outcome: outcome(m, team_key),
    }
}

/// Looks a player up by normalized name.
pub fn player_background(store: &StatStore, name: &str) -> Result<PlayerRecord, StatError> {
    let key = normalize_name(name);
    let hits: Vec<&PlayerRecord> = store.players().iter().filter(|p| normalize_name(&p.name) == key).collect();
    match hits.as_slice() {
        [] => Err(StatError::UnknownEntity(name.to_string())),
        [one] => Ok((*one).clone()),
        many => Err(StatError::DuplicateEntity { name: name.to_string(), count: many.len() }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscardReason {
    Duplicate,
    FutureProvenance,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct AnswerPartition {
    pub kept: Vec<AnsweredQuery>,
    pub discarded: Vec<(AnsweredQuery, DiscardReason)>,
}

/// Drops repeated (query, answer) pairs and answers that cite a match
/// kicking off at or after `current_kickoff`. Order of survivors is kept.
pub fn validate_answers(answers: Vec<AnsweredQuery>, current_kickoff: DateTime<Utc>) -> AnswerPartition {
    let mut seen: HashSet<(StatQuery, StatAnswer)> = HashSet::new();
    let mut out = AnswerPartition::default();
    for a in answers {
        if a.provenance.iter().any(|c| c.kickoff >= current_kickoff) {
            out.discarded.push((a, DiscardReason::FutureProvenance));
        } else if !seen.insert((a.query.clone(), a.answer.clone())) {
            out.discarded.push((a, DiscardReason::Duplicate));
        } else {
            out.kept.push(a);
        }
    }
    out
}

impl fmt::Display for Citation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.match_id, format_datetime(&self.kickoff))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::statbase::parse_query;
    use crate::time::parse_datetime;

    fn store() -> StatStore {
        let matches = "match_id,home,away,league,season,kickoff,final_score\n\
            m1,Arsenal,Paris SG,UCL,2016-2017,2016-09-13T18:45:00Z,1-1\n\
            m2,Paris SG,Basel,UCL,2016-2017,2016-10-19T18:45:00Z,3-0\n\
            m3,Basel,Paris SG,UCL,2016-2017,2016-11-01T19:45:00Z,1-2\n\
            m4,Paris SG,Arsenal,UCL,2016-2017,2016-11-22T19:45:00Z,2-2\n";
        let events = "match_id,clock,kind,team,player,method\n\
            m1,1 - 00:40,goal,Paris SG,Edinson Cavani,\n\
            m1,2 - 30:00,goal,Paris SG,Marco Verratti,own_goal\n\
            m2,1 - 10:00,goal,Paris SG,Edinson Cavani,header\n\
            m2,1 - 20:00,goal,Paris SG,Edinson Cavani,penalty\n\
            m2,2 - 05:00,goal,Paris SG,Lucas Moura,\n\
            m2,2 - 06:00,yellow_card,Basel,Marek Suchy,\n\
            m3,1 - 12:00,goal,Paris SG,Edinson Cavani,\n\
            m3,1 - 50:00,goal,Paris SG,Lucas Moura,\n\
            m3,2 - 01:00,goal,Basel,Marc Janko,\n\
            m4,1 - 01:00,goal,Paris SG,Edinson Cavani,\n";
        let players = "name,nationality,height_cm,birthdate\n\
            Edinson Cavani,Uruguay,184,1987-02-14\n\
            Lucas Moura,Brazil,172,1992-08-13\n";
        StatStore::from_csv(matches, events, players).unwrap()
    }

    fn run(q: &str) -> StatAnswer {
        execute(&store(), &parse_query(q).unwrap()).unwrap()
    }

    #[test]
    fn strict_before_excludes_same_day_match() {
        assert_eq!(run(r#"COUNT goals PLAYER "Edinson Cavani" BEFORE 2016-11-22"#), StatAnswer::Count { value: 4 });
        assert_eq!(run(r#"COUNT goals PLAYER "edinson cavani" BEFORE 2016-11-23"#), StatAnswer::Count { value: 5 });
        assert_eq!(
            run(r#"COUNT goals PLAYER "Edinson Cavani" METHOD header BEFORE 2016-11-22"#),
            StatAnswer::Count { value: 1 }
        );
    }

    #[test]
    fn own_goals_credit_the_opponent() {
        assert_eq!(run(r#"COUNT goals TEAM "Arsenal" BEFORE 2016-10-01"#), StatAnswer::Count { value: 1 });
        assert_eq!(run(r#"COUNT goals TEAM "Paris SG" BEFORE 2016-10-01"#), StatAnswer::Count { value: 1 });
        assert_eq!(
            run(r#"COUNT goals PLAYER "Marco Verratti" METHOD own_goal BEFORE 2016-10-01"#),
            StatAnswer::Count { value: 1 }
        );
    }

    #[test]
    fn record_and_last_results() {
        assert_eq!(
            run(r#"RECORD TEAM "Paris SG" SEASON 2016-2017 LEAGUE "UCL" BEFORE 2016-11-22"#),
            StatAnswer::Record { wins: 2, draws: 1, losses: 0 }
        );
        let StatAnswer::Matches { matches } = run(r#"LAST 2 RESULTS TEAM "Paris SG" BEFORE 2016-11-22"#) else {
            panic!()
        };
        let ids: Vec<&str> = matches.iter().map(|m| m.match_id.as_str()).collect();
        assert_eq!(ids, ["m3", "m2"]);
        let StatAnswer::Matches { matches } = run(r#"LIST MATCHES TEAM "Paris SG" VENUE away BEFORE 2016-12-01"#) else {
            panic!()
        };
        let ids: Vec<&str> = matches.iter().map(|m| m.match_id.as_str()).collect();
        assert_eq!(ids, ["m1", "m3"]);
    }

    #[test]
    fn unknown_entities() {
        let s = store();
        let q = parse_query(r#"COUNT goals TEAM "Real Madrid" BEFORE 2017-01-01"#).unwrap();
        assert_eq!(execute(&s, &q), Err(StatError::UnknownEntity("Real Madrid".into())));
        // Basel only appears from October on.
        let q = parse_query(r#"COUNT goals TEAM "Basel" BEFORE 2016-10-01"#).unwrap();
        assert!(matches!(execute(&s, &q), Err(StatError::UnknownEntity(_))));
        let q = parse_query(r#"COUNT fouls PLAYER "Lucas Moura" BEFORE 2010-01-01"#).unwrap();
        assert_eq!(execute(&s, &q), Ok(StatAnswer::Count { value: 0 }));
    }

    #[test]
    fn empty_store_counts_zero_for_known_player() {
        let s = StatStore::from_csv(
            "match_id,home,away,league,season,kickoff,final_score\n",
            "match_id,clock,kind,team,player,method\n",
            "name,nationality,height_cm,birthdate\nX,Y,180,1990-01-01\n",
        )
        .unwrap();
        let q = parse_query(r#"COUNT goals PLAYER "X" BEFORE 2020-01-01"#).unwrap();
        assert_eq!(execute(&s, &q), Ok(StatAnswer::Count { value: 0 }));
    }

    #[test]
    fn background_lookup() {
        let s = store();
        assert_eq!(player_background(&s, "Lucas Moura").unwrap().height_cm, 172);
        assert!(matches!(player_background(&s, "Nobody"), Err(StatError::UnknownEntity(_))));
        let mut players = s.players().to_vec();
        players.push(PlayerRecord { name: "LUCAS MOURA".into(), ..players[1].clone() });
        let dup = StatStore::from_parts(s.matches().to_vec(), s.events().to_vec(), players).unwrap();
        assert!(matches!(player_background(&dup, "Lucas Moura"), Err(StatError::DuplicateEntity { count: 2, .. })));
    }

    #[test]
    fn answer_validation() {
        let s = store();
        let q = parse_query(r#"COUNT goals PLAYER "Edinson Cavani" BEFORE 2016-11-23"#).unwrap();
        let future = execute_with_provenance(&s, &q).unwrap();
        let q2 = parse_query(r#"COUNT goals PLAYER "Lucas Moura" BEFORE 2016-11-22"#).unwrap();
        let ok = execute_with_provenance(&s, &q2).unwrap();
        let current = parse_datetime("2016-11-22T19:45:00Z").unwrap();
        let part = validate_answers(vec![ok.clone(), future, ok.clone()], current);
        assert_eq!(part.kept, vec![ok]);
        assert_eq!(part.discarded[0].1, DiscardReason::FutureProvenance);
        assert_eq!(part.discarded[1].1, DiscardReason::Duplicate);
    }
}
