//! Query AST, recursive-descent parser and printer.
//!
//! ```text
//! query   := COUNT stat (PLAYER|TEAM) name clause* BEFORE instant
//!          | LIST MATCHES TEAM name clause* BEFORE instant
//!          | RECORD TEAM name clause* BEFORE instant
//!          | LAST n RESULTS TEAM name clause* BEFORE instant
//! clause  := METHOD method | SEASON season | LEAGUE name | VENUE (home|away) | FOR name
//! ```
//!
//! Keywords are case-insensitive, names are double-quoted with `\"` and `\\`
//! escapes, and each clause may appear at most once in any order.

use std::fmt;
use std::str::FromStr;

use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use super::StatError;
use crate::time::{format_datetime, parse_datetime};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stat {
    Goals,
    Assists,
    YellowCards,
    RedCards,
    CardsAny,
    Fouls,
    Corners,
    PenaltiesAwarded,
    FreeKicks,
}

impl Stat {
    pub const ALL: [Stat; 9] = [
        Stat::Goals,
        Stat::Assists,
        Stat::YellowCards,
        Stat::RedCards,
        Stat::CardsAny,
        Stat::Fouls,
        Stat::Corners,
        Stat::PenaltiesAwarded,
        Stat::FreeKicks,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Stat::Goals => "goals",
            Stat::Assists => "assists",
            Stat::YellowCards => "yellow_cards",
            Stat::RedCards => "red_cards",
            Stat::CardsAny => "cards_any",
            Stat::Fouls => "fouls",
            Stat::Corners => "corners",
            Stat::PenaltiesAwarded => "penalties_awarded",
            Stat::FreeKicks => "free_kicks",
        }
    }
}

impl FromStr for Stat {
    type Err = StatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        Stat::ALL
            .into_iter()
            .find(|st| st.as_str() == lower)
            .ok_or_else(|| StatError::UnsupportedStat(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GoalMethod {
    Any,
    Penalty,
    Header,
    OwnGoal,
}

impl GoalMethod {
    pub const ALL: [GoalMethod; 4] = [GoalMethod::Any, GoalMethod::Penalty, GoalMethod::Header, GoalMethod::OwnGoal];

    pub fn as_str(self) -> &'static str {
        match self {
            GoalMethod::Any => "any",
            GoalMethod::Penalty => "penalty",
            GoalMethod::Header => "header",
            GoalMethod::OwnGoal => "own_goal",
        }
    }
}

impl FromStr for GoalMethod {
    type Err = StatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.trim().to_ascii_lowercase();
        GoalMethod::ALL
            .into_iter()
            .find(|m| m.as_str() == lower)
            .ok_or_else(|| StatError::InvalidStore(format!("unknown goal method {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Venue {
    Home,
    Away,
}

impl Venue {
    pub fn as_str(self) -> &'static str {
        match self {
            Venue::Home => "home",
            Venue::Away => "away",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Subject {
    Player { name: String },
    Team { name: String },
}

impl Subject {
    pub fn name(&self) -> &str {
        match self {
            Subject::Player { name } | Subject::Team { name } => name,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "verb", rename_all = "snake_case")]
pub enum Verb {
    Count { stat: Stat, method: Option<GoalMethod> },
    ListMatches,
    TeamRecord,
    LastResults { n: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StatQuery {
    #[serde(flatten)]
    pub verb: Verb,
    pub subject: Subject,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub season: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub league: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub venue: Option<Venue>,
    /// Restricts a player's events to those made for this team.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub for_team: Option<String>,
    #[serde(with = "crate::time::serde_datetime")]
    pub as_of: DateTime<Utc>,
}

impl fmt::Display for StatQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_query(self))
    }
}

impl FromStr for StatQuery {
    type Err = StatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_query(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Word(String),
    Quoted(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, message: impl Into<String>) -> StatError {
    StatError::SyntaxError { pos, message: message.into() }
}

fn lex(text: &str) -> Result<Vec<Token>, StatError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
        } else if c == '"' {
            chars.next();
            let mut s = String::new();
            loop {
                match chars.next() {
                    None => return Err(syntax(pos, "unterminated string")),
                    Some((_, '"')) => break,
                    Some((epos, '\\')) => match chars.next() {
                        Some((_, ch @ ('"' | '\\'))) => s.push(ch),
                        _ => return Err(syntax(epos, "bad escape in string")),
                    },
                    Some((_, ch)) => s.push(ch),
                }
            }
            out.push(Token { tok: Tok::Quoted(s), pos });
        } else {
            let mut s = String::new();
            while let Some(&(_, ch)) = chars.peek() {
                if ch.is_whitespace() || ch == '"' {
                    break;
                }
                s.push(ch);
                chars.next();
            }
            out.push(Token { tok: Tok::Word(s), pos });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    i: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.toks.get(self.i)
    }

    fn pos(&self) -> usize {
        self.peek().map_or(self.end, |t| t.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.toks.get(self.i).cloned();
        self.i += 1;
        t
    }

    fn keyword(&mut self, kw: &str) -> Result<(), StatError> {
        let pos = self.pos();
        match self.next() {
            Some(Token { tok: Tok::Word(w), .. }) if w.eq_ignore_ascii_case(kw) => Ok(()),
            Some(_) => Err(syntax(pos, format!("expected {kw}"))),
            None => Err(syntax(pos, format!("expected {kw}, found end of query"))),
        }
    }

    fn word(&mut self, what: &str) -> Result<(usize, String), StatError> {
        let pos = self.pos();
        match self.next() {
            Some(Token { tok: Tok::Word(w), pos }) => Ok((pos, w)),
            Some(_) => Err(syntax(pos, format!("expected {what}, found a quoted string"))),
            None => Err(syntax(pos, format!("expected {what}, found end of query"))),
        }
    }

    fn quoted(&mut self, what: &str) -> Result<String, StatError> {
        let pos = self.pos();
        match self.next() {
            Some(Token { tok: Tok::Quoted(s), .. }) => Ok(s),
            Some(_) => Err(syntax(pos, format!("expected quoted {what}"))),
            None => Err(syntax(pos, format!("expected quoted {what}, found end of query"))),
        }
    }

    fn word_or_quoted(&mut self, what: &str) -> Result<String, StatError> {
        let pos = self.pos();
        match self.next() {
            Some(Token { tok: Tok::Word(s) | Tok::Quoted(s), .. }) => Ok(s),
            None => Err(syntax(pos, format!("expected {what}, found end of query"))),
        }
    }
}

/// Parses one query. A missing `BEFORE` clause is always an error.
pub fn parse_query(text: &str) -> Result<StatQuery, StatError> {
    let mut p = Parser { toks: lex(text)?, i: 0, end: text.len() };
    let (pos, head) = p.word("COUNT, LIST, RECORD or LAST")?;
    let verb = match head.to_ascii_uppercase().as_str() {
        "COUNT" => {
            let (_, stat) = p.word("statistic")?;
            Verb::Count { stat: stat.parse()?, method: None }
        }
        "LIST" => {
            p.keyword("MATCHES")?;
            Verb::ListMatches
        }
        "RECORD" => Verb::TeamRecord,
        "LAST" => {
            let (npos, n) = p.word("result count")?;
            let n: u32 = n.parse().map_err(|_| syntax(npos, "expected a positive integer"))?;
            if n == 0 {
                return Err(syntax(npos, "result count must be positive"));
            }
            p.keyword("RESULTS")?;
            Verb::LastResults { n }
        }
        _ => return Err(syntax(pos, format!("unknown query verb {head:?}"))),
    };

    let (spos, subject_kw) = p.word("PLAYER or TEAM")?;
    let subject = match subject_kw.to_ascii_uppercase().as_str() {
        "PLAYER" if matches!(verb, Verb::Count { .. }) => Subject::Player { name: p.quoted("player name")? },
        "PLAYER" => return Err(syntax(spos, "only COUNT queries accept a PLAYER subject")),
        "TEAM" => Subject::Team { name: p.quoted("team name")? },
        _ => return Err(syntax(spos, "expected PLAYER or TEAM")),
    };

    let mut q = StatQuery {
        verb,
        subject,
        season: None,
        league: None,
        venue: None,
        for_team: None,
        as_of: DateTime::<Utc>::MIN_UTC,
    };
    let mut method = None;
    loop {
        let cpos = p.pos();
        let Some(Token { tok: Tok::Word(kw), .. }) = p.next() else {
            if p.i > p.toks.len() {
                return Err(StatError::MissingBefore);
            }
            return Err(syntax(cpos, "expected a clause keyword"));
        };
        let dup = |set: bool| if set { Err(syntax(cpos, format!("duplicate {} clause", kw.to_ascii_uppercase()))) } else { Ok(()) };
        match kw.to_ascii_uppercase().as_str() {
            "METHOD" => {
                dup(method.is_some())?;
                if !matches!(q.verb, Verb::Count { stat: Stat::Goals, .. }) {
                    return Err(syntax(cpos, "METHOD applies only to COUNT goals"));
                }
                let (mpos, m) = p.word("goal method")?;
                method = Some(m.parse::<GoalMethod>().map_err(|_| syntax(mpos, format!("unknown goal method {m:?}")))?);
            }
            "SEASON" => {
                dup(q.season.is_some())?;
                q.season = Some(p.word_or_quoted("season")?);
            }
            "LEAGUE" => {
                dup(q.league.is_some())?;
                q.league = Some(p.quoted("league")?);
            }
            "VENUE" => {
                dup(q.venue.is_some())?;
                let (vpos, v) = p.word("home or away")?;
                q.venue = Some(match v.to_ascii_lowercase().as_str() {
                    "home" => Venue::Home,
                    "away" => Venue::Away,
                    _ => return Err(syntax(vpos, "expected home or away")),
                });
            }
            "FOR" => {
                dup(q.for_team.is_some())?;
                if !matches!(q.subject, Subject::Player { .. }) {
                    return Err(syntax(cpos, "FOR applies only to PLAYER subjects"));
                }
                q.for_team = Some(p.quoted("team name")?);
            }
            "BEFORE" => {
                let ipos = p.pos();
                let raw = p.word_or_quoted("date")?;
                q.as_of = parse_datetime(&raw).ok_or_else(|| syntax(ipos, format!("invalid date {raw:?}")))?;
                if p.peek().is_some() {
                    return Err(syntax(p.pos(), "BEFORE must be the last clause"));
                }
                break;
            }
            _ => return Err(syntax(cpos, format!("unknown clause {kw:?}"))),
        }
    }
    if let Verb::Count { method: m, .. } = &mut q.verb {
        *m = method;
    }
    Ok(q)
}

fn quote(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

fn is_bare_word(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_ascii_alphanumeric() || "-_./".contains(c))
}

/// Canonical text form; `parse_query(&print_query(q)) == q`.
pub fn print_query(q: &StatQuery) -> String {
    let mut parts: Vec<String> = Vec::new();
    match q.verb {
        Verb::Count { stat, .. } => parts.extend(["COUNT".into(), stat.as_str().into()]),
        Verb::ListMatches => parts.push("LIST MATCHES".into()),
        Verb::TeamRecord => parts.push("RECORD".into()),
        Verb::LastResults { n } => parts.push(format!("LAST {n} RESULTS")),
    }
    match &q.subject {
        Subject::Player { name } => parts.push(format!("PLAYER {}", quote(name))),
        Subject::Team { name } => parts.push(format!("TEAM {}", quote(name))),
    }
    if let Verb::Count { method: Some(m), .. } = q.verb {
        parts.push(format!("METHOD {}", m.as_str()));
    }
    if let Some(team) = &q.for_team {
        parts.push(format!("FOR {}", quote(team)));
    }
    if let Some(season) = &q.season {
        let s = if is_bare_word(season) { season.clone() } else { quote(season) };
        parts.push(format!("SEASON {s}"));
    }
    if let Some(league) = &q.league {
        parts.push(format!("LEAGUE {}", quote(league)));
    }
    if let Some(v) = q.venue {
        parts.push(format!("VENUE {}", v.as_str()));
    }
    parts.push(format!("BEFORE {}", format_datetime(&q.as_of)));
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_player_goal_count() {
        let q = parse_query(r#"COUNT goals PLAYER "Alexis Sanchez" SEASON 2016-2017 BEFORE 2016-11-22"#).unwrap();
        assert_eq!(q.verb, Verb::Count { stat: Stat::Goals, method: None });
        assert_eq!(q.subject, Subject::Player { name: "Alexis Sanchez".into() });
        assert_eq!(q.season.as_deref(), Some("2016-2017"));
        assert_eq!(q.as_of, parse_datetime("2016-11-22").unwrap());
    }

    #[test]
    fn missing_before_is_an_error() {
        assert_eq!(parse_query(r#"COUNT goals TEAM "X""#), Err(StatError::MissingBefore));
        assert_eq!(parse_query(r#"COUNT goals TEAM "X" SEASON 2016"#), Err(StatError::MissingBefore));
    }

    #[test]
    fn keywords_are_case_insensitive_and_clauses_unordered() {
        let a = parse_query(r#"last 3 results team "Paris SG" league "UEFA Champions League" season 2016-2017 before 2017-03-07"#).unwrap();
        let b = parse_query(r#"LAST 3 RESULTS TEAM "Paris SG" SEASON 2016-2017 LEAGUE "UEFA Champions League" BEFORE 2017-03-07"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.verb, Verb::LastResults { n: 3 });
    }

    #[test]
    fn syntax_errors_carry_positions() {
        match parse_query(r#"COUNT goals TEAM Arsenal BEFORE 2016-01-01"#) {
            Err(StatError::SyntaxError { pos, .. }) => assert_eq!(pos, 17),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_query("COUNT goals TEAM \"X\" BEFORE 2016-01-01 SEASON 1"), Err(StatError::SyntaxError { .. })));
        assert!(matches!(parse_query("COUNT goals TEAM \"X\" SEASON 1 SEASON 2 BEFORE 2016-01-01"), Err(StatError::SyntaxError { .. })));
        assert!(matches!(parse_query("RECORD PLAYER \"X\" BEFORE 2016-01-01"), Err(StatError::SyntaxError { .. })));
        assert!(matches!(parse_query("COUNT fouls TEAM \"X\" METHOD header BEFORE 2016-01-01"), Err(StatError::SyntaxError { .. })));
        assert!(matches!(parse_query("LAST 0 RESULTS TEAM \"X\" BEFORE 2016-01-01"), Err(StatError::SyntaxError { .. })));
        assert!(matches!(parse_query("COUNT goals TEAM \"X BEFORE 2016-01-01"), Err(StatError::SyntaxError { .. })));
    }

    #[test]
    fn unknown_stat_is_unsupported() {
        assert_eq!(
            parse_query(r#"COUNT possession TEAM "Real Madrid" BEFORE 2015-01-01"#),
            Err(StatError::UnsupportedStat("possession".into()))
        );
    }

    #[test]
    fn printer_escapes_and_round_trips() {
        let q = StatQuery {
            verb: Verb::Count { stat: Stat::Goals, method: Some(GoalMethod::Header) },
            subject: Subject::Player { name: r#"A "Quoted" \ Name"#.into() },
            season: Some("2015 spring".into()),
            league: Some("Premier League".into()),
            venue: Some(Venue::Away),
            for_team: Some("Chelsea".into()),
            as_of: parse_datetime("2016-02-02T20:00:00Z").unwrap(),
        };
        let text = print_query(&q);
        assert!(text.ends_with("BEFORE 2016-02-02T20:00:00Z"));
        assert_eq!(parse_query(&text).unwrap(), q);
    }
}
