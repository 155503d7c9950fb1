use std::ops::Range;

use once_cell::sync::Lazy;
use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::event::{Clock, EventKind, MatchEvent, MatchLog, Side};
use crate::statbase::normalize_name;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    Scoreline,
    OrdinalEventCount,
    ExternalStat,
}

/// Event categories a count phrase can refer to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventFamily {
    Goal,
    YellowCard,
    RedCard,
    Card,
    Corner,
    Foul,
    FreeKick,
    Penalty,
    Offside,
    Substitution,
}

impl EventFamily {
    fn from_noun(noun: &str) -> Option<Self> {
        let n = noun.to_lowercase();
        let n = n.as_str();
        Some(if n.starts_with("yellow") || n.starts_with("booking") || n.starts_with("caution") {
            EventFamily::YellowCard
        } else if n.starts_with("red") {
            EventFamily::RedCard
        } else if n.starts_with("card") {
            EventFamily::Card
        } else if n.starts_with("goal") {
            EventFamily::Goal
        } else if n.starts_with("corner") {
            EventFamily::Corner
        } else if n.starts_with("foul") {
            EventFamily::Foul
        } else if n.starts_with("free") {
            EventFamily::FreeKick
        } else if n.starts_with("penalt") {
            EventFamily::Penalty
        } else if n.starts_with("offside") {
            EventFamily::Offside
        } else if n.starts_with("substitution") {
            EventFamily::Substitution
        } else {
            return None;
        })
    }

    pub fn matches(self, kind: EventKind) -> bool {
        match self {
            EventFamily::Goal => kind.is_goal(),
            EventFamily::YellowCard => kind == EventKind::YellowCard,
            EventFamily::RedCard => kind == EventKind::RedCard,
            EventFamily::Card => kind.is_card(),
            EventFamily::Corner => kind == EventKind::Corner,
            EventFamily::Foul => kind == EventKind::Foul,
            EventFamily::FreeKick => kind == EventKind::FreeKick,
            EventFamily::Penalty => kind == EventKind::PenaltyAwarded,
            EventFamily::Offside => kind == EventKind::Offside,
            EventFamily::Substitution => kind == EventKind::Substitution,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "scope", content = "name", rename_all = "snake_case")]
pub enum CountScope {
    Match,
    Team(Side),
    /// Surname or full name as written in the commentary.
    Player(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ClaimPayload {
    Scoreline { first: u32, second: u32 },
    EventCount { count: u32, event: EventFamily, scope: CountScope },
    ExternalStat { query: String, claimed: Value },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub kind: ClaimKind,
    pub payload: ClaimPayload,
    /// Byte range of the claim in the commentary body.
    pub span: (usize, usize),
    pub text: String,
}

impl Claim {
    fn new(payload: ClaimPayload, body: &str, span: Range<usize>) -> Self {
        let kind = match payload {
            ClaimPayload::Scoreline { .. } => ClaimKind::Scoreline,
            ClaimPayload::EventCount { .. } => ClaimKind::OrdinalEventCount,
            ClaimPayload::ExternalStat { .. } => ClaimKind::ExternalStat,
        };
        Self { kind, payload, text: body[span.clone()].to_string(), span: (span.start, span.end) }
    }

    pub fn external(query: impl Into<String>, claimed: Value, body: &str, text: Option<&str>) -> Self {
        let span = text.and_then(|t| body.find(t).map(|s| s..s + t.len())).unwrap_or(0..0);
        let mut claim = Claim::new(ClaimPayload::ExternalStat { query: query.into(), claimed }, body, span);
        if claim.text.is_empty() {
            claim.text = text.unwrap_or_default().to_string();
        }
        claim
    }
}

/// The event a commentary line describes, plus the two team names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventContext {
    pub home: String,
    pub away: String,
    pub clock: Clock,
    pub team: Option<Side>,
    pub actor: Option<String>,
}

impl EventContext {
    /// Looks up the logged event at `clock`, preferring one whose kind
    /// matches `label`.
    pub fn from_log(log: &MatchLog, clock: Clock, label: Option<&str>) -> Self {
        let kind = label.and_then(EventKind::from_label).filter(|k| *k != EventKind::Commentary);
        let at_clock = |e: &&MatchEvent| e.clock() == clock && e.kind != EventKind::Commentary;
        let event = kind
            .and_then(|k| log.events.iter().filter(at_clock).find(|e| e.kind == k))
            .or_else(|| log.events.iter().find(at_clock));
        Self {
            home: log.meta.home.clone(),
            away: log.meta.away.clone(),
            clock,
            team: event.map(|e| e.team),
            actor: event.and_then(|e| e.actor.as_ref()).map(|p| p.name.clone()),
        }
    }

    /// Full names plus distinctive last words ("Leverkusen" for "Bayer Leverkusen").
    fn team_aliases(&self) -> Vec<(String, Side)> {
        let mut out = vec![(self.home.clone(), Side::Home), (self.away.clone(), Side::Away)];
        let last = |name: &str| name.split_whitespace().last().filter(|w| w.chars().count() >= 4).map(str::to_string);
        match (last(&self.home), last(&self.away)) {
            (Some(h), Some(a)) if h == a => {}
            (h, a) => {
                out.extend(h.map(|h| (h, Side::Home)));
                out.extend(a.map(|a| (a, Side::Away)));
            }
        }
        out
    }

    fn team_of(&self, word: &str) -> Option<Side> {
        self.team_aliases().into_iter().find(|(alias, _)| alias.eq_ignore_ascii_case(word)).map(|(_, s)| s)
    }

    /// Side named closest before `end` within `text`.
    fn last_team_mention(&self, text: &str) -> Option<Side> {
        let mut best: Option<(usize, Side)> = None;
        for (alias, side) in self.team_aliases() {
            for (pos, _) in text.match_indices(alias.as_str()) {
                let before_ok = text[..pos].chars().next_back().is_none_or(|c| !c.is_alphanumeric());
                let after_ok = text[pos + alias.len()..].chars().next().is_none_or(|c| !c.is_alphanumeric());
                if before_ok && after_ok && best.is_none_or(|(p, _)| pos + alias.len() > p) {
                    best = Some((pos + alias.len(), side));
                }
            }
        }
        best.map(|(_, s)| s)
    }
}

const NOUN: &str = r"yellow cards?|yellows|bookings?|cautions?|red cards?|cards?|goals?|corner kicks?|corners?|fouls?|free[- ]kicks?|penalt(?:y|ies)|offsides?|substitutions?";

static SCORELINE: Lazy<Regex> = Lazy::new(|| Regex::new(r"\b(\d{1,2})\s*[-–]\s*(\d{1,2})\b").unwrap());
static SCORE_WORDS: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)\b(?:scores?|scored|scoreline|lead|leads|leading|led|trail|trails|trailing|level|remains?|stands?|standing|ahead|behind|victory|win|wins|winning|advantage|deficit|extends?|extending|makes? it)\b").unwrap()
});
static ORDINAL: Lazy<Regex> = Lazy::new(|| {
    Regex::new(r"(?i)\b(first|second|third|fourth|forth|fifth|sixth|seventh|eighth|ninth|tenth|\d{1,2}(?:st|nd|rd|th))\b").unwrap()
});
static CARDINAL: Lazy<Regex> = Lazy::new(|| {
    Regex::new(&format!(r"(?i)\b(two|three|four|five|six|seven|eight|nine|ten|\d{{1,2}})\s+(?:({NOUN})|[a-z]+\s+({NOUN}))\b")).unwrap()
});
static NOUN_RE: Lazy<Regex> = Lazy::new(|| Regex::new(&format!(r"(?i)\b(?:{NOUN})\b")).unwrap());
static POSSESSIVE: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?:^|\s)([\p{Lu}][\p{L}\-]+)['’]s\s+$").unwrap());
static PRONOUN: Lazy<Regex> = Lazy::new(|| Regex::new(r"(?i)(?:^|\s)(their|his|its)\s+$").unwrap());
static WORD: Lazy<Regex> = Lazy::new(|| Regex::new(r"[\p{L}\d'’\-]+").unwrap());

/// Words after an ordinal that make it a time or standings reference.
const ORDINAL_STOP: &[&str] = &["half", "minute", "minutes", "min", "season", "round", "leg", "time", "place", "period", "attempt"];
/// Words after a count that turn it into a margin ("two goals down").
const MARGIN: &[&str] = &["down", "up", "behind", "ahead", "clear"];
/// Words that move a count outside the current match.
const OTHER_SCOPE: &[&str] = &["season", "campaign", "career", "competition", "tournament", "league"];

fn ordinal_value(word: &str) -> Option<u32> {
    let w = word.to_lowercase();
    let n = match w.as_str() {
        "first" => 1,
        "second" => 2,
        "third" => 3,
        "fourth" | "forth" => 4,
        "fifth" => 5,
        "sixth" => 6,
        "seventh" => 7,
        "eighth" => 8,
        "ninth" => 9,
        "tenth" => 10,
        _ => return w.trim_end_matches(|c: char| c.is_alphabetic()).parse().ok(),
    };
    Some(n)
}

fn cardinal_value(word: &str) -> Option<u32> {
    let w = word.to_lowercase();
    let n = match w.as_str() {
        "two" => 2,
        "three" => 3,
        "four" => 4,
        "five" => 5,
        "six" => 6,
        "seven" => 7,
        "eight" => 8,
        "nine" => 9,
        "ten" => 10,
        _ => return w.parse().ok(),
    };
    Some(n)
}

/// Sentence byte ranges; splits after `.`, `!` or `?` followed by whitespace.
fn sentences(body: &str) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut chars = body.char_indices().peekable();
    while let Some((i, c)) = chars.next() {
        if matches!(c, '.' | '!' | '?') && chars.peek().is_none_or(|(_, n)| n.is_whitespace()) {
            out.push(start..i + c.len_utf8());
            start = i + c.len_utf8();
        }
    }
    if !body[start..].trim().is_empty() {
        out.push(start..body.len());
    }
    out
}

fn next_words(text: &str, n: usize) -> Vec<String> {
    let clause = text.split([',', ';', ':', '—', '(']).next().unwrap_or("");
    WORD.find_iter(clause).take(n).map(|m| m.as_str().to_lowercase()).collect()
}

fn scope_for(prefix: &str, ctx: &EventContext) -> Option<CountScope> {
    if let Some(cap) = PRONOUN.captures(prefix) {
        return match cap[1].to_lowercase().as_str() {
            "his" => ctx.actor.clone().map(CountScope::Player),
            _ => ctx.team.map(CountScope::Team),
        };
    }
    let trimmed = prefix.trim_end();
    for (alias, side) in ctx.team_aliases() {
        if [format!("{alias}'s"), format!("{alias}’s")].iter().any(|p| trimmed.ends_with(p.as_str())) {
            return Some(CountScope::Team(side));
        }
    }
    if let Some(cap) = POSSESSIVE.captures(prefix) {
        let name = &cap[1];
        return Some(match ctx.team_of(name) {
            Some(side) => CountScope::Team(side),
            None => CountScope::Player(name.to_string()),
        });
    }
    Some(ctx.last_team_mention(prefix).map_or(CountScope::Match, CountScope::Team))
}

fn is_other_scope(rest: &str) -> bool {
    WORD.find_iter(rest).take(8).any(|m| OTHER_SCOPE.contains(&m.as_str().to_lowercase().as_str()))
}

/// Rule-based extraction of scorelines and event counts from one commentary body.
pub fn extract_claims(body: &str, ctx: &EventContext) -> Vec<Claim> {
    let mut claims = Vec::new();
    for sentence in sentences(body) {
        let text = &body[sentence.clone()];
        let base = sentence.start;

        if SCORE_WORDS.is_match(text) {
            for cap in SCORELINE.captures_iter(text) {
                let m = cap.get(0).unwrap();
                let before = &text[..m.start()];
                let after = &text[m.end()..];
                let formation = before.ends_with('-') || after.starts_with('-');
                let timing = next_words(after, 1).first().is_some_and(|w| w.starts_with("min"));
                if formation || timing {
                    continue;
                }
                let (Ok(first), Ok(second)) = (cap[1].parse(), cap[2].parse()) else { continue };
                claims.push(Claim::new(ClaimPayload::Scoreline { first, second }, body, base + m.start()..base + m.end()));
            }
        }

        for m in ORDINAL.find_iter(text) {
            let after = &text[m.end()..];
            let following = next_words(after, 4);
            if following.first().is_some_and(|w| ORDINAL_STOP.contains(&w.as_str())) || is_other_scope(after) {
                continue;
            }
            let Some(count) = ordinal_value(m.as_str()) else { continue };
            let forward = following.join(" ");
            let noun = NOUN_RE.find(&forward).map(|n| n.as_str().to_string()).or_else(|| {
                let prefix = &text[..m.start()];
                let words: Vec<_> = WORD.find_iter(prefix).collect();
                let from = words.len().saturating_sub(6);
                let window = words.get(from).map_or("", |w| &prefix[w.start()..]);
                NOUN_RE.find_iter(window).last().map(|n| n.as_str().to_string())
            });
            let Some(event) = noun.as_deref().and_then(EventFamily::from_noun) else { continue };
            let Some(scope) = scope_for(&text[..m.start()], ctx) else { continue };
            let end = NOUN_RE.find(after).filter(|n| after[..n.start()].split_whitespace().count() <= 3).map_or(m.end(), |n| m.end() + n.end());
            claims.push(Claim::new(ClaimPayload::EventCount { count, event, scope }, body, base + m.start()..base + end));
        }

        for cap in CARDINAL.captures_iter(text) {
            let m = cap.get(0).unwrap();
            let after = &text[m.end()..];
            if next_words(after, 1).first().is_some_and(|w| MARGIN.contains(&w.as_str())) || is_other_scope(after) {
                continue;
            }
            let noun = cap.get(2).or(cap.get(3)).unwrap().as_str();
            let (Some(count), Some(event)) = (cardinal_value(&cap[1]), EventFamily::from_noun(noun)) else { continue };
            let Some(scope) = scope_for(&text[..m.start()], ctx) else { continue };
            claims.push(Claim::new(ClaimPayload::EventCount { count, event, scope }, body, base + m.start()..base + m.end()));
        }
    }
    claims.sort_by_key(|c| c.span);
    claims
}

/// Whether `name` (as written) refers to the full player name `full`.
pub(crate) fn names_player(name: &str, full: &str) -> bool {
    let name = normalize_name(name);
    let full = normalize_name(full);
    full == name || full.split_whitespace().any(|w| w == name)
}
