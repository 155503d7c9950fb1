//! Ten-segment pipeline bundle over Arsenal v Paris SG, with recorded
//! responses from a scripted reasoner.

use std::collections::BTreeSet;
use std::path::Path;
use std::sync::Arc;

use once_cell::sync::Lazy;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use regex::Regex;
use serde_json::json;
use touchline_core::client::{ClientError, ClientRequest, ModelClient, RecordedStore, RecordingClient};
use touchline_core::config::Thresholds;
use touchline_core::event::{MatchLog, PlayerRef, Side, PLAYER_TOKEN, TEAM_TOKEN};
use touchline_core::grounding::AttentionBundle;
use touchline_core::pipeline::run_bundle;
use touchline_core::scene::{build_scene_report, JerseyRecord, ShotSpan, View};

pub struct Segment {
    pub id: &'static str,
    pub clock: &'static str,
    pub label: &'static str,
    pub body: &'static str,
    /// Player the scripted reasoner names; `None` for team queries.
    pub player: Option<&'static str>,
    pub team: Side,
    pub variant: &'static str,
}

pub fn segments() -> Vec<Segment> {
    let seg = |id, clock, label, body, player, team, variant| Segment { id, clock, label, body, player, team, variant };
    vec![
        seg("s01", "1 - 17:40", "goal", "[PLAYER] ([TEAM]) fires a low shot past the goalkeeper to open the scoring.", Some("Edinson Cavani"), Side::Away, "player_query"),
        seg("s02", "1 - 24:10", "foul", "[PLAYER] ([TEAM]) catches his man late and the referee blows for a foul.", Some("Granit Xhaka"), Side::Home, "player_query"),
        seg("s03", "1 - 30:00", "yellow_card", "[PLAYER] ([TEAM]) is booked for pulling back a runner on the break.", Some("Marco Verratti"), Side::Away, "player_query"),
        seg("s04", "1 - 38:20", "corner", "[TEAM] win a corner on the right after a blocked cross.", None, Side::Home, "team_query"),
        seg("s05", "1 - 45:10", "penalty_goal", "[PLAYER] ([TEAM]) sends the goalkeeper the wrong way from the spot.", Some("Olivier Giroud"), Side::Home, "player_query"),
        seg("s06", "2 - 02:00", "free_kick", "[PLAYER] ([TEAM]) curls a free kick from twenty-five yards onto the bar.", Some("Lucas Moura"), Side::Away, "player_query"),
        seg("s07", "2 - 05:00", "own_goal", "[PLAYER] ([TEAM]) stretches to clear and turns the ball into his own net.", Some("Serge Aurier"), Side::Away, "player_query"),
        seg("s08", "2 - 07:00", "offside", "[PLAYER] ([TEAM]) leaves too early and the flag goes up for offside.", Some("Edinson Cavani"), Side::Away, "player_query"),
        seg("s09", "2 - 25:00", "yellow_card", "[PLAYER] ([TEAM]) goes into the book for a cynical trip in midfield.", Some("Francis Coquelin"), Side::Home, "player_query_given_team"),
        seg("s10", "2 - 32:00", "penalty_goal", "[PLAYER] ([TEAM]) drills the penalty into the corner to level the match.", Some("Lucas Moura"), Side::Away, "player_query"),
    ]
}

/// The rejected segment names a player substituted off twenty minutes earlier.
pub fn rejected_segment() -> Segment {
    Segment {
        id: "r01",
        clock: "2 - 40:00",
        label: "foul",
        body: "[PLAYER] ([TEAM]) trips his marker just outside the box.",
        player: Some("Alex Iwobi"),
        team: Side::Home,
        variant: "player_query",
    }
}

const SEASON: &str = "2016-2017";
const LEAGUE: &str = "UEFA Champions League";
const AS_OF: &str = "2016-11-22";

/// Four questions with their query renderings.
fn questions(i: usize, player: Option<&str>, team: &str) -> Vec<(String, String)> {
    let mut out = Vec::new();
    match player {
        Some(p) => {
            out.push((
                format!("How many goals has {p} scored in the {SEASON} season before {AS_OF}?"),
                format!("COUNT goals PLAYER \"{p}\" SEASON {SEASON} BEFORE {AS_OF}"),
            ));
            out.push((
                format!("How many yellow cards has {p} received in the {SEASON} {LEAGUE} season before {AS_OF}?"),
                format!("COUNT yellow_cards PLAYER \"{p}\" SEASON {SEASON} LEAGUE \"{LEAGUE}\" BEFORE {AS_OF}"),
            ));
        }
        None => {
            out.push((
                format!("How many corners has {team} taken in the {SEASON} season before {AS_OF}?"),
                format!("COUNT corners TEAM \"{team}\" SEASON {SEASON} BEFORE {AS_OF}"),
            ));
            out.push((
                format!("How many goals has {team} scored in the {SEASON} {LEAGUE} season before {AS_OF}?"),
                format!("COUNT goals TEAM \"{team}\" SEASON {SEASON} LEAGUE \"{LEAGUE}\" BEFORE {AS_OF}"),
            ));
        }
    }
    out.push((
        format!("What was {team}'s record in the {LEAGUE} up to {AS_OF} during the {SEASON} season?"),
        format!("RECORD TEAM \"{team}\" SEASON {SEASON} LEAGUE \"{LEAGUE}\" BEFORE {AS_OF}"),
    ));
    out.push(match i % 3 {
        0 => (
            format!("How many goals has {team} scored in the {SEASON} season before 2016-12-31?"),
            format!("COUNT goals TEAM \"{team}\" SEASON {SEASON} BEFORE 2016-12-31"),
        ),
        1 => (
            format!("What is {team}'s average ball possession in the {SEASON} season?"),
            format!("COUNT possession TEAM \"{team}\" SEASON {SEASON} BEFORE {AS_OF}"),
        ),
        _ => (
            format!("What were {team}'s last 3 results in the {LEAGUE} before {AS_OF}?"),
            format!("LAST 3 RESULTS TEAM \"{team}\" SEASON {SEASON} LEAGUE \"{LEAGUE}\" BEFORE {AS_OF}"),
        ),
    });
    out
}

enum Reply {
    Fixed(String),
    Refine { c_ea: String },
}

/// Answers by purpose plus a needle that must occur in the prompt.
struct Scripted {
    rules: Vec<(&'static str, String, Reply)>,
}

static SCORE: Lazy<Regex> = Lazy::new(|| Regex::new(r"Current score: ([^.]+)\.").unwrap());

impl ModelClient for Scripted {
    fn complete(&self, request: &ClientRequest) -> Result<String, ClientError> {
        let (_, _, reply) = self
            .rules
            .iter()
            .find(|(purpose, needle, _)| request.purpose.starts_with(purpose) && request.prompt.contains(needle.as_str()))
            .ok_or_else(|| ClientError::BadResponse(format!("no scripted reply for {}", request.purpose)))?;
        Ok(match reply {
            Reply::Fixed(text) => text.clone(),
            Reply::Refine { c_ea } => {
                let score = SCORE.captures(&request.prompt).map(|c| c[1].to_string()).unwrap_or_default();
                format!("{c_ea} The score is {score}.")
            }
        })
    }
}

fn aligned(seg: &Segment, log: &MatchLog) -> String {
    let mut body = seg.body.to_string();
    if let Some(p) = seg.player {
        body = body.replace(PLAYER_TOKEN, p);
    }
    body.replace(TEAM_TOKEN, log.meta.team_name(seg.team))
}

fn rules_for(i: usize, seg: &Segment, log: &MatchLog, rules: &mut Vec<(&'static str, String, Reply)>) {
    let all: Vec<&PlayerRef> = log.lineups.home.iter().chain(&log.lineups.away).collect();
    let answer = match seg.player {
        Some(name) => {
            let hash = |n: &str| {
                let squad = log.lineups.home.iter().chain(&log.lineups.away);
                squad.clone().find(|p| p.name == n).map(PlayerRef::hash).unwrap_or_else(|| n.to_string())
            };
            let gold = hash(name);
            let others: Vec<String> =
                all.iter().map(|p| p.hash()).filter(|h| *h != gold).skip(i * 2 % 20).take(2).collect();
            json!({
                "grounding_segment": format!("{}-{}", 10 + i, 14 + i),
                "answer": gold,
                "top3": [gold, others[0], others[1]],
            })
        }
        None => json!({
            "grounding_segment": format!("{}-{}", 10 + i, 14 + i),
            "answer": if seg.team == Side::Home { "hometeam" } else { "awayteam" },
        }),
    };
    rules.push(("align_", seg.body.to_string(), Reply::Fixed(answer.to_string())));
    let c_ea = aligned(seg, log);
    let team = log.meta.team_name(seg.team);
    let qs = questions(i, seg.player, team);
    let list: Vec<&String> = qs.iter().map(|(q, _)| q).collect();
    rules.push(("generate_questions", c_ea.clone(), Reply::Fixed(serde_json::to_string_pretty(&list).unwrap())));
    for (q, dsl) in qs {
        rules.push(("translate_dsl", format!("Question: {q}"), Reply::Fixed(dsl)));
    }
    rules.push(("refine", c_ea.clone(), Reply::Refine { c_ea }));
}

fn scene(i: usize, seg: &Segment, log: &MatchLog) -> serde_json::Value {
    let color = match seg.team {
        Side::Home => &log.meta.home_color,
        Side::Away => &log.meta.away_color,
    };
    let (spans, views): (Vec<ShotSpan>, Vec<View>) = match seg.player {
        Some(name) => {
            let p = log
                .lineups
                .home
                .iter()
                .chain(&log.lineups.away)
                .find(|p| p.name == name)
                .expect("segment player is in a starting eleven");
            let spans = vec![
                ShotSpan { start: 0, end: 300 },
                ShotSpan { start: 300, end: 450 },
                ShotSpan { start: 450, end: 600 },
                ShotSpan { start: 600, end: 750 },
            ];
            let views = vec![View::Long, View::CloseUp, View::Medium, View::Long];
            let faces: Vec<BTreeSet<PlayerRef>> =
                vec![BTreeSet::new(), BTreeSet::from([p.clone()]), BTreeSet::new(), BTreeSet::new()];
            let action = seg.label.replace('_', " ");
            let jersey = JerseyRecord::new(None, Some(p.number), color.clone(), action).unwrap();
            let jerseys = vec![vec![], vec![], vec![jersey], vec![]];
            let report = build_scene_report(&spans, &views, &faces, &jerseys, None).unwrap();
            return serde_json::to_value(report).unwrap();
        }
        None => (
            vec![ShotSpan { start: 0, end: 400 }, ShotSpan { start: 400, end: 750 }],
            vec![View::Long, if i.is_multiple_of(2) { View::OutOfField } else { View::Long }],
        ),
    };
    serde_json::to_value(build_scene_report(&spans, &views, &[], &[], None).unwrap()).unwrap()
}

fn attention(rng: &mut ChaCha8Rng, peak: usize) -> AttentionBundle {
    let (layers, heads, queries, frames) = (2, 2, 3, 30);
    let mut attention = Vec::with_capacity(layers * heads * queries * frames);
    for _ in 0..layers * heads * queries {
        let mut row: Vec<f64> = (0..frames).map(|_| rng.gen_range(0.2..1.0)).collect();
        row[peak] += 8.0;
        row[peak + 1] += 4.0;
        let total: f64 = row.iter().sum();
        attention.extend(row.iter().map(|v| v / total));
    }
    let query_norms = (0..queries).map(|_| rng.gen_range(0.5..2.0)).collect();
    let bundle = AttentionBundle { layers, heads, queries, frames, attention, query_norms };
    bundle.validate().unwrap();
    bundle
}

fn write_json(path: &Path, value: &impl serde::Serialize) {
    std::fs::write(path, serde_json::to_string_pretty(value).unwrap() + "\n").unwrap();
}

fn spec(seg: &Segment) -> serde_json::Value {
    let mut v = json!({
        "id": seg.id,
        "scene": format!("scenes/{}.json", seg.id),
        "attention": format!("attention/{}.json", seg.id),
        "commentary": { "body": seg.body, "clock": seg.clock, "event_label": seg.label },
        "variant": seg.variant,
    });
    if seg.variant == "player_query_given_team" {
        v["given_team"] = json!(seg.team);
    }
    v
}

/// Writes the bundle, its inputs and the recorded responses under `dir`.
pub fn write(dir: &Path, log: &MatchLog, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sub in ["scenes", "attention"] {
        std::fs::create_dir_all(dir.join(sub)).unwrap();
    }
    std::fs::write(dir.join("match_log.json"), log.to_json_pretty() + "\n").unwrap();

    let segs = segments();
    let rejected = rejected_segment();
    let mut rules = Vec::new();
    for (i, seg) in segs.iter().chain([&rejected]).enumerate() {
        write_json(&dir.join(format!("scenes/{}.json", seg.id)), &scene(i, seg, log));
        write_json(&dir.join(format!("attention/{}.json", seg.id)), &attention(&mut rng, 8 + (i * 3) % 18));
        rules_for(i, seg, log, &mut rules);
    }
    let bundle = |segments: Vec<serde_json::Value>| {
        json!({ "match_log": "match_log.json", "stats_dir": "../stats", "answer_format": "json", "segments": segments })
    };
    write_json(&dir.join("bundle.json"), &bundle(segs.iter().map(spec).collect()));
    write_json(&dir.join("bundle_rejected.json"), &bundle(vec![spec(&rejected)]));

    let store_path = dir.join("responses.json");
    let _ = std::fs::remove_file(&store_path);
    let store = Arc::new(RecordedStore::open(&store_path).unwrap());
    let client = RecordingClient::new(Scripted { rules }, store.clone());
    let thresholds = Thresholds::default();
    for (name, expect_ok) in [("bundle.json", true), ("bundle_rejected.json", false)] {
        let results = run_bundle(dir.join(name), &client, &thresholds, 1).expect("bundle loads");
        for r in &results {
            assert_eq!(r.is_ok(), expect_ok, "{name}: {r:?}");
        }
    }
    store.save().unwrap();
}
