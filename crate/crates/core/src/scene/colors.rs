use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::event::{PlayerRef, Side};

const STOPWORDS: &[&str] = &[
    "a", "accents", "and", "color", "colored", "colors", "colour", "coloured", "colours", "in",
    "jersey", "jerseys", "kit", "kits", "on", "plus", "shirt", "shirts", "shorts", "sleeves",
    "stripe", "striped", "stripes", "hoops", "hooped", "the", "trim", "with", "mostly", "mainly",
];

const MODIFIERS: &[&str] = &["light", "dark", "pale", "deep", "bright", "royal"];

const COLOR_WORDS: &[&str] = &[
    "black", "blue", "brown", "gold", "gray", "green", "maroon", "orange", "pink", "purple", "red",
    "silver", "white", "yellow", "teal", "turquoise", "cyan", "violet", "beige", "cream",
];

fn synonym(token: &str) -> &[&'static str] {
    match token {
        "grey" | "greys" | "grays" => &["gray"],
        "scarlet" | "crimson" | "reds" => &["red"],
        "claret" | "burgundy" | "maroons" => &["maroon"],
        "navy" => &["dark", "blue"],
        "sky" => &["light"],
        "golden" => &["gold"],
        "blues" => &["blue"],
        "whites" => &["white"],
        "blacks" => &["black"],
        "greens" => &["green"],
        "yellows" => &["yellow"],
        "violet" => &["purple"],
        "cyan" | "turquoise" => &["teal"],
        _ => &[],
    }
}

/// Order-insensitive set of colour terms, e.g. `{blue, red}` or `{light blue}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CanonicalColor(BTreeSet<String>);

impl CanonicalColor {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    fn hues(&self) -> BTreeSet<&str> {
        self.0.iter().map(|t| t.rsplit(' ').next().unwrap_or(t)).collect()
    }
}

impl fmt::Display for CanonicalColor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<&str> = self.terms().collect();
        f.write_str(&terms.join(" and "))
    }
}

impl Serialize for CanonicalColor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CanonicalColor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(normalize_color(&String::deserialize(d)?))
    }
}

/// Lowercases, tokenizes, maps synonyms, binds shade modifiers to the
/// following hue and drops filler words. Idempotent on its own rendering.
pub fn normalize_color(text: &str) -> CanonicalColor {
    let lowered = text.to_lowercase();
    let mut tokens: Vec<&str> = Vec::new();
    for raw in lowered.split(|c: char| !c.is_alphabetic()).filter(|t| !t.is_empty()) {
        let mapped = synonym(raw);
        if mapped.is_empty() {
            tokens.push(raw);
        } else {
            tokens.extend_from_slice(mapped);
        }
    }
    let mut terms = BTreeSet::new();
    let mut i = 0;
    while i < tokens.len() {
        let tok = tokens[i];
        if MODIFIERS.contains(&tok) {
            if let Some(next) = tokens.get(i + 1).filter(|n| COLOR_WORDS.contains(n)) {
                // "royal blue" is plain blue.
                if tok == "royal" {
                    terms.insert((*next).to_string());
                } else {
                    terms.insert(format!("{tok} {next}"));
                }
                i += 2;
                continue;
            }
        } else if !STOPWORDS.contains(&tok) {
            terms.insert(tok.to_string());
        }
        i += 1;
    }
    CanonicalColor(terms)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorClaim {
    pub color: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub number: Option<u8>,
}

impl ColorClaim {
    pub fn new(color: impl Into<String>, number: Option<u8>) -> Self {
        Self { color: color.into(), number }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColorSource {
    /// Claims closest to the side's traditional colour.
    Observed,
    /// Decided by a jersey number present in only one lineup.
    JerseyNumber,
    /// The only candidate left once the other side was settled.
    Elimination,
    /// No claim for this side; its traditional colour is used.
    Traditional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeamColors {
    pub home: CanonicalColor,
    pub away: CanonicalColor,
    pub home_source: ColorSource,
    pub away_source: ColorSource,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbiguityReport {
    pub reason: String,
    pub candidates: Vec<CanonicalColor>,
    pub unassigned: Vec<ColorClaim>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ColorResolution {
    Resolved(TeamColors),
    /// Needs manual resolution.
    Ambiguous(AmbiguityReport),
}

fn affinity(claim: &CanonicalColor, known: &CanonicalColor) -> u8 {
    if claim == known {
        2
    } else if !claim.hues().is_disjoint(&known.hues()) {
        1
    } else {
        0
    }
}

/// Assigns observed jersey colours to the two sides.
///
/// Each claim goes to the side whose traditional colour it resembles most.
/// Claims that resemble both sides equally are settled by a jersey number
/// that exists in exactly one lineup, then by elimination.
pub fn resolve_team_colors(
    claims: &[ColorClaim],
    home_lineup: &[PlayerRef],
    away_lineup: &[PlayerRef],
    known_home: &str,
    known_away: &str,
) -> ColorResolution {
    let known = [normalize_color(known_home), normalize_color(known_away)];
    let mut votes: [BTreeMap<CanonicalColor, (usize, ColorSource)>; 2] = Default::default();
    let mut unassigned: Vec<(CanonicalColor, &ColorClaim)> = Vec::new();

    for claim in claims {
        let color = normalize_color(&claim.color);
        if color.is_empty() {
            continue;
        }
        let (h, a) = (affinity(&color, &known[0]), affinity(&color, &known[1]));
        let decided = if h > a {
            Some((Side::Home, ColorSource::Observed))
        } else if a > h {
            Some((Side::Away, ColorSource::Observed))
        } else {
            claim.number.and_then(|n| {
                let in_home = home_lineup.iter().any(|p| p.number == n);
                let in_away = away_lineup.iter().any(|p| p.number == n);
                match (in_home, in_away) {
                    (true, false) => Some((Side::Home, ColorSource::JerseyNumber)),
                    (false, true) => Some((Side::Away, ColorSource::JerseyNumber)),
                    _ => None,
                }
            })
        };
        match decided {
            Some((side, source)) => {
                let slot = votes[side_index(side)].entry(color).or_insert((0, source));
                slot.0 += 1;
                if source == ColorSource::JerseyNumber {
                    slot.1 = source;
                }
            }
            None => unassigned.push((color, claim)),
        }
    }

    let mut picked: [Option<(CanonicalColor, ColorSource)>; 2] = [None, None];
    for side in 0..2 {
        let Some(max) = votes[side].values().map(|v| v.0).max() else { continue };
        let top: Vec<_> = votes[side].iter().filter(|(_, v)| v.0 == max).collect();
        if top.len() > 1 {
            return ColorResolution::Ambiguous(AmbiguityReport {
                reason: format!("{} claims split evenly between colours", side_name(side)),
                candidates: top.into_iter().map(|(c, _)| c.clone()).collect(),
                unassigned: unassigned.into_iter().map(|(_, c)| c.clone()).collect(),
            });
        }
        picked[side] = Some((top[0].0.clone(), top[0].1 .1));
    }

    let leftover = |settled: &[Option<(CanonicalColor, ColorSource)>; 2]| -> BTreeSet<CanonicalColor> {
        unassigned
            .iter()
            .map(|(c, _)| c.clone())
            .filter(|c| settled.iter().flatten().all(|(s, _)| s != c))
            .collect()
    };

    let open: Vec<usize> = (0..2).filter(|&s| picked[s].is_none()).collect();
    let remaining = leftover(&picked);
    if open.len() == 1 && remaining.len() == 1 {
        picked[open[0]] = Some((remaining.into_iter().next().unwrap(), ColorSource::Elimination));
    }
    let remaining = leftover(&picked);
    if !remaining.is_empty() {
        return ColorResolution::Ambiguous(AmbiguityReport {
            reason: "claims match both sides equally and no unique jersey number decides them".into(),
            candidates: remaining.into_iter().collect(),
            unassigned: unassigned.into_iter().map(|(_, c)| c.clone()).collect(),
        });
    }
    for side in 0..2 {
        if picked[side].is_none() {
            picked[side] = Some((known[side].clone(), ColorSource::Traditional));
        }
    }
    let [Some((home, home_source)), Some((away, away_source))] = picked else { unreachable!() };
    if home == away {
        return ColorResolution::Ambiguous(AmbiguityReport {
            reason: format!("both sides resolve to {home}"),
            candidates: vec![home],
            unassigned: Vec::new(),
        });
    }
    ColorResolution::Resolved(TeamColors { home, away, home_source, away_source })
}

fn side_index(side: Side) -> usize {
    match side {
        Side::Home => 0,
        Side::Away => 1,
    }
}

fn side_name(index: usize) -> &'static str {
    if index == 0 {
        "home"
    } else {
        "away"
    }
}
