use serde::{Deserialize, Serialize};

use super::EvalError;
use crate::event::Side;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    #[default]
    Open,
    GivenTeam,
}

/// One alignment prediction against its gold label.
///
/// `predicted_team` is the team of the predicted player, so a correct
/// player with a different team is an inconsistent record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PredictionRecord {
    pub segment_id: String,
    pub gold_player: String,
    pub gold_team: Side,
    pub predicted_player: String,
    pub predicted_team: Side,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top3: Option<Vec<String>>,
    #[serde(default)]
    pub variant: Variant,
}

impl PredictionRecord {
    fn check(&self, index: usize) -> Result<(), EvalError> {
        let bad = |message: String| EvalError::InvalidRecord { index, message };
        if let Some(top3) = &self.top3 {
            if top3.is_empty() || top3.len() > 3 {
                return Err(bad(format!("top3 has {} entries", top3.len())));
            }
            if top3[0] != self.predicted_player {
                return Err(bad(format!("top3 starts with {:?}, not the top-1 prediction", top3[0])));
            }
        }
        if self.player_correct() && self.predicted_team != self.gold_team {
            return Err(bad("correct player assigned to the wrong team".into()));
        }
        Ok(())
    }

    pub fn player_correct(&self) -> bool {
        self.predicted_player == self.gold_player
    }

    pub fn player_in_top3(&self) -> bool {
        match &self.top3 {
            Some(top3) => top3.contains(&self.gold_player),
            None => self.player_correct(),
        }
    }

    pub fn team_correct(&self) -> bool {
        self.predicted_team == self.gold_team
    }
}

/// Percentages over one group of records.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracySplit {
    pub count: usize,
    pub player_at_1: f64,
    pub player_at_3: f64,
    pub team: f64,
}

impl AccuracySplit {
    fn of(records: &[&PredictionRecord]) -> Option<Self> {
        if records.is_empty() {
            return None;
        }
        let pct = |hits: usize| 100.0 * hits as f64 / records.len() as f64;
        Some(Self {
            count: records.len(),
            player_at_1: pct(records.iter().filter(|r| r.player_correct()).count()),
            player_at_3: pct(records.iter().filter(|r| r.player_in_top3()).count()),
            team: pct(records.iter().filter(|r| r.team_correct()).count()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AccuracyReport {
    pub overall: AccuracySplit,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub open: Option<AccuracySplit>,
    /// Records where the correct team was supplied to the model.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub given_team: Option<AccuracySplit>,
}

pub fn alignment_accuracy(records: &[PredictionRecord]) -> Result<AccuracyReport, EvalError> {
    if records.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    for (i, r) in records.iter().enumerate() {
        r.check(i)?;
    }
    let all: Vec<&PredictionRecord> = records.iter().collect();
    let split = |v: Variant| AccuracySplit::of(&records.iter().filter(|r| r.variant == v).collect::<Vec<_>>());
    Ok(AccuracyReport {
        overall: AccuracySplit::of(&all).expect("non-empty"),
        open: split(Variant::Open),
        given_team: split(Variant::GivenTeam),
    })
}
