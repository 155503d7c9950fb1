use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::SceneError;
use crate::event::PlayerRef;

/// One face-vs-candidate comparison on one keyframe of one shot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaceObservation {
    pub shot_index: usize,
    /// 1, 2 or 3.
    pub keyframe_slot: u8,
    pub candidate: PlayerRef,
    pub similarity: f64,
}

/// How the observation score relates to `tau`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FaceMetric {
    /// Higher is closer; matched when the best slot is strictly above `tau`.
    #[default]
    Similarity,
    /// Lower is closer; matched when the best slot is strictly below `tau`.
    Distance,
}

/// Recognized players per shot.
///
/// For each (shot, candidate) the best score over the keyframe slots is
/// compared against `tau`.
pub fn match_faces(
    observations: &[FaceObservation],
    lineup: &[PlayerRef],
    shot_count: usize,
    tau: f64,
    metric: FaceMetric,
) -> Result<Vec<BTreeSet<PlayerRef>>, SceneError> {
    if !(tau > 0.0 && tau < 1.0) && metric == FaceMetric::Similarity {
        return Err(SceneError::InvalidTau(tau));
    }
    if !(tau > 0.0) {
        return Err(SceneError::InvalidTau(tau));
    }
    let mut best: HashMap<(usize, &PlayerRef), f64> = HashMap::new();
    for obs in observations {
        if obs.shot_index >= shot_count {
            return Err(SceneError::ShotOutOfRange { index: obs.shot_index, shots: shot_count });
        }
        if !(1..=3).contains(&obs.keyframe_slot) {
            return Err(SceneError::InvalidKeyframeSlot(obs.keyframe_slot));
        }
        if !obs.similarity.is_finite() || obs.similarity < 0.0 {
            return Err(SceneError::InvalidScore(obs.similarity));
        }
        if metric == FaceMetric::Similarity && obs.similarity > 1.0 {
            return Err(SceneError::InvalidScore(obs.similarity));
        }
        if !lineup.contains(&obs.candidate) {
            return Err(SceneError::CandidateNotInLineup(obs.candidate.name.clone()));
        }
        let entry = best.entry((obs.shot_index, &obs.candidate)).or_insert(match metric {
            FaceMetric::Similarity => f64::NEG_INFINITY,
            FaceMetric::Distance => f64::INFINITY,
        });
        *entry = match metric {
            FaceMetric::Similarity => entry.max(obs.similarity),
            FaceMetric::Distance => entry.min(obs.similarity),
        };
    }
    let mut out = vec![BTreeSet::new(); shot_count];
    for ((shot, player), score) in best {
        let hit = match metric {
            FaceMetric::Similarity => score > tau,
            FaceMetric::Distance => score < tau,
        };
        if hit {
            out[shot].insert(player.clone());
        }
    }
    Ok(out)
}
