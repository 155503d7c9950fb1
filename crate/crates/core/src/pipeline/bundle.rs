use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::context::{AnswerFormat, Commentary, QueryVariant};
use super::enrich::{answer_questions, generate_questions, internal_knowledge, run_stage2, InternalKnowledge, QuestionOutcome};
use super::stage1::{run_stage1, SegmentInputs, Stage1Output};
use super::PipelineError;
use crate::client::ModelClient;
use crate::config::Thresholds;
use crate::event::{Clock, IngestMode, MatchLog, Side};
use crate::grounding::{aggregate_top, AttentionBundle};
use crate::scene::SceneReport;
use crate::statbase::{validate_answers, AnsweredQuery, StatStore};

/// Input bundle; relative paths resolve against the bundle file's directory.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentBundle {
    pub match_log: PathBuf,
    #[serde(default)]
    pub stats_dir: Option<PathBuf>,
    #[serde(default)]
    pub answer_format: AnswerFormat,
    pub segments: Vec<SegmentSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    pub id: String,
    pub scene: PathBuf,
    pub attention: PathBuf,
    pub commentary: CommentarySpec,
    #[serde(default)]
    pub video: Option<String>,
    #[serde(default)]
    pub variant: QueryVariant,
    #[serde(default)]
    pub given_team: Option<Side>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CommentarySpec {
    Path(PathBuf),
    Inline { body: String, clock: String, event_label: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SegmentOutput {
    pub segment_id: String,
    pub alignment: Stage1Output,
    pub c_ea: Commentary,
    pub c_ke: Commentary,
    pub questions: Vec<QuestionOutcome>,
    pub external: Vec<AnsweredQuery>,
    pub discarded_answers: usize,
    pub internal: InternalKnowledge,
}

fn read(path: &Path) -> Result<String, PipelineError> {
    std::fs::read_to_string(path).map_err(|e| PipelineError::Io(format!("{}: {e}", path.display())))
}

fn json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, PipelineError> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| PipelineError::InvalidSegment(format!("{}: {e}", path.display())))
}

impl SegmentBundle {
    pub fn load(path: impl AsRef<Path>) -> Result<(Self, PathBuf), PipelineError> {
        let path = path.as_ref();
        let bundle: SegmentBundle = json(path)?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((bundle, base))
    }
}

fn load_commentary(spec: &CommentarySpec, base: &Path) -> Result<Commentary, PipelineError> {
    #[derive(Deserialize)]
    struct Raw {
        body: String,
        clock: String,
        event_label: String,
    }
    let raw = match spec {
        CommentarySpec::Path(p) => json::<Raw>(&base.join(p))?,
        CommentarySpec::Inline { body, clock, event_label } => {
            Raw { body: body.clone(), clock: clock.clone(), event_label: event_label.clone() }
        }
    };
    let clock: Clock = raw.clock.parse()?;
    Commentary::anonymized(raw.body, clock, raw.event_label)
}

struct Shared<'a> {
    log: &'a MatchLog,
    store: Option<&'a StatStore>,
    base: &'a Path,
    format: AnswerFormat,
    thresholds: &'a Thresholds,
    client: &'a dyn ModelClient,
}

fn run_segment(spec: &SegmentSpec, sh: &Shared<'_>) -> Result<SegmentOutput, PipelineError> {
    let scene: SceneReport = json(&sh.base.join(&spec.scene))?;
    let attention = AttentionBundle::load(sh.base.join(&spec.attention))?;
    let relevance = aggregate_top(&attention, sh.thresholds.top_k)?;
    let commentary = load_commentary(&spec.commentary, sh.base)?;

    let mut seg = SegmentInputs::new(spec.id.clone(), scene, relevance, commentary);
    seg.video = spec.video.clone();
    seg.variant = spec.variant;
    seg.format = sh.format;
    seg.given_team = spec.given_team;
    seg.history_k = sh.thresholds.history_k;

    let alignment = run_stage1(sh.log, &seg, sh.client)?;
    let c_ea = alignment.commentary.clone();

    let (questions, external, discarded_answers) = match sh.store {
        Some(store) => {
            let questions = generate_questions(&c_ea, &sh.log.meta, sh.client)?;
            let outcomes = answer_questions(&questions, &sh.log.meta, store, sh.client)?;
            let answered = outcomes.iter().filter_map(|o| o.answer.clone()).collect();
            let partition = validate_answers(answered, sh.log.meta.kickoff);
            (outcomes, partition.kept, partition.discarded.len())
        }
        None => (Vec::new(), Vec::new(), 0),
    };
    let internal = internal_knowledge(sh.log, &c_ea, alignment.player.as_ref(), sh.store)?;
    let c_ke = run_stage2(&sh.log.meta, &c_ea, &internal, &external, sh.client)?;
    Ok(SegmentOutput { segment_id: spec.id.clone(), alignment, c_ea, c_ke, questions, external, discarded_answers, internal })
}

/// Runs both stages over every segment of a bundle, `jobs` segments at a
/// time. Results come back in bundle order; one failing segment does not
/// stop the others.
pub fn run_bundle(
    path: impl AsRef<Path>,
    client: &dyn ModelClient,
    thresholds: &Thresholds,
    jobs: usize,
) -> Result<Vec<Result<SegmentOutput, PipelineError>>, PipelineError> {
    let (bundle, base) = SegmentBundle::load(path)?;
    let log = MatchLog::load(base.join(&bundle.match_log), IngestMode::Strict)?;
    log.validate()?;
    let store = bundle.stats_dir.as_ref().map(|d| StatStore::load_dir(base.join(d))).transpose()?;
    let shared = Shared { log: &log, store: store.as_ref(), base: &base, format: bundle.answer_format, thresholds, client };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| PipelineError::InvalidSegment(format!("thread pool: {e}")))?;
    Ok(pool.install(|| {
        bundle
            .segments
            .par_iter()
            .map(|spec| run_segment(spec, &shared).map_err(|e| e.in_segment(&spec.id)))
            .collect()
    }))
}
