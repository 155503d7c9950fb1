use std::collections::BTreeSet;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use touchline_core::client::{ClientError, EndpointClient, ModelClient, RecordedStore, RecordingClient, ReplayClient};
use touchline_core::config::{
    RunConfig, Thresholds, CONTENT_THRESHOLD, FACE_TAU, GROUNDING_FPS, HISTORY_K, RECONCILE_WINDOW_S, TOP_FRAMES,
};
use touchline_core::evalkit::{
    alignment_accuracy, parse_label_list, structural_tally, verify_segment, CommentaryRecord, EvalError,
    PredictionRecord, SentenceLabel, Status, VerificationSummary, VerifyOptions,
};
use touchline_core::event::{
    reconcile_goal_timelines, replay, Clock, EventError, GoalTimeline, IngestMode, MatchLog, ReplayOptions,
};
use touchline_core::grounding::{aggregate_top, top_frames_to_seconds, AttentionBundle, GroundingError};
use touchline_core::pipeline::{run_bundle, PipelineError};
use touchline_core::scene::{
    build_scene_report, detect_shots, load_features_csv, match_faces, FaceMetric, FaceObservation, JerseyRecord,
    SceneError, ShotSpan, View,
};
use touchline_core::statbase::{execute_with_provenance, parse_query, player_background, StatError, StatStore};

const EXIT_INPUT: u8 = 2;
const EXIT_CLIENT: u8 = 3;
const EXIT_CONTRADICTED: u8 = 4;

#[derive(Parser)]
#[command(name = "touchline", version, about = "Commentary alignment, enrichment and evaluation tools")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a match log up to a clock and print the game state.
    Replay(ReplayArgs),
    /// Merge goals from a secondary timeline into a match log.
    Reconcile(ReconcileArgs),
    /// Aggregate cross-attention into frame relevance weights.
    Ground(GroundArgs),
    /// Detect shot boundaries in per-frame features.
    Segment(SegmentArgs),
    /// Assemble a scene report from shots, views, faces and jerseys.
    Scene(SceneArgs),
    /// Query the statistics store.
    #[command(subcommand)]
    Kb(KbCommand),
    /// Run both pipeline stages over a segment bundle.
    #[command(subcommand)]
    Pipeline(PipelineCommand),
    /// Evaluation metrics and claim verification.
    #[command(subcommand)]
    Eval(EvalCommand),
}

#[derive(Args)]
struct IngestArgs {
    /// Ignore unknown fields in input documents instead of rejecting them.
    #[arg(long)]
    lenient: bool,
}

impl IngestArgs {
    fn mode(&self) -> IngestMode {
        if self.lenient {
            IngestMode::Lenient
        } else {
            IngestMode::Strict
        }
    }
}

#[derive(Args)]
struct ReplayArgs {
    #[arg(long)]
    log: PathBuf,
    /// Clock as H:MM:SS or "H - MM:SS".
    #[arg(long)]
    at: Clock,
    /// Include events stamped exactly at the clock.
    #[arg(long)]
    inclusive: bool,
    /// Commentary entries kept in the history timeline.
    #[arg(long, default_value_t = HISTORY_K)]
    history_k: usize,
    #[command(flatten)]
    ingest: IngestArgs,
}

#[derive(Args)]
struct ReconcileArgs {
    #[arg(long)]
    log: PathBuf,
    #[arg(long)]
    goals: PathBuf,
    /// Matching window in seconds.
    #[arg(long, default_value_t = RECONCILE_WINDOW_S)]
    window: u32,
    #[command(flatten)]
    ingest: IngestArgs,
}

#[derive(Args)]
struct GroundArgs {
    #[arg(long)]
    attention: PathBuf,
    /// Frames per second of the relevance vector.
    #[arg(long, default_value_t = GROUNDING_FPS)]
    fps: f64,
    /// Number of top frames to report.
    #[arg(long, default_value_t = TOP_FRAMES)]
    top: usize,
}

#[derive(Args)]
struct SegmentArgs {
    /// CSV with a header row: frame_index,c1,c2,...
    #[arg(long)]
    features: PathBuf,
    /// Content-difference threshold.
    #[arg(long, default_value_t = CONTENT_THRESHOLD)]
    threshold: f64,
}

#[derive(Args)]
struct SceneArgs {
    /// Shot list: the `segment` output or a JSON array of {start, end}.
    #[arg(long)]
    shots: PathBuf,
    /// JSON array of view labels, one per shot.
    #[arg(long)]
    views: PathBuf,
    /// JSON array of face observations; requires --log and --at.
    #[arg(long, requires_all = ["log", "at"])]
    faces: Option<PathBuf>,
    /// JSON array with one list of jersey records per shot.
    #[arg(long)]
    jerseys: Option<PathBuf>,
    /// Match log supplying the candidate lineup for face matching.
    #[arg(long)]
    log: Option<PathBuf>,
    /// Clock at which the lineup is taken.
    #[arg(long)]
    at: Option<Clock>,
    /// Face-match threshold.
    #[arg(long, default_value_t = FACE_TAU)]
    tau: f64,
    #[arg(long, value_enum, default_value_t = MetricArg::Similarity)]
    metric: MetricArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum MetricArg {
    Similarity,
    Distance,
}

#[derive(Subcommand)]
enum KbCommand {
    /// Execute one DSL query.
    Query {
        /// Directory holding matches.csv, events.csv and players.csv.
        #[arg(long)]
        db: PathBuf,
        #[arg(long = "q")]
        query: String,
    },
    /// Print a player's background record.
    Player {
        #[arg(long)]
        db: PathBuf,
        #[arg(long)]
        name: String,
    },
}

#[derive(Subcommand)]
enum PipelineCommand {
    /// Run Stage I and Stage II for every segment of a bundle.
    Run(PipelineArgs),
}

#[derive(Args)]
struct PipelineArgs {
    /// Segment bundle document.
    #[arg(long)]
    segment: PathBuf,
    /// `recorded:PATH` to replay a recorded store, or `endpoint`.
    #[arg(long)]
    client: ClientChoice,
    /// Reasoner endpoint URL; the TOUCHLINE_ENDPOINT environment variable takes precedence.
    #[arg(long)]
    endpoint: Option<String>,
    /// Store file to record endpoint responses into.
    #[arg(long)]
    record: Option<PathBuf>,
    /// Segments processed concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Number of top frames passed as grounding guidance.
    #[arg(long, default_value_t = TOP_FRAMES)]
    top: usize,
    /// Commentary entries kept in the history timeline.
    #[arg(long, default_value_t = HISTORY_K)]
    history_k: usize,
}

#[derive(Clone)]
enum ClientChoice {
    Recorded(PathBuf),
    Endpoint,
}

impl std::str::FromStr for ClientChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once(':') {
            Some(("recorded", path)) if !path.is_empty() => Ok(ClientChoice::Recorded(path.into())),
            None if s == "endpoint" => Ok(ClientChoice::Endpoint),
            _ => Err(format!("expected `recorded:PATH` or `endpoint`, got `{s}`")),
        }
    }
}

#[derive(Subcommand)]
enum EvalCommand {
    /// Alignment accuracy over line-delimited prediction records.
    Align {
        #[arg(long)]
        preds: PathBuf,
    },
    /// Extract and verify claims in line-delimited commentary records.
    Verify {
        #[arg(long)]
        commentary: PathBuf,
        #[arg(long)]
        log: PathBuf,
        /// Statistics store for annotated external claims.
        #[arg(long)]
        db: Option<PathBuf>,
        /// Reject scorelines that only match with the sides swapped.
        #[arg(long)]
        strict_scoreline: bool,
        #[command(flatten)]
        ingest: IngestArgs,
    },
    /// Composition of labelled sentences.
    Structure {
        /// Line-delimited {id, labels} documents, or numbered classifier output.
        #[arg(long)]
        labels: PathBuf,
    },
}

struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    fn input(kind: &str, message: impl Into<String>) -> Self {
        Self { code: EXIT_INPUT, kind: kind.into(), message: message.into() }
    }
}

macro_rules! input_failure {
    ($($t:ty),*) => {$(
        impl From<$t> for Failure {
            fn from(e: $t) -> Self {
                Failure::input(e.kind(), e.to_string())
            }
        }
    )*};
}

input_failure!(EventError, GroundingError, SceneError, StatError, EvalError);

impl From<ClientError> for Failure {
    fn from(e: ClientError) -> Self {
        Self { code: EXIT_CLIENT, kind: e.kind().into(), message: e.to_string() }
    }
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        let code = if e.is_client_error() { EXIT_CLIENT } else { EXIT_INPUT };
        Self { code, kind: e.kind().into(), message: e.to_string() }
    }
}

type Outcome = Result<(Value, String, u8), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input("io_error", format!("{}: {e}", path.display())))
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::input("parse_error", format!("{}: {e}", path.display())))
}

fn read_lines<T: DeserializeOwned>(path: &Path) -> Result<Vec<T>, Failure> {
    read(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l)
                .map_err(|e| Failure::input("parse_error", format!("{}:{}: {e}", path.display(), i + 1)))
        })
        .collect()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("output serializes")
}

fn pretty_json(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("value serializes")
}

fn ok(v: Value) -> Outcome {
    let text = pretty_json(&v);
    Ok((v, text, 0))
}

fn cmd_replay(a: &ReplayArgs) -> Outcome {
    let log = MatchLog::load(&a.log, a.ingest.mode())?;
    let mut opts = ReplayOptions::default().with_history(a.history_k);
    if a.inclusive {
        opts = opts.inclusive();
    }
    ok(to_value(&replay(&log, a.at, opts)?))
}

fn cmd_reconcile(a: &ReconcileArgs) -> Outcome {
    let log = MatchLog::load(&a.log, a.ingest.mode())?;
    let goals = GoalTimeline::load(&a.goals, a.ingest.mode())?;
    let (merged, report) = reconcile_goal_timelines(&log, &goals, a.window)?;
    ok(json!({ "log": merged, "report": report }))
}

fn cmd_ground(a: &GroundArgs) -> Outcome {
    if !(a.fps > 0.0) {
        return Err(Failure::input("invalid_argument", "--fps must be positive"));
    }
    let bundle = AttentionBundle::load(&a.attention)?;
    let rel = aggregate_top(&bundle, a.top)?;
    let seconds = top_frames_to_seconds(&rel, a.fps);
    let v = json!({ "weights": rel.weights, "top_frames": rel.top_k, "top_seconds": seconds });
    let mut text = String::from("frame  seconds  weight\n");
    for &i in &rel.top_k {
        text += &format!("{i:>5}  {:>7.1}  {:.6}\n", i as f64 / a.fps, rel.weights[i]);
    }
    Ok((v, text, 0))
}

fn cmd_segment(a: &SegmentArgs) -> Outcome {
    let features = load_features_csv(&a.features)?;
    let shots = detect_shots(&features, a.threshold)?;
    let docs: Vec<Value> = shots
        .iter()
        .map(|s| json!({ "start": s.start, "end": s.end, "keyframes": s.keyframes() }))
        .collect();
    let mut text = String::from("shot  start    end  keyframes\n");
    for (i, s) in shots.iter().enumerate() {
        text += &format!("{i:>4}  {:>5}  {:>5}  {:?}\n", s.start, s.end, s.keyframes());
    }
    Ok((json!({ "shots": docs }), text, 0))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum ShotsDoc {
    Wrapped { shots: Vec<ShotSpan> },
    Bare(Vec<ShotSpan>),
}

fn cmd_scene(a: &SceneArgs) -> Outcome {
    let shots = match read_json::<ShotsDoc>(&a.shots)? {
        ShotsDoc::Wrapped { shots } | ShotsDoc::Bare(shots) => shots,
    };
    let views: Vec<View> = read_json(&a.views)?;
    let recognized = match (&a.faces, &a.log, a.at) {
        (Some(faces), Some(log), Some(at)) => {
            let log = MatchLog::load(log, IngestMode::Strict)?;
            let state = replay(&log, at, ReplayOptions::default())?;
            let lineup: Vec<_> = state.active_players().map(|(_, p)| p.clone()).collect();
            let observations: Vec<FaceObservation> = read_json(faces)?;
            let metric = match a.metric {
                MetricArg::Similarity => FaceMetric::Similarity,
                MetricArg::Distance => FaceMetric::Distance,
            };
            match_faces(&observations, &lineup, shots.len(), a.tau, metric)?
        }
        _ => Vec::new(),
    };
    let jerseys: Vec<Vec<JerseyRecord>> = a.jerseys.as_deref().map(read_json).transpose()?.unwrap_or_default();
    let report = build_scene_report(&shots, &views, &recognized, &jerseys, None)?;
    let text = report.render(touchline_core::config::SHOT_FPS);
    Ok((to_value(&report), text, 0))
}

fn cmd_kb(c: &KbCommand) -> Outcome {
    match c {
        KbCommand::Query { db, query } => {
            let store = StatStore::load_dir(db)?;
            let q = parse_query(query)?;
            let answered = execute_with_provenance(&store, &q)?;
            let text = answered.render();
            Ok((to_value(&answered), text, 0))
        }
        KbCommand::Player { db, name } => {
            let store = StatStore::load_dir(db)?;
            ok(to_value(&player_background(&store, name)?))
        }
    }
}

fn cmd_pipeline(a: &PipelineArgs) -> Outcome {
    let thresholds = Thresholds { top_k: a.top, history_k: a.history_k, ..Thresholds::default() };
    thresholds.validate().map_err(|m| Failure::input("invalid_argument", m))?;
    let results = match &a.client {
        ClientChoice::Recorded(path) => {
            if !path.exists() {
                return Err(ClientError::Store(format!("{} does not exist", path.display())).into());
            }
            let client = ReplayClient::new(Arc::new(RecordedStore::open(path)?));
            run_bundle(&a.segment, &client, &thresholds, a.jobs)?
        }
        ClientChoice::Endpoint => {
            let config = RunConfig { endpoint: a.endpoint.clone(), thresholds: thresholds.clone(), ..RunConfig::default() };
            let url = config
                .resolved_endpoint()
                .ok_or_else(|| Failure::input("missing_endpoint", "no endpoint: set TOUCHLINE_ENDPOINT or pass --endpoint"))?;
            let endpoint = EndpointClient::new(url);
            match &a.record {
                Some(path) => {
                    let client = RecordingClient::new(endpoint, Arc::new(RecordedStore::open(path)?));
                    let results = run_bundle(&a.segment, &client as &dyn ModelClient, &thresholds, a.jobs)?;
                    client.store().save()?;
                    results
                }
                None => run_bundle(&a.segment, &endpoint, &thresholds, a.jobs)?,
            }
        }
    };
    let mut code = 0;
    let mut docs = Vec::new();
    let mut text = String::new();
    for r in results {
        match r {
            Ok(out) => {
                text += &format!("[{}] C_EA: {}\n[{}] C_KE: {}\n", out.segment_id, out.c_ea.body, out.segment_id, out.c_ke.body);
                docs.push(to_value(&out));
            }
            Err(e) => {
                let f = Failure::from(e);
                code = code.max(f.code);
                text += &format!("[error] {}: {}\n", f.kind, f.message);
                docs.push(json!({ "error": { "kind": f.kind, "message": f.message } }));
            }
        }
    }
    Ok((json!({ "segments": docs }), text, code))
}

fn pct(v: Option<f64>) -> String {
    v.map_or("-".into(), |v| format!("{v:.1}"))
}

fn cmd_eval(c: &EvalCommand) -> Outcome {
    match c {
        EvalCommand::Align { preds } => {
            let records: Vec<PredictionRecord> = read_lines(preds)?;
            let report = alignment_accuracy(&records)?;
            let mut text = String::from("split       n  player@1  player@3   team\n");
            for (name, s) in [("overall", Some(&report.overall)), ("open", report.open.as_ref()), ("given_team", report.given_team.as_ref())] {
                if let Some(s) = s {
                    text += &format!("{name:<10} {:>3}  {:>8.1}  {:>8.1}  {:>5.1}\n", s.count, s.player_at_1, s.player_at_3, s.team);
                }
            }
            Ok((to_value(&report), text, 0))
        }
        EvalCommand::Verify { commentary, log, db, strict_scoreline, ingest } => {
            let log = MatchLog::load(log, ingest.mode())?;
            let store = db.as_deref().map(StatStore::load_dir).transpose()?;
            let records: Vec<CommentaryRecord> = read_lines(commentary)?;
            let opts = VerifyOptions { strict_scoreline: *strict_scoreline };
            let mut verdicts = Vec::new();
            for r in &records {
                verdicts.extend(verify_segment(r, &log, store.as_ref(), opts)?);
            }
            let summary = VerificationSummary::of(&verdicts);
            let mut text = String::from("segment  claim  status  expected  claimed\n");
            for v in &verdicts {
                let expected = v.expected.as_ref().map_or("-".into(), |e| e.to_string());
                text += &format!("{}  {:?}  {:?}  {}  {}\n", v.segment_id, v.claim.text, v.status, expected, v.claimed);
            }
            text += &format!(
                "ICL_goal {} ({} claims)  ICL_other {} ({} claims)\n",
                pct(summary.icl_goal.accuracy),
                summary.icl_goal.claims,
                pct(summary.icl_other.accuracy),
                summary.icl_other.claims
            );
            let code = if verdicts.iter().any(|v| v.status == Status::Contradicted) { EXIT_CONTRADICTED } else { 0 };
            Ok((json!({ "verdicts": verdicts, "summary": summary }), text, code))
        }
        EvalCommand::Structure { labels } => {
            let text = read(labels)?;
            let docs = parse_label_docs(&text)?;
            let mut reports = Vec::new();
            let mut pretty = String::from("id  sentences  description  explanation  comment  low_description\n");
            for (id, sets) in &docs {
                let r = structural_tally(sets)?;
                pretty += &format!(
                    "{id}  {}  {:.1}  {:.1}  {:.1}  {}\n",
                    r.sentences, r.description, r.explanation, r.comment, r.low_description
                );
                reports.push(json!({ "id": id, "report": r }));
            }
            let all: Vec<_> = docs.iter().flat_map(|(_, s)| s.iter().cloned()).collect();
            let overall = structural_tally(&all)?;
            Ok((json!({ "documents": reports, "overall": overall }), pretty, 0))
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelDoc {
    id: String,
    labels: Vec<BTreeSet<SentenceLabel>>,
}

type LabeledText = (String, Vec<BTreeSet<SentenceLabel>>);

fn parse_label_docs(text: &str) -> Result<Vec<LabeledText>, Failure> {
    if text.trim_start().starts_with('{') {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| {
                serde_json::from_str::<LabelDoc>(l)
                    .map(|d| (d.id, d.labels))
                    .map_err(|e| Failure::input("parse_error", e.to_string()))
            })
            .collect()
    } else {
        Ok(vec![("1".into(), parse_label_list(text)?)])
    }
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Replay(a) => cmd_replay(a),
        Command::Reconcile(a) => cmd_reconcile(a),
        Command::Ground(a) => cmd_ground(a),
        Command::Segment(a) => cmd_segment(a),
        Command::Scene(a) => cmd_scene(a),
        Command::Kb(c) => cmd_kb(c),
        Command::Pipeline(PipelineCommand::Run(a)) => cmd_pipeline(a),
        Command::Eval(c) => cmd_eval(c),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, text, code)) => {
            let out = if cli.pretty { text } else { serde_json::to_string(&value).expect("value serializes") };
            let mut stdout = std::io::stdout().lock();
            let _ = writeln!(stdout, "{}", out.trim_end());
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": { "kind": f.kind, "message": f.message } }));
            ExitCode::from(f.code)
        }
    }
}
