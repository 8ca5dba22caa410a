//! The `tripleview` command line: one verb per pipeline stage.
//!
//! ```text
//! tripleview cvvp-gt   --labels L --out P          ground-truth CVVP as a prediction file
//! tripleview stabilize --cvvp P --out S            per-second schedule
//! tripleview decide    --schedule S --out M        per-viewer mode trace
//! tripleview simulate  --labels L --trajectory T --predictions P --out DIR
//! tripleview report    --dir DIR                   print a simulate summary
//! ```
//!
//! Every verb accepts the tunables below as flags and `--config FILE` (a
//! TOML file of the same keys); flags win over the file. The effective
//! configuration is written next to every output.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cvvp::{self, CvvpError, ImportanceParams, Search};
use crate::decision::{self, DecisionConfig, DecisionError, ViewerId};
use crate::report::{self, ReportError};
use crate::simulate::{self, BehaviorModel, EvaluationConfig, SimulateError, VideoInputs};
use crate::stabilize::{self, StabilizeError, StabilizeParams, DEFAULT_BRUTE_FORCE_BUDGET};
use crate::traces::{self, CvvpPredictionFile, LoadOptions, TraceError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Trace(#[from] TraceError),
    #[error(transparent)]
    Cvvp(#[from] CvvpError),
    #[error(transparent)]
    Stabilize(#[from] StabilizeError),
    #[error(transparent)]
    Decision(#[from] DecisionError),
    #[error(transparent)]
    Simulate(#[from] SimulateError),
    #[error(transparent)]
    Report(#[from] ReportError),
    #[error("{path}: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// Every tunable of the pipeline with its default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub th_dist: f64,
    pub th_cvvp: f64,
    pub t_min: usize,
    pub clip_len: usize,
    pub fps: u32,
    /// Grid cross-check resolution in degrees; 0 disables the grid.
    pub grid_res: f64,
    /// Seconds; 0 means Manual never times out.
    pub idle_timeout: usize,
    pub restore_after_enforced: bool,
    pub switch_prob: f64,
    pub start_manual: bool,
    pub manual_miss_prob: f64,
    pub seed: u64,
    pub exclude_all_enforced: bool,
    pub fill_gaps: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            th_dist: cvvp::DEFAULT_TH_DIST,
            th_cvvp: stabilize::DEFAULT_TH_CVVP,
            t_min: stabilize::DEFAULT_T_MIN,
            clip_len: stabilize::DEFAULT_CLIP_LEN,
            fps: traces::DEFAULT_FPS,
            grid_res: cvvp::DEFAULT_GRID_RES,
            idle_timeout: decision::DEFAULT_IDLE_TIMEOUT,
            restore_after_enforced: false,
            switch_prob: simulate::DEFAULT_SWITCH_PROB,
            start_manual: false,
            manual_miss_prob: 0.0,
            seed: 0,
            exclude_all_enforced: true,
            fill_gaps: false,
        }
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> std::result::Result<Self, String> {
        toml::from_str(text).map_err(|e| e.to_string())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config is plain data")
    }

    pub fn importance(&self) -> Result<ImportanceParams> {
        Ok(ImportanceParams::new(self.th_dist)?)
    }

    pub fn stabilize(&self) -> Result<StabilizeParams> {
        Ok(StabilizeParams::new(self.th_cvvp, self.t_min, self.clip_len)?)
    }

    pub fn search(&self) -> Search {
        Search::from_grid_res(self.grid_res)
    }

    pub fn decision(&self) -> DecisionConfig {
        DecisionConfig {
            idle_timeout: (self.idle_timeout > 0).then_some(self.idle_timeout),
            restore_after_enforced: self.restore_after_enforced,
        }
    }

    pub fn load_options(&self) -> LoadOptions {
        LoadOptions {
            fill_gaps: self.fill_gaps,
            default_fps: self.fps,
        }
    }

    pub fn evaluation(&self) -> Result<EvaluationConfig> {
        Ok(EvaluationConfig {
            importance: self.importance()?,
            search: self.search(),
            stabilize: self.stabilize()?,
            seed: self.seed,
            behavior: BehaviorModel {
                switch_prob: self.switch_prob,
                start_manual: self.start_manual,
                manual_miss_prob: self.manual_miss_prob,
            },
            decision: self.decision(),
            exclude_all_enforced: self.exclude_all_enforced,
        })
    }
}

/// Command-line overrides; every field mirrors a [`RunConfig`] key.
#[derive(Debug, Clone, Default, Args)]
pub struct Tunables {
    /// TOML file with RunConfig keys.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub th_dist: Option<f64>,
    #[arg(long)]
    pub th_cvvp: Option<f64>,
    #[arg(long)]
    pub t_min: Option<usize>,
    #[arg(long)]
    pub clip_len: Option<usize>,
    #[arg(long)]
    pub fps: Option<u32>,
    #[arg(long)]
    pub grid_res: Option<f64>,
    #[arg(long)]
    pub idle_timeout: Option<usize>,
    #[arg(long)]
    pub restore_after_enforced: Option<bool>,
    #[arg(long)]
    pub switch_prob: Option<f64>,
    #[arg(long)]
    pub start_manual: Option<bool>,
    #[arg(long)]
    pub manual_miss_prob: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub exclude_all_enforced: Option<bool>,
    #[arg(long)]
    pub fill_gaps: Option<bool>,
}

impl Tunables {
    pub fn resolve(&self) -> Result<RunConfig> {
        let mut c = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).map_err(|source| CliError::Io {
                    path: path.clone(),
                    source,
                })?;
                RunConfig::from_toml(&text).map_err(|message| CliError::Config {
                    path: path.clone(),
                    message,
                })?
            }
            None => RunConfig::default(),
        };
        macro_rules! apply {
            ($($field:ident),*) => {
                $(if let Some(v) = self.$field.clone() { c.$field = v; })*
            };
        }
        apply!(
            th_dist,
            th_cvvp,
            t_min,
            clip_len,
            fps,
            grid_res,
            idle_timeout,
            restore_after_enforced,
            switch_prob,
            start_manual,
            manual_miss_prob,
            seed,
            exclude_all_enforced,
            fill_gaps
        );
        Ok(c)
    }
}

#[derive(Debug, Parser)]
#[command(name = "tripleview", version, about = "360-degree video view-mode decision pipeline")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-truth CVVP per frame from a label file.
    CvvpGt {
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tunables: Tunables,
    },
    /// Per-second mode schedule from a per-frame CVVP file.
    Stabilize {
        #[arg(long)]
        cvvp: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Solve every clip by exhaustive enumeration and report the
        /// number of candidates.
        #[arg(long)]
        brute_force: bool,
        #[command(flatten)]
        tunables: Tunables,
    },
    /// Per-viewer mode trace from a schedule and viewer events.
    Decide {
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        events: Option<PathBuf>,
        /// Viewers 0..N are traced even without events.
        #[arg(long, default_value_t = 0)]
        viewers: u32,
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tunables: Tunables,
    },
    /// Evaluate all strategies on one or more videos.
    Simulate {
        /// Label file or directory of label files.
        #[arg(long)]
        labels: PathBuf,
        #[arg(long)]
        trajectory: PathBuf,
        #[arg(long)]
        predictions: PathBuf,
        #[arg(long)]
        events: Option<PathBuf>,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        tunables: Tunables,
    },
    /// Print the summary of a simulate output directory.
    Report {
        #[arg(long)]
        dir: PathBuf,
    },
}

/// Parse arguments, run, print diagnostics; returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let mut stdout = std::io::stdout().lock();
    match run(cli.command, &mut stdout) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

pub fn run(command: Command, out: &mut dyn Write) -> Result<()> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    match command {
        Command::CvvpGt {
            labels,
            out: dest,
            tunables,
        } => {
            let config = tunables.resolve()?;
            let inputs = BTreeMap::from([("labels", labels.clone())]);
            let n = cmd_cvvp_gt(&labels, &dest, &config)?;
            write_provenance(&dest, "cvvp-gt", &inputs, &config)?;
            writeln!(out, "wrote {n} frames to {}", dest.display()).map_err(io(&dest))?;
        }
        Command::Stabilize {
            cvvp,
            out: dest,
            brute_force,
            tunables,
        } => {
            let config = tunables.resolve()?;
            let inputs = BTreeMap::from([("cvvp", cvvp.clone())]);
            let candidates = cmd_stabilize(&cvvp, &dest, &config, brute_force)?;
            write_provenance(&dest, "stabilize", &inputs, &config)?;
            if let Some(c) = candidates {
                writeln!(out, "candidates enumerated: {c}").map_err(io(&dest))?;
            }
            writeln!(out, "wrote schedule to {}", dest.display()).map_err(io(&dest))?;
        }
        Command::Decide {
            schedule,
            events,
            viewers,
            out: dest,
            tunables,
        } => {
            let config = tunables.resolve()?;
            let mut inputs = BTreeMap::from([("schedule", schedule.clone())]);
            if let Some(e) = &events {
                inputs.insert("events", e.clone());
            }
            let ids: Vec<ViewerId> = (0..viewers).collect();
            cmd_decide(&schedule, events.as_deref(), &ids, &dest, &config)?;
            write_provenance(&dest, "decide", &inputs, &config)?;
            writeln!(out, "wrote mode trace to {}", dest.display()).map_err(io(&dest))?;
        }
        Command::Simulate {
            labels,
            trajectory,
            predictions,
            events,
            out: dest,
            tunables,
        } => {
            let config = tunables.resolve()?;
            let report = cmd_simulate(
                &labels,
                &trajectory,
                &predictions,
                events.as_deref(),
                &dest,
                &config,
            )?;
            let summary = report::Summary::from_report(&report);
            write!(out, "{}", report::format_summary(&summary)).map_err(io(&dest))?;
        }
        Command::Report { dir } => {
            let summary = report::read_summary(&dir.join("summary.json"))?;
            write!(out, "{}", report::format_summary(&summary)).map_err(io(&dir))?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct Provenance<'a> {
    command: &'a str,
    inputs: &'a BTreeMap<&'a str, PathBuf>,
    config: &'a RunConfig,
}

/// Write `<output>.run.toml` next to a single-file output.
fn write_provenance(
    output: &Path,
    command: &str,
    inputs: &BTreeMap<&str, PathBuf>,
    config: &RunConfig,
) -> Result<()> {
    let mut name = output.file_name().unwrap_or_default().to_os_string();
    name.push(".run.toml");
    write_provenance_to(&output.with_file_name(name), command, inputs, config)
}

fn write_provenance_to(
    path: &Path,
    command: &str,
    inputs: &BTreeMap<&str, PathBuf>,
    config: &RunConfig,
) -> Result<()> {
    let text = toml::to_string(&Provenance {
        command,
        inputs,
        config,
    })
    .map_err(|e| CliError::Config {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Ground-truth CVVP of a label file, written in the prediction schema.
/// Returns the number of frames.
pub fn cmd_cvvp_gt(labels_path: &Path, out_path: &Path, config: &RunConfig) -> Result<usize> {
    let labels = traces::load_labels_with(labels_path, config.load_options())?;
    let series = cvvp::video_cvvp_series(&labels, &config.importance()?, config.search())?;
    let file = CvvpPredictionFile::new(
        labels.video_id.clone(),
        labels.fps,
        series.iter().map(|f| f.cvvp).collect(),
    )?;
    traces::save_predictions(out_path, &file)?;
    Ok(series.len())
}

/// Stabilize a per-frame CVVP file into a schedule file. With
/// `brute_force`, each clip is solved exhaustively and the total number
/// of candidates is returned.
pub fn cmd_stabilize(
    cvvp_path: &Path,
    out_path: &Path,
    config: &RunConfig,
    brute_force: bool,
) -> Result<Option<u128>> {
    let params = config.stabilize()?;
    let pred = traces::load_predictions_with(cvvp_path, config.load_options())?;
    let seconds = stabilize::per_second_average(&pred.values, pred.fps)?;
    let norm = stabilize::normalize(&seconds, params.th_cvvp)?;
    let (schedule, candidates) = if brute_force {
        let mut values = Vec::with_capacity(norm.len());
        let mut total = 0u128;
        for start in (0..norm.len()).step_by(params.clip_len) {
            let end = (start + params.clip_len).min(norm.len());
            let clip = stabilize::NormalizedSeries::new(norm.values()[start..end].to_vec())?;
            let outcome = stabilize::stabilize_bruteforce(&clip, &params, DEFAULT_BRUTE_FORCE_BUDGET)?;
            total += outcome.candidates;
            values.extend_from_slice(outcome.schedule.values());
        }
        (
            stabilize::ModeSchedule::from_values(values, params.t_min, params.clip_len),
            Some(total),
        )
    } else {
        (stabilize::stabilize_video(&norm, &params)?, None)
    };
    traces::save_schedule(out_path, &pred.video_id, &schedule)?;
    Ok(candidates)
}

/// Replay the state machine for a schedule file and optional events.
pub fn cmd_decide(
    schedule_path: &Path,
    events_path: Option<&Path>,
    viewers: &[ViewerId],
    out_path: &Path,
    config: &RunConfig,
) -> Result<()> {
    let sched = traces::load_schedule(schedule_path)?;
    let events = match events_path {
        Some(p) => traces::load_events(p, Some(&sched.video_id))?,
        None => Vec::new(),
    };
    let trace = decision::run_session(&sched.schedule, &events, viewers, &config.decision())?;
    traces::save_mode_trace(out_path, &sched.video_id, &trace)?;
    Ok(())
}

fn jsonl_files(path: &Path) -> Result<Vec<PathBuf>> {
    if !path.is_dir() {
        return Ok(vec![path.to_path_buf()]);
    }
    let mut files: Vec<PathBuf> = fs::read_dir(path)
        .map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        })?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "jsonl"))
        .collect();
    files.sort();
    Ok(files)
}

/// Load every video, evaluate, and write the report directory.
pub fn cmd_simulate(
    labels_path: &Path,
    trajectory_path: &Path,
    predictions_path: &Path,
    events_path: Option<&Path>,
    out_dir: &Path,
    config: &RunConfig,
) -> Result<simulate::EvaluationReport> {
    let opts = config.load_options();
    let eval = config.evaluation()?;

    let mut trajectories = BTreeMap::new();
    for f in jsonl_files(trajectory_path)? {
        let t = traces::load_trajectory_with(&f, opts)?;
        trajectories.insert(t.video_id.clone(), t);
    }
    let mut predictions = BTreeMap::new();
    for f in jsonl_files(predictions_path)? {
        let p = traces::load_predictions_with(&f, opts)?;
        predictions.insert(p.video_id.clone(), p);
    }
    let mut inputs = Vec::new();
    for f in jsonl_files(labels_path)? {
        let labels = traces::load_labels_with(&f, opts)?;
        let video = labels.video_id.clone();
        let saliency = trajectories.remove(&video).ok_or_else(|| {
            CliError::Usage(format!("no trajectory for video {video} in {}", trajectory_path.display()))
        })?;
        let preds = predictions.remove(&video).ok_or_else(|| {
            CliError::Usage(format!("no predictions for video {video} in {}", predictions_path.display()))
        })?;
        let events = match events_path {
            Some(p) => Some(traces::load_events(p, Some(&video))?),
            None => None,
        };
        inputs.push(VideoInputs {
            labels,
            saliency,
            predictions: preds,
            events,
        });
    }
    if inputs.is_empty() {
        return Err(CliError::Usage(format!(
            "no label files found at {}",
            labels_path.display()
        )));
    }

    let report = simulate::evaluate(&inputs, &eval)?;
    report::write_report(out_dir, &report)?;
    let mut in_paths = BTreeMap::from([
        ("labels", labels_path.to_path_buf()),
        ("trajectory", trajectory_path.to_path_buf()),
        ("predictions", predictions_path.to_path_buf()),
    ]);
    if let Some(e) = events_path {
        in_paths.insert("events", e.to_path_buf());
    }
    write_provenance_to(&out_dir.join("run_config.toml"), "simulate", &in_paths, config)?;
    Ok(report)
}
