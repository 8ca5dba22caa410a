//! Report files written by the evaluation harness.
//!
//! An output directory holds:
//!
//! * `report.csv`: one row per (video, strategy);
//! * `summary.json`: aggregate and per-video metrics;
//! * `cdf.csv`: pooled CVVP error CDF at 0.01 steps;
//! * `per_second.csv`: per-second CVVP (truth and prediction) and the two
//!   schedules, for plotting;
//! * `per_frame.csv`: per-frame CVVP and per-strategy importance.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::simulate::{EvaluationReport, StrategyKind};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("{path}: {source}")]
    Json {
        path: PathBuf,
        #[source]
        source: serde_json::Error,
    },
}

pub type Result<T> = std::result::Result<T, ReportError>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VideoSummary {
    pub video: String,
    pub frames: usize,
    pub seconds: usize,
    pub mean_cvvp_error: f64,
    pub accuracy: f64,
    pub excluded: bool,
    pub upper_bound_violations: usize,
    pub importance: BTreeMap<StrategyKind, f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub mean_cvvp_error: f64,
    pub mean_accuracy: f64,
    pub importance: BTreeMap<StrategyKind, f64>,
    pub excluded_videos: Vec<String>,
    pub error_cdf: Vec<(f64, f64)>,
    pub videos: Vec<VideoSummary>,
}

impl Summary {
    pub fn from_report(r: &EvaluationReport) -> Self {
        Self {
            mean_cvvp_error: r.mean_cvvp_error,
            mean_accuracy: r.mean_accuracy,
            importance: r.importance.clone(),
            excluded_videos: r.excluded_videos.clone(),
            error_cdf: r.error_cdf.clone(),
            videos: r
                .videos
                .iter()
                .map(|v| VideoSummary {
                    video: v.video.clone(),
                    frames: v.truth_cvvp.len(),
                    seconds: v.truth_schedule.len(),
                    mean_cvvp_error: v.error.mean,
                    accuracy: v.accuracy,
                    excluded: v.excluded,
                    upper_bound_violations: v.upper_bound_violations,
                    importance: v.strategies.iter().map(|(k, o)| (*k, o.mean)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct StrategyRow<'a> {
    video: &'a str,
    strategy: &'static str,
    importance: f64,
    accuracy: f64,
    mean_cvvp_error: f64,
    excluded: bool,
}

#[derive(Serialize)]
struct CdfRow {
    error: f64,
    fraction: f64,
}

#[derive(Serialize)]
struct SecondRow<'a> {
    video: &'a str,
    second: usize,
    truth_cvvp: f64,
    pred_cvvp: f64,
    truth_mode: u8,
    pred_mode: u8,
}

#[derive(Serialize)]
struct FrameRow<'a> {
    video: &'a str,
    frame: usize,
    truth_cvvp: f64,
    pred_cvvp: f64,
    auto_enforced_only: f64,
    weak_man_only: f64,
    triple_view: f64,
}

fn write_csv<T: Serialize>(path: &Path, rows: impl IntoIterator<Item = T>) -> Result<()> {
    let csv_err = |source| ReportError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Write every report file into `dir`, creating it if needed.
pub fn write_report(dir: &Path, report: &EvaluationReport) -> Result<()> {
    fs::create_dir_all(dir).map_err(|source| ReportError::Io {
        path: dir.to_path_buf(),
        source,
    })?;

    write_csv(
        &dir.join("report.csv"),
        report.videos.iter().flat_map(|v| {
            v.strategies.iter().map(move |(k, o)| StrategyRow {
                video: &v.video,
                strategy: k.name(),
                importance: o.mean,
                accuracy: v.accuracy,
                mean_cvvp_error: v.error.mean,
                excluded: v.excluded,
            })
        }),
    )?;

    write_csv(
        &dir.join("cdf.csv"),
        report.error_cdf.iter().map(|(error, fraction)| CdfRow {
            error: *error,
            fraction: *fraction,
        }),
    )?;

    write_csv(
        &dir.join("per_second.csv"),
        report.videos.iter().flat_map(|v| {
            (0..v.truth_seconds.len()).map(move |s| SecondRow {
                video: &v.video,
                second: s,
                truth_cvvp: v.truth_seconds[s],
                pred_cvvp: v.pred_seconds[s],
                truth_mode: u8::from(v.truth_schedule.bit(s)),
                pred_mode: u8::from(v.pred_schedule.bit(s)),
            })
        }),
    )?;

    write_csv(
        &dir.join("per_frame.csv"),
        report.videos.iter().flat_map(|v| {
            let imp = |k: StrategyKind, f: usize| v.strategies[&k].per_frame[f];
            (0..v.truth_cvvp.len()).map(move |f| FrameRow {
                video: &v.video,
                frame: f,
                truth_cvvp: v.truth_cvvp[f],
                pred_cvvp: v.pred_cvvp[f],
                auto_enforced_only: imp(StrategyKind::AutoEnforcedOnly, f),
                weak_man_only: imp(StrategyKind::WeakManOnly, f),
                triple_view: imp(StrategyKind::TripleView, f),
            })
        }),
    )?;

    let path = dir.join("summary.json");
    let mut json = serde_json::to_string_pretty(&Summary::from_report(report)).map_err(|source| {
        ReportError::Json {
            path: path.clone(),
            source,
        }
    })?;
    json.push('\n');
    fs::write(&path, json).map_err(|source| ReportError::Io { path, source })
}

pub fn read_summary(path: &Path) -> Result<Summary> {
    let text = fs::read_to_string(path).map_err(|source| ReportError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| ReportError::Json {
        path: path.to_path_buf(),
        source,
    })
}

/// Plain-text table of a summary.
pub fn format_summary(s: &Summary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<24} {:>8} {:>9} {:>10} {:>10} {:>10}  excluded",
        "video", "accuracy", "cvvp_err", "auto_only", "weak_only", "triple"
    );
    for v in &s.videos {
        let imp = |k| v.importance.get(&k).copied().unwrap_or(f64::NAN);
        let _ = writeln!(
            out,
            "{:<24} {:>8.4} {:>9.4} {:>10.4} {:>10.4} {:>10.4}  {}",
            v.video,
            v.accuracy,
            v.mean_cvvp_error,
            imp(StrategyKind::AutoEnforcedOnly),
            imp(StrategyKind::WeakManOnly),
            imp(StrategyKind::TripleView),
            if v.excluded { "yes" } else { "no" }
        );
    }
    let imp = |k| s.importance.get(&k).copied().unwrap_or(f64::NAN);
    let _ = writeln!(
        out,
        "{:<24} {:>8.4} {:>9.4} {:>10.4} {:>10.4} {:>10.4}  {} excluded",
        "overall",
        s.mean_accuracy,
        s.mean_cvvp_error,
        imp(StrategyKind::AutoEnforcedOnly),
        imp(StrategyKind::WeakManOnly),
        imp(StrategyKind::TripleView),
        s.excluded_videos.len()
    );
    out
}
