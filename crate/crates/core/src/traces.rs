//! JSON-lines ingestion and persistence for every dataset artifact.
//!
//! Each file holds one video. The first non-blank line may be a header
//! object `{"header": {...}}`; every other line is one record. Record keys:
//!
//! | file        | record keys                              | header keys                 |
//! |-------------|------------------------------------------|-----------------------------|
//! | labels      | `video, frame, viewer, yaw, pitch`       | `video, fps`                |
//! | trajectory  | `video, frame, yaw, pitch`               | `video, fps, source`        |
//! | predictions | `video, frame, cvvp`                     | `video, fps`                |
//! | schedule    | `video, second, value`                   | `video, t_min, clip_len`    |
//! | events      | `viewer, second, kind` (+ `video`)       | none                        |
//! | mode trace  | `viewer, second, mode` (+ `suppressed`)  | `video`                     |
//!
//! Angles are degrees. `fps` defaults to 30 when absent.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decision::{EventKind, SessionTrace, ViewerEvent, ViewerId};
use crate::geometry::ViewingDirection;
use crate::stabilize::ModeSchedule;

pub const DEFAULT_FPS: u32 = 30;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: video {video} frame {frame}: {detail}")]
    OutOfRange {
        line: usize,
        video: String,
        frame: u64,
        detail: String,
    },
    #[error("line {line}: video {video}: incomplete viewer coverage at frame {frame} (missing viewers {missing:?})")]
    IncompleteCoverage {
        line: usize,
        video: String,
        frame: u64,
        missing: Vec<ViewerId>,
    },
    #[error("line {line}: video {video}: frames are not contiguous, expected frame {frame}")]
    NonContiguous { line: usize, video: String, frame: u64 },
    #[error("line {line}: video {video}: duplicate record for frame {frame}")]
    Duplicate { line: usize, video: String, frame: u64 },
    #[error("line {line}: file mixes videos {expected} and {found}")]
    MixedVideo {
        line: usize,
        expected: String,
        found: String,
    },
    #[error("no records found")]
    Empty,
}

pub type Result<T> = std::result::Result<T, TraceError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LoadOptions {
    /// Fill missing frames and missing viewer entries by holding the
    /// previous frame's value instead of rejecting the file.
    pub fill_gaps: bool,
    /// Frame rate assumed when the file has no `fps` header.
    pub default_fps: u32,
}

impl Default for LoadOptions {
    fn default() -> Self {
        Self {
            fill_gaps: false,
            default_fps: DEFAULT_FPS,
        }
    }
}

/// Per-frame, per-viewer labeled most-important viewing directions.
#[derive(Debug, Clone, PartialEq)]
pub struct LabelTraceSet {
    pub video_id: String,
    pub fps: u32,
    viewers: Vec<ViewerId>,
    frames: Vec<Vec<ViewingDirection>>,
}

impl LabelTraceSet {
    /// Build from a dense `frames[frame][viewer_index]` table. Every frame
    /// must carry one label per viewer.
    pub fn new(
        video_id: impl Into<String>,
        fps: u32,
        viewers: Vec<ViewerId>,
        frames: Vec<Vec<ViewingDirection>>,
    ) -> Result<Self> {
        let video_id = video_id.into();
        if viewers.is_empty() || frames.is_empty() {
            return Err(TraceError::Empty);
        }
        if fps == 0 {
            return Err(TraceError::OutOfRange {
                line: 0,
                video: video_id,
                frame: 0,
                detail: "fps must be >= 1".into(),
            });
        }
        for (i, f) in frames.iter().enumerate() {
            if f.len() != viewers.len() {
                let missing = viewers.iter().skip(f.len()).copied().collect();
                return Err(TraceError::IncompleteCoverage {
                    line: 0,
                    video: video_id,
                    frame: i as u64,
                    missing,
                });
            }
        }
        Ok(Self {
            video_id,
            fps,
            viewers,
            frames,
        })
    }

    pub fn viewer_count(&self) -> usize {
        self.viewers.len()
    }

    pub fn viewers(&self) -> &[ViewerId] {
        &self.viewers
    }

    pub fn frame_count(&self) -> usize {
        self.frames.len()
    }

    /// Labels of one frame, ordered like [`viewers`](Self::viewers).
    pub fn frame_labels(&self, frame: usize) -> &[ViewingDirection] {
        &self.frames[frame]
    }

    pub fn frames(&self) -> impl Iterator<Item = &[ViewingDirection]> {
        self.frames.iter().map(Vec::as_slice)
    }

    pub fn label(&self, frame: usize, viewer: ViewerId) -> Option<ViewingDirection> {
        let idx = self.viewers.iter().position(|v| *v == viewer)?;
        self.frames.get(frame).map(|f| f[idx])
    }
}

/// A per-frame recommended viewing direction, e.g. saliency output.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub video_id: String,
    pub fps: u32,
    pub source: String,
    pub directions: Vec<ViewingDirection>,
}

/// Per-frame CVVP values in `(0, 1]`, produced by the estimator or by the
/// ground-truth computation.
#[derive(Debug, Clone, PartialEq)]
pub struct CvvpPredictionFile {
    pub video_id: String,
    pub fps: u32,
    pub values: Vec<f64>,
}

impl CvvpPredictionFile {
    pub fn new(video_id: impl Into<String>, fps: u32, values: Vec<f64>) -> Result<Self> {
        let video_id = video_id.into();
        if values.is_empty() {
            return Err(TraceError::Empty);
        }
        for (i, v) in values.iter().enumerate() {
            check_cvvp(*v, 0, &video_id, i as u64)?;
        }
        Ok(Self {
            video_id,
            fps,
            values,
        })
    }
}

fn check_cvvp(v: f64, line: usize, video: &str, frame: u64) -> Result<()> {
    if !(v > 0.0 && v <= 1.0) {
        return Err(TraceError::OutOfRange {
            line,
            video: video.to_string(),
            frame,
            detail: format!("cvvp {v} is outside (0, 1]"),
        });
    }
    Ok(())
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    video: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fps: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t_min: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    clip_len: Option<usize>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct HeaderLine {
    header: Header,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelRecord {
    video: String,
    frame: u64,
    viewer: ViewerId,
    yaw: f64,
    pitch: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TrajectoryRecord {
    video: String,
    frame: u64,
    yaw: f64,
    pitch: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PredictionRecord {
    video: String,
    frame: u64,
    cvvp: f64,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScheduleRecord {
    video: String,
    second: usize,
    value: u8,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EventRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    video: Option<String>,
    viewer: ViewerId,
    second: usize,
    kind: EventKind,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModeRecord {
    viewer: ViewerId,
    second: usize,
    mode: crate::decision::ViewMode,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    suppressed: Vec<EventKind>,
}

/// Split a JSON-lines stream into an optional header and numbered records.
fn read_lines<T, R>(reader: R) -> Result<(Header, Vec<(usize, T)>)>
where
    T: for<'de> Deserialize<'de>,
    R: BufRead,
{
    let mut header = None;
    let mut records = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.map_err(|e| TraceError::Syntax {
            line: lineno,
            message: e.to_string(),
        })?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        if header.is_none() && records.is_empty() && trimmed.starts_with("{\"header\"") {
            let h: HeaderLine = serde_json::from_str(trimmed).map_err(|e| TraceError::Syntax {
                line: lineno,
                message: format!("bad header: {e}"),
            })?;
            header = Some(h.header);
            continue;
        }
        let rec: T = serde_json::from_str(trimmed).map_err(|e| TraceError::Syntax {
            line: lineno,
            message: e.to_string(),
        })?;
        records.push((lineno, rec));
    }
    Ok((header.unwrap_or_default(), records))
}

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|source| TraceError::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|source| TraceError::Io {
            path: path.to_path_buf(),
            source,
        })
}

fn io_err(path: &Path) -> impl Fn(io::Error) -> TraceError + '_ {
    move |source| TraceError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_json_line<W: Write, T: Serialize>(w: &mut W, value: &T) -> io::Result<()> {
    serde_json::to_writer(&mut *w, value)?;
    w.write_all(b"\n")
}

/// Resolve the single video id of a file, checking every record agrees.
fn single_video<'a>(
    header: &Header,
    records: impl Iterator<Item = (usize, &'a str)>,
) -> Result<String> {
    let mut video: Option<String> = header.video.clone();
    for (line, v) in records {
        match &video {
            None => video = Some(v.to_string()),
            Some(expected) if expected != v => {
                return Err(TraceError::MixedVideo {
                    line,
                    expected: expected.clone(),
                    found: v.to_string(),
                })
            }
            _ => {}
        }
    }
    video.ok_or(TraceError::Empty)
}

fn direction(yaw: f64, pitch: f64, line: usize, video: &str, frame: u64) -> Result<ViewingDirection> {
    if !(-180.0..=180.0).contains(&yaw) {
        return Err(TraceError::OutOfRange {
            line,
            video: video.to_string(),
            frame,
            detail: format!("yaw {yaw} is outside [-180, 180]"),
        });
    }
    ViewingDirection::new(yaw, pitch).map_err(|e| TraceError::OutOfRange {
        line,
        video: video.to_string(),
        frame,
        detail: e.to_string(),
    })
}

fn fps_of(header: &Header, video: &str, opts: LoadOptions) -> Result<u32> {
    match header.fps.unwrap_or(opts.default_fps) {
        0 => Err(TraceError::OutOfRange {
            line: 1,
            video: video.to_string(),
            frame: 0,
            detail: "fps must be >= 1".into(),
        }),
        f => Ok(f),
    }
}

/// Densify `frame -> value` records into a contiguous vector starting at 0.
fn densify<T: Clone>(
    video: &str,
    items: BTreeMap<u64, (usize, T)>,
    fill_gaps: bool,
) -> Result<Vec<T>> {
    let mut out: Vec<T> = Vec::with_capacity(items.len());
    for (frame, (line, value)) in items {
        while (out.len() as u64) < frame {
            match (fill_gaps, out.last()) {
                (true, Some(prev)) => out.push(prev.clone()),
                _ => {
                    return Err(TraceError::NonContiguous {
                        line,
                        video: video.to_string(),
                        frame: out.len() as u64,
                    })
                }
            }
        }
        out.push(value);
    }
    if out.is_empty() {
        return Err(TraceError::Empty);
    }
    Ok(out)
}

pub fn read_labels<R: BufRead>(reader: R, opts: LoadOptions) -> Result<LabelTraceSet> {
    let (header, records) = read_lines::<LabelRecord, _>(reader)?;
    let video = single_video(&header, records.iter().map(|(l, r)| (*l, r.video.as_str())))?;
    let fps = fps_of(&header, &video, opts)?;

    let mut by_frame: BTreeMap<u64, (usize, BTreeMap<ViewerId, ViewingDirection>)> =
        BTreeMap::new();
    let mut viewers = BTreeSet::new();
    for (line, r) in &records {
        let d = direction(r.yaw, r.pitch, *line, &video, r.frame)?;
        let entry = by_frame.entry(r.frame).or_insert((*line, BTreeMap::new()));
        entry.0 = *line;
        if entry.1.insert(r.viewer, d).is_some() {
            return Err(TraceError::Duplicate {
                line: *line,
                video: video.clone(),
                frame: r.frame,
            });
        }
        viewers.insert(r.viewer);
    }
    let viewers: Vec<ViewerId> = viewers.into_iter().collect();

    let mut frames: BTreeMap<u64, (usize, Vec<ViewingDirection>)> = BTreeMap::new();
    let mut prev: Option<Vec<ViewingDirection>> = None;
    for (frame, (line, labels)) in by_frame {
        let mut row = Vec::with_capacity(viewers.len());
        let mut missing = Vec::new();
        for (i, v) in viewers.iter().enumerate() {
            match (labels.get(v), &prev) {
                (Some(d), _) => row.push(*d),
                (None, Some(p)) if opts.fill_gaps => row.push(p[i]),
                (None, _) => missing.push(*v),
            }
        }
        if !missing.is_empty() {
            return Err(TraceError::IncompleteCoverage {
                line,
                video: video.clone(),
                frame,
                missing,
            });
        }
        prev = Some(row.clone());
        frames.insert(frame, (line, row));
    }
    let frames = densify(&video, frames, opts.fill_gaps)?;
    LabelTraceSet::new(video, fps, viewers, frames)
}

pub fn load_labels(path: impl AsRef<Path>) -> Result<LabelTraceSet> {
    load_labels_with(path, LoadOptions::default())
}

pub fn load_labels_with(path: impl AsRef<Path>, opts: LoadOptions) -> Result<LabelTraceSet> {
    read_labels(open(path.as_ref())?, opts)
}

pub fn write_labels<W: Write>(mut w: W, labels: &LabelTraceSet) -> io::Result<()> {
    write_json_line(
        &mut w,
        &HeaderLine {
            header: Header {
                video: Some(labels.video_id.clone()),
                fps: Some(labels.fps),
                ..Header::default()
            },
        },
    )?;
    for (frame, row) in labels.frames().enumerate() {
        for (viewer, d) in labels.viewers().iter().zip(row) {
            write_json_line(
                &mut w,
                &LabelRecord {
                    video: labels.video_id.clone(),
                    frame: frame as u64,
                    viewer: *viewer,
                    yaw: d.yaw(),
                    pitch: d.pitch(),
                },
            )?;
        }
    }
    w.flush()
}

pub fn save_labels(path: impl AsRef<Path>, labels: &LabelTraceSet) -> Result<()> {
    let path = path.as_ref();
    write_labels(create(path)?, labels).map_err(io_err(path))
}

pub fn read_trajectory<R: BufRead>(reader: R, opts: LoadOptions) -> Result<Trajectory> {
    let (header, records) = read_lines::<TrajectoryRecord, _>(reader)?;
    let video = single_video(&header, records.iter().map(|(l, r)| (*l, r.video.as_str())))?;
    let fps = fps_of(&header, &video, opts)?;
    let mut frames = BTreeMap::new();
    for (line, r) in &records {
        let d = direction(r.yaw, r.pitch, *line, &video, r.frame)?;
        if frames.insert(r.frame, (*line, d)).is_some() {
            return Err(TraceError::Duplicate {
                line: *line,
                video,
                frame: r.frame,
            });
        }
    }
    Ok(Trajectory {
        directions: densify(&video, frames, opts.fill_gaps)?,
        video_id: video,
        fps,
        source: header.source.unwrap_or_else(|| "saliency".to_string()),
    })
}

pub fn load_trajectory(path: impl AsRef<Path>) -> Result<Trajectory> {
    load_trajectory_with(path, LoadOptions::default())
}

pub fn load_trajectory_with(path: impl AsRef<Path>, opts: LoadOptions) -> Result<Trajectory> {
    read_trajectory(open(path.as_ref())?, opts)
}

pub fn write_trajectory<W: Write>(mut w: W, t: &Trajectory) -> io::Result<()> {
    write_json_line(
        &mut w,
        &HeaderLine {
            header: Header {
                video: Some(t.video_id.clone()),
                fps: Some(t.fps),
                source: Some(t.source.clone()),
                ..Header::default()
            },
        },
    )?;
    for (frame, d) in t.directions.iter().enumerate() {
        write_json_line(
            &mut w,
            &TrajectoryRecord {
                video: t.video_id.clone(),
                frame: frame as u64,
                yaw: d.yaw(),
                pitch: d.pitch(),
            },
        )?;
    }
    w.flush()
}

pub fn save_trajectory(path: impl AsRef<Path>, t: &Trajectory) -> Result<()> {
    let path = path.as_ref();
    write_trajectory(create(path)?, t).map_err(io_err(path))
}

pub fn read_predictions<R: BufRead>(reader: R, opts: LoadOptions) -> Result<CvvpPredictionFile> {
    let (header, records) = read_lines::<PredictionRecord, _>(reader)?;
    let video = single_video(&header, records.iter().map(|(l, r)| (*l, r.video.as_str())))?;
    let fps = fps_of(&header, &video, opts)?;
    let mut frames = BTreeMap::new();
    for (line, r) in &records {
        check_cvvp(r.cvvp, *line, &video, r.frame)?;
        if frames.insert(r.frame, (*line, r.cvvp)).is_some() {
            return Err(TraceError::Duplicate {
                line: *line,
                video,
                frame: r.frame,
            });
        }
    }
    Ok(CvvpPredictionFile {
        values: densify(&video, frames, opts.fill_gaps)?,
        video_id: video,
        fps,
    })
}

pub fn load_predictions(path: impl AsRef<Path>) -> Result<CvvpPredictionFile> {
    load_predictions_with(path, LoadOptions::default())
}

pub fn load_predictions_with(
    path: impl AsRef<Path>,
    opts: LoadOptions,
) -> Result<CvvpPredictionFile> {
    read_predictions(open(path.as_ref())?, opts)
}

pub fn write_predictions<W: Write>(mut w: W, p: &CvvpPredictionFile) -> io::Result<()> {
    write_json_line(
        &mut w,
        &HeaderLine {
            header: Header {
                video: Some(p.video_id.clone()),
                fps: Some(p.fps),
                ..Header::default()
            },
        },
    )?;
    for (frame, v) in p.values.iter().enumerate() {
        write_json_line(
            &mut w,
            &PredictionRecord {
                video: p.video_id.clone(),
                frame: frame as u64,
                cvvp: *v,
            },
        )?;
    }
    w.flush()
}

pub fn save_predictions(path: impl AsRef<Path>, p: &CvvpPredictionFile) -> Result<()> {
    let path = path.as_ref();
    write_predictions(create(path)?, p).map_err(io_err(path))
}

/// A persisted schedule together with the video it belongs to.
#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleFile {
    pub video_id: String,
    pub schedule: ModeSchedule,
}

pub fn read_schedule<R: BufRead>(reader: R) -> Result<ScheduleFile> {
    let (header, records) = read_lines::<ScheduleRecord, _>(reader)?;
    let video = single_video(&header, records.iter().map(|(l, r)| (*l, r.video.as_str())))?;
    let mut seconds = BTreeMap::new();
    for (line, r) in &records {
        if r.value > 1 {
            return Err(TraceError::OutOfRange {
                line: *line,
                video,
                frame: r.second as u64,
                detail: format!("schedule value {} is not 0 or 1", r.value),
            });
        }
        if seconds.insert(r.second as u64, (*line, r.value == 1)).is_some() {
            return Err(TraceError::Duplicate {
                line: *line,
                video,
                frame: r.second as u64,
            });
        }
    }
    let values = densify(&video, seconds, false)?;
    let t_min = header.t_min.unwrap_or(1).max(1);
    let clip_len = header.clip_len.unwrap_or(values.len()).max(1);
    Ok(ScheduleFile {
        video_id: video,
        schedule: ModeSchedule::from_values(values, t_min, clip_len),
    })
}

pub fn load_schedule(path: impl AsRef<Path>) -> Result<ScheduleFile> {
    read_schedule(open(path.as_ref())?)
}

pub fn write_schedule<W: Write>(mut w: W, video: &str, s: &ModeSchedule) -> io::Result<()> {
    write_json_line(
        &mut w,
        &HeaderLine {
            header: Header {
                video: Some(video.to_string()),
                t_min: Some(s.t_min),
                clip_len: Some(s.clip_len),
                ..Header::default()
            },
        },
    )?;
    for (second, v) in s.values().iter().enumerate() {
        write_json_line(
            &mut w,
            &ScheduleRecord {
                video: video.to_string(),
                second,
                value: u8::from(*v),
            },
        )?;
    }
    w.flush()
}

pub fn save_schedule(path: impl AsRef<Path>, video: &str, s: &ModeSchedule) -> Result<()> {
    let path = path.as_ref();
    write_schedule(create(path)?, video, s).map_err(io_err(path))
}

/// Viewer events. Records carrying a `video` key other than `video` are
/// skipped; records without one apply to every video.
pub fn read_events<R: BufRead>(reader: R, video: Option<&str>) -> Result<Vec<ViewerEvent>> {
    let (_, records) = read_lines::<EventRecord, _>(reader)?;
    Ok(records
        .into_iter()
        .filter(|(_, r)| match (&r.video, video) {
            (Some(rv), Some(v)) => rv == v,
            _ => true,
        })
        .map(|(_, r)| ViewerEvent {
            viewer: r.viewer,
            second: r.second,
            kind: r.kind,
        })
        .collect())
}

pub fn load_events(path: impl AsRef<Path>, video: Option<&str>) -> Result<Vec<ViewerEvent>> {
    read_events(open(path.as_ref())?, video)
}

pub fn write_events<W: Write>(mut w: W, events: &[ViewerEvent]) -> io::Result<()> {
    for e in events {
        write_json_line(
            &mut w,
            &EventRecord {
                video: None,
                viewer: e.viewer,
                second: e.second,
                kind: e.kind,
            },
        )?;
    }
    w.flush()
}

pub fn save_events(path: impl AsRef<Path>, events: &[ViewerEvent]) -> Result<()> {
    let path = path.as_ref();
    write_events(create(path)?, events).map_err(io_err(path))
}

pub fn write_mode_trace<W: Write>(mut w: W, video: &str, trace: &SessionTrace) -> io::Result<()> {
    write_json_line(
        &mut w,
        &HeaderLine {
            header: Header {
                video: Some(video.to_string()),
                ..Header::default()
            },
        },
    )?;
    for (viewer, seconds) in &trace.viewers {
        for (second, rec) in seconds.iter().enumerate() {
            write_json_line(
                &mut w,
                &ModeRecord {
                    viewer: *viewer,
                    second,
                    mode: rec.mode,
                    suppressed: rec.suppressed.clone(),
                },
            )?;
        }
    }
    w.flush()
}

pub fn save_mode_trace(path: impl AsRef<Path>, video: &str, trace: &SessionTrace) -> Result<()> {
    let path = path.as_ref();
    write_mode_trace(create(path)?, video, trace).map_err(io_err(path))
}
