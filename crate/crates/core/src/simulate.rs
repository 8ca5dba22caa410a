//! Trace-driven evaluation of mode-selection strategies.
//!
//! Viewers are replayed frame by frame. A viewer in Auto-optional or
//! Auto-enforced watches the saliency trajectory; a viewer in Manual
//! watches their own labeled direction. Each frame is scored by the mean
//! per-viewer importance of what the viewers actually watch, which equals
//! the overall importance of the common direction whenever everyone
//! watches the same one.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cvvp::{self, CvvpError, ImportanceParams, Search};
use crate::decision::{
    self, run_session, DecisionConfig, DecisionError, EventKind, ViewMode, ViewerEvent,
    ViewerSessionState,
};
use crate::geometry::{offset_direction, ViewingDirection};
use crate::stabilize::{self, ModeSchedule, StabilizeError, StabilizeParams};
use crate::traces::{CvvpPredictionFile, LabelTraceSet, Trajectory};

pub const DEFAULT_SWITCH_PROB: f64 = 0.05;
/// Error values at which the CDF is sampled: 0.00, 0.01, ..., 1.00.
pub const CDF_STEPS: usize = 100;

#[derive(Debug, Error)]
pub enum SimulateError {
    #[error("video {video}: {what} has {found} entries, expected {expected}")]
    Misaligned {
        video: String,
        what: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("schedules differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("the triple-view strategy needs a schedule")]
    MissingSchedule,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Cvvp(#[from] CvvpError),
    #[error(transparent)]
    Stabilize(#[from] StabilizeError),
    #[error(transparent)]
    Decision(#[from] DecisionError),
}

pub type Result<T> = std::result::Result<T, SimulateError>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    AutoEnforcedOnly,
    WeakManOnly,
    TripleView,
}

impl StrategyKind {
    pub const ALL: [StrategyKind; 3] = [
        StrategyKind::AutoEnforcedOnly,
        StrategyKind::WeakManOnly,
        StrategyKind::TripleView,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StrategyKind::AutoEnforcedOnly => "auto_enforced_only",
            StrategyKind::WeakManOnly => "weak_man_only",
            StrategyKind::TripleView => "triple_view",
        }
    }
}

/// How simulated viewers behave when nobody supplies real events.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BehaviorModel {
    /// Per-viewer, per-second probability of toggling between Manual and
    /// Auto-optional while the Weak/Man regime is active.
    pub switch_prob: f64,
    /// Viewers request Manual at second 0.
    pub start_manual: bool,
    /// Probability that a Manual viewer, for a given second, looks at a
    /// direction `2 * th_dist` away from their own label.
    pub manual_miss_prob: f64,
}

impl Default for BehaviorModel {
    fn default() -> Self {
        Self {
            switch_prob: DEFAULT_SWITCH_PROB,
            start_manual: false,
            manual_miss_prob: 0.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyConfig {
    pub kind: StrategyKind,
    pub seed: u64,
    pub behavior: BehaviorModel,
    pub decision: DecisionConfig,
    pub importance: ImportanceParams,
}

impl StrategyConfig {
    pub fn new(kind: StrategyKind, seed: u64) -> Self {
        Self {
            kind,
            seed,
            behavior: BehaviorModel::default(),
            decision: DecisionConfig::default(),
            importance: ImportanceParams::default(),
        }
    }

    fn validate(&self) -> Result<()> {
        for (name, p) in [
            ("switch_prob", self.behavior.switch_prob),
            ("manual_miss_prob", self.behavior.manual_miss_prob),
        ] {
            if !(0.0..=1.0).contains(&p) {
                return Err(SimulateError::InvalidConfig(format!("{name} {p} is outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Per-frame importance of one strategy on one video.
#[derive(Debug, Clone, PartialEq)]
pub struct StrategyOutcome {
    pub kind: StrategyKind,
    pub schedule: ModeSchedule,
    /// `modes[viewer_index][second]`
    pub modes: Vec<Vec<ViewMode>>,
    pub per_frame: Vec<f64>,
    pub mean: f64,
}

fn seconds_for(frames: usize, fps: u32) -> usize {
    frames.div_ceil(fps as usize)
}

fn video_seed(seed: u64, video: &str) -> u64 {
    // FNV-1a, stable across platforms and releases
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in video.bytes() {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h ^ seed
}

fn viewer_rng(seed: u64, video: &str, viewer_index: usize, purpose: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(video_seed(seed, video));
    rng.set_stream(viewer_index as u64 * 2 + purpose);
    rng
}

/// Replay the behavior model through the state machine for one viewer.
/// One random draw is consumed per second regardless of the schedule, so
/// strategies that share a seed see the same viewer impulses.
fn simulated_modes(
    schedule: &ModeSchedule,
    viewer: decision::ViewerId,
    mut rng: ChaCha8Rng,
    behavior: &BehaviorModel,
    config: &DecisionConfig,
) -> Result<Vec<ViewMode>> {
    let mut state = ViewerSessionState::new(viewer);
    let mut modes = Vec::with_capacity(schedule.len());
    for (second, &bit) in schedule.values().iter().enumerate() {
        let u: f64 = rng.random();
        let mut events = Vec::new();
        let mk = |kind| ViewerEvent {
            viewer,
            second,
            kind,
        };
        let opening = second == 0 && behavior.start_manual;
        if opening {
            events.push(mk(EventKind::RequestManual));
        }
        if !bit {
            let mut manual = opening || state.current_mode == ViewMode::Manual;
            if u < behavior.switch_prob {
                manual = !manual;
                events.push(mk(if manual {
                    EventKind::RequestManual
                } else {
                    EventKind::RequestAutoOptional
                }));
            }
            if manual {
                events.push(mk(EventKind::SteeringInput));
            }
        }
        let (next, rec) = decision::step(&state, bit, &events, config)?;
        state = next;
        modes.push(rec.mode);
    }
    Ok(modes)
}

/// Score one strategy on one video.
///
/// `schedule` is required for [`StrategyKind::TripleView`] and ignored by
/// the baselines, which use constant schedules. With `events` the viewers
/// follow those events; otherwise they follow the seeded behavior model.
pub fn simulate_strategy(
    labels: &LabelTraceSet,
    saliency: &Trajectory,
    config: &StrategyConfig,
    schedule: Option<&ModeSchedule>,
    events: Option<&[ViewerEvent]>,
) -> Result<StrategyOutcome> {
    config.validate()?;
    let frames = labels.frame_count();
    if saliency.directions.len() != frames {
        return Err(SimulateError::Misaligned {
            video: labels.video_id.clone(),
            what: "saliency trajectory",
            found: saliency.directions.len(),
            expected: frames,
        });
    }
    let fps = labels.fps;
    let seconds = seconds_for(frames, fps);
    let schedule = match config.kind {
        StrategyKind::AutoEnforcedOnly => ModeSchedule::constant(true, seconds, 1, seconds),
        StrategyKind::WeakManOnly => ModeSchedule::constant(false, seconds, 1, seconds),
        StrategyKind::TripleView => schedule.ok_or(SimulateError::MissingSchedule)?.clone(),
    };
    if schedule.len() != seconds {
        return Err(SimulateError::Misaligned {
            video: labels.video_id.clone(),
            what: "schedule",
            found: schedule.len(),
            expected: seconds,
        });
    }

    let viewers = labels.viewers();
    let modes: Vec<Vec<ViewMode>> = match events {
        Some(evs) => {
            let trace = run_session(&schedule, evs, viewers, &config.decision)?;
            viewers
                .iter()
                .map(|v| trace.modes(*v).expect("every listed viewer is traced"))
                .collect()
        }
        None => viewers
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let rng = viewer_rng(config.seed, &labels.video_id, i, 0);
                simulated_modes(&schedule, *v, rng, &config.behavior, &config.decision)
            })
            .collect::<Result<_>>()?,
    };

    // per viewer and second: Some(bearing) when a Manual viewer misses
    let th = config.importance.th_dist();
    let misses: Vec<Vec<Option<f64>>> = (0..viewers.len())
        .map(|i| {
            let mut rng = viewer_rng(config.seed, &labels.video_id, i, 1);
            (0..seconds)
                .map(|s| {
                    let u: f64 = rng.random();
                    let bearing: f64 = rng.random::<f64>() * 360.0;
                    (modes[i][s] == ViewMode::Manual && u < config.behavior.manual_miss_prob)
                        .then_some(bearing)
                })
                .collect()
        })
        .collect();

    let per_frame: Vec<f64> = (0..frames)
        .map(|f| {
            let s = f / fps as usize;
            let row = labels.frame_labels(f);
            let hits: usize = row
                .iter()
                .enumerate()
                .map(|(j, own)| {
                    let watched: ViewingDirection = if modes[j][s].is_automatic() {
                        saliency.directions[f]
                    } else {
                        match misses[j][s] {
                            Some(bearing) => offset_direction(*own, bearing, 2.0 * th),
                            None => *own,
                        }
                    };
                    usize::from(cvvp::importance_for_viewer(watched, *own, &config.importance))
                })
                .sum();
            hits as f64 / row.len() as f64
        })
        .collect();
    let mean = per_frame.iter().sum::<f64>() / frames as f64;
    Ok(StrategyOutcome {
        kind: config.kind,
        schedule,
        modes,
        per_frame,
        mean,
    })
}

/// Per-frame absolute CVVP error with its mean and CDF.
#[derive(Debug, Clone, PartialEq)]
pub struct CvvpErrorSummary {
    pub errors: Vec<f64>,
    pub mean: f64,
    /// `(error, fraction of frames with error <= it)` at 0.01 steps.
    pub cdf: Vec<(f64, f64)>,
}

pub fn cvvp_error(pred: &[f64], truth: &[f64]) -> Result<CvvpErrorSummary> {
    if pred.len() != truth.len() || pred.is_empty() {
        return Err(SimulateError::LengthMismatch(pred.len(), truth.len()));
    }
    let errors: Vec<f64> = pred.iter().zip(truth).map(|(p, t)| (p - t).abs()).collect();
    let mean = errors.iter().sum::<f64>() / errors.len() as f64;
    Ok(CvvpErrorSummary {
        cdf: error_cdf(&errors),
        errors,
        mean,
    })
}

pub fn error_cdf(errors: &[f64]) -> Vec<(f64, f64)> {
    let mut sorted = errors.to_vec();
    sorted.sort_by(f64::total_cmp);
    (0..=CDF_STEPS)
        .map(|k| {
            let x = k as f64 / CDF_STEPS as f64;
            // tolerance keeps e.g. 0.3 - 0.2 inside the 0.10 bucket
            let below = sorted.partition_point(|e| *e <= x + 1e-12);
            (x, below as f64 / sorted.len().max(1) as f64)
        })
        .collect()
}

/// Fraction of seconds where both schedules agree.
pub fn inference_accuracy(pred: &ModeSchedule, truth: &ModeSchedule) -> Result<f64> {
    if pred.len() != truth.len() || pred.is_empty() {
        return Err(SimulateError::LengthMismatch(pred.len(), truth.len()));
    }
    let agree = pred
        .values()
        .iter()
        .zip(truth.values())
        .filter(|(a, b)| a == b)
        .count();
    Ok(agree as f64 / pred.len() as f64)
}

/// Everything [`evaluate`] needs for one video.
#[derive(Debug, Clone)]
pub struct VideoInputs {
    pub labels: LabelTraceSet,
    pub saliency: Trajectory,
    pub predictions: CvvpPredictionFile,
    pub events: Option<Vec<ViewerEvent>>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvaluationConfig {
    pub importance: ImportanceParams,
    pub search: Search,
    pub stabilize: StabilizeParams,
    pub seed: u64,
    pub behavior: BehaviorModel,
    pub decision: DecisionConfig,
    /// Drop videos whose predicted schedule is Auto-enforced throughout
    /// from the strategy averages.
    pub exclude_all_enforced: bool,
}

impl Default for EvaluationConfig {
    fn default() -> Self {
        Self {
            importance: ImportanceParams::default(),
            search: Search::Exact,
            stabilize: StabilizeParams::default(),
            seed: 0,
            behavior: BehaviorModel::default(),
            decision: DecisionConfig::default(),
            exclude_all_enforced: true,
        }
    }
}

impl EvaluationConfig {
    pub fn strategy(&self, kind: StrategyKind) -> StrategyConfig {
        StrategyConfig {
            kind,
            seed: self.seed,
            behavior: self.behavior,
            decision: self.decision,
            importance: self.importance,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VideoReport {
    pub video: String,
    pub fps: u32,
    pub truth_cvvp: Vec<f64>,
    pub pred_cvvp: Vec<f64>,
    pub truth_seconds: Vec<f64>,
    pub pred_seconds: Vec<f64>,
    pub truth_schedule: ModeSchedule,
    pub pred_schedule: ModeSchedule,
    pub error: CvvpErrorSummary,
    pub accuracy: f64,
    pub strategies: BTreeMap<StrategyKind, StrategyOutcome>,
    /// Frames where Auto-enforced importance exceeded the ground-truth
    /// CVVP. Always zero for a correct CVVP.
    pub upper_bound_violations: usize,
    pub excluded: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationReport {
    pub videos: Vec<VideoReport>,
    pub mean_cvvp_error: f64,
    pub error_cdf: Vec<(f64, f64)>,
    pub mean_accuracy: f64,
    /// Mean per-video importance over the videos that were not excluded.
    pub importance: BTreeMap<StrategyKind, f64>,
    pub excluded_videos: Vec<String>,
}

pub fn evaluate_video(input: &VideoInputs, config: &EvaluationConfig) -> Result<VideoReport> {
    let labels = &input.labels;
    let frames = labels.frame_count();
    if input.predictions.values.len() != frames {
        return Err(SimulateError::Misaligned {
            video: labels.video_id.clone(),
            what: "predictions",
            found: input.predictions.values.len(),
            expected: frames,
        });
    }
    let truth: Vec<f64> = cvvp::video_cvvp_series(labels, &config.importance, config.search)?
        .iter()
        .map(|f| f.cvvp)
        .collect();
    let pred = input.predictions.values.clone();
    let error = cvvp_error(&pred, &truth)?;

    let truth_seconds = stabilize::per_second_average(&truth, labels.fps)?;
    let pred_seconds = stabilize::per_second_average(&pred, labels.fps)?;
    let truth_schedule = stabilize::stabilize_video(
        &stabilize::normalize(&truth_seconds, config.stabilize.th_cvvp)?,
        &config.stabilize,
    )?;
    let pred_schedule = stabilize::stabilize_video(
        &stabilize::normalize(&pred_seconds, config.stabilize.th_cvvp)?,
        &config.stabilize,
    )?;
    let accuracy = inference_accuracy(&pred_schedule, &truth_schedule)?;

    let mut strategies = BTreeMap::new();
    for kind in StrategyKind::ALL {
        let outcome = simulate_strategy(
            labels,
            &input.saliency,
            &config.strategy(kind),
            Some(&pred_schedule),
            input.events.as_deref(),
        )?;
        strategies.insert(kind, outcome);
    }
    let upper_bound_violations = strategies[&StrategyKind::AutoEnforcedOnly]
        .per_frame
        .iter()
        .zip(&truth)
        .filter(|(imp, cv)| *imp > *cv)
        .count();
    let excluded = config.exclude_all_enforced && pred_schedule.all(true);

    Ok(VideoReport {
        video: labels.video_id.clone(),
        fps: labels.fps,
        truth_cvvp: truth,
        pred_cvvp: pred,
        truth_seconds: truth_seconds.values().to_vec(),
        pred_seconds: pred_seconds.values().to_vec(),
        truth_schedule,
        pred_schedule,
        error,
        accuracy,
        strategies,
        upper_bound_violations,
        excluded,
    })
}

/// Evaluate every video (in parallel) and aggregate. Videos are reported
/// in ascending id order.
pub fn evaluate(inputs: &[VideoInputs], config: &EvaluationConfig) -> Result<EvaluationReport> {
    config.stabilize.validate()?;
    let mut videos = inputs
        .par_iter()
        .map(|v| evaluate_video(v, config))
        .collect::<Result<Vec<_>>>()?;
    videos.sort_by(|a, b| a.video.cmp(&b.video));
    Ok(aggregate(videos))
}

pub fn aggregate(videos: Vec<VideoReport>) -> EvaluationReport {
    let all_errors: Vec<f64> = videos.iter().flat_map(|v| v.error.errors.iter().copied()).collect();
    let mean_cvvp_error = if all_errors.is_empty() {
        0.0
    } else {
        all_errors.iter().sum::<f64>() / all_errors.len() as f64
    };
    let mean_accuracy = if videos.is_empty() {
        0.0
    } else {
        videos.iter().map(|v| v.accuracy).sum::<f64>() / videos.len() as f64
    };
    let kept: Vec<&VideoReport> = videos.iter().filter(|v| !v.excluded).collect();
    let importance = StrategyKind::ALL
        .iter()
        .map(|k| {
            let mean = if kept.is_empty() {
                0.0
            } else {
                kept.iter().map(|v| v.strategies[k].mean).sum::<f64>() / kept.len() as f64
            };
            (*k, mean)
        })
        .collect();
    let excluded_videos = videos.iter().filter(|v| v.excluded).map(|v| v.video.clone()).collect();
    EvaluationReport {
        error_cdf: error_cdf(&all_errors),
        mean_cvvp_error,
        mean_accuracy,
        importance,
        excluded_videos,
        videos,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(y: f64, p: f64) -> ViewingDirection {
        ViewingDirection::new(y, p).unwrap()
    }

    fn labels(frames: Vec<Vec<ViewingDirection>>, fps: u32) -> LabelTraceSet {
        let n = frames[0].len() as u32;
        LabelTraceSet::new("v", fps, (0..n).collect(), frames).unwrap()
    }

    fn traj(dirs: Vec<ViewingDirection>, fps: u32) -> Trajectory {
        Trajectory {
            video_id: "v".into(),
            fps,
            source: "test".into(),
            directions: dirs,
        }
    }

    #[test]
    fn error_examples() {
        let truth = [0.5, 0.2, 0.9];
        let e = cvvp_error(&truth, &truth).unwrap();
        assert_eq!(e.mean, 0.0);
        assert!(e.cdf.iter().all(|(_, f)| *f == 1.0));
        let pred: Vec<f64> = truth.iter().map(|t: &f64| (t + 0.1).min(1.0)).collect();
        let e = cvvp_error(&pred, &truth).unwrap();
        assert!((e.mean - 0.1).abs() < 1e-12);
        assert_eq!(e.cdf[9].1, 0.0);
        assert_eq!(e.cdf[10].1, 1.0);
        assert!(cvvp_error(&[0.5], &[0.5, 0.5]).is_err());
    }

    #[test]
    fn accuracy_examples() {
        let s = |b: &[u8]| ModeSchedule::from_values(b.iter().map(|x| *x == 1).collect(), 1, 4);
        assert_eq!(inference_accuracy(&s(&[1, 0, 1, 0]), &s(&[1, 0, 1, 0])).unwrap(), 1.0);
        assert_eq!(inference_accuracy(&s(&[1, 1, 0, 0]), &s(&[1, 0, 0, 0])).unwrap(), 0.75);
        assert_eq!(inference_accuracy(&s(&[1, 1, 0, 0]), &s(&[0, 0, 1, 1])).unwrap(), 0.0);
        assert!(inference_accuracy(&s(&[1]), &s(&[1, 0])).is_err());
    }

    #[test]
    fn enforced_on_shared_label_scores_one() {
        let row = vec![d(10.0, 10.0); 4];
        let l = labels(vec![row; 6], 2);
        let t = traj(vec![d(10.0, 10.0); 6], 2);
        let out = simulate_strategy(&l, &t, &StrategyConfig::new(StrategyKind::AutoEnforcedOnly, 1), None, None)
            .unwrap();
        assert!(out.per_frame.iter().all(|v| *v == 1.0));
    }

    #[test]
    fn manual_viewers_see_their_own_labels() {
        let row = vec![d(0.0, 0.0), d(90.0, 0.0), d(180.0, 0.0)];
        let l = labels(vec![row; 10], 2);
        let t = traj(vec![d(0.0, -90.0); 10], 2);
        let mut cfg = StrategyConfig::new(StrategyKind::WeakManOnly, 3);
        cfg.behavior.switch_prob = 0.0;
        cfg.behavior.start_manual = true;
        let out = simulate_strategy(&l, &t, &cfg, None, None).unwrap();
        assert!(out.per_frame.iter().all(|v| *v == 1.0));
        assert!(out.modes.iter().flatten().all(|m| *m == ViewMode::Manual));

        cfg.behavior.manual_miss_prob = 1.0;
        let out = simulate_strategy(&l, &t, &cfg, None, None).unwrap();
        assert!(out.per_frame.iter().all(|v| *v == 0.0));
    }

    #[test]
    fn triple_view_requires_schedule() {
        let l = labels(vec![vec![d(0.0, 0.0)]; 2], 1);
        let t = traj(vec![d(0.0, 0.0); 2], 1);
        let cfg = StrategyConfig::new(StrategyKind::TripleView, 0);
        assert!(matches!(
            simulate_strategy(&l, &t, &cfg, None, None),
            Err(SimulateError::MissingSchedule)
        ));
        let short = ModeSchedule::constant(true, 1, 1, 1);
        assert!(matches!(
            simulate_strategy(&l, &t, &cfg, Some(&short), None),
            Err(SimulateError::Misaligned { .. })
        ));
    }

    #[test]
    fn misaligned_trajectory() {
        let l = labels(vec![vec![d(0.0, 0.0)]; 3], 1);
        let t = traj(vec![d(0.0, 0.0); 2], 1);
        let cfg = StrategyConfig::new(StrategyKind::AutoEnforcedOnly, 0);
        assert!(matches!(
            simulate_strategy(&l, &t, &cfg, None, None),
            Err(SimulateError::Misaligned { .. })
        ));
    }

    #[test]
    fn explicit_events_drive_modes() {
        let row = vec![d(0.0, 0.0), d(120.0, 0.0)];
        let l = labels(vec![row; 4], 1);
        let t = traj(vec![d(0.0, 0.0); 4], 1);
        let events = [ViewerEvent {
            viewer: 1,
            second: 2,
            kind: EventKind::RequestManual,
        }];
        let cfg = StrategyConfig::new(StrategyKind::WeakManOnly, 0);
        let out = simulate_strategy(&l, &t, &cfg, None, Some(&events)).unwrap();
        assert_eq!(out.per_frame, vec![0.5, 0.5, 1.0, 1.0]);
    }

    #[test]
    fn seeds_are_per_video() {
        assert_ne!(video_seed(0, "a"), video_seed(0, "b"));
        assert_eq!(video_seed(5, "a"), video_seed(5, "a"));
    }
}
