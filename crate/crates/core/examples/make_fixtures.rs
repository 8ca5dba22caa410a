//! Regenerate the synthetic fixtures under `crates/core/fixtures/`.
//!
//! ```text
//! cargo run --example make_fixtures [OUT_DIR]
//! ```
//!
//! Output layout:
//!
//! ```text
//! videos/{labels,trajectory,predictions}/{alpha,beta}.jsonl
//! cvvp/{identical,scattered}.jsonl       label files
//! stabilize/{oscillating,constant}.jsonl prediction files, 120 s at 5 fps
//! ```

use std::f64::consts::TAU;
use std::fs;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tripleview::cvvp::{video_cvvp_series, ImportanceParams, Search};
use tripleview::geometry::{offset_direction, ViewingDirection};
use tripleview::traces::{self, CvvpPredictionFile, LabelTraceSet, Trajectory};

const FPS: u32 = 5;
const VIEWERS: usize = 6;

fn round4(x: f64) -> f64 {
    (x * 1e4).round() / 1e4
}

fn dir(yaw: f64, pitch: f64) -> ViewingDirection {
    let d = ViewingDirection::new(yaw, pitch).expect("valid direction");
    ViewingDirection::new(round4(d.yaw()), round4(d.pitch()).clamp(-90.0, 90.0)).unwrap()
}

fn snap(d: ViewingDirection) -> ViewingDirection {
    dir(d.yaw(), d.pitch())
}

/// Per-viewer smooth wobble: (bearing phase, bearing rate, radius phase).
struct Wobble {
    phase: f64,
    rate: f64,
    radius_phase: f64,
}

impl Wobble {
    fn at(&self, t: f64, max_radius: f64) -> (f64, f64) {
        let bearing = (self.phase + self.rate * t) * 360.0 / TAU;
        let radius = max_radius * 0.5 * (1.0 + (self.radius_phase + 0.7 * t).sin());
        (bearing, radius)
    }
}

fn wobbles(rng: &mut ChaCha8Rng) -> Vec<Wobble> {
    (0..VIEWERS)
        .map(|_| Wobble {
            phase: rng.random::<f64>() * TAU,
            rate: 0.2 + rng.random::<f64>() * 0.6,
            radius_phase: rng.random::<f64>() * TAU,
        })
        .collect()
}

/// Anchors for divergent periods: a close pair plus four directions far
/// from everything else.
fn anchors(spin: f64) -> [ViewingDirection; VIEWERS] {
    [
        dir(spin, 0.0),
        dir(spin + 12.0, 5.0),
        dir(spin + 90.0, 0.0),
        dir(spin + 180.0, 0.0),
        dir(spin - 90.0, 0.0),
        dir(spin, 80.0),
    ]
}

/// Build one video. `divergent(second)` selects the period type.
fn video(
    id: &str,
    seconds: usize,
    seed: u64,
    divergent: impl Fn(usize) -> bool,
) -> (LabelTraceSet, Trajectory, CvvpPredictionFile) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wob = wobbles(&mut rng);
    let mut frames = Vec::new();
    let mut saliency = Vec::new();
    for f in 0..seconds * FPS as usize {
        let t = f as f64 / FPS as f64;
        let center = dir(-60.0 + 0.5 * t, 10.0 * (t / 20.0).sin());
        let labels: Vec<ViewingDirection> = if divergent(f / FPS as usize) {
            let a = anchors(0.3 * t);
            (0..VIEWERS)
                .map(|v| {
                    let (b, r) = wob[v].at(t, 5.0);
                    snap(offset_direction(a[v], b, r))
                })
                .collect()
        } else {
            (0..VIEWERS)
                .map(|v| {
                    let (b, r) = wob[v].at(t, 12.0);
                    snap(offset_direction(center, b, r))
                })
                .collect()
        };
        let s = if divergent(f / FPS as usize) {
            labels[0]
        } else {
            snap(offset_direction(center, 45.0, 5.0))
        };
        saliency.push(s);
        frames.push(labels);
    }
    let labels = LabelTraceSet::new(id, FPS, (0..VIEWERS as u32).collect(), frames).unwrap();
    let truth = video_cvvp_series(&labels, &ImportanceParams::default(), Search::Exact).unwrap();
    let floor = 1.0 / VIEWERS as f64;
    let values = truth
        .iter()
        .map(|fc| {
            let noise = (rng.random::<f64>() - 0.5) * 0.3;
            round4((fc.cvvp + noise).clamp(floor, 1.0))
        })
        .collect();
    let preds = CvvpPredictionFile::new(id, FPS, values).unwrap();
    let traj = Trajectory {
        video_id: id.to_string(),
        fps: FPS,
        source: "synthetic".to_string(),
        directions: saliency,
    };
    (labels, traj, preds)
}

fn constant_labels(id: &str, frames: usize, labels: Vec<ViewingDirection>) -> LabelTraceSet {
    let viewers = (0..labels.len() as u32).collect();
    LabelTraceSet::new(id, FPS, viewers, vec![labels; frames]).unwrap()
}

fn main() {
    let out: PathBuf = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"));
    for sub in ["videos/labels", "videos/trajectory", "videos/predictions", "cvvp", "stabilize"] {
        fs::create_dir_all(out.join(sub)).unwrap();
    }

    // 30 s convergent / divergent alternation
    let alpha = video("alpha", 150, 1, |s| (s / 30) % 2 == 1);
    // convergent except a 10 s divergent blip
    let beta = video("beta", 120, 2, |s| (60..70).contains(&s));
    for (id, (labels, traj, preds)) in [("alpha", alpha), ("beta", beta)] {
        let file = format!("{id}.jsonl");
        traces::save_labels(out.join("videos/labels").join(&file), &labels).unwrap();
        traces::save_trajectory(out.join("videos/trajectory").join(&file), &traj).unwrap();
        traces::save_predictions(out.join("videos/predictions").join(&file), &preds).unwrap();
    }

    let identical = constant_labels("identical", 10, vec![dir(40.0, 20.0); VIEWERS]);
    traces::save_labels(out.join("cvvp/identical.jsonl"), &identical).unwrap();
    let scattered = constant_labels(
        "scattered",
        10,
        vec![
            dir(0.0, 0.0),
            dir(90.0, 0.0),
            dir(180.0, 0.0),
            dir(-90.0, 0.0),
            dir(0.0, 90.0),
            dir(0.0, -90.0),
        ],
    );
    traces::save_labels(out.join("cvvp/scattered.jsonl"), &scattered).unwrap();

    let frames = 120 * FPS as usize;
    let oscillating = (0..frames)
        .map(|f| if (f / FPS as usize / 8).is_multiple_of(2) { 0.9 } else { 0.3 })
        .collect();
    let oscillating = CvvpPredictionFile::new("oscillating", FPS, oscillating).unwrap();
    traces::save_predictions(out.join("stabilize/oscillating.jsonl"), &oscillating).unwrap();
    let constant = CvvpPredictionFile::new("constant", FPS, vec![0.9; frames]).unwrap();
    traces::save_predictions(out.join("stabilize/constant.jsonl"), &constant).unwrap();

    println!("fixtures written to {}", out.display());
}
