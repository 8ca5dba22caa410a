//! Ground-truth CVVP of a label file, frame by frame.
//!
//! ```text
//! cargo run --example ground_truth_cvvp [LABELS.jsonl]
//! ```
//!
//! Defaults to the bundled `alpha` fixture and prints one line per second
//! with the best direction and how many viewers it serves.

use std::path::PathBuf;

use tripleview::cvvp::{video_cvvp_series, ImportanceParams, Search};
use tripleview::traces;

fn main() {
    let path = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| {
        PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/videos/labels/alpha.jsonl")
    });
    let labels = traces::load_labels(&path).unwrap();
    let series = video_cvvp_series(&labels, &ImportanceParams::default(), Search::Exact).unwrap();
    println!(
        "{}: {} viewers, {} frames at {} fps",
        labels.video_id,
        labels.viewer_count(),
        labels.frame_count(),
        labels.fps
    );
    for f in series.iter().step_by(labels.fps as usize) {
        let d = f.argmax_direction;
        println!(
            "second {:>4}  cvvp {:.3}  ({}/{} viewers)  best view yaw {:>7.2} pitch {:>6.2}",
            f.frame_id / labels.fps as usize,
            f.cvvp,
            f.hits,
            labels.viewer_count(),
            d.yaw(),
            d.pitch()
        );
    }
}
