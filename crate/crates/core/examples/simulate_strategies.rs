//! Compare the three mode-selection strategies on the bundled fixtures.
//!
//! ```text
//! cargo run --release --example simulate_strategies
//! ```

use std::path::Path;

use tripleview::simulate::{evaluate, EvaluationConfig, StrategyKind, VideoInputs};
use tripleview::traces;

fn main() {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/videos");
    let inputs: Vec<VideoInputs> = ["alpha", "beta"]
        .iter()
        .map(|id| {
            let f = format!("{id}.jsonl");
            VideoInputs {
                labels: traces::load_labels(root.join("labels").join(&f)).unwrap(),
                saliency: traces::load_trajectory(root.join("trajectory").join(&f)).unwrap(),
                predictions: traces::load_predictions(root.join("predictions").join(&f)).unwrap(),
                events: None,
            }
        })
        .collect();

    for seed in 0..3 {
        let config = EvaluationConfig { seed, ..EvaluationConfig::default() };
        let report = evaluate(&inputs, &config).unwrap();
        print!("seed {seed}:");
        for kind in StrategyKind::ALL {
            print!("  {} {:.4}", kind.name(), report.importance[&kind]);
        }
        println!("  (excluded: {:?})", report.excluded_videos);
    }
}
