//! The full pipeline through the command-line entry points: ground truth,
//! stabilization, mode decisions and the strategy report.
//!
//! ```text
//! cargo run --release --example end_to_end [OUT_DIR]
//! ```

use std::path::{Path, PathBuf};

use tripleview::cli::{cmd_cvvp_gt, cmd_decide, cmd_simulate, cmd_stabilize, RunConfig};
use tripleview::report::{format_summary, Summary};

fn main() {
    let out = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "end_to_end_out".into()));
    std::fs::create_dir_all(&out).unwrap();
    let videos = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/videos");
    let config = RunConfig { fps: 5, ..RunConfig::default() };

    let gt = out.join("alpha_cvvp_gt.jsonl");
    let frames = cmd_cvvp_gt(&videos.join("labels/alpha.jsonl"), &gt, &config).unwrap();
    println!("ground truth: {frames} frames -> {}", gt.display());

    for (name, source) in [("truth", gt.clone()), ("pred", videos.join("predictions/alpha.jsonl"))] {
        let sched = out.join(format!("alpha_schedule_{name}.jsonl"));
        cmd_stabilize(&source, &sched, &config, false).unwrap();
        let modes = out.join(format!("alpha_modes_{name}.jsonl"));
        cmd_decide(&sched, None, &[0, 1, 2, 3, 4, 5], &modes, &config).unwrap();
        println!("{name}: schedule {}, modes {}", sched.display(), modes.display());
    }

    let report_dir = out.join("report");
    let report = cmd_simulate(
        &videos.join("labels"),
        &videos.join("trajectory"),
        &videos.join("predictions"),
        None,
        &report_dir,
        &config,
    )
    .unwrap();
    print!("{}", format_summary(&Summary::from_report(&report)));
    println!("report files in {}", report_dir.display());
}
