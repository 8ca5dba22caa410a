//! Turn an oscillating CVVP trace into a stable per-second schedule and
//! compare the DP solver with exhaustive search.
//!
//! ```text
//! cargo run --release --example stabilize_schedule
//! ```

use tripleview::stabilize::{
    binarize, candidate_count, normalize, per_second_average, stabilize_bruteforce, stabilize_video,
    ModeSchedule, StabilizeParams, DEFAULT_BRUTE_FORCE_BUDGET,
};

fn show(name: &str, bits: &[bool]) {
    let s: String = bits.iter().map(|b| if *b { '1' } else { '0' }).collect();
    println!("{name:<10} {s}");
}

fn main() {
    let params = StabilizeParams::default();
    // 120 seconds at 30 fps: CVVP swings around the threshold
    let frames: Vec<f64> = (0..120 * 30)
        .map(|f| {
            let t = f as f64 / 30.0;
            (0.6 + 0.3 * (t / 6.0).sin() + 0.15 * (t * 1.7).sin()).clamp(0.05, 1.0)
        })
        .collect();
    let seconds = per_second_average(&frames, 30).unwrap();
    let norm = normalize(&seconds, params.th_cvvp).unwrap();

    let raw = binarize(&norm);
    let dp = stabilize_video(&norm, &params).unwrap();
    show("threshold", &raw);
    show("stable", dp.values());
    println!(
        "runs: {} raw, {} stable; mse {:.4} raw, {:.4} stable",
        ModeSchedule::from_values(raw.clone(), 1, 120).segments().len(),
        dp.segments().len(),
        ModeSchedule::from_values(raw, 1, 120).mse(&norm),
        dp.mse(&norm)
    );

    let bf = stabilize_bruteforce(&norm, &params, DEFAULT_BRUTE_FORCE_BUDGET).unwrap();
    println!(
        "exhaustive search: {} candidates (closed form {:?}), same schedule: {}",
        bf.candidates,
        candidate_count(120, params.t_min),
        bf.schedule == dp
    );
}
