#![allow(dead_code)]

use std::path::{Path, PathBuf};

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use tripleview::geometry::{offset_direction, ViewingDirection};
use tripleview::simulate::VideoInputs;
use tripleview::traces;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn fixture_video(id: &str) -> VideoInputs {
    let dir = fixtures().join("videos");
    let file = format!("{id}.jsonl");
    VideoInputs {
        labels: traces::load_labels(dir.join("labels").join(&file)).unwrap(),
        saliency: traces::load_trajectory(dir.join("trajectory").join(&file)).unwrap(),
        predictions: traces::load_predictions(dir.join("predictions").join(&file)).unwrap(),
        events: None,
    }
}

pub fn dir(yaw: f64, pitch: f64) -> ViewingDirection {
    ViewingDirection::new(yaw, pitch).unwrap()
}

/// Uniform on the sphere.
pub fn uniform_direction(rng: &mut ChaCha8Rng) -> ViewingDirection {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let yaw: f64 = rng.random_range(-180.0..180.0);
    dir(yaw, z.asin().to_degrees())
}

/// `n` directions within `spread` degrees of a random center.
pub fn clustered(rng: &mut ChaCha8Rng, n: usize, spread: f64) -> Vec<ViewingDirection> {
    let c = uniform_direction(rng);
    (0..n)
        .map(|_| {
            let bearing = rng.random_range(0.0..360.0);
            let dist = rng.random_range(0.0..spread);
            offset_direction(c, bearing, dist)
        })
        .collect()
}

/// The six octahedron vertices, pairwise 90 or 180 degrees apart.
pub fn octahedron() -> [ViewingDirection; 6] {
    [
        dir(0.0, 0.0),
        dir(90.0, 0.0),
        dir(180.0, 0.0),
        dir(-90.0, 0.0),
        dir(0.0, 90.0),
        dir(0.0, -90.0),
    ]
}
