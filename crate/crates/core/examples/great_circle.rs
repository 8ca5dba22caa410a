//! Great-circle distances between viewing directions, including across
//! the yaw seam and over the poles.
//!
//! ```text
//! cargo run --example great_circle
//! ```

use tripleview::geometry::{great_circle_distance, offset_direction, ViewingDirection};

fn main() {
    let d = |yaw, pitch| ViewingDirection::new(yaw, pitch).unwrap();
    let pairs = [
        ("front to right", d(0.0, 0.0), d(90.0, 0.0)),
        ("across the seam", d(179.0, 0.0), d(-179.0, 0.0)),
        ("over the pole", d(0.0, 80.0), d(180.0, 80.0)),
        ("opposite", d(30.0, 10.0), d(-150.0, -10.0)),
        ("yaw 540 is yaw 180", d(540.0, 0.0), d(180.0, 0.0)),
    ];
    for (name, a, b) in pairs {
        println!(
            "{name:<20} ({:>7.2}, {:>6.2}) -> ({:>7.2}, {:>6.2})  {:>7.3} deg",
            a.yaw(),
            a.pitch(),
            b.yaw(),
            b.pitch(),
            great_circle_distance(a, b)
        );
    }

    let start = d(0.0, 0.0);
    for bearing in [0.0, 90.0, 180.0, 270.0] {
        let p = offset_direction(start, bearing, 30.0);
        println!("30 deg at bearing {bearing:>5}: yaw {:>7.2} pitch {:>6.2}", p.yaw(), p.pitch());
    }
}
