mod common;

use proptest::prelude::*;
use tripleview::cvvp::{
    frame_cvvp, overall_importance, video_cvvp_series, CvvpError, ImportanceParams, Search,
};
use tripleview::geometry::{Rotation, ViewingDirection};
use tripleview::traces;

use common::{dir, fixtures, octahedron};

fn direction() -> impl Strategy<Value = ViewingDirection> {
    (-180.0..180.0f64, -90.0..=90.0f64).prop_map(|(y, p)| dir(y, p))
}

fn label_set() -> impl Strategy<Value = Vec<ViewingDirection>> {
    prop_oneof![
        proptest::collection::vec(direction(), 1..8),
        // clustered sets reach the interesting middle range
        (direction(), proptest::collection::vec((0.0..360.0f64, 0.0..50.0f64), 1..8)).prop_map(
            |(c, offsets)| {
                offsets
                    .into_iter()
                    .map(|(b, d)| tripleview::geometry::offset_direction(c, b, d))
                    .collect()
            }
        ),
    ]
}

fn exact(labels: &[ViewingDirection], th: f64) -> f64 {
    frame_cvvp(labels, &ImportanceParams::new(th).unwrap(), Search::Exact)
        .unwrap()
        .cvvp
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cvvp_lies_between_one_over_n_and_one(labels in label_set()) {
        let c = exact(&labels, 30.0);
        prop_assert!(c >= 1.0 / labels.len() as f64 && c <= 1.0);
    }

    #[test]
    fn argmax_direction_achieves_the_cvvp(labels in label_set()) {
        let p = ImportanceParams::default();
        let f = frame_cvvp(&labels, &p, Search::Exact).unwrap();
        prop_assert_eq!(overall_importance(f.argmax_direction, &labels, &p).unwrap(), f.cvvp);
        prop_assert_eq!(f.cvvp, f.hits as f64 / labels.len() as f64);
    }

    #[test]
    fn no_direction_beats_the_cvvp(labels in label_set(), view in direction()) {
        let p = ImportanceParams::default();
        prop_assert!(overall_importance(view, &labels, &p).unwrap() <= exact(&labels, 30.0));
    }

    #[test]
    fn rotation_invariant(labels in label_set(), axis in direction(), angle in 0.0..360.0f64) {
        let r = Rotation::about_axis(axis.to_unit_vector(), angle);
        let rotated: Vec<_> = labels.iter().map(|d| r.apply_direction(*d)).collect();
        let p = ImportanceParams::default();
        // labels sitting exactly on a cap boundary may flip by rounding
        let a = frame_cvvp(&labels, &p, Search::Exact).unwrap().hits as i64;
        let b = frame_cvvp(&rotated, &p, Search::Exact).unwrap().hits as i64;
        prop_assert!((a - b).abs() <= 1, "{} vs {}", a, b);
    }

    #[test]
    fn permutation_invariant(mut labels in label_set(), seed in any::<u64>()) {
        let before = exact(&labels, 30.0);
        let n = labels.len();
        labels.rotate_left((seed as usize) % n);
        labels.reverse();
        prop_assert_eq!(exact(&labels, 30.0), before);
    }

    #[test]
    fn monotone_in_threshold(labels in label_set(), a in 1.0..90.0f64, b in 1.0..90.0f64) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(exact(&labels, lo) <= exact(&labels, hi));
    }

    #[test]
    fn grid_never_exceeds_exact(labels in label_set()) {
        let p = ImportanceParams::default();
        let grid = frame_cvvp(&labels, &p, Search::GridOnly(2.0)).unwrap().cvvp;
        let both = frame_cvvp(&labels, &p, Search::ExactWithGrid(2.0)).unwrap().cvvp;
        let e = exact(&labels, 30.0);
        prop_assert!(grid <= e);
        prop_assert_eq!(both, e);
    }
}

#[test]
fn two_of_six_and_six_of_six() {
    let v = octahedron();
    let two = [v[0], v[0], v[1], v[2], v[3], v[4]];
    assert_eq!(exact(&two, 30.0), 2.0 / 6.0);
    assert_eq!(exact(&[v[3]; 6], 30.0), 1.0);
}

#[test]
fn poles_and_seam_are_handled() {
    // across the yaw seam
    assert_eq!(exact(&[dir(179.0, 0.0), dir(-179.0, 0.0)], 30.0), 1.0);
    // straddling the north pole
    assert_eq!(exact(&[dir(0.0, 70.0), dir(180.0, 70.0)], 30.0), 1.0);
    assert_eq!(exact(&[dir(0.0, 60.0), dir(180.0, 60.0)], 30.0), 0.5);
}

#[test]
fn empty_frame_is_an_error() {
    assert_eq!(
        frame_cvvp(&[], &ImportanceParams::default(), Search::Exact).unwrap_err(),
        CvvpError::NoLabels
    );
}

#[test]
fn fixture_series() {
    let p = ImportanceParams::default();
    let identical = traces::load_labels(fixtures().join("cvvp/identical.jsonl")).unwrap();
    let series = video_cvvp_series(&identical, &p, Search::Exact).unwrap();
    assert_eq!(series.len(), 10);
    assert!(series.iter().all(|f| f.cvvp == 1.0));
    let scattered = traces::load_labels(fixtures().join("cvvp/scattered.jsonl")).unwrap();
    let series = video_cvvp_series(&scattered, &p, Search::Exact).unwrap();
    assert!(series.iter().all(|f| f.cvvp == 1.0 / 6.0));
    assert!(series.iter().enumerate().all(|(i, f)| f.frame_id == i));
}
