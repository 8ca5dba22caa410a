use proptest::prelude::*;
use tripleview::stabilize::{
    binarize, normalize, per_second_average, schedule_from_frames, stabilize_bruteforce,
    stabilize_dp, stabilize_video, ModeSchedule, NormalizedSeries, StabilizeError, StabilizeParams,
};

fn params(t_min: usize, clip_len: usize) -> StabilizeParams {
    StabilizeParams::new(0.6, t_min, clip_len).unwrap()
}

fn series(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(
        prop_oneof![0.0..=1.0f64, (0u8..=4).prop_map(|q| f64::from(q) / 4.0)],
        1..max_len,
    )
}

/// A random feasible schedule of length `t` built from runs.
fn feasible(t: usize, t_min: usize, first: bool, cuts: &[usize]) -> ModeSchedule {
    if t < t_min {
        return ModeSchedule::constant(first, t, t_min, t);
    }
    let mut lengths = Vec::new();
    let mut rest = t;
    for c in cuts {
        let len = t_min + c % (t_min + 3);
        if rest >= len + t_min {
            lengths.push(len);
            rest -= len;
        }
    }
    lengths.push(rest);
    ModeSchedule::from_runs(first, &lengths, t_min, t)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn dp_beats_every_feasible_schedule(
        values in series(60),
        t_min in 1usize..8,
        first in any::<bool>(),
        cuts in proptest::collection::vec(0usize..100, 0..10),
    ) {
        let t = values.len();
        let norm = NormalizedSeries::new(values).unwrap();
        let best = stabilize_dp(&norm, &params(t_min, t.max(t_min))).unwrap();
        let other = feasible(t, t_min, first, &cuts);
        prop_assert!(other.is_feasible());
        prop_assert!(best.mse(&norm) <= other.mse(&norm) + 1e-12);
    }

    #[test]
    fn every_clip_is_feasible(values in series(300), t_min in 1usize..25, clip in 25usize..130) {
        let norm = NormalizedSeries::new(values).unwrap();
        let s = stabilize_video(&norm, &params(t_min, clip)).unwrap();
        prop_assert_eq!(s.len(), norm.len());
        prop_assert!(s.is_feasible());
    }

    #[test]
    fn stabilizing_a_schedule_returns_it(
        t in 1usize..80, t_min in 1usize..10, first in any::<bool>(),
        cuts in proptest::collection::vec(0usize..100, 0..10),
    ) {
        let s = feasible(t, t_min, first, &cuts);
        let as_series: Vec<f64> = s.values().iter().map(|b| f64::from(u8::from(*b))).collect();
        let norm = NormalizedSeries::new(as_series).unwrap();
        let again = stabilize_dp(&norm, &params(t_min, t.max(t_min))).unwrap();
        prop_assert_eq!(again.values(), s.values());
        prop_assert_eq!(again.mse(&norm), 0.0);
    }

    #[test]
    fn dp_matches_brute_force(values in series(14), t_min in 1usize..5) {
        let t = values.len();
        let norm = NormalizedSeries::new(values).unwrap();
        let p = params(t_min, t.max(t_min));
        let bf = stabilize_bruteforce(&norm, &p, u128::MAX).unwrap();
        prop_assert_eq!(stabilize_dp(&norm, &p).unwrap(), bf.schedule);
    }

    #[test]
    fn normalization_is_monotone_and_bounded(a in 0.0..=1.0f64, b in 0.0..=1.0f64, th in 0.05..0.95f64) {
        let s = per_second_average(&[a, b], 1).unwrap();
        let n = normalize(&s, th).unwrap();
        let (x, y) = (n.values()[0], n.values()[1]);
        prop_assert!((0.0..=1.0).contains(&x) && (0.0..=1.0).contains(&y));
        prop_assert_eq!(a <= b, x <= y || (a - b).abs() < 1e-15);
        prop_assert_eq!(x >= 0.5, a >= th);
    }
}

#[test]
fn oscillation_is_smoothed_into_long_runs() {
    let fps = 5;
    let frames: Vec<f64> = (0..120 * fps)
        .map(|f| if (f / fps / 8) % 2 == 0 { 0.9 } else { 0.3 })
        .collect();
    let (norm, schedule) = schedule_from_frames(&frames, fps as u32, &StabilizeParams::default()).unwrap();
    let raw = binarize(&norm);
    let raw_runs = ModeSchedule::from_values(raw, 1, 120).segments().len();
    assert_eq!(raw_runs, 15);
    assert!(schedule.segments().iter().all(|s| s.len >= 20));
    assert!(schedule.segments().len() < raw_runs);
}

#[test]
fn constant_input_gives_constant_schedule() {
    for (x, want) in [(0.9, true), (0.2, false), (0.6, true)] {
        let (_, s) = schedule_from_frames(&vec![x; 300], 1, &StabilizeParams::default()).unwrap();
        assert!(s.all(want), "{x}");
    }
}

#[test]
fn budget_guards_long_clips() {
    let norm = NormalizedSeries::new(vec![0.5; 120]).unwrap();
    let err = stabilize_bruteforce(&norm, &params(2, 120), 1_000_000).unwrap_err();
    assert!(matches!(err, StabilizeError::BudgetExceeded { .. }), "{err}");
    let ok = stabilize_bruteforce(&norm, &params(20, 120), 1_000_000).unwrap();
    assert_eq!(ok.candidates, 49_882);
}
