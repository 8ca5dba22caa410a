use std::io::Cursor;

use proptest::prelude::*;
use tripleview::decision::{
    mode_from_cvvp, run_session, step, DecisionConfig, DecisionError, EventKind, Regime, ViewMode,
    ViewerEvent, ViewerSessionState,
};
use tripleview::stabilize::ModeSchedule;
use tripleview::traces;

use ViewMode::{AutoEnforced as E, AutoOptional as O, Manual as M};

fn ev(viewer: u32, second: usize, kind: EventKind) -> ViewerEvent {
    ViewerEvent {
        viewer,
        second,
        kind,
    }
}

fn schedule(bits: &[u8]) -> ModeSchedule {
    ModeSchedule::from_values(bits.iter().map(|b| *b == 1).collect(), 1, bits.len())
}

fn never_idle() -> DecisionConfig {
    DecisionConfig {
        idle_timeout: None,
        ..DecisionConfig::default()
    }
}

#[test]
fn regimes() {
    assert_eq!(mode_from_cvvp(true), Regime::AutoEnforced);
    assert_eq!(mode_from_cvvp(false), Regime::WeakManChoice);
}

#[test]
fn requests_during_enforcement_have_no_effect() {
    let events = [ev(0, 0, EventKind::RequestManual), ev(0, 1, EventKind::RequestManual)];
    let trace = run_session(&schedule(&[1, 1, 0]), &events, &[0], &never_idle()).unwrap();
    assert_eq!(trace.modes(0).unwrap(), vec![E, E, O]);
    let recs = &trace.viewers[&0];
    assert_eq!(recs[0].suppressed, vec![EventKind::RequestManual]);
    assert_eq!(recs[1].suppressed, vec![EventKind::RequestManual]);
    assert!(recs[2].suppressed.is_empty());
}

#[test]
fn manual_idles_back_after_default_timeout() {
    let events = [ev(0, 0, EventKind::RequestManual)];
    let trace = run_session(&schedule(&[0; 12]), &events, &[0], &DecisionConfig::default()).unwrap();
    let modes = trace.modes(0).unwrap();
    assert!(modes[..10].iter().all(|m| *m == M));
    assert_eq!(modes[10], O);
    assert_eq!(modes[11], O);
}

#[test]
fn steering_keeps_manual_alive() {
    let mut events = vec![ev(0, 0, EventKind::RequestManual)];
    events.extend((5..30).step_by(5).map(|s| ev(0, s, EventKind::SteeringInput)));
    let trace = run_session(&schedule(&[0; 30]), &events, &[0], &DecisionConfig::default()).unwrap();
    assert!(trace.modes(0).unwrap().iter().all(|m| *m == M));
}

#[test]
fn enforcement_preempts_manual_and_releases_to_auto_optional() {
    let events = [ev(0, 0, EventKind::RequestManual)];
    let trace = run_session(&schedule(&[0, 0, 1, 1, 0, 0]), &events, &[0], &never_idle()).unwrap();
    assert_eq!(trace.modes(0).unwrap(), vec![M, M, E, E, O, O]);
    let restore = DecisionConfig {
        restore_after_enforced: true,
        ..never_idle()
    };
    let trace = run_session(&schedule(&[0, 0, 1, 1, 0, 0]), &events, &[0], &restore).unwrap();
    assert_eq!(trace.modes(0).unwrap(), vec![M, M, E, E, M, M]);
}

#[test]
fn session_examples() {
    let cfg = never_idle();
    let ones = run_session(&schedule(&[1; 5]), &[], &[0, 1], &cfg).unwrap();
    assert!(ones.viewers.values().flatten().all(|r| r.mode == E));
    let zeros = run_session(&schedule(&[0; 5]), &[], &[0, 1], &cfg).unwrap();
    assert!(zeros.viewers.values().flatten().all(|r| r.mode == O));
    let trace = run_session(&schedule(&[0; 6]), &[ev(0, 3, EventKind::RequestManual)], &[0], &cfg).unwrap();
    assert_eq!(trace.modes(0).unwrap(), vec![O, O, O, M, M, M]);
}

#[test]
fn errors() {
    let late = [ev(0, 9, EventKind::SteeringInput)];
    assert!(matches!(
        run_session(&schedule(&[0; 5]), &late, &[0], &never_idle()),
        Err(DecisionError::BeyondHorizon { second: 9, .. })
    ));
    let state = ViewerSessionState::new(0);
    let early = [ev(0, 3, EventKind::SteeringInput)];
    assert!(matches!(
        step(&state, false, &early, &never_idle()),
        Err(DecisionError::OutOfOrder { .. })
    ));
}

#[test]
fn mode_trace_file_lists_every_second() {
    let events = [ev(1, 0, EventKind::RequestManual)];
    let trace = run_session(&schedule(&[1, 0, 0]), &events, &[0, 1], &never_idle()).unwrap();
    let mut buf = Vec::new();
    traces::write_mode_trace(&mut buf, "v", &trace).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], r#"{"header":{"video":"v"}}"#);
    assert_eq!(lines.len(), 1 + 2 * 3);
    assert!(lines.contains(&r#"{"viewer":1,"second":0,"mode":"auto_enforced","suppressed":["request_manual"]}"#));
    let events_back = traces::read_events(Cursor::new(b"{\"viewer\":1,\"second\":0,\"kind\":\"request_manual\"}\n".to_vec()), None).unwrap();
    assert_eq!(events_back, events);
}

fn event() -> impl Strategy<Value = ViewerEvent> {
    (0u32..3, 0usize..40, 0usize..3).prop_map(|(v, s, k)| {
        ev(v, s, [EventKind::RequestManual, EventKind::RequestAutoOptional, EventKind::SteeringInput][k])
    })
}

proptest! {
    #[test]
    fn deterministic_and_supreme(
        bits in proptest::collection::vec(0u8..2, 40),
        mut events in proptest::collection::vec(event(), 0..40),
        timeout in proptest::option::of(1usize..15),
    ) {
        events.sort_by_key(|e| e.second);
        let cfg = DecisionConfig { idle_timeout: timeout, restore_after_enforced: false };
        let s = schedule(&bits);
        let a = run_session(&s, &events, &[0, 1, 2], &cfg).unwrap();
        let b = run_session(&s, &events, &[0, 1, 2], &cfg).unwrap();
        prop_assert_eq!(&a, &b);
        for recs in a.viewers.values() {
            prop_assert_eq!(recs.len(), 40);
            for (r, bit) in recs.iter().zip(&bits) {
                prop_assert_eq!(r.mode == E, *bit == 1);
            }
        }
    }
}
