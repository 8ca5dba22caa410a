//! Replay the per-viewer mode state machine over a short schedule.
//!
//! ```text
//! cargo run --example decision_state_machine
//! ```

use tripleview::decision::{run_session, DecisionConfig, EventKind, ViewMode, ViewerEvent};
use tripleview::stabilize::ModeSchedule;

fn letter(m: ViewMode) -> char {
    match m {
        ViewMode::Manual => 'M',
        ViewMode::AutoOptional => 'o',
        ViewMode::AutoEnforced => 'E',
    }
}

fn main() {
    let bits: Vec<bool> = "000000111110000000000000000000".chars().map(|c| c == '1').collect();
    let schedule = ModeSchedule::from_values(bits.clone(), 1, bits.len());
    let ev = |viewer, second, kind| ViewerEvent { viewer, second, kind };
    let events = [
        // viewer 0 takes over, gets pre-empted, then takes over again
        ev(0, 2, EventKind::RequestManual),
        ev(0, 7, EventKind::RequestManual),
        ev(0, 12, EventKind::RequestManual),
        // viewer 1 keeps steering so Manual never idles out
        ev(1, 1, EventKind::RequestManual),
        ev(1, 14, EventKind::SteeringInput),
        ev(1, 22, EventKind::SteeringInput),
        // viewer 2 goes back to the automatic view by hand
        ev(2, 3, EventKind::RequestManual),
        ev(2, 4, EventKind::RequestAutoOptional),
    ];
    let config = DecisionConfig::default();
    let trace = run_session(&schedule, &events, &[0, 1, 2, 3], &config).unwrap();

    let line: String = bits.iter().map(|b| if *b { '1' } else { '0' }).collect();
    println!("schedule  {line}");
    for (viewer, records) in &trace.viewers {
        let modes: String = records.iter().map(|r| letter(r.mode)).collect();
        let suppressed: usize = records.iter().map(|r| r.suppressed.len()).sum();
        println!("viewer {viewer}  {modes}  ({suppressed} suppressed)");
    }
    println!("M manual, o auto-optional, E auto-enforced; idle timeout {:?} s", config.idle_timeout);
}
