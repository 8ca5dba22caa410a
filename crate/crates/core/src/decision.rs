//! View-mode decision state machine.
//!
//! The stabilized schedule decides, per second, between Auto-enforced
//! (bit 1) and the Weak/Man regime (bit 0). Inside the Weak/Man regime each
//! viewer moves independently between Manual and Auto-optional on their
//! own requests, and an idle Manual viewer falls back to Auto-optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::stabilize::ModeSchedule;

pub type ViewerId = u32;

pub const DEFAULT_IDLE_TIMEOUT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViewMode {
    Manual,
    AutoOptional,
    AutoEnforced,
}

impl ViewMode {
    /// Whether the viewer watches the algorithm-found direction.
    pub fn is_automatic(self) -> bool {
        !matches!(self, ViewMode::Manual)
    }
}

/// Mode regime selected by one schedule bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    AutoEnforced,
    WeakManChoice,
}

pub fn mode_from_cvvp(bit: bool) -> Regime {
    if bit {
        Regime::AutoEnforced
    } else {
        Regime::WeakManChoice
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    RequestManual,
    RequestAutoOptional,
    SteeringInput,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct ViewerEvent {
    pub viewer: ViewerId,
    pub second: usize,
    pub kind: EventKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecisionConfig {
    /// Seconds without activity after which Manual falls back to
    /// Auto-optional; `None` never times out.
    pub idle_timeout: Option<usize>,
    /// When an Auto-enforced stretch ends, return to the mode the viewer
    /// had before it instead of the default Auto-optional.
    pub restore_after_enforced: bool,
}

impl Default for DecisionConfig {
    fn default() -> Self {
        Self {
            idle_timeout: Some(DEFAULT_IDLE_TIMEOUT),
            restore_after_enforced: false,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecisionError {
    #[error("viewer {viewer}: event at second {second} arrives after second {now}")]
    OutOfOrder {
        viewer: ViewerId,
        second: usize,
        now: usize,
    },
    #[error("viewer {viewer}: event at second {second} is beyond the {len}-second schedule")]
    BeyondHorizon {
        viewer: ViewerId,
        second: usize,
        len: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewerSessionState {
    pub viewer: ViewerId,
    pub current_mode: ViewMode,
    /// Second of the latest request or steering input.
    pub last_activity: usize,
    /// Weak/Man sub-state held while Auto-enforced is active.
    held_mode: ViewMode,
    /// Next second `step` expects.
    now: usize,
}

impl ViewerSessionState {
    pub fn new(viewer: ViewerId) -> Self {
        Self {
            viewer,
            current_mode: ViewMode::AutoOptional,
            last_activity: 0,
            held_mode: ViewMode::AutoOptional,
            now: 0,
        }
    }

    pub fn second(&self) -> usize {
        self.now
    }
}

/// What one viewer experienced during one second.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SecondRecord {
    pub mode: ViewMode,
    /// Requests that arrived while Auto-enforced was active.
    pub suppressed: Vec<EventKind>,
}

/// Advance one viewer by one second.
///
/// `events` are this viewer's events for the current second. Under bit 1
/// they are recorded as suppressed; under bit 0 they are applied in order
/// and then the idle timeout is checked.
pub fn step(
    state: &ViewerSessionState,
    bit: bool,
    events: &[ViewerEvent],
    config: &DecisionConfig,
) -> Result<(ViewerSessionState, SecondRecord), DecisionError> {
    let now = state.now;
    for e in events {
        if e.second != now {
            return Err(DecisionError::OutOfOrder {
                viewer: state.viewer,
                second: e.second,
                now,
            });
        }
    }
    let mut next = state.clone();
    next.now = now + 1;

    if bit {
        if state.current_mode != ViewMode::AutoEnforced {
            next.held_mode = state.current_mode;
        }
        next.current_mode = ViewMode::AutoEnforced;
        return Ok((
            next,
            SecondRecord {
                mode: ViewMode::AutoEnforced,
                suppressed: events.iter().map(|e| e.kind).collect(),
            },
        ));
    }

    if state.current_mode == ViewMode::AutoEnforced {
        next.current_mode = if config.restore_after_enforced {
            state.held_mode
        } else {
            ViewMode::AutoOptional
        };
        // a restored Manual viewer gets a fresh idle window
        next.last_activity = now;
    }
    for e in events {
        match e.kind {
            EventKind::RequestManual => next.current_mode = ViewMode::Manual,
            EventKind::RequestAutoOptional => next.current_mode = ViewMode::AutoOptional,
            EventKind::SteeringInput => {}
        }
        next.last_activity = now;
    }
    if next.current_mode == ViewMode::Manual {
        if let Some(timeout) = config.idle_timeout {
            if now - next.last_activity >= timeout {
                next.current_mode = ViewMode::AutoOptional;
            }
        }
    }
    Ok((
        next.clone(),
        SecondRecord {
            mode: next.current_mode,
            suppressed: Vec::new(),
        },
    ))
}

/// Per-viewer, per-second mode trace of one session.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SessionTrace {
    pub viewers: BTreeMap<ViewerId, Vec<SecondRecord>>,
}

impl SessionTrace {
    pub fn modes(&self, viewer: ViewerId) -> Option<Vec<ViewMode>> {
        self.viewers
            .get(&viewer)
            .map(|v| v.iter().map(|r| r.mode).collect())
    }
}

/// Replay the state machine for every viewer over the whole schedule.
///
/// Viewers are `viewers` plus anyone who appears in `events`. Events are
/// grouped per viewer and applied in time order (stable for equal
/// seconds).
pub fn run_session(
    schedule: &ModeSchedule,
    events: &[ViewerEvent],
    viewers: &[ViewerId],
    config: &DecisionConfig,
) -> Result<SessionTrace, DecisionError> {
    let mut per_viewer: BTreeMap<ViewerId, Vec<ViewerEvent>> =
        viewers.iter().map(|v| (*v, Vec::new())).collect();
    for e in events {
        if e.second >= schedule.len() {
            return Err(DecisionError::BeyondHorizon {
                viewer: e.viewer,
                second: e.second,
                len: schedule.len(),
            });
        }
        per_viewer.entry(e.viewer).or_default().push(*e);
    }
    let mut trace = SessionTrace::default();
    for (viewer, mut evs) in per_viewer {
        evs.sort_by_key(|e| e.second);
        let mut state = ViewerSessionState::new(viewer);
        let mut out = Vec::with_capacity(schedule.len());
        let mut cursor = 0;
        for (second, bit) in schedule.values().iter().enumerate() {
            let start = cursor;
            while cursor < evs.len() && evs[cursor].second == second {
                cursor += 1;
            }
            let (next, rec) = step(&state, *bit, &evs[start..cursor], config)?;
            state = next;
            out.push(rec);
        }
        trace.viewers.insert(viewer, out);
    }
    Ok(trace)
}
