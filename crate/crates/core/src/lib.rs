//! View-mode decision pipeline for 360-degree video watched by many viewers
//! at once.
//!
//! Each second of a video is played either in *Auto-enforced* mode (every
//! viewer sees the algorithm-found view) or in the *Weak/Man* regime, where
//! each viewer chooses between that view (*Auto-optional*) and steering
//! themselves (*Manual*). The choice is driven by the CVVP of each frame,
//! the largest fraction of viewers whose preferred direction one view can
//! serve.
//!
//! * [`geometry`]: viewing directions, great-circle distance, cubemap and
//!   viewport projections.
//! * [`traces`]: JSON-lines file formats for labels, trajectories, CVVP
//!   predictions, schedules, events and mode traces.
//! * [`cvvp`]: content importance and exact ground-truth CVVP.
//! * [`stabilize`]: per-second averaging, normalization and
//!   minimum-duration binarization into a [`stabilize::ModeSchedule`].
//! * [`decision`]: the per-viewer mode state machine.
//! * [`simulate`]: trace-driven evaluation of mode-selection strategies.
//! * [`report`] and [`cli`]: output files and the `tripleview` binary.

pub mod cli;
pub mod cvvp;
pub mod decision;
pub mod geometry;
pub mod report;
pub mod simulate;
pub mod stabilize;
pub mod traces;

pub use cvvp::{frame_cvvp, ImportanceParams, Search};
pub use decision::{ViewMode, ViewerEvent};
pub use geometry::{great_circle_distance, ViewingDirection};
pub use simulate::{StrategyKind, EvaluationConfig, EvaluationReport};
pub use stabilize::{ModeSchedule, StabilizeParams};
pub use traces::{CvvpPredictionFile, LabelTraceSet, Trajectory};
