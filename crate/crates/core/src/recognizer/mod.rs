//! The always-on wiggle recognizer.
//!
//! [`Engine`] consumes pointer samples one at a time and returns the events
//! each sample triggers. It never calls back into the host and never reads a
//! clock: idle timeouts are measured against sample timestamps, or against
//! the `now` passed to [`Engine::tick`].

mod config;
mod engine;
mod event;
mod swipe;

pub use config::{ConfigError, EngineConfig, LATERAL_WINDOW};
pub use engine::{Engine, EngineError, FeedOutput, Phase, RecognizerState, Signal};
pub use event::{AbortReason, Encoding, EventRecord, Priority, RecognitionEvent, Valence, ValenceError};
pub use swipe::{
    classify_extension, classify_granularity, compute_valence, priority_from_swipe, Direction, Extension,
    SwipeError,
};
