//! Eager recognition of pointer "wiggle" gestures.
//!
//! A wiggle is a short burst of back-and-forth pointer motion over a piece
//! of content (left/right with a mouse, small up/down scrolls with a
//! finger). Once enough direction reversals accumulate over a target the
//! content is collected, and an optional terminating swipe attaches a
//! valence rating or a topic priority. The collected clips land in a
//! [`triage::TriageStore`] that supports filtering, focus-threshold
//! grouping, batch trash and single-step undo.
//!
//! Geometry, targets and the recognizer are generic over [`Scalar`]
//! (`f32` or `f64`); the aliases below name the common instantiations.

// `!(x > 0)` style checks deliberately reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod geometry;
pub mod recognizer;
pub mod scalar;
pub mod synth;
pub mod target;
pub mod trace;
pub mod triage;

pub use geometry::{Axis, Mode, Point};
pub use recognizer::{Encoding, Engine, EngineConfig, EventRecord, Priority, RecognitionEvent, Valence};
pub use scalar::Scalar;
pub use target::{Granularity, RegionId, TargetMap, TargetRegion};
pub use trace::{PointerSample, Trace};

pub type Point64 = Point<f64>;
pub type Point32 = Point<f32>;
pub type Sample64 = PointerSample<f64>;
pub type Sample32 = PointerSample<f32>;
pub type Trace64 = Trace<f64>;
pub type Trace32 = Trace<f32>;
pub type TargetMap64 = TargetMap<f64>;
pub type TargetMap32 = TargetMap<f32>;
pub type EngineConfig64 = EngineConfig<f64>;
pub type EngineConfig32 = EngineConfig<f32>;
pub type Engine64 = Engine<f64>;
pub type Engine32 = Engine<f32>;
pub type Event64 = RecognitionEvent<f64>;
pub type EventRecord64 = EventRecord<f64>;
