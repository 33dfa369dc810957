#![allow(dead_code)]

use wiggle_core::recognizer::{Engine, EngineConfig, RecognitionEvent};
use wiggle_core::{Scalar, TargetMap, Trace};

/// Feeds a whole trace, then lets the idle timeout expire. Returns
/// `(sample_index, event)` pairs; the flush uses index `len`.
pub fn run<S: Scalar>(
    trace: &Trace<S>,
    map: &TargetMap<S>,
    config: EngineConfig<S>,
) -> Vec<(usize, RecognitionEvent<S>)> {
    let mut engine = Engine::new(config).expect("valid config");
    let mut out = Vec::new();
    for (i, s) in trace.samples.iter().enumerate() {
        for e in engine.feed(*s, map).expect("ordered trace").events {
            out.push((i, e));
        }
    }
    if let Some(last) = trace.samples.last() {
        if let Some(e) = engine.tick(last.t + config.idle_timeout_ms + 1) {
            out.push((trace.samples.len(), e));
        }
    }
    out
}

pub fn first_activation<S: Scalar>(events: &[(usize, RecognitionEvent<S>)]) -> Option<usize> {
    events
        .iter()
        .find(|(_, e)| matches!(e, RecognitionEvent::Activated { .. }))
        .map(|(i, _)| *i)
}

pub fn activations<S: Scalar>(events: &[(usize, RecognitionEvent<S>)]) -> usize {
    events
        .iter()
        .filter(|(_, e)| matches!(e, RecognitionEvent::Activated { .. }))
        .count()
}

pub fn non_passthrough<S: Scalar>(events: &[(usize, RecognitionEvent<S>)]) -> Vec<&RecognitionEvent<S>> {
    events
        .iter()
        .map(|(_, e)| e)
        .filter(|e| !matches!(e, RecognitionEvent::PassThrough { .. }))
        .collect()
}
