//! Pointer samples and the JSON-lines trace format.
//!
//! One sample per line: `{"t":16,"x":412.5,"y":230.0,"phase":"move","kind":"mouse"}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Phase {
    Move,
    ContactStart,
    ContactEnd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PointerKind {
    Mouse,
    Touch,
}

/// One timestamped input event. `t` is milliseconds since trace start.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointerSample<S> {
    pub t: u64,
    pub x: S,
    pub y: S,
    pub phase: Phase,
    pub kind: PointerKind,
}

impl<S: Scalar> PointerSample<S> {
    pub fn new(t: u64, x: S, y: S, phase: Phase, kind: PointerKind) -> Self {
        Self { t, x, y, phase, kind }
    }

    pub fn mouse_move(t: u64, x: S, y: S) -> Self {
        Self::new(t, x, y, Phase::Move, PointerKind::Mouse)
    }

    pub fn touch(t: u64, x: S, y: S, phase: Phase) -> Self {
        Self::new(t, x, y, phase, PointerKind::Touch)
    }

    pub fn position(&self) -> Point<S> {
        Point::new(self.x, self.y)
    }

    pub fn with_position(self, p: Point<S>) -> Self {
        Self { x: p.x, y: p.y, ..self }
    }
}

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("trace is empty")]
    Empty,
    #[error("sample {index} at t={t} precedes t={previous}")]
    OutOfOrder { index: usize, t: u64, previous: u64 },
    #[error("touch trace must open with contact-start and close with contact-end")]
    TouchBracketing,
}

/// An ordered pointer trace.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace<S> {
    pub samples: Vec<PointerSample<S>>,
}

impl<S: Scalar> Trace<S> {
    pub fn new(samples: Vec<PointerSample<S>>) -> Self {
        Self { samples }
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn positions(&self) -> Vec<Point<S>> {
        self.samples.iter().map(PointerSample::position).collect()
    }

    /// Parses JSON lines. Blank lines are skipped; line numbers in errors
    /// are 1-based.
    pub fn from_jsonl(text: &str) -> Result<Self, TraceError> {
        let mut samples = Vec::new();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let sample = serde_json::from_str(line).map_err(|e| TraceError::Parse {
                line: i + 1,
                message: e.to_string(),
            })?;
            samples.push(sample);
        }
        Ok(Self { samples })
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for s in &self.samples {
            out.push_str(&serde_json::to_string(s).expect("samples always serialize"));
            out.push('\n');
        }
        out
    }

    /// Checks the trace-level invariants: non-empty, timestamps
    /// non-decreasing, touch contacts bracketed.
    pub fn validate(&self) -> Result<(), TraceError> {
        if self.samples.is_empty() {
            return Err(TraceError::Empty);
        }
        for (i, pair) in self.samples.windows(2).enumerate() {
            if pair[1].t < pair[0].t {
                return Err(TraceError::OutOfOrder {
                    index: i + 1,
                    t: pair[1].t,
                    previous: pair[0].t,
                });
            }
        }
        let touches: Vec<_> = self.samples.iter().filter(|s| s.kind == PointerKind::Touch).collect();
        if let (Some(first), Some(last)) = (touches.first(), touches.last()) {
            if first.phase != Phase::ContactStart || last.phase != Phase::ContactEnd {
                return Err(TraceError::TouchBracketing);
            }
        }
        Ok(())
    }
}
