//! Pure geometry over pointer trajectories.
//!
//! Resampling follows the arc-length scheme used by template gesture
//! recognizers; reversal counting works on *direction segments* (maximal runs
//! of same-sign displacement along one axis) so that the dispatch rate of the
//! host's pointer events does not change the count.

use std::ops::{Add, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;
use crate::trace::PointerSample;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeometryError {
    #[error("path has no points")]
    EmptyPath,
    #[error("resample count must be at least 2, got {0}")]
    ResampleCount(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Self { x, y }
    }

    pub fn distance(self, other: Self) -> S {
        (self.x - other.x).hypot(self.y - other.y)
    }

    /// Linear interpolation; `t = 0` yields `self`, `t = 1` yields `other`.
    pub fn lerp(self, other: Self, t: S) -> Self {
        Self::new(
            self.x + (other.x - self.x) * t,
            self.y + (other.y - self.y) * t,
        )
    }
}

impl<S: Scalar> Add for Point<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<S: Scalar> Sub for Point<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

/// Interaction mode. Desktop wiggles run left/right with a mouse; mobile
/// wiggles are small up/down scrolls with a finger held down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Desktop,
    Mobile,
}

/// The principal wiggle dimension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    pub fn principal(mode: Mode) -> Self {
        match mode {
            Mode::Desktop => Axis::Horizontal,
            Mode::Mobile => Axis::Vertical,
        }
    }

    pub fn along<S: Scalar>(self, p: Point<S>) -> S {
        match self {
            Axis::Horizontal => p.x,
            Axis::Vertical => p.y,
        }
    }

    pub fn across<S: Scalar>(self, p: Point<S>) -> S {
        match self {
            Axis::Horizontal => p.y,
            Axis::Vertical => p.x,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Resampled<S> {
    pub points: Vec<Point<S>>,
    /// Set when the input had zero arc length and every output point is a
    /// copy of the single input position.
    pub degenerate: bool,
}

/// Resamples a polyline into `n` points equidistant along its arc length.
///
/// The first and last input points are reproduced exactly. A zero-length
/// path (including a single point) yields `n` copies of its position.
pub fn resample_path<S: Scalar>(points: &[Point<S>], n: usize) -> Result<Resampled<S>, GeometryError> {
    let (first, last) = match (points.first(), points.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(GeometryError::EmptyPath),
    };
    if n < 2 {
        return Err(GeometryError::ResampleCount(n));
    }

    let mut cumulative = Vec::with_capacity(points.len());
    let mut total = S::zero();
    cumulative.push(total);
    for pair in points.windows(2) {
        total = total + pair[0].distance(pair[1]);
        cumulative.push(total);
    }

    if !(total > S::zero()) {
        return Ok(Resampled {
            points: vec![first; n],
            degenerate: true,
        });
    }

    let steps = S::from_usize_lossy(n - 1);
    let mut out = Vec::with_capacity(n);
    out.push(first);
    let mut seg = 0usize;
    for k in 1..n - 1 {
        let target = total * S::from_usize_lossy(k) / steps;
        while seg + 2 < points.len() && cumulative[seg + 1] < target {
            seg += 1;
        }
        let seg_len = cumulative[seg + 1] - cumulative[seg];
        let p = if seg_len > S::zero() {
            let t = ((target - cumulative[seg]) / seg_len).min(S::one());
            points[seg].lerp(points[seg + 1], t)
        } else {
            points[seg + 1]
        };
        out.push(p);
    }
    out.push(last);
    Ok(Resampled {
        points: out,
        degenerate: false,
    })
}

/// Arithmetic mean of the points, or `None` for an empty slice.
pub fn path_centroid<S: Scalar>(points: &[Point<S>]) -> Option<Point<S>> {
    if points.is_empty() {
        return None;
    }
    let sum = points.iter().fold(Point::new(S::zero(), S::zero()), |acc, p| acc + *p);
    let n = S::from_usize_lossy(points.len());
    Some(Point::new(sum.x / n, sum.y / n))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Heading {
    Forward,
    Backward,
}

/// A maximal run of same-sign displacement along one axis, after jitter
/// filtering and merging. Indices refer to positions pushed into the
/// [`SegmentTracker`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionSegment<S> {
    pub heading: Heading,
    pub start_index: usize,
    pub end_index: usize,
    pub start_pos: S,
    pub end_pos: S,
}

impl<S: Scalar> DirectionSegment<S> {
    /// Net along-axis travel of the segment.
    pub fn amplitude(&self) -> S {
        (self.end_pos - self.start_pos).abs()
    }
}

#[derive(Debug, Clone, Copy)]
struct Run<S> {
    heading: Heading,
    start_index: usize,
    start_pos: S,
    end_index: usize,
    end_pos: S,
    kept: bool,
}

/// Incremental direction-segment builder.
///
/// Raw runs whose travel is below `jitter_eps` are discarded, and kept runs
/// with the same heading as the previous kept segment merge into it. The
/// result after every push equals batch segmentation of the prefix seen so
/// far, so the reversal count never decreases.
#[derive(Debug, Clone)]
pub struct SegmentTracker<S> {
    jitter_eps: S,
    last: Option<(usize, S)>,
    run: Option<Run<S>>,
    segments: Vec<DirectionSegment<S>>,
}

impl<S: Scalar> SegmentTracker<S> {
    pub fn new(jitter_eps: S) -> Self {
        Self {
            jitter_eps,
            last: None,
            run: None,
            segments: Vec::new(),
        }
    }

    /// Pushes the along-axis position of the next sample.
    pub fn push(&mut self, index: usize, pos: S) {
        let Some((prev_index, prev_pos)) = self.last.replace((index, pos)) else {
            return;
        };
        let delta = pos - prev_pos;
        let heading = if delta > S::zero() {
            Heading::Forward
        } else if delta < S::zero() {
            Heading::Backward
        } else {
            return;
        };

        let run = match &mut self.run {
            Some(run) if run.heading == heading => {
                run.end_index = index;
                run.end_pos = pos;
                run
            }
            slot => slot.insert(Run {
                heading,
                start_index: prev_index,
                start_pos: prev_pos,
                end_index: index,
                end_pos: pos,
                kept: false,
            }),
        };

        if run.kept {
            if let Some(seg) = self.segments.last_mut() {
                seg.end_index = run.end_index;
                seg.end_pos = run.end_pos;
            }
        } else if (run.end_pos - run.start_pos).abs() >= self.jitter_eps {
            run.kept = true;
            match self.segments.last_mut() {
                Some(seg) if seg.heading == heading => {
                    seg.end_index = run.end_index;
                    seg.end_pos = run.end_pos;
                }
                _ => self.segments.push(DirectionSegment {
                    heading,
                    start_index: run.start_index,
                    end_index: run.end_index,
                    start_pos: run.start_pos,
                    end_pos: run.end_pos,
                }),
            }
        }
    }

    pub fn segments(&self) -> &[DirectionSegment<S>] {
        &self.segments
    }

    pub fn reversals(&self) -> usize {
        self.segments.len().saturating_sub(1)
    }

    /// Mean amplitude of the last `window` segments.
    pub fn lateral_extent(&self, window: usize) -> LateralExtent<S> {
        let take = window.min(self.segments.len());
        let recent = &self.segments[self.segments.len() - take..];
        let mean = if take == 0 {
            S::zero()
        } else {
            recent.iter().fold(S::zero(), |acc, s| acc + s.amplitude()) / S::from_usize_lossy(take)
        };
        LateralExtent {
            mean,
            segments_used: take,
            partial: take < window,
        }
    }

    /// Like [`lateral_extent`](Self::lateral_extent) but over completed
    /// segments only: the most recent segment is still growing until the
    /// next reversal and would bias the mean low.
    pub fn completed_extent(&self, window: usize) -> LateralExtent<S> {
        let done = self.segments.len().saturating_sub(1);
        let take = window.min(done);
        let recent = &self.segments[done - take..done];
        let mean = if take == 0 {
            S::zero()
        } else {
            recent.iter().fold(S::zero(), |acc, s| acc + s.amplitude()) / S::from_usize_lossy(take)
        };
        LateralExtent {
            mean,
            segments_used: take,
            partial: take < window,
        }
    }

    /// Index of the first position covered by the last `window` segments,
    /// or `None` when no segment has formed yet.
    pub fn window_start(&self, window: usize) -> Option<usize> {
        let take = window.min(self.segments.len());
        (take > 0).then(|| self.segments[self.segments.len() - take].start_index)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LateralExtent<S> {
    pub mean: S,
    pub segments_used: usize,
    /// Fewer segments were available than requested.
    pub partial: bool,
}

fn tracker_over<S: Scalar>(samples: &[PointerSample<S>], axis: Axis, jitter_eps: S) -> SegmentTracker<S> {
    let mut tracker = SegmentTracker::new(jitter_eps);
    for (i, s) in samples.iter().enumerate() {
        tracker.push(i, axis.along(s.position()));
    }
    tracker
}

/// Number of direction reversals along `axis`.
pub fn count_reversals<S: Scalar>(samples: &[PointerSample<S>], axis: Axis, jitter_eps: S) -> usize {
    tracker_over(samples, axis, jitter_eps).reversals()
}

/// Mean along-axis amplitude of the last `last_k` direction segments.
pub fn lateral_extent<S: Scalar>(
    samples: &[PointerSample<S>],
    axis: Axis,
    jitter_eps: S,
    last_k: usize,
) -> LateralExtent<S> {
    tracker_over(samples, axis, jitter_eps).lateral_extent(last_k)
}
