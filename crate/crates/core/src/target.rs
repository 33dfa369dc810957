//! Target acquisition: which document region a wiggle selects.
//!
//! The host supplies a [`TargetMap`] snapshot of the page layout (word and
//! block rectangles in viewport pixels). Rectangles are closed, so a point on
//! a shared edge lies in both neighbours.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{path_centroid, resample_path, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RegionId(pub String);

impl RegionId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RegionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for RegionId {
    fn from(s: &str) -> Self {
        Self(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Granularity {
    Word,
    Block,
}

/// Axis-aligned rectangle, serialized as `[x, y, w, h]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[S; 4]", into = "[S; 4]")]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct Rect<S: Scalar> {
    pub x: S,
    pub y: S,
    pub w: S,
    pub h: S,
}

impl<S: Scalar> From<[S; 4]> for Rect<S> {
    fn from([x, y, w, h]: [S; 4]) -> Self {
        Self { x, y, w, h }
    }
}

impl<S: Scalar> From<Rect<S>> for [S; 4] {
    fn from(r: Rect<S>) -> Self {
        [r.x, r.y, r.w, r.h]
    }
}

impl<S: Scalar> Rect<S> {
    pub fn new(x: S, y: S, w: S, h: S) -> Self {
        Self { x, y, w, h }
    }

    pub fn right(&self) -> S {
        self.x + self.w
    }

    pub fn bottom(&self) -> S {
        self.y + self.h
    }

    pub fn area(&self) -> S {
        self.w * self.h
    }

    pub fn contains(&self, p: Point<S>) -> bool {
        p.x >= self.x && p.x <= self.right() && p.y >= self.y && p.y <= self.bottom()
    }

    pub fn contains_rect(&self, other: &Rect<S>) -> bool {
        other.x >= self.x && other.right() <= self.right() && other.y >= self.y && other.bottom() <= self.bottom()
    }

    /// True when the interiors overlap; touching edges do not count.
    pub fn overlaps(&self, other: &Rect<S>) -> bool {
        self.x < other.right() && other.x < self.right() && self.y < other.bottom() && other.y < self.bottom()
    }

    /// Closed-set intersection test.
    pub fn touches(&self, other: &Rect<S>) -> bool {
        self.x <= other.right() && other.x <= self.right() && self.y <= other.bottom() && other.y <= self.bottom()
    }

    pub fn translated(&self, dx: S, dy: S) -> Self {
        Self::new(self.x + dx, self.y + dy, self.w, self.h)
    }

    /// Smallest rectangle covering all points, `None` when empty.
    pub fn bounding(points: &[Point<S>]) -> Option<Self> {
        let first = points.first()?;
        let (mut x0, mut y0, mut x1, mut y1) = (first.x, first.y, first.x, first.y);
        for p in &points[1..] {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        Some(Self::new(x0, y0, x1 - x0, y1 - y0))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Viewport<S> {
    pub w: S,
    pub h: S,
}

impl<S: Scalar> Viewport<S> {
    pub fn new(w: S, h: S) -> Self {
        Self { w, h }
    }

    pub fn rect(&self) -> Rect<S> {
        Rect::new(S::zero(), S::zero(), self.w, self.h)
    }

    pub fn clamp(&self, p: Point<S>) -> Point<S> {
        Point::new(p.x.max(S::zero()).min(self.w), p.y.max(S::zero()).min(self.h))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct TargetRegion<S: Scalar> {
    pub id: RegionId,
    pub rect: Rect<S>,
    pub granularity: Granularity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parent_id: Option<RegionId>,
    pub text: String,
    pub source_url: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub offscreen: bool,
}

impl<S: Scalar> TargetRegion<S> {
    pub fn block(id: &str, rect: Rect<S>, text: &str, source_url: &str) -> Self {
        Self {
            id: RegionId::new(id),
            rect,
            granularity: Granularity::Block,
            parent_id: None,
            text: text.to_owned(),
            source_url: source_url.to_owned(),
            offscreen: false,
        }
    }

    pub fn word(id: &str, parent: &str, rect: Rect<S>, text: &str, source_url: &str) -> Self {
        Self {
            granularity: Granularity::Word,
            parent_id: Some(RegionId::new(parent)),
            ..Self::block(id, rect, text, source_url)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TargetError {
    #[error("duplicate region id {0}")]
    DuplicateId(RegionId),
    #[error("word {word} references unknown block {parent}")]
    MissingParent { word: RegionId, parent: RegionId },
    #[error("word {word} is not contained in its block {parent}")]
    OutsideParent { word: RegionId, parent: RegionId },
    #[error("regions {0} and {1} overlap at the same granularity")]
    Overlap(RegionId, RegionId),
    #[error("region {0} lies outside the viewport without the offscreen flag")]
    Offscreen(RegionId),
    #[error("viewport dimensions must be positive")]
    Viewport,
    #[error("invalid map JSON: {0}")]
    Json(String),
}

/// Host-supplied layout snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct TargetMap<S: Scalar> {
    pub viewport: Viewport<S>,
    pub regions: Vec<TargetRegion<S>>,
}

impl<S: Scalar> TargetMap<S> {
    pub fn new(viewport: Viewport<S>, regions: Vec<TargetRegion<S>>) -> Self {
        Self { viewport, regions }
    }

    pub fn empty(viewport: Viewport<S>) -> Self {
        Self::new(viewport, Vec::new())
    }

    pub fn from_json(text: &str) -> Result<Self, TargetError> {
        serde_json::from_str(text).map_err(|e| TargetError::Json(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("maps always serialize")
    }

    pub fn region(&self, id: &RegionId) -> Option<&TargetRegion<S>> {
        self.regions.iter().find(|r| &r.id == id)
    }

    pub fn validate(&self) -> Result<(), TargetError> {
        if !(self.viewport.w > S::zero() && self.viewport.h > S::zero()) {
            return Err(TargetError::Viewport);
        }
        let mut seen = HashSet::new();
        for r in &self.regions {
            if !seen.insert(&r.id) {
                return Err(TargetError::DuplicateId(r.id.clone()));
            }
            if !r.offscreen && !r.rect.touches(&self.viewport.rect()) {
                return Err(TargetError::Offscreen(r.id.clone()));
            }
        }
        for r in self.regions.iter().filter(|r| r.granularity == Granularity::Word) {
            if let Some(parent_id) = &r.parent_id {
                let parent = self.region(parent_id).ok_or_else(|| TargetError::MissingParent {
                    word: r.id.clone(),
                    parent: parent_id.clone(),
                })?;
                if !parent.rect.contains_rect(&r.rect) {
                    return Err(TargetError::OutsideParent {
                        word: r.id.clone(),
                        parent: parent_id.clone(),
                    });
                }
            }
        }
        for (i, a) in self.regions.iter().enumerate() {
            for b in &self.regions[i + 1..] {
                if a.granularity == b.granularity && a.rect.overlaps(&b.rect) {
                    return Err(TargetError::Overlap(a.id.clone(), b.id.clone()));
                }
            }
        }
        Ok(())
    }

    /// Translates every region vertically, as happens when a touch wiggle
    /// scrolls the page under the finger. Region identity is unchanged.
    pub fn scroll_adjust(&self, dy: S) -> Self {
        Self {
            viewport: self.viewport,
            regions: self
                .regions
                .iter()
                .map(|r| TargetRegion {
                    rect: r.rect.translated(S::zero(), dy),
                    ..r.clone()
                })
                .collect(),
        }
    }

    /// The block containing `p`. Shared edges resolve to the smaller block,
    /// then the smaller id.
    pub fn target_under_point(&self, p: Point<S>) -> Option<&TargetRegion<S>> {
        self.regions
            .iter()
            .filter(|r| r.granularity == Granularity::Block && r.rect.contains(p))
            .min_by(|a, b| cmp_area(a, b).then_with(|| a.id.cmp(&b.id)))
    }

    /// Picks the region covered by the most points of the resampled wiggle
    /// path.
    ///
    /// At word granularity only words whose parent block contains the path
    /// centroid compete. Ties go to the region containing the centroid, then
    /// the smaller area, then the smaller id. Returns `None` when no
    /// resampled point lands in any candidate.
    pub fn acquire_target(
        &self,
        path: &[Point<S>],
        granularity: Granularity,
        resample_n: usize,
    ) -> Option<&TargetRegion<S>> {
        let resampled = resample_path(path, resample_n).ok()?;
        let points = &resampled.points;
        let centroid = path_centroid(points)?;
        let bounds = Rect::bounding(points)?;

        let parents: Vec<&RegionId> = match granularity {
            Granularity::Block => Vec::new(),
            Granularity::Word => self
                .regions
                .iter()
                .filter(|r| r.granularity == Granularity::Block && r.rect.contains(centroid))
                .map(|r| &r.id)
                .collect(),
        };

        let mut best: Option<(usize, bool, &TargetRegion<S>)> = None;
        for region in &self.regions {
            if region.granularity != granularity || !region.rect.touches(&bounds) {
                continue;
            }
            if granularity == Granularity::Word
                && !region.parent_id.as_ref().is_some_and(|p| parents.contains(&p))
            {
                continue;
            }
            let votes = points.iter().filter(|p| region.rect.contains(**p)).count();
            if votes == 0 {
                continue;
            }
            let candidate = (votes, region.rect.contains(centroid), region);
            best = match best {
                Some(current) if rank(&current, &candidate) != Ordering::Greater => Some(current),
                _ => Some(candidate),
            };
        }
        best.map(|(_, _, r)| r)
    }
}

fn cmp_area<S: Scalar>(a: &TargetRegion<S>, b: &TargetRegion<S>) -> Ordering {
    a.rect.area().partial_cmp(&b.rect.area()).unwrap_or(Ordering::Equal)
}

/// `Less` when `a` should win over `b`.
fn rank<S: Scalar>(a: &(usize, bool, &TargetRegion<S>), b: &(usize, bool, &TargetRegion<S>)) -> Ordering {
    b.0.cmp(&a.0)
        .then_with(|| b.1.cmp(&a.1))
        .then_with(|| cmp_area(a.2, b.2))
        .then_with(|| a.2.id.cmp(&b.2.id))
}
