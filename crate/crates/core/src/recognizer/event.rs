use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;
use crate::scalar::Scalar;
use crate::target::{Granularity, RegionId};

use super::swipe::Direction;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("valence {0} outside [-10, 10]")]
pub struct ValenceError(pub i64);

/// A pro/con rating in `[-10, 10]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Valence(i8);

impl Valence {
    pub const MIN: i8 = -10;
    pub const MAX: i8 = 10;

    pub fn new(score: i64) -> Result<Self, ValenceError> {
        if (Self::MIN as i64..=Self::MAX as i64).contains(&score) {
            Ok(Self(score as i8))
        } else {
            Err(ValenceError(score))
        }
    }

    pub fn score(self) -> i8 {
        self.0
    }

    pub fn magnitude(self) -> u8 {
        self.0.unsigned_abs()
    }
}

impl TryFrom<i64> for Valence {
    type Error = ValenceError;
    fn try_from(v: i64) -> Result<Self, Self::Error> {
        Self::new(v)
    }
}

impl From<Valence> for i64 {
    fn from(v: Valence) -> Self {
        v.0 as i64
    }
}

impl fmt::Display for Valence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+}", self.0)
    }
}

/// Topic priority, ordered `Low < Normal < High < Urgent`. `Urgent` is the
/// level other tools call "Very high".
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Priority {
    Low,
    #[default]
    Normal,
    High,
    #[serde(alias = "very-high")]
    Urgent,
}

impl fmt::Display for Priority {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Priority::Low => "Low",
            Priority::Normal => "Normal",
            Priority::High => "High",
            Priority::Urgent => "Urgent",
        })
    }
}

/// Mental context attached by the optional terminating swipe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Encoding {
    #[default]
    None,
    Valence { score: Valence },
    Priority { level: Priority },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AbortReason {
    /// No sample arrived within the idle timeout.
    Idle,
    /// A button press (desktop) started a conventional interaction.
    ContactStarted,
    /// The finger lifted before activation (mobile).
    ContactEnded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", content = "payload")]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub enum RecognitionEvent<S: Scalar> {
    #[serde(rename_all = "camelCase")]
    TrackingProgress {
        reversals: usize,
        candidate_target_id: Option<RegionId>,
        granularity: Granularity,
    },
    Aborted { reason: AbortReason },
    #[serde(rename_all = "camelCase")]
    Activated {
        target_id: RegionId,
        granularity: Granularity,
        wiggle_center: Point<S>,
    },
    #[serde(rename_all = "camelCase")]
    ExtensionUpdated {
        direction: Direction,
        fraction_of_available: S,
    },
    #[serde(rename_all = "camelCase")]
    Committed {
        target_ids: Vec<RegionId>,
        encoding: Encoding,
    },
    #[serde(rename_all = "camelCase")]
    PassThrough { sample_index: usize },
}

impl<S: Scalar> RecognitionEvent<S> {
    pub fn kind(&self) -> &'static str {
        match self {
            Self::TrackingProgress { .. } => "TrackingProgress",
            Self::Aborted { .. } => "Aborted",
            Self::Activated { .. } => "Activated",
            Self::ExtensionUpdated { .. } => "ExtensionUpdated",
            Self::Committed { .. } => "Committed",
            Self::PassThrough { .. } => "PassThrough",
        }
    }
}

/// One line of a serialized event log:
/// `{"seq":3,"sampleIndex":17,"type":"Activated","payload":{...}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct EventRecord<S: Scalar> {
    pub seq: u64,
    pub sample_index: usize,
    #[serde(flatten)]
    pub event: RecognitionEvent<S>,
}

impl<S: Scalar> EventRecord<S> {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("events always serialize")
    }
}
