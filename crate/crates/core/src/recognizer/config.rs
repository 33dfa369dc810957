use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Axis, Mode};
use crate::scalar::Scalar;
use crate::target::Viewport;

/// Number of trailing direction segments used for granularity and target
/// voting.
pub const LATERAL_WINDOW: usize = 5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("activation_reversals must be at least 1")]
    ActivationReversals,
    #[error("word_extent_px must be positive")]
    WordExtent,
    #[error("jitter_eps_px must be non-negative")]
    JitterEps,
    #[error("swipe_min_px must be non-negative")]
    SwipeMin,
    #[error("edge_fraction must lie in (0, 1]")]
    EdgeFraction,
    #[error("resample_n must be at least 2")]
    ResampleN,
    #[error("viewport dimensions must be positive")]
    Viewport,
}

/// Recognizer tuning. Serialized with snake_case keys; every key is
/// optional in config files and falls back to the defaults below.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
#[serde(bound(serialize = "S: Scalar", deserialize = "S: Scalar"))]
pub struct EngineConfig<S: Scalar> {
    pub mode: Mode,
    pub activation_reversals: usize,
    pub word_extent_px: S,
    pub jitter_eps_px: S,
    pub idle_timeout_ms: u64,
    pub swipe_min_px: S,
    pub edge_fraction: S,
    pub resample_n: usize,
    pub viewport: Viewport<S>,
}

impl<S: Scalar> Default for EngineConfig<S> {
    fn default() -> Self {
        Self {
            mode: Mode::Desktop,
            activation_reversals: 5,
            word_extent_px: S::lit(65.0),
            jitter_eps_px: S::lit(2.0),
            idle_timeout_ms: 150,
            swipe_min_px: S::lit(80.0),
            edge_fraction: S::lit(0.9),
            resample_n: 64,
            viewport: Viewport::new(S::lit(1280.0), S::lit(800.0)),
        }
    }
}

impl<S: Scalar> EngineConfig<S> {
    pub fn desktop(viewport: Viewport<S>) -> Self {
        Self {
            viewport,
            ..Self::default()
        }
    }

    pub fn mobile(viewport: Viewport<S>) -> Self {
        Self {
            mode: Mode::Mobile,
            viewport,
            ..Self::default()
        }
    }

    pub fn axis(&self) -> Axis {
        Axis::principal(self.mode)
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.activation_reversals < 1 {
            return Err(ConfigError::ActivationReversals);
        }
        if !(self.word_extent_px > S::zero()) {
            return Err(ConfigError::WordExtent);
        }
        if !(self.jitter_eps_px >= S::zero()) {
            return Err(ConfigError::JitterEps);
        }
        if !(self.swipe_min_px >= S::zero()) {
            return Err(ConfigError::SwipeMin);
        }
        if !(self.edge_fraction > S::zero() && self.edge_fraction <= S::one()) {
            return Err(ConfigError::EdgeFraction);
        }
        if self.resample_n < 2 {
            return Err(ConfigError::ResampleN);
        }
        if !(self.viewport.w > S::zero() && self.viewport.h > S::zero()) {
            return Err(ConfigError::Viewport);
        }
        Ok(())
    }
}
