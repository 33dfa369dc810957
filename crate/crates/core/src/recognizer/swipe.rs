//! Granularity and swipe-extension classification.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Mode, Point};
use crate::scalar::Scalar;
use crate::target::{Granularity, Viewport};
use crate::trace::PointerSample;

use super::config::EngineConfig;
use super::event::{Priority, Valence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Left,
    Right,
    Up,
    Down,
}

impl Direction {
    pub fn is_horizontal(self) -> bool {
        matches!(self, Direction::Left | Direction::Right)
    }

    pub fn mirrored(self) -> Self {
        match self {
            Direction::Left => Direction::Right,
            Direction::Right => Direction::Left,
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SwipeError {
    #[error("valence needs a horizontal swipe, got {0:?}")]
    NotHorizontal(Direction),
    #[error("priority needs a vertical swipe, got {0:?}")]
    NotVertical(Direction),
}

/// Outcome of classifying the post-activation movement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Extension<S> {
    Swipe { direction: Direction, fraction: S },
    /// Displacement below `swipe_min_px` on every permitted axis.
    BelowThreshold,
    /// Long enough, but neither axis dominates 2:1.
    Ambiguous,
}

impl<S> Extension<S> {
    pub fn swipe(self) -> Option<(Direction, S)> {
        match self {
            Extension::Swipe { direction, fraction } => Some((direction, fraction)),
            _ => None,
        }
    }
}

/// Word when the recent lateral extent is under `word_extent_px` on desktop;
/// mobile only ever selects blocks.
pub fn classify_granularity<S: Scalar>(extent: S, mode: Mode, word_extent_px: S) -> Granularity {
    match mode {
        Mode::Desktop if extent < word_extent_px => Granularity::Word,
        _ => Granularity::Block,
    }
}

/// Distance from `center` to the viewport edge in `direction`.
fn available<S: Scalar>(center: Point<S>, viewport: Viewport<S>, direction: Direction) -> S {
    match direction {
        Direction::Left => center.x,
        Direction::Right => viewport.w - center.x,
        Direction::Up => center.y,
        Direction::Down => viewport.h - center.y,
    }
}

/// Classifies the net displacement of the latest post-activation sample
/// from the wiggle center.
///
/// A swipe needs at least `swipe_min_px` of travel on one axis and that axis
/// must be at least twice the other. The fraction is the travel divided by
/// the room left between the center and the viewport edge, clamped to
/// `[0, 1]`. Mobile only recognizes horizontal swipes.
pub fn classify_extension<S: Scalar>(
    post_activation: &[PointerSample<S>],
    center: Point<S>,
    config: &EngineConfig<S>,
) -> Extension<S> {
    let Some(latest) = post_activation.last() else {
        return Extension::BelowThreshold;
    };
    let d = latest.position() - center;
    let (ax, ay) = (d.x.abs(), d.y.abs());
    let two = S::lit(2.0);
    let min = config.swipe_min_px;
    let vertical_allowed = config.mode == Mode::Desktop;

    let direction = if ax >= min && ax >= two * ay {
        Some(if d.x > S::zero() { Direction::Right } else { Direction::Left })
    } else if vertical_allowed && ay >= min && ay >= two * ax {
        Some(if d.y > S::zero() { Direction::Down } else { Direction::Up })
    } else {
        None
    };

    match direction {
        Some(direction) => {
            let travel = if direction.is_horizontal() { ax } else { ay };
            let room = available(center, config.viewport, direction);
            let fraction = if room > S::zero() {
                (travel / room).min(S::one())
            } else {
                S::one()
            };
            Extension::Swipe { direction, fraction }
        }
        None if ax >= min || (vertical_allowed && ay >= min) => Extension::Ambiguous,
        None => Extension::BelowThreshold,
    }
}

/// `round(fraction * 10)`, negated for leftward swipes. Rounds half away
/// from zero so mirrored swipes give opposite scores.
pub fn compute_valence<S: Scalar>(direction: Direction, fraction: S) -> Result<Valence, SwipeError> {
    let magnitude = (fraction.max(S::zero()).min(S::one()) * S::lit(10.0))
        .round()
        .to_i64()
        .unwrap_or(0);
    let score = match direction {
        Direction::Right => magnitude,
        Direction::Left => -magnitude,
        other => return Err(SwipeError::NotHorizontal(other)),
    };
    Ok(Valence::new(score).expect("magnitude is at most 10"))
}

/// Up means High, down means Normal; reaching `edge_fraction` of the room
/// to the edge promotes up to Urgent and demotes down to Low.
pub fn priority_from_swipe<S: Scalar>(direction: Direction, fraction: S, edge_fraction: S) -> Result<Priority, SwipeError> {
    let at_edge = fraction >= edge_fraction;
    match (direction, at_edge) {
        (Direction::Up, false) => Ok(Priority::High),
        (Direction::Up, true) => Ok(Priority::Urgent),
        (Direction::Down, false) => Ok(Priority::Normal),
        (Direction::Down, true) => Ok(Priority::Low),
        (other, _) => Err(SwipeError::NotVertical(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(x: f64, y: f64) -> Vec<PointerSample<f64>> {
        vec![PointerSample::mouse_move(0, x, y)]
    }

    fn cfg() -> EngineConfig<f64> {
        EngineConfig::desktop(Viewport::new(1000.0, 800.0))
    }

    #[test]
    fn granularity_boundary() {
        let m = Mode::Desktop;
        assert_eq!(classify_granularity(40.0, m, 65.0), Granularity::Word);
        assert_eq!(classify_granularity(64.999, m, 65.0), Granularity::Word);
        assert_eq!(classify_granularity(65.0, m, 65.0), Granularity::Block);
        assert_eq!(classify_granularity(10.0, Mode::Mobile, 65.0), Granularity::Block);
    }

    #[test]
    fn rightward_half_of_room() {
        // Center 400 px from the right edge.
        let center = Point::new(600.0, 400.0);
        let e = classify_extension(&at(800.0, 400.0), center, &cfg());
        assert_eq!(e, Extension::Swipe { direction: Direction::Right, fraction: 0.5 });
    }

    #[test]
    fn short_displacement_is_not_a_swipe() {
        let center = Point::new(600.0, 400.0);
        assert_eq!(classify_extension(&at(620.0, 400.0), center, &cfg()), Extension::BelowThreshold);
        assert_eq!(classify_extension(&[], center, &cfg()), Extension::BelowThreshold);
    }

    #[test]
    fn upward_to_near_edge() {
        let center = Point::new(500.0, 400.0);
        let e = classify_extension(&at(500.0, 20.0), center, &cfg());
        assert_eq!(e, Extension::Swipe { direction: Direction::Up, fraction: 0.95 });
    }

    #[test]
    fn diagonal_is_ambiguous() {
        let center = Point::new(500.0, 400.0);
        assert_eq!(classify_extension(&at(600.0, 330.0), center, &cfg()), Extension::Ambiguous);
    }

    #[test]
    fn mobile_ignores_vertical() {
        let mobile = EngineConfig::mobile(Viewport::new(400.0, 800.0));
        let center = Point::new(200.0, 400.0);
        assert_eq!(classify_extension(&at(200.0, 100.0), center, &mobile), Extension::BelowThreshold);
        assert_eq!(
            classify_extension(&at(0.0, 400.0), center, &mobile),
            Extension::Swipe { direction: Direction::Left, fraction: 1.0 }
        );
    }

    #[test]
    fn fraction_clamped() {
        let center = Point::new(950.0, 400.0);
        let e = classify_extension(&at(1100.0, 400.0), center, &cfg());
        assert_eq!(e, Extension::Swipe { direction: Direction::Right, fraction: 1.0 });
    }

    #[test]
    fn valence_examples() {
        assert_eq!(compute_valence(Direction::Right, 1.0).unwrap().score(), 10);
        assert_eq!(compute_valence(Direction::Left, 0.0).unwrap().score(), 0);
        assert_eq!(compute_valence(Direction::Left, 0.5).unwrap().score(), -5);
        assert_eq!(compute_valence(Direction::Right, 0.25).unwrap().score(), 3);
        assert_eq!(compute_valence(Direction::Left, 0.25).unwrap().score(), -3);
        assert_eq!(compute_valence(Direction::Up, 0.5f64), Err(SwipeError::NotHorizontal(Direction::Up)));
    }

    #[test]
    fn priority_examples() {
        assert_eq!(priority_from_swipe(Direction::Up, 0.5, 0.9), Ok(Priority::High));
        assert_eq!(priority_from_swipe(Direction::Down, 0.5, 0.9), Ok(Priority::Normal));
        assert_eq!(priority_from_swipe(Direction::Up, 0.95, 0.9), Ok(Priority::Urgent));
        assert_eq!(priority_from_swipe(Direction::Down, 0.9, 0.9), Ok(Priority::Low));
        assert!(priority_from_swipe(Direction::Left, 0.5, 0.9).is_err());
    }
}
