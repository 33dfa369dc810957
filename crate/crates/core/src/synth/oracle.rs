//! Brute-force reference implementations used to cross-check the
//! recognizer. They favor obviousness over speed and share no code with the
//! production paths they check.

use crate::geometry::{Axis, Mode, Point};
use crate::recognizer::EngineConfig;
use crate::scalar::Scalar;
use crate::target::{Granularity, TargetMap, TargetRegion};
use crate::trace::{Phase, PointerSample};

/// Counts direction reversals along `axis` with a plain sign-change scan.
///
/// Consecutive displacements are grouped into runs by sign (zero
/// displacements extend nothing). Runs travelling less than `jitter_eps`
/// are dropped, neighbours with equal sign are fused, and the answer is the
/// number of fused runs minus one.
pub fn oracle_reversals<S: Scalar>(samples: &[PointerSample<S>], axis: Axis, jitter_eps: S) -> usize {
    let positions: Vec<S> = samples
        .iter()
        .map(|s| match axis {
            Axis::Horizontal => s.x,
            Axis::Vertical => s.y,
        })
        .collect();
    reversals_of(&positions, jitter_eps)
}

fn reversals_of<S: Scalar>(positions: &[S], jitter_eps: S) -> usize {
    // (sign, travel) per raw run.
    let mut runs: Vec<(i8, S)> = Vec::new();
    for w in positions.windows(2) {
        let d = w[1] - w[0];
        let sign: i8 = if d > S::zero() {
            1
        } else if d < S::zero() {
            -1
        } else {
            continue;
        };
        match runs.last_mut() {
            Some((s, travel)) if *s == sign => *travel = *travel + d.abs(),
            _ => runs.push((sign, d.abs())),
        }
    }
    let mut signs: Vec<i8> = runs
        .into_iter()
        .filter(|(_, travel)| *travel >= jitter_eps)
        .map(|(s, _)| s)
        .collect();
    signs.dedup();
    signs.len().saturating_sub(1)
}

/// Index of the sample at which the recognizer should first activate,
/// assuming every tracked position lies over some target.
///
/// Models which samples feed the current tracking episode: desktop tracks
/// pointer motion with no button held and restarts after a press; mobile
/// tracks from touch-down to lift. Any gap longer than the idle timeout
/// starts a new episode. Positions are clamped to the viewport.
pub fn oracle_first_activation_index<S: Scalar>(samples: &[PointerSample<S>], config: &EngineConfig<S>) -> Option<usize> {
    let axis = Axis::principal(config.mode);
    let mut episode: Vec<S> = Vec::new();
    let mut contact = false;
    let mut last_t: Option<u64> = None;
    for (i, s) in samples.iter().enumerate() {
        if last_t.is_some_and(|t| s.t > t && s.t - t > config.idle_timeout_ms) {
            episode.clear();
        }
        last_t = Some(s.t);
        let x = s.x.max(S::zero()).min(config.viewport.w);
        let y = s.y.max(S::zero()).min(config.viewport.h);
        let along = if axis == Axis::Horizontal { x } else { y };
        let tracked = match (config.mode, s.phase) {
            (Mode::Desktop, Phase::ContactStart) => {
                contact = true;
                episode.clear();
                false
            }
            (Mode::Desktop, Phase::ContactEnd) => {
                contact = false;
                false
            }
            (Mode::Desktop, Phase::Move) => !contact,
            (Mode::Mobile, Phase::ContactStart) => {
                contact = true;
                episode.clear();
                true
            }
            (Mode::Mobile, Phase::ContactEnd) => {
                contact = false;
                episode.clear();
                false
            }
            (Mode::Mobile, Phase::Move) => contact,
        };
        if !tracked {
            continue;
        }
        episode.push(along);
        if reversals_of(&episode, config.jitter_eps_px) >= config.activation_reversals {
            return Some(i);
        }
    }
    None
}

/// Point at arc length `d` along the polyline, walking from the start each
/// time.
fn point_at<S: Scalar>(path: &[Point<S>], d: S) -> Point<S> {
    let mut walked = S::zero();
    for i in 0..path.len() - 1 {
        let (a, b) = (path[i], path[i + 1]);
        let len = (b.x - a.x).hypot(b.y - a.y);
        let next = walked + len;
        if next >= d || i + 2 == path.len() {
            if len > S::zero() {
                let t = ((d - walked) / len).min(S::one());
                return Point::new(a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t);
            }
            return b;
        }
        walked = next;
    }
    path[0]
}

/// `n` points equally spaced by arc length, endpoints exact.
pub fn oracle_resample<S: Scalar>(path: &[Point<S>], n: usize) -> Vec<Point<S>> {
    assert!(!path.is_empty() && n >= 2);
    let mut total = S::zero();
    for w in path.windows(2) {
        total = total + (w[1].x - w[0].x).hypot(w[1].y - w[0].y);
    }
    if !(total > S::zero()) {
        return vec![path[0]; n];
    }
    let steps = S::from_usize(n - 1).expect("small");
    (0..n)
        .map(|k| match k {
            0 => path[0],
            k if k == n - 1 => path[path.len() - 1],
            k => point_at(path, total * S::from_usize(k).expect("small") / steps),
        })
        .collect()
}

/// Majority vote by exhaustive counting over every region of the requested
/// granularity. Word candidates must sit in a block containing the
/// centroid. Ties: centroid containment, then smaller area, then smaller id.
pub fn oracle_target_vote<'m, S: Scalar>(
    path: &[Point<S>],
    map: &'m TargetMap<S>,
    granularity: Granularity,
    n: usize,
) -> Option<&'m TargetRegion<S>> {
    if path.is_empty() {
        return None;
    }
    let points = oracle_resample(path, n);
    let mut sum = Point::new(S::zero(), S::zero());
    for p in &points {
        sum = Point::new(sum.x + p.x, sum.y + p.y);
    }
    let count = S::from_usize(points.len()).expect("small");
    let centroid = Point::new(sum.x / count, sum.y / count);
    let inside = |r: &TargetRegion<S>, p: &Point<S>| {
        p.x >= r.rect.x && p.x <= r.rect.x + r.rect.w && p.y >= r.rect.y && p.y <= r.rect.y + r.rect.h
    };

    let mut scored: Vec<(usize, bool, S, &TargetRegion<S>)> = Vec::new();
    for region in &map.regions {
        if region.granularity != granularity {
            continue;
        }
        if granularity == Granularity::Word {
            let parent_ok = map.regions.iter().any(|b| {
                b.granularity == Granularity::Block && Some(&b.id) == region.parent_id.as_ref() && inside(b, &centroid)
            });
            if !parent_ok {
                continue;
            }
        }
        let votes = points.iter().filter(|p| inside(region, p)).count();
        if votes > 0 {
            scored.push((votes, inside(region, &centroid), region.rect.w * region.rect.h, region));
        }
    }
    scored.sort_by(|a, b| {
        b.0.cmp(&a.0)
            .then(b.1.cmp(&a.1))
            .then(a.2.partial_cmp(&b.2).expect("finite areas"))
            .then(a.3.id.cmp(&b.3.id))
    });
    scored.first().map(|s| s.3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::target::{Rect, Viewport};

    fn xs(raw: &[f64]) -> Vec<PointerSample<f64>> {
        raw.iter()
            .enumerate()
            .map(|(i, &x)| PointerSample::mouse_move(i as u64 * 8, x, 0.0))
            .collect()
    }

    #[test]
    fn reversal_examples() {
        assert_eq!(oracle_reversals(&xs(&[0.0, 30.0, 0.0, 30.0, 0.0, 30.0, 0.0]), Axis::Horizontal, 0.0), 5);
        assert_eq!(oracle_reversals(&xs(&[0.0, 10.0, 20.0, 30.0]), Axis::Horizontal, 0.0), 0);
        assert_eq!(oracle_reversals(&xs(&[5.0; 6]), Axis::Horizontal, 0.0), 0);
        assert_eq!(oracle_reversals(&xs(&[0.0, 30.0, 29.0, 60.0]), Axis::Horizontal, 2.0), 0);
    }

    #[test]
    fn activation_index_examples() {
        let cfg = EngineConfig::<f64>::default();
        let trace = xs(&[100.0, 130.0, 100.0, 130.0, 100.0, 130.0, 100.0]);
        assert_eq!(oracle_first_activation_index(&trace, &cfg), Some(6));
        assert_eq!(oracle_first_activation_index(&trace[..6], &cfg), None);
    }

    #[test]
    fn vote_examples() {
        let vp = Viewport::new(800.0, 600.0);
        let url = "u";
        let single = TargetMap::new(vp, vec![TargetRegion::block("A", Rect::new(0.0, 0.0, 100.0, 100.0), "", url)]);
        let path = [Point::new(10.0, 10.0), Point::new(50.0, 10.0)];
        assert_eq!(oracle_target_vote(&path, &single, Granularity::Block, 64).unwrap().id.as_str(), "A");

        let split = TargetMap::new(
            vp,
            vec![
                TargetRegion::block("L", Rect::new(0.0, 0.0, 60.0, 100.0), "", url),
                TargetRegion::block("R", Rect::new(60.0, 0.0, 40.0, 100.0), "", url),
            ],
        );
        let across = [Point::new(0.0, 50.0), Point::new(100.0, 50.0)];
        assert_eq!(oracle_target_vote(&across, &split, Granularity::Block, 11).unwrap().id.as_str(), "L");

        assert!(oracle_target_vote(&path, &TargetMap::empty(vp), Granularity::Block, 64).is_none());
    }

    #[test]
    fn resample_endpoints() {
        let path = [Point::new(0.0, 0.0), Point::new(10.0, 0.0), Point::new(10.0, 10.0)];
        let r = oracle_resample(&path, 5);
        assert_eq!(r[0], path[0]);
        assert_eq!(r[4], path[2]);
        assert_eq!(r[2], Point::new(10.0, 0.0));
    }
}
