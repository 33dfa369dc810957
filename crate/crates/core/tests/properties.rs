mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use wiggle_core::geometry::{count_reversals, resample_path, Axis, Mode, Point, SegmentTracker};
use wiggle_core::recognizer::{compute_valence, Direction, EngineConfig};
use wiggle_core::synth::{generate, layout, oracle, TraceKind, TraceSpec};
use wiggle_core::target::{Granularity, Rect, TargetMap, TargetRegion, Viewport};
use wiggle_core::trace::{PointerSample, Trace};

fn samples_from(xs: &[f64]) -> Vec<PointerSample<f64>> {
    xs.iter()
        .enumerate()
        .map(|(i, &x)| PointerSample::mouse_move(i as u64 * 8, x, 0.0))
        .collect()
}

fn positions() -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(prop_oneof![(-500i32..500).prop_map(f64::from), -500.0..500.0f64], 0..80)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn reversals_match_oracle(xs in positions(), eps in prop_oneof![Just(0.0), 0.0..20.0f64]) {
        let s = samples_from(&xs);
        prop_assert_eq!(count_reversals(&s, Axis::Horizontal, eps), oracle::oracle_reversals(&s, Axis::Horizontal, eps));
    }

    #[test]
    fn reversal_count_is_monotone(xs in positions(), eps in 0.0..10.0f64) {
        let mut t = SegmentTracker::new(eps);
        let mut last = 0;
        for (i, x) in xs.iter().enumerate() {
            t.push(i, *x);
            prop_assert!(t.reversals() >= last);
            last = t.reversals();
        }
    }

    #[test]
    fn reversals_invariant_under_translation(xs in positions(), dx in -1000i32..1000, eps in 0.0..10.0f64) {
        // Integer coordinates keep the translation exact.
        let ints: Vec<f64> = xs.iter().map(|x| x.round()).collect();
        let shifted: Vec<f64> = ints.iter().map(|x| x + f64::from(dx)).collect();
        prop_assert_eq!(
            count_reversals(&samples_from(&ints), Axis::Horizontal, eps),
            count_reversals(&samples_from(&shifted), Axis::Horizontal, eps)
        );
    }

    #[test]
    fn reversals_invariant_under_mirroring(xs in positions(), eps in 0.0..10.0f64) {
        let mirrored: Vec<f64> = xs.iter().map(|x| -x).collect();
        prop_assert_eq!(
            count_reversals(&samples_from(&xs), Axis::Horizontal, eps),
            count_reversals(&samples_from(&mirrored), Axis::Horizontal, eps)
        );
    }

    #[test]
    fn resample_shape(
        pts in prop::collection::vec((-300.0..300.0f64, -300.0..300.0f64), 1..30),
        n in 2usize..100,
    ) {
        let path: Vec<Point<f64>> = pts.iter().map(|&(x, y)| Point::new(x, y)).collect();
        let r = resample_path(&path, n).unwrap();
        prop_assert_eq!(r.points.len(), n);
        prop_assert_eq!(r.points[0], path[0]);
        prop_assert_eq!(r.points[n - 1], *path.last().unwrap());
        // Every output lies on the polyline and consecutive outputs are no
        // further apart than the arc-length step.
        let total: f64 = path.windows(2).map(|w| w[0].distance(w[1])).sum();
        let step = total / (n - 1) as f64;
        for w in r.points.windows(2) {
            prop_assert!(w[0].distance(w[1]) <= step + 1e-6);
        }
        for p in &r.points {
            let on = path.len() == 1 || path.windows(2).any(|w| {
                let (a, b) = (w[0], w[1]);
                (a.distance(*p) + p.distance(b) - a.distance(b)).abs() < 1e-6
            });
            prop_assert!(on);
        }
    }

    #[test]
    fn resample_equal_spacing_on_monotone_lines(
        steps in prop::collection::vec(0.0..50.0f64, 1..20),
        angle in 0.0..std::f64::consts::TAU,
        n in 2usize..80,
    ) {
        let (c, s) = (angle.cos(), angle.sin());
        let mut d = 0.0;
        let mut path = vec![Point::new(0.0, 0.0)];
        for st in &steps {
            d += st;
            path.push(Point::new(d * c, d * s));
        }
        let r = resample_path(&path, n).unwrap();
        if d > 0.0 {
            let gap = d / (n - 1) as f64;
            for w in r.points.windows(2) {
                prop_assert!((w[0].distance(w[1]) - gap).abs() < 1e-6);
            }
        } else {
            prop_assert!(r.degenerate);
        }
    }

    #[test]
    fn acquisition_invariant_under_translation(seed in any::<u64>(), dx in -200i32..200, dy in -200i32..200) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vp = Viewport::new(1024.0, 768.0);
        let map: TargetMap<f64> = layout::random_layout(&mut rng, vp);
        let path: Vec<Point<f64>> = layout::random_path::<f64, _>(&mut rng, vp)
            .into_iter()
            .map(|p| Point::new(p.x.round(), p.y.round()))
            .collect();
        let (dx, dy) = (f64::from(dx), f64::from(dy));
        let moved = TargetMap::new(
            map.viewport,
            map.regions
                .iter()
                .map(|r| TargetRegion { rect: r.rect.translated(dx, dy), ..r.clone() })
                .collect(),
        );
        let moved_path: Vec<Point<f64>> = path.iter().map(|p| Point::new(p.x + dx, p.y + dy)).collect();
        for g in [Granularity::Block, Granularity::Word] {
            // Power-of-two resampling keeps the lattice exact after shifting.
            let a = map.acquire_target(&path, g, 2).map(|r| r.id.clone());
            let b = moved.acquire_target(&moved_path, g, 2).map(|r| r.id.clone());
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn acquisition_matches_oracle(seed in any::<u64>(), n in 2usize..80) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let vp = Viewport::new(1280.0, 800.0);
        let map: TargetMap<f64> = layout::random_layout(&mut rng, vp);
        let path = layout::random_path::<f64, _>(&mut rng, vp);
        for g in [Granularity::Block, Granularity::Word] {
            prop_assert_eq!(
                map.acquire_target(&path, g, n).map(|r| &r.id),
                oracle::oracle_target_vote(&path, &map, g, n).map(|r| &r.id)
            );
        }
    }

    #[test]
    fn gutter_paths_abstain(x in 0.0..1000.0f64, y in 0.0..600.0f64, amp in 1.0..200.0f64) {
        let map = TargetMap::new(
            Viewport::new(2000.0, 2000.0),
            vec![TargetRegion::block("far", Rect::new(1500.0, 1500.0, 100.0, 100.0), "", "u")],
        );
        let path = [Point::new(x, y), Point::new(x + amp, y), Point::new(x, y)];
        prop_assert!(map.acquire_target(&path, Granularity::Block, 64).is_none());
    }

    #[test]
    fn valence_is_antisymmetric(fraction in 0.0..=1.0f64) {
        let r = compute_valence(Direction::Right, fraction).unwrap().score();
        let l = compute_valence(Direction::Left, fraction).unwrap().score();
        prop_assert_eq!(r, -l);
        prop_assert!((0..=10).contains(&r));
    }
}

fn wiggle_spec() -> impl Strategy<Value = TraceSpec> {
    (
        any::<u64>(),
        prop_oneof![Just(Mode::Desktop), Just(Mode::Mobile)],
        20.0..=120.0f64,
        3u32..=6,
        0.0..=3.0f64,
        200.0..1080.0f64,
        150.0..650.0f64,
    )
        .prop_map(|(seed, mode, amp, cycles, sigma, x, y)| {
            TraceSpec::wiggle(mode, amp, cycles, seed)
                .with_noise(sigma)
                .with_anchor(Point::new(x, y))
        })
}

fn config_for(mode: Mode, vp: Viewport<f64>) -> EngineConfig<f64> {
    match mode {
        Mode::Desktop => EngineConfig::desktop(vp),
        Mode::Mobile => EngineConfig::mobile(vp),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn wiggles_activate_where_the_oracle_says(spec in wiggle_spec()) {
        let trace: Trace<f64> = generate(&spec).unwrap();
        let map: TargetMap<f64> = layout::cover_map(spec.viewport);
        let cfg = config_for(spec.mode, map.viewport);
        let events = common::run(&trace, &map, cfg);
        let expected = oracle::oracle_first_activation_index(&trace.samples, &cfg);
        prop_assert!(expected.is_some());
        prop_assert_eq!(common::first_activation(&events), expected);
    }

    #[test]
    fn generated_wiggles_have_enough_segments(spec in wiggle_spec()) {
        let trace: Trace<f64> = generate(&spec).unwrap();
        let axis = spec.oscillation_axis();
        prop_assert!(oracle::oracle_reversals(&trace.samples, axis, 0.0) + 1 >= 2 * spec.cycles as usize);
    }

    #[test]
    fn non_wiggles_never_activate(
        seed in any::<u64>(),
        kind in prop::sample::select(TraceKind::NON_WIGGLE.to_vec()),
        mode in prop_oneof![Just(Mode::Desktop), Just(Mode::Mobile)],
        sigma in 0.0..=0.3f64,
    ) {
        let spec = TraceSpec::new(kind, mode, seed).with_noise(sigma);
        let trace: Trace<f64> = generate(&spec).unwrap();
        let map: TargetMap<f64> = layout::cover_map(spec.viewport);
        let events = common::run(&trace, &map, config_for(mode, map.viewport));
        prop_assert_eq!(common::activations(&events), 0);
    }

    #[test]
    fn off_axis_oscillation_never_activates(spec in wiggle_spec()) {
        let off = match spec.mode {
            Mode::Desktop => Axis::Vertical,
            Mode::Mobile => Axis::Horizontal,
        };
        let trace: Trace<f64> = generate(&spec.with_axis(off)).unwrap();
        let map: TargetMap<f64> = layout::cover_map(spec.viewport);
        let events = common::run(&trace, &map, config_for(spec.mode, map.viewport));
        prop_assert_eq!(common::activations(&events), 0);
    }

    #[test]
    fn replay_is_deterministic(spec in wiggle_spec(), fraction in 0.0..=1.0f64) {
        let spec = spec.with_swipe(Direction::Right, fraction);
        let a: Trace<f64> = generate(&spec).unwrap();
        let b: Trace<f64> = generate(&spec).unwrap();
        let map: TargetMap<f64> = layout::cover_map(spec.viewport);
        let cfg = config_for(spec.mode, map.viewport);
        prop_assert_eq!(common::run(&a, &map, cfg), common::run(&b, &map, cfg));
    }

    #[test]
    fn pass_through_only_before_activation_on_mobile(spec in wiggle_spec()) {
        let spec = TraceSpec { mode: Mode::Mobile, ..spec };
        let trace: Trace<f64> = generate(&spec).unwrap();
        let map: TargetMap<f64> = layout::cover_map(spec.viewport);
        let events = common::run(&trace, &map, config_for(Mode::Mobile, map.viewport));
        let act = common::first_activation(&events).unwrap();
        for (i, e) in &events {
            if *i > act {
                let passes = matches!(e, wiggle_core::RecognitionEvent::PassThrough { .. });
                prop_assert!(!passes, "pass-through at sample {} after activation at {}", i, act);
            }
        }
    }

    #[test]
    fn trace_jsonl_round_trips(spec in wiggle_spec()) {
        let trace: Trace<f64> = generate(&spec).unwrap();
        let back: Trace<f64> = Trace::from_jsonl(&trace.to_jsonl()).unwrap();
        prop_assert_eq!(back, trace);
    }
}
