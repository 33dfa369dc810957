//! Seeded synthetic pointer traces and layouts for tests and benchmarks.
//!
//! Motion is produced in `f64` and converted to the requested scalar at the
//! end, so an `f32` trace and an `f64` trace from the same spec describe the
//! same movement.
//!
//! Noise is Gaussian, independent per sample, and clamped to three standard
//! deviations. For wiggle kinds it is applied only along the oscillation
//! axis; the cross axis drifts monotonically. Non-wiggle kinds apply it on
//! both axes.

pub mod layout;
pub mod oracle;

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Axis, Mode, Point};
use crate::recognizer::Direction;
use crate::scalar::Scalar;
use crate::target::Viewport;
use crate::trace::{Phase, PointerKind, PointerSample, Trace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceKind {
    Wiggle,
    WiggleSwipe,
    ReadingDrift,
    Scroll,
    DragSelect,
    ClickMove,
}

impl TraceKind {
    pub const ALL: [TraceKind; 6] = [
        TraceKind::Wiggle,
        TraceKind::WiggleSwipe,
        TraceKind::ReadingDrift,
        TraceKind::Scroll,
        TraceKind::DragSelect,
        TraceKind::ClickMove,
    ];
    pub const NON_WIGGLE: [TraceKind; 4] = [
        TraceKind::ReadingDrift,
        TraceKind::Scroll,
        TraceKind::DragSelect,
        TraceKind::ClickMove,
    ];

    pub fn is_wiggle(self) -> bool {
        matches!(self, TraceKind::Wiggle | TraceKind::WiggleSwipe)
    }

    pub fn name(self) -> &'static str {
        match self {
            TraceKind::Wiggle => "wiggle",
            TraceKind::WiggleSwipe => "wiggle-swipe",
            TraceKind::ReadingDrift => "reading-drift",
            TraceKind::Scroll => "scroll",
            TraceKind::DragSelect => "drag-select",
            TraceKind::ClickMove => "click-move",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SwipeSpec {
    pub direction: Direction,
    /// Share of the room between the anchor and the viewport edge.
    pub fraction: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TraceSpec {
    pub kind: TraceKind,
    pub amplitude_px: f64,
    pub cycles: u32,
    pub noise_sigma_px: f64,
    pub sample_rate_hz: f64,
    pub seed: u64,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub swipe: Option<SwipeSpec>,
    pub anchor: Point<f64>,
    pub viewport: Viewport<f64>,
    /// Oscillation axis for wiggle kinds; defaults to the mode's principal
    /// axis.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub axis: Option<Axis>,
}

pub const DEFAULT_SAMPLE_RATE_HZ: f64 = 125.0;

impl TraceSpec {
    pub fn new(kind: TraceKind, mode: Mode, seed: u64) -> Self {
        let viewport = Viewport::new(1280.0, 800.0);
        Self {
            kind,
            amplitude_px: 40.0,
            cycles: 3,
            noise_sigma_px: 0.0,
            sample_rate_hz: DEFAULT_SAMPLE_RATE_HZ,
            seed,
            mode,
            swipe: None,
            anchor: Point::new(viewport.w / 2.0, viewport.h / 2.0),
            viewport,
            axis: None,
        }
    }

    pub fn wiggle(mode: Mode, amplitude_px: f64, cycles: u32, seed: u64) -> Self {
        Self {
            amplitude_px,
            cycles,
            ..Self::new(TraceKind::Wiggle, mode, seed)
        }
    }

    pub fn with_noise(self, sigma: f64) -> Self {
        Self {
            noise_sigma_px: sigma,
            ..self
        }
    }

    pub fn with_swipe(self, direction: Direction, fraction: f64) -> Self {
        Self {
            kind: TraceKind::WiggleSwipe,
            swipe: Some(SwipeSpec { direction, fraction }),
            ..self
        }
    }

    pub fn with_anchor(self, anchor: Point<f64>) -> Self {
        Self { anchor, ..self }
    }

    pub fn with_viewport(self, viewport: Viewport<f64>) -> Self {
        Self { viewport, ..self }
    }

    pub fn with_axis(self, axis: Axis) -> Self {
        Self {
            axis: Some(axis),
            ..self
        }
    }

    pub fn oscillation_axis(&self) -> Axis {
        self.axis.unwrap_or(Axis::principal(self.mode))
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        let finite_pos = |v: f64| v.is_finite() && v > 0.0;
        if self.kind.is_wiggle() && !finite_pos(self.amplitude_px) {
            return Err(SynthError::Amplitude(self.amplitude_px));
        }
        if self.cycles < 1 {
            return Err(SynthError::Cycles);
        }
        if !finite_pos(self.sample_rate_hz) {
            return Err(SynthError::SampleRate(self.sample_rate_hz));
        }
        if !(self.noise_sigma_px.is_finite() && self.noise_sigma_px >= 0.0) {
            return Err(SynthError::Noise(self.noise_sigma_px));
        }
        if !(finite_pos(self.viewport.w) && finite_pos(self.viewport.h)) {
            return Err(SynthError::Viewport);
        }
        let inside = |v: f64, hi: f64| v.is_finite() && (0.0..=hi).contains(&v);
        if !(inside(self.anchor.x, self.viewport.w) && inside(self.anchor.y, self.viewport.h)) {
            return Err(SynthError::Anchor);
        }
        match (self.kind, self.swipe) {
            (TraceKind::WiggleSwipe, None) => return Err(SynthError::MissingSwipe),
            (_, Some(s)) if !(0.0..=1.0).contains(&s.fraction) => return Err(SynthError::SwipeFraction(s.fraction)),
            _ => {}
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SynthError {
    #[error("amplitude must be positive, got {0}")]
    Amplitude(f64),
    #[error("cycles must be at least 1")]
    Cycles,
    #[error("sample rate must be positive, got {0}")]
    SampleRate(f64),
    #[error("noise sigma must be non-negative, got {0}")]
    Noise(f64),
    #[error("viewport dimensions must be positive")]
    Viewport,
    #[error("anchor lies outside the viewport")]
    Anchor,
    #[error("wiggle-swipe needs a swipe direction and fraction")]
    MissingSwipe,
    #[error("swipe fraction must lie in [0, 1], got {0}")]
    SwipeFraction(f64),
}

/// Generates the trace described by `spec`. Identical specs give identical
/// traces.
pub fn generate<S: Scalar>(spec: &TraceSpec) -> Result<Trace<S>, SynthError> {
    spec.validate()?;
    let mut g = Generator::new(spec);
    match spec.kind {
        TraceKind::Wiggle => {
            g.wiggle();
            g.lift();
        }
        TraceKind::WiggleSwipe => {
            g.wiggle();
            g.swipe(spec.swipe.expect("validated"));
            g.lift();
        }
        TraceKind::ReadingDrift => g.reading_drift(),
        TraceKind::Scroll => g.scroll(),
        TraceKind::DragSelect => g.drag_select(),
        TraceKind::ClickMove => g.click_move(),
    }
    Ok(g.finish())
}

struct Generator<'a> {
    spec: &'a TraceSpec,
    rng: ChaCha8Rng,
    noise: Option<Normal<f64>>,
    dt: f64,
    t: f64,
    pos: Point<f64>,
    contact: bool,
    samples: Vec<PointerSample<f64>>,
}

impl<'a> Generator<'a> {
    fn new(spec: &'a TraceSpec) -> Self {
        let noise = (spec.noise_sigma_px > 0.0).then(|| Normal::new(0.0, spec.noise_sigma_px).expect("valid sigma"));
        Self {
            spec,
            rng: ChaCha8Rng::seed_from_u64(spec.seed),
            noise,
            dt: 1000.0 / spec.sample_rate_hz,
            t: 0.0,
            pos: spec.anchor,
            contact: false,
            samples: Vec::new(),
        }
    }

    fn kind(&self) -> PointerKind {
        match self.spec.mode {
            Mode::Desktop => PointerKind::Mouse,
            Mode::Mobile => PointerKind::Touch,
        }
    }

    fn jitter(&mut self) -> f64 {
        match self.noise {
            Some(n) => {
                let limit = 3.0 * self.spec.noise_sigma_px;
                n.sample(&mut self.rng).clamp(-limit, limit)
            }
            None => 0.0,
        }
    }

    /// Records `p` (plus noise) at the current time, then advances the
    /// clock one sample period.
    fn emit(&mut self, p: Point<f64>, phase: Phase, noise_axis: Option<Axis>) {
        let noisy = match noise_axis {
            Some(Axis::Horizontal) => Point::new(p.x + self.jitter(), p.y),
            Some(Axis::Vertical) => Point::new(p.x, p.y + self.jitter()),
            None => {
                let (dx, dy) = (self.jitter(), self.jitter());
                Point::new(p.x + dx, p.y + dy)
            }
        };
        let kind = self.kind();
        self.samples
            .push(PointerSample::new(self.t.round() as u64, noisy.x, noisy.y, phase, kind));
        self.pos = p;
        self.t += self.dt;
    }

    fn pause(&mut self, lo_ms: f64, hi_ms: f64) {
        self.t += self.rng.random_range(lo_ms..hi_ms);
    }

    fn samples_for(&mut self, lo_ms: f64, hi_ms: f64) -> usize {
        let ms = self.rng.random_range(lo_ms..hi_ms);
        ((ms / self.dt).round() as usize).max(2)
    }

    fn contact_start(&mut self, noise_axis: Option<Axis>) {
        self.contact = true;
        self.emit(self.pos, Phase::ContactStart, noise_axis);
    }

    fn contact_end(&mut self, noise_axis: Option<Axis>) {
        self.contact = false;
        self.emit(self.pos, Phase::ContactEnd, noise_axis);
    }

    /// Cosine-eased stroke to `to` over `n` samples.
    fn eased(&mut self, to: Point<f64>, n: usize, noise_axis: Option<Axis>) {
        let from = self.pos;
        for j in 1..=n {
            let u = j as f64 / n as f64;
            let p = from.lerp(to, (1.0 - (PI * u).cos()) / 2.0);
            self.emit(p, Phase::Move, noise_axis);
        }
    }

    /// Constant-speed stroke to `to`, at least `min_step` px per sample.
    fn linear(&mut self, to: Point<f64>, min_step: f64, max_step: f64, noise_axis: Option<Axis>) {
        let from = self.pos;
        let len = from.distance(to);
        let step = self.rng.random_range(min_step..max_step);
        let n = ((len / step).floor() as usize).max(1);
        for j in 1..=n {
            let p = from.lerp(to, j as f64 / n as f64);
            self.emit(p, Phase::Move, noise_axis);
        }
    }

    fn wiggle(&mut self) {
        let axis = self.spec.oscillation_axis();
        let mobile = self.spec.mode == Mode::Mobile;
        let a = self.spec.amplitude_px;
        let anchor = self.spec.anchor;
        let along0 = axis.along(anchor) - a / 2.0;
        let across0 = axis.across(anchor);
        let drift = self.rng.random_range(-8.0..8.0);
        let strokes = 2 * self.spec.cycles as usize;
        let durations: Vec<usize> = (0..strokes).map(|_| self.samples_for(90.0, 140.0)).collect();
        let total: usize = durations.iter().sum();
        let at = |along: f64, across: f64| match axis {
            Axis::Horizontal => Point::new(along, across),
            Axis::Vertical => Point::new(across, along),
        };

        self.pos = at(along0, across0);
        if mobile {
            self.contact_start(Some(axis));
        } else {
            self.emit(self.pos, Phase::Move, Some(axis));
        }
        let mut done = 0usize;
        let mut along = along0;
        for (i, n) in durations.into_iter().enumerate() {
            let target = if i % 2 == 0 { along0 + a } else { along0 };
            for j in 1..=n {
                let u = j as f64 / n as f64;
                let p_along = along + (target - along) * (1.0 - (PI * u).cos()) / 2.0;
                let p_across = across0 + drift * (done + j) as f64 / total as f64;
                self.emit(at(p_along, p_across), Phase::Move, Some(axis));
            }
            done += n;
            along = target;
        }
    }

    fn lift(&mut self) {
        if self.contact {
            self.contact_end(Some(self.spec.oscillation_axis()));
        }
    }

    fn swipe(&mut self, swipe: SwipeSpec) {
        let axis = self.spec.oscillation_axis();
        let anchor = self.spec.anchor;
        let vp = self.spec.viewport;
        let room = match swipe.direction {
            Direction::Left => anchor.x,
            Direction::Right => vp.w - anchor.x,
            Direction::Up => anchor.y,
            Direction::Down => vp.h - anchor.y,
        };
        let travel = swipe.fraction * room;
        let end = match swipe.direction {
            Direction::Left => Point::new(anchor.x - travel, self.pos.y),
            Direction::Right => Point::new(anchor.x + travel, self.pos.y),
            Direction::Up => Point::new(self.pos.x, anchor.y - travel),
            Direction::Down => Point::new(self.pos.x, anchor.y + travel),
        };
        let n = self.samples_for(150.0, 250.0);
        self.eased(end, n, Some(axis));
    }

    fn reading_drift(&mut self) {
        let vp = self.spec.viewport;
        let lines = self.rng.random_range(2..5);
        match self.spec.mode {
            Mode::Desktop => {
                let left = self.rng.random_range(0.1..0.3) * vp.w;
                let mut y = self.rng.random_range(0.2..0.5) * vp.h;
                self.pos = Point::new(left, y);
                self.emit(self.pos, Phase::Move, None);
                for _ in 0..lines {
                    // Follow the line in short bursts with reading pauses.
                    let right = left + self.rng.random_range(0.3..0.6) * vp.w;
                    while self.pos.x < right {
                        self.pause(200.0, 450.0);
                        let to = Point::new((self.pos.x + self.rng.random_range(40.0..120.0)).min(right), y);
                        self.linear(to, 2.5, 6.0, None);
                    }
                    self.pause(200.0, 400.0);
                    y += self.rng.random_range(18.0..30.0);
                    self.linear(Point::new(left, y), 8.0, 20.0, None);
                }
            }
            Mode::Mobile => {
                // Upward flicks, one contact each.
                for _ in 0..lines {
                    self.pause(250.0, 600.0);
                    self.pos = Point::new(
                        self.rng.random_range(0.3..0.7) * vp.w,
                        self.rng.random_range(0.55..0.8) * vp.h,
                    );
                    self.contact_start(None);
                    let to = Point::new(self.pos.x + self.rng.random_range(-10.0..10.0), self.pos.y - self.rng.random_range(120.0..300.0));
                    self.linear(to, 4.0, 12.0, None);
                    self.contact_end(None);
                }
            }
        }
    }

    fn scroll(&mut self) {
        let vp = self.spec.viewport;
        let flicks = self.rng.random_range(2..5);
        match self.spec.mode {
            Mode::Desktop => {
                // Vertical-only motion, alternating direction.
                self.pos = Point::new(self.rng.random_range(0.2..0.8) * vp.w, 0.5 * vp.h);
                self.emit(self.pos, Phase::Move, Some(Axis::Vertical));
                for i in 0..flicks {
                    let dy = self.rng.random_range(60.0..200.0) * if i % 2 == 0 { 1.0 } else { -1.0 };
                    let to = Point::new(self.pos.x, (self.pos.y + dy).clamp(0.0, vp.h));
                    let n = self.samples_for(100.0, 200.0);
                    self.eased(to, n, Some(Axis::Vertical));
                }
            }
            Mode::Mobile => {
                for i in 0..flicks {
                    self.pause(200.0, 500.0);
                    let up = i % 2 == 0;
                    self.pos = Point::new(
                        self.rng.random_range(0.3..0.7) * vp.w,
                        if up { 0.75 } else { 0.25 } * vp.h,
                    );
                    self.contact_start(None);
                    let dy = self.rng.random_range(150.0..300.0) * if up { -1.0 } else { 1.0 };
                    let to = Point::new(self.pos.x, self.pos.y + dy);
                    self.linear(to, 5.0, 15.0, None);
                    self.contact_end(None);
                }
            }
        }
    }

    fn drag_select(&mut self) {
        let vp = self.spec.viewport;
        let start = Point::new(self.rng.random_range(0.1..0.4) * vp.w, self.rng.random_range(0.2..0.6) * vp.h);
        self.pos = start;
        match self.spec.mode {
            Mode::Desktop => {
                self.emit(start, Phase::Move, None);
                self.pause(200.0, 300.0);
                self.contact_start(None);
                // Sweep out the selection, then adjust its end back and forth.
                let end = Point::new(start.x + self.rng.random_range(150.0..400.0), start.y + self.rng.random_range(0.0..60.0));
                self.linear(end, 3.0, 8.0, None);
                for i in 0..self.rng.random_range(3..6) {
                    let dx = self.rng.random_range(20.0..50.0) * if i % 2 == 0 { -1.0 } else { 1.0 };
                    let n = self.samples_for(90.0, 140.0);
                    self.eased(Point::new(self.pos.x + dx, self.pos.y), n, None);
                }
                self.contact_end(None);
            }
            Mode::Mobile => {
                // Long press, then drag the handle down and right.
                self.contact_start(None);
                self.pause(400.0, 600.0);
                let end = Point::new(start.x + self.rng.random_range(100.0..300.0), start.y + self.rng.random_range(20.0..120.0));
                self.linear(end, 3.0, 8.0, None);
                self.contact_end(None);
            }
        }
    }

    fn click_move(&mut self) {
        let vp = self.spec.viewport;
        let targets = self.rng.random_range(2..5);
        self.pos = Point::new(self.rng.random_range(0.1..0.9) * vp.w, self.rng.random_range(0.1..0.9) * vp.h);
        if self.spec.mode == Mode::Desktop {
            self.emit(self.pos, Phase::Move, None);
        }
        for _ in 0..targets {
            let to = Point::new(self.rng.random_range(0.05..0.95) * vp.w, self.rng.random_range(0.05..0.95) * vp.h);
            match self.spec.mode {
                Mode::Desktop => {
                    self.pause(160.0, 400.0);
                    self.linear(to, 4.0, 15.0, None);
                    self.pause(160.0, 300.0);
                    self.contact_start(None);
                    self.pause(60.0, 120.0);
                    self.contact_end(None);
                }
                Mode::Mobile => {
                    // Taps: no motion between touch down and lift.
                    self.pause(200.0, 500.0);
                    self.pos = to;
                    self.contact_start(None);
                    self.pause(50.0, 120.0);
                    self.contact_end(None);
                }
            }
        }
    }

    fn finish<S: Scalar>(self) -> Trace<S> {
        Trace::new(
            self.samples
                .into_iter()
                .map(|s| PointerSample::new(s.t, S::lit(s.x), S::lit(s.y), s.phase, s.kind))
                .collect(),
        )
    }
}
