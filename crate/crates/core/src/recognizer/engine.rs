use thiserror::Error;

use crate::geometry::{Mode, Point, SegmentTracker};
use crate::scalar::Scalar;
use crate::target::{Granularity, RegionId, TargetMap};
use crate::trace::{Phase as ContactPhase, PointerSample};

use super::config::{ConfigError, EngineConfig, LATERAL_WINDOW};
use super::event::{AbortReason, Encoding, RecognitionEvent};
use super::swipe::{classify_extension, classify_granularity, compute_valence, priority_from_swipe, Direction, Extension};

/// Recognizer phase. Legal moves are
/// `Idle -> Tracking -> Activated -> (Extending ->) Committed`, with
/// `Tracking -> Idle` on abort and any phase back to `Idle` on reset. A
/// committed engine returns to `Idle` before handling its next sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Idle,
    Tracking,
    Activated,
    Extending,
    Committed,
}

/// Out-of-band conditions noticed while handling a sample. Not part of the
/// event log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Signal {
    /// The sample lay outside the viewport and was clamped to it.
    Clamped,
    /// Granularity was estimated from fewer segments than the lateral window.
    PartialWindow,
    /// Post-activation travel was long enough but had no dominant axis.
    AmbiguousSwipe,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EngineError {
    #[error("sample at t={t} arrived after t={previous}")]
    OutOfOrder { t: u64, previous: u64 },
    #[error("collecting multiple blocks is not supported in mobile mode")]
    MultiBlockUnsupported,
    #[error("operation requires an activated wiggle, engine is {0:?}")]
    InvalidPhase(Phase),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeedOutput<S: Scalar> {
    pub events: Vec<RecognitionEvent<S>>,
    pub signals: Vec<Signal>,
}

impl<S: Scalar> Default for FeedOutput<S> {
    fn default() -> Self {
        Self {
            events: Vec::new(),
            signals: Vec::new(),
        }
    }
}

/// Read-only view of the recognizer.
#[derive(Debug, Clone, PartialEq)]
pub struct RecognizerState<S> {
    pub phase: Phase,
    pub reversal_count: usize,
    /// Running mean of tracked positions; `None` while idle.
    pub wiggle_center: Option<Point<S>>,
    pub candidate_target: Option<RegionId>,
    pub pending_granularity: Granularity,
}

/// One tracking episode: positions since the wiggle (or continuation)
/// started.
#[derive(Debug, Clone)]
struct Episode<S: Scalar> {
    tracker: SegmentTracker<S>,
    points: Vec<Point<S>>,
    sum: Point<S>,
    candidate: Option<RegionId>,
    granularity: Granularity,
    last_progress: Option<(usize, RegionId, Granularity)>,
    shown: bool,
    /// Reached the activation threshold with nothing underneath; the episode
    /// can no longer activate.
    spent: bool,
    /// Mobile: the block under the initial touch.
    anchored: Option<RegionId>,
}

impl<S: Scalar> Episode<S> {
    fn new(jitter_eps: S) -> Self {
        Self {
            tracker: SegmentTracker::new(jitter_eps),
            points: Vec::new(),
            sum: Point::default(),
            candidate: None,
            granularity: Granularity::Block,
            last_progress: None,
            shown: false,
            spent: false,
            anchored: None,
        }
    }

    fn push(&mut self, p: Point<S>, axis_pos: S) {
        self.tracker.push(self.points.len(), axis_pos);
        self.points.push(p);
        self.sum = self.sum + p;
    }

    fn center(&self) -> Point<S> {
        let n = S::from_usize_lossy(self.points.len().max(1));
        Point::new(self.sum.x / n, self.sum.y / n)
    }
}

/// Content collected by an activated wiggle, awaiting commit.
#[derive(Debug, Clone)]
struct Collection<S: Scalar> {
    targets: Vec<RegionId>,
    center: Point<S>,
    granularity: Granularity,
    reversals: usize,
    extension: Option<(Direction, S)>,
    continuation: Option<Episode<S>>,
}

enum Evaluation {
    Continue,
    Activate(RegionId, Granularity),
}

/// The eager wiggle recognizer. Feed and tick calls must be serialized per
/// instance; independent instances share nothing.
#[derive(Debug, Clone)]
pub struct Engine<S: Scalar> {
    config: EngineConfig<S>,
    phase: Phase,
    last_t: Option<u64>,
    next_index: usize,
    episode: Option<Episode<S>>,
    collection: Option<Collection<S>>,
    contact: bool,
    /// Mobile: activated and committed while the finger is still down, so
    /// everything until the lift is swallowed.
    hold_until_lift: bool,
}

impl<S: Scalar> Engine<S> {
    pub fn new(config: EngineConfig<S>) -> Result<Self, EngineError> {
        config.validate()?;
        Ok(Self {
            config,
            phase: Phase::Idle,
            last_t: None,
            next_index: 0,
            episode: None,
            collection: None,
            contact: false,
            hold_until_lift: false,
        })
    }

    pub fn config(&self) -> &EngineConfig<S> {
        &self.config
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn state(&self) -> RecognizerState<S> {
        let idle = RecognizerState {
            phase: self.phase,
            reversal_count: 0,
            wiggle_center: None,
            candidate_target: None,
            pending_granularity: Granularity::Block,
        };
        match (&self.episode, &self.collection) {
            (_, Some(c)) => RecognizerState {
                reversal_count: c.reversals,
                wiggle_center: Some(c.center),
                candidate_target: c.targets.last().cloned(),
                pending_granularity: c.granularity,
                ..idle
            },
            (Some(e), None) => RecognizerState {
                reversal_count: e.tracker.reversals(),
                wiggle_center: Some(e.center()),
                candidate_target: e.candidate.clone(),
                pending_granularity: e.granularity,
                ..idle
            },
            (None, None) => idle,
        }
    }

    /// Handles one sample and returns every event it triggers.
    ///
    /// Samples must arrive in timestamp order. A gap longer than the idle
    /// timeout since the previous sample first expires the pending episode,
    /// exactly as [`Engine::tick`] would have.
    pub fn feed(&mut self, sample: PointerSample<S>, map: &TargetMap<S>) -> Result<FeedOutput<S>, EngineError> {
        if let Some(previous) = self.last_t {
            if sample.t < previous {
                return Err(EngineError::OutOfOrder { t: sample.t, previous });
            }
        }
        let index = self.next_index;
        self.next_index += 1;

        let mut out = FeedOutput::default();
        if let Some(event) = self.tick(sample.t) {
            out.events.push(event);
        }
        self.last_t = Some(sample.t);
        if self.phase == Phase::Committed {
            self.clear();
        }

        let raw = sample.position();
        let p = self.config.viewport.clamp(raw);
        if p != raw {
            out.signals.push(Signal::Clamped);
        }
        let sample = sample.with_position(p);

        match self.config.mode {
            Mode::Desktop => self.feed_desktop(index, sample, map, &mut out),
            Mode::Mobile => self.feed_mobile(index, sample, map, &mut out),
        }
        Ok(out)
    }

    /// Expires the pending episode when more than `idle_timeout_ms` have
    /// passed since the last sample: tracking aborts, an activated wiggle
    /// commits with whatever extension it has.
    pub fn tick(&mut self, now_ms: u64) -> Option<RecognitionEvent<S>> {
        let last = self.last_t?;
        if now_ms <= last || now_ms - last <= self.config.idle_timeout_ms {
            return None;
        }
        match self.phase {
            Phase::Tracking => {
                let shown = self.episode.as_ref().is_some_and(|e| e.shown);
                self.clear();
                shown.then_some(RecognitionEvent::Aborted {
                    reason: AbortReason::Idle,
                })
            }
            Phase::Activated | Phase::Extending => Some(self.commit()),
            Phase::Idle | Phase::Committed => None,
        }
    }

    /// Desktop only: extends an activated collection when the pointer wiggles
    /// over another region. [`Engine::feed`] does this automatically; this
    /// entry point exists for hosts that route post-activation samples
    /// separately.
    pub fn continue_multi_block(
        &mut self,
        sample: PointerSample<S>,
        map: &TargetMap<S>,
    ) -> Result<Vec<RecognitionEvent<S>>, EngineError> {
        if self.config.mode == Mode::Mobile {
            return Err(EngineError::MultiBlockUnsupported);
        }
        if !matches!(self.phase, Phase::Activated | Phase::Extending) {
            return Err(EngineError::InvalidPhase(self.phase));
        }
        Ok(self.feed(sample, map)?.events)
    }

    /// Drops all tracking data. A pending collection is discarded without a
    /// commit.
    pub fn reset(&mut self) {
        self.clear();
        self.hold_until_lift = false;
    }

    fn clear(&mut self) {
        self.phase = Phase::Idle;
        self.episode = None;
        self.collection = None;
    }

    fn abort(&mut self, reason: AbortReason, out: &mut FeedOutput<S>) {
        if self.episode.as_ref().is_some_and(|e| e.shown) {
            out.events.push(RecognitionEvent::Aborted { reason });
        }
        self.clear();
    }

    fn commit(&mut self) -> RecognitionEvent<S> {
        let collection = self.collection.take().expect("commit requires a collection");
        let encoding = match collection.extension {
            None => Encoding::None,
            Some((direction, fraction)) if direction.is_horizontal() => Encoding::Valence {
                score: compute_valence(direction, fraction).expect("horizontal"),
            },
            Some((direction, fraction)) => Encoding::Priority {
                level: priority_from_swipe(direction, fraction, self.config.edge_fraction).expect("vertical"),
            },
        };
        self.episode = None;
        self.phase = Phase::Committed;
        if self.config.mode == Mode::Mobile && self.contact {
            self.hold_until_lift = true;
        }
        RecognitionEvent::Committed {
            target_ids: collection.targets,
            encoding,
        }
    }

    fn feed_desktop(&mut self, index: usize, sample: PointerSample<S>, map: &TargetMap<S>, out: &mut FeedOutput<S>) {
        match self.phase {
            Phase::Idle | Phase::Tracking | Phase::Committed => {
                out.events.push(RecognitionEvent::PassThrough { sample_index: index });
                match sample.phase {
                    ContactPhase::ContactStart => {
                        self.contact = true;
                        if self.phase == Phase::Tracking {
                            self.abort(AbortReason::ContactStarted, out);
                        }
                    }
                    ContactPhase::ContactEnd => self.contact = false,
                    // Button-held motion belongs to selection and dragging.
                    ContactPhase::Move if self.contact => {}
                    ContactPhase::Move => self.track(sample.position(), map, out),
                }
            }
            Phase::Activated | Phase::Extending => match sample.phase {
                ContactPhase::ContactStart => {
                    self.contact = true;
                    let committed = self.commit();
                    out.events.push(committed);
                }
                ContactPhase::ContactEnd => self.contact = false,
                ContactPhase::Move => self.follow(sample, map, out),
            },
        }
    }

    fn feed_mobile(&mut self, index: usize, sample: PointerSample<S>, map: &TargetMap<S>, out: &mut FeedOutput<S>) {
        if self.hold_until_lift {
            if sample.phase == ContactPhase::ContactEnd {
                self.contact = false;
                self.hold_until_lift = false;
            }
            return;
        }
        let p = sample.position();
        match self.phase {
            Phase::Idle | Phase::Tracking | Phase::Committed => {
                out.events.push(RecognitionEvent::PassThrough { sample_index: index });
                match sample.phase {
                    ContactPhase::ContactStart => {
                        if self.phase == Phase::Tracking {
                            self.clear();
                        }
                        self.contact = true;
                        let mut episode = Episode::new(self.config.jitter_eps_px);
                        episode.anchored = map.target_under_point(p).map(|r| r.id.clone());
                        self.episode = Some(episode);
                        self.phase = Phase::Tracking;
                        self.track(p, map, out);
                    }
                    ContactPhase::Move if self.contact => self.track(p, map, out),
                    ContactPhase::Move => {}
                    ContactPhase::ContactEnd => {
                        self.contact = false;
                        if self.phase == Phase::Tracking {
                            self.abort(AbortReason::ContactEnded, out);
                        }
                    }
                }
            }
            Phase::Activated | Phase::Extending => match sample.phase {
                ContactPhase::Move => self.update_extension(sample, out),
                ContactPhase::ContactEnd => {
                    self.update_extension(sample, out);
                    self.contact = false;
                    let committed = self.commit();
                    out.events.push(committed);
                }
                ContactPhase::ContactStart => {}
            },
        }
    }

    /// Adds a position to the current tracking episode and activates when
    /// the reversal threshold is reached over a target.
    fn track(&mut self, p: Point<S>, map: &TargetMap<S>, out: &mut FeedOutput<S>) {
        let axis = self.config.axis();
        let jitter = self.config.jitter_eps_px;
        let episode = self.episode.get_or_insert_with(|| Episode::new(jitter));
        self.phase = Phase::Tracking;
        episode.push(p, axis.along(p));

        if let Evaluation::Activate(target_id, granularity) = evaluate(&self.config, episode, map, &[], out) {
            let center = episode.center();
            let reversals = episode.tracker.reversals();
            self.episode = None;
            self.collection = Some(Collection {
                targets: vec![target_id.clone()],
                center,
                granularity,
                reversals,
                extension: None,
                continuation: None,
            });
            self.phase = Phase::Activated;
            out.events.push(RecognitionEvent::Activated {
                target_id,
                granularity,
                wiggle_center: center,
            });
        }
    }

    /// Desktop post-activation motion: a fresh wiggle over another region
    /// chains it onto the collection; otherwise the motion may be a swipe.
    fn follow(&mut self, sample: PointerSample<S>, map: &TargetMap<S>, out: &mut FeedOutput<S>) {
        let p = sample.position();
        let axis = self.config.axis();
        let jitter = self.config.jitter_eps_px;
        let collection = self.collection.as_mut().expect("activated engine has a collection");
        // A step dominated by cross-axis travel (a vertical swipe, or moving
        // to another block) restarts the continuation, so hand jitter along
        // the way cannot add up to a wiggle.
        if let Some(last) = collection.continuation.as_ref().and_then(|c| c.points.last()) {
            let along = (axis.along(p) - axis.along(*last)).abs();
            let across = (axis.across(p) - axis.across(*last)).abs();
            if across > along.max(jitter) {
                collection.continuation = None;
            }
        }
        let continuation = collection.continuation.get_or_insert_with(|| Episode::new(jitter));
        continuation.push(p, axis.along(p));

        if let Evaluation::Activate(target_id, granularity) =
            evaluate(&self.config, continuation, map, &collection.targets, out)
        {
            let center = continuation.center();
            collection.reversals = continuation.tracker.reversals();
            collection.targets.push(target_id.clone());
            collection.center = center;
            collection.granularity = granularity;
            collection.extension = None;
            collection.continuation = None;
            self.phase = Phase::Activated;
            out.events.push(RecognitionEvent::Activated {
                target_id,
                granularity,
                wiggle_center: center,
            });
            return;
        }
        if continuation.spent {
            // Threshold reached over collected content or nothing: start over.
            collection.continuation = None;
        }
        self.update_extension(sample, out);
    }

    fn update_extension(&mut self, sample: PointerSample<S>, out: &mut FeedOutput<S>) {
        let collection = self.collection.as_mut().expect("activated engine has a collection");
        match classify_extension(&[sample], collection.center, &self.config) {
            Extension::Swipe { direction, fraction } => {
                if collection.extension != Some((direction, fraction)) {
                    collection.extension = Some((direction, fraction));
                    self.phase = Phase::Extending;
                    out.events.push(RecognitionEvent::ExtensionUpdated {
                        direction,
                        fraction_of_available: fraction,
                    });
                }
            }
            Extension::Ambiguous => out.signals.push(Signal::AmbiguousSwipe),
            Extension::BelowThreshold => {}
        }
    }
}

/// Refreshes an episode's candidate and progress. Regions in `exclude` are
/// treated as absent. Returns `Activate` on the sample where the reversal
/// count first reaches the threshold over a target.
fn evaluate<S: Scalar>(
    config: &EngineConfig<S>,
    episode: &mut Episode<S>,
    map: &TargetMap<S>,
    exclude: &[RegionId],
    out: &mut FeedOutput<S>,
) -> Evaluation {
    if episode.spent {
        return Evaluation::Continue;
    }
    let reversals = episode.tracker.reversals();
    let (candidate, granularity) = match config.mode {
        Mode::Mobile => (episode.anchored.clone(), Granularity::Block),
        Mode::Desktop => {
            let extent = episode.tracker.completed_extent(LATERAL_WINDOW);
            if extent.partial && extent.segments_used > 0 {
                out.signals.push(Signal::PartialWindow);
            }
            let granularity = classify_granularity(extent.mean, Mode::Desktop, config.word_extent_px);
            let start = episode.tracker.window_start(LATERAL_WINDOW).unwrap_or(0);
            let candidate = map
                .acquire_target(&episode.points[start..], granularity, config.resample_n)
                .map(|r| r.id.clone());
            (candidate, granularity)
        }
    };
    let candidate = candidate.filter(|id| !exclude.contains(id));
    episode.candidate = candidate.clone();
    episode.granularity = granularity;

    // Straight motion over content is not worth a visual cue.
    if let Some(id) = candidate.as_ref().filter(|_| reversals > 0) {
        let progress = (reversals, id.clone(), granularity);
        if episode.last_progress.as_ref() != Some(&progress) {
            out.events.push(RecognitionEvent::TrackingProgress {
                reversals,
                candidate_target_id: Some(id.clone()),
                granularity,
            });
            episode.shown = true;
            episode.last_progress = Some(progress);
        }
    }

    if reversals >= config.activation_reversals {
        match candidate {
            Some(id) => return Evaluation::Activate(id, granularity),
            None => episode.spent = true,
        }
    }
    Evaluation::Continue
}
