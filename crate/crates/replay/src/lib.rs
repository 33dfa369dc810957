//! Deterministic replay of recorded pointer traces through the wiggle
//! engine: event logs, recognition metrics, golden files and store updates.
//!
//! Time is virtual. The engine only sees sample timestamps, and a final
//! `tick` one idle timeout after the last sample flushes whatever is still
//! pending, so a replay never depends on the host clock. Per-sample latency
//! is measured with a wall clock but never feeds back into the log.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use wiggle_core::recognizer::{Encoding, Engine, EngineConfig, EngineError, EventRecord, RecognitionEvent};
use wiggle_core::target::{TargetError, TargetMap};
use wiggle_core::trace::{PointerKind, Trace, TraceError};
use wiggle_core::triage::{ClipPart, StoreError, TriageStore};
use wiggle_core::{Mode, RegionId};

pub const TRACE_SUFFIX: &str = ".trace.jsonl";
pub const TARGETS_SUFFIX: &str = ".targets.json";
pub const GOLDEN_SUFFIX: &str = ".golden.jsonl";
pub const SHARED_TARGETS: &str = "targets.json";
pub const CORPUS_CONFIG: &str = "config.json";

#[derive(Debug, Error)]
pub enum ReplayError {
    #[error("{path}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}")]
    Trace {
        path: PathBuf,
        #[source]
        source: TraceError,
    },
    #[error("{path}")]
    Targets {
        path: PathBuf,
        #[source]
        source: TargetError,
    },
    #[error("{path}: invalid config: {message}")]
    Config { path: PathBuf, message: String },
    #[error("{path}: line {line}: {message}")]
    Log { path: PathBuf, line: usize, message: String },
    #[error("no {TRACE_SUFFIX} files in {0}")]
    EmptyCorpus(PathBuf),
    #[error("{path}: no targets file ({TARGETS_SUFFIX} or {SHARED_TARGETS})")]
    MissingTargets { path: PathBuf },
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Store(#[from] StoreError),
}

impl ReplayError {
    /// True for malformed or missing inputs, as opposed to engine errors.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, ReplayError::Engine(_) | ReplayError::Store(_))
    }
}

fn read(path: &Path) -> Result<String, ReplayError> {
    fs::read_to_string(path).map_err(|source| ReplayError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn write(path: &Path, text: &str) -> Result<(), ReplayError> {
    fs::write(path, text).map_err(|source| ReplayError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_trace(path: &Path) -> Result<Trace<f64>, ReplayError> {
    let trace = Trace::from_jsonl(&read(path)?).map_err(|source| ReplayError::Trace {
        path: path.to_owned(),
        source,
    })?;
    trace.validate().map_err(|source| ReplayError::Trace {
        path: path.to_owned(),
        source,
    })?;
    Ok(trace)
}

pub fn load_targets(path: &Path) -> Result<TargetMap<f64>, ReplayError> {
    let err = |source| ReplayError::Targets {
        path: path.to_owned(),
        source,
    };
    let map = TargetMap::from_json(&read(path)?).map_err(err)?;
    map.validate().map_err(err)?;
    Ok(map)
}

/// Reads an engine config. Missing keys take their defaults.
pub fn load_config(path: &Path) -> Result<EngineConfig<f64>, ReplayError> {
    let config: EngineConfig<f64> = serde_json::from_str(&read(path)?).map_err(|e| ReplayError::Config {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    config.validate().map_err(|e| ReplayError::Config {
        path: path.to_owned(),
        message: e.to_string(),
    })?;
    Ok(config)
}

/// Reads a JSON-lines event log.
pub fn load_log(path: &Path) -> Result<Vec<EventRecord<f64>>, ReplayError> {
    read(path)?
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            serde_json::from_str(l).map_err(|e| ReplayError::Log {
                path: path.to_owned(),
                line: i + 1,
                message: e.to_string(),
            })
        })
        .collect()
}

/// Whether a trace is expected to contain a wiggle, judged by its file name.
pub fn is_wiggle_label(trace_id: &str) -> bool {
    trace_id.starts_with("wiggle")
}

/// File name without the `.trace.jsonl` suffix.
pub fn trace_id(path: &Path) -> String {
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or_default();
    name.strip_suffix(TRACE_SUFFIX).unwrap_or(name).to_owned()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CommitSummary {
    pub target_ids: Vec<RegionId>,
    pub encoding: Encoding,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RunReport {
    pub trace_id: String,
    pub labeled_wiggle: bool,
    pub activations: usize,
    pub commits: Vec<CommitSummary>,
    pub aborts: usize,
    /// Activations on a trace not labeled as a wiggle.
    pub false_activations: usize,
    /// Wall-clock microseconds spent in each `feed` call.
    pub latency_samples_us: Vec<f64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Replay {
    pub log: Vec<EventRecord<f64>>,
    pub report: RunReport,
}

impl Replay {
    pub fn log_jsonl(&self) -> String {
        log_to_jsonl(&self.log)
    }
}

pub fn log_to_jsonl(log: &[EventRecord<f64>]) -> String {
    let mut out = String::new();
    for r in log {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    out
}

/// Non-fatal mismatches between the trace and the config.
pub fn config_warnings(trace: &Trace<f64>, map: &TargetMap<f64>, config: &EngineConfig<f64>) -> Vec<String> {
    let mut warnings = Vec::new();
    let expected = match config.mode {
        Mode::Desktop => PointerKind::Mouse,
        Mode::Mobile => PointerKind::Touch,
    };
    if let Some(s) = trace.samples.iter().find(|s| s.kind != expected) {
        warnings.push(format!(
            "{:?} mode replaying {:?} samples (first at t={})",
            config.mode, s.kind, s.t
        ));
    }
    if config.viewport != map.viewport {
        warnings.push(format!(
            "config viewport {}x{} differs from the target map's {}x{}",
            config.viewport.w, config.viewport.h, map.viewport.w, map.viewport.h
        ));
    }
    warnings
}

/// Replays `trace` through a fresh engine and flushes the pending episode
/// after the last sample.
pub fn replay(
    trace_id: &str,
    trace: &Trace<f64>,
    map: &TargetMap<f64>,
    config: EngineConfig<f64>,
) -> Result<Replay, ReplayError> {
    let warnings = config_warnings(trace, map, &config);
    let mut engine = Engine::new(config)?;
    let mut log = Vec::new();
    let mut latency = Vec::with_capacity(trace.len());
    let push = |log: &mut Vec<EventRecord<f64>>, sample_index: usize, event| {
        let seq = log.len() as u64;
        log.push(EventRecord {
            seq,
            sample_index,
            event,
        });
    };
    for (i, sample) in trace.samples.iter().enumerate() {
        let started = Instant::now();
        let out = engine.feed(*sample, map)?;
        latency.push(started.elapsed().as_secs_f64() * 1e6);
        for event in out.events {
            push(&mut log, i, event);
        }
    }
    if let Some(last) = trace.samples.last() {
        if let Some(event) = engine.tick(last.t + config.idle_timeout_ms + 1) {
            push(&mut log, trace.len(), event);
        }
    }

    let labeled_wiggle = is_wiggle_label(trace_id);
    let mut report = RunReport {
        trace_id: trace_id.to_owned(),
        labeled_wiggle,
        activations: 0,
        commits: Vec::new(),
        aborts: 0,
        false_activations: 0,
        latency_samples_us: latency,
        warnings,
    };
    for r in &log {
        match &r.event {
            RecognitionEvent::Activated { .. } => report.activations += 1,
            RecognitionEvent::Aborted { .. } => report.aborts += 1,
            RecognitionEvent::Committed { target_ids, encoding } => report.commits.push(CommitSummary {
                target_ids: target_ids.clone(),
                encoding: *encoding,
            }),
            _ => {}
        }
    }
    if !labeled_wiggle {
        report.false_activations = report.activations;
    }
    Ok(Replay { log, report })
}

/// One trace file in a corpus directory with its resolved inputs.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub id: String,
    pub trace: PathBuf,
    pub targets: PathBuf,
}

/// Lists `*.trace.jsonl` files in `dir` (sorted by name) with their target
/// maps: `<id>.targets.json` when present, else the shared `targets.json`.
pub fn corpus_entries(dir: &Path) -> Result<Vec<CorpusEntry>, ReplayError> {
    let listing = fs::read_dir(dir).map_err(|source| ReplayError::Io {
        path: dir.to_owned(),
        source,
    })?;
    let mut traces: Vec<PathBuf> = listing
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.to_str().is_some_and(|s| s.ends_with(TRACE_SUFFIX)))
        .collect();
    traces.sort();
    if traces.is_empty() {
        return Err(ReplayError::EmptyCorpus(dir.to_owned()));
    }
    traces
        .into_iter()
        .map(|trace| {
            let id = trace_id(&trace);
            let own = dir.join(format!("{id}{TARGETS_SUFFIX}"));
            let shared = dir.join(SHARED_TARGETS);
            let targets = if own.exists() {
                own
            } else if shared.exists() {
                shared
            } else {
                return Err(ReplayError::MissingTargets { path: trace });
            };
            Ok(CorpusEntry { id, trace, targets })
        })
        .collect()
}

/// The config for a corpus: `explicit` if given, else `config.json` in the
/// directory, else defaults. The viewport always comes from each map.
pub fn corpus_config(dir: &Path, explicit: Option<EngineConfig<f64>>) -> Result<EngineConfig<f64>, ReplayError> {
    if let Some(c) = explicit {
        return Ok(c);
    }
    let path = dir.join(CORPUS_CONFIG);
    if path.exists() {
        load_config(&path)
    } else {
        Ok(EngineConfig::default())
    }
}

fn with_viewport(config: EngineConfig<f64>, map: &TargetMap<f64>) -> EngineConfig<f64> {
    EngineConfig {
        viewport: map.viewport,
        ..config
    }
}

pub fn replay_entry(entry: &CorpusEntry, config: EngineConfig<f64>) -> Result<Replay, ReplayError> {
    let trace = load_trace(&entry.trace)?;
    let map = load_targets(&entry.targets)?;
    replay(&entry.id, &trace, &map, with_viewport(config, &map))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CorpusReport {
    pub traces: usize,
    pub wiggle_traces: usize,
    pub activated_wiggle_traces: usize,
    /// Share of wiggle-labeled traces with at least one activation; `None`
    /// when the corpus has no such traces.
    pub activation_rate: Option<f64>,
    pub non_wiggle_traces: usize,
    pub falsely_activated_traces: usize,
    pub false_activation_rate: Option<f64>,
    pub mean_latency_us: f64,
    pub median_latency_us: f64,
    pub runs: Vec<RunReport>,
}

pub fn median(values: &[f64]) -> f64 {
    if values.is_empty() {
        return 0.0;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    if v.len().is_multiple_of(2) {
        (v[mid - 1] + v[mid]) / 2.0
    } else {
        v[mid]
    }
}

pub fn summarize(runs: Vec<RunReport>) -> CorpusReport {
    let wiggle: Vec<&RunReport> = runs.iter().filter(|r| r.labeled_wiggle).collect();
    let other: Vec<&RunReport> = runs.iter().filter(|r| !r.labeled_wiggle).collect();
    let activated = wiggle.iter().filter(|r| r.activations > 0).count();
    let falsely = other.iter().filter(|r| r.false_activations > 0).count();
    let rate = |num: usize, den: usize| (den > 0).then(|| num as f64 / den as f64);
    let latency: Vec<f64> = runs.iter().flat_map(|r| r.latency_samples_us.iter().copied()).collect();
    let mean = if latency.is_empty() {
        0.0
    } else {
        latency.iter().sum::<f64>() / latency.len() as f64
    };
    CorpusReport {
        traces: runs.len(),
        wiggle_traces: wiggle.len(),
        activated_wiggle_traces: activated,
        activation_rate: rate(activated, wiggle.len()),
        non_wiggle_traces: other.len(),
        falsely_activated_traces: falsely,
        false_activation_rate: rate(falsely, other.len()),
        mean_latency_us: mean,
        median_latency_us: median(&latency),
        runs,
    }
}

/// Replays every trace in `dir` and aggregates the metrics.
pub fn run_corpus(dir: &Path, config: Option<EngineConfig<f64>>) -> Result<CorpusReport, ReplayError> {
    let config = corpus_config(dir, config)?;
    let runs = corpus_entries(dir)?
        .iter()
        .map(|e| replay_entry(e, config).map(|r| r.report))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(summarize(runs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoldenOutcome {
    Match,
    Missing,
    /// First differing line (1-based) with both versions; `None` when one
    /// log is a prefix of the other.
    Mismatch {
        line: usize,
        expected: Option<String>,
        actual: Option<String>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoldenResult {
    pub id: String,
    pub golden: PathBuf,
    pub outcome: GoldenOutcome,
}

pub fn compare_logs(expected: &str, actual: &str) -> GoldenOutcome {
    let mut e = expected.lines();
    let mut a = actual.lines();
    let mut line = 0;
    loop {
        line += 1;
        match (e.next(), a.next()) {
            (None, None) => return GoldenOutcome::Match,
            (x, y) if x == y => continue,
            (x, y) => {
                return GoldenOutcome::Mismatch {
                    line,
                    expected: x.map(str::to_owned),
                    actual: y.map(str::to_owned),
                }
            }
        }
    }
}

/// Compares each trace's event log with `<id>.golden.jsonl`. With `bless`,
/// missing or differing goldens are rewritten and reported as matches.
pub fn golden_check(dir: &Path, config: Option<EngineConfig<f64>>, bless: bool) -> Result<Vec<GoldenResult>, ReplayError> {
    let config = corpus_config(dir, config)?;
    corpus_entries(dir)?
        .iter()
        .map(|entry| {
            let actual = replay_entry(entry, config)?.log_jsonl();
            let golden = dir.join(format!("{}{GOLDEN_SUFFIX}", entry.id));
            let outcome = if golden.exists() {
                compare_logs(&read(&golden)?, &actual)
            } else {
                GoldenOutcome::Missing
            };
            let outcome = if bless && outcome != GoldenOutcome::Match {
                write(&golden, &actual)?;
                GoldenOutcome::Match
            } else {
                outcome
            };
            Ok(GoldenResult {
                id: entry.id.clone(),
                golden,
                outcome,
            })
        })
        .collect()
}

/// Host part of a region's source URL, or the raw string when it does not
/// parse.
pub fn provenance(source_url: &str) -> String {
    url::Url::parse(source_url)
        .ok()
        .and_then(|u| u.host_str().map(str::to_owned))
        .unwrap_or_else(|| source_url.to_owned())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TriageSummary {
    pub clips_added: usize,
    pub topics_added: usize,
    pub unknown_regions: Vec<RegionId>,
}

/// Adds every commit in `log` to `store`. Region texts and provenance come
/// from `map`; commit `k` gets timestamp `now_ms + k`.
pub fn apply_log(
    store: &mut TriageStore,
    log: &[EventRecord<f64>],
    map: &TargetMap<f64>,
    now_ms: u64,
) -> Result<TriageSummary, ReplayError> {
    let mut summary = TriageSummary::default();
    let commits = log.iter().filter_map(|r| match &r.event {
        RecognitionEvent::Committed { target_ids, encoding } => Some((target_ids, *encoding)),
        _ => None,
    });
    for (k, (ids, encoding)) in commits.enumerate() {
        let mut parts = Vec::new();
        let mut source = None;
        for id in ids {
            match map.region(id) {
                Some(region) => {
                    source.get_or_insert_with(|| provenance(&region.source_url));
                    parts.push(ClipPart::new(id.0.clone(), region.text.clone()));
                }
                None => summary.unknown_regions.push(id.clone()),
            }
        }
        if parts.is_empty() {
            continue;
        }
        match store.add_clip(parts, encoding, source.as_deref().unwrap_or(""), now_ms + k as u64)? {
            wiggle_core::triage::Added::Clip(_) => summary.clips_added += 1,
            wiggle_core::triage::Added::Topic(_) => summary.topics_added += 1,
        }
    }
    Ok(summary)
}

pub fn load_store(path: &Path) -> Result<TriageStore, ReplayError> {
    if !path.exists() {
        return Ok(TriageStore::new());
    }
    Ok(TriageStore::from_json(&read(path)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_and_ids() {
        assert_eq!(trace_id(Path::new("a/wiggle-1.trace.jsonl")), "wiggle-1");
        assert!(is_wiggle_label("wiggle-swipe-right"));
        assert!(!is_wiggle_label("reading-1"));
    }

    #[test]
    fn median_examples() {
        assert_eq!(median(&[]), 0.0);
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn log_comparison() {
        assert_eq!(compare_logs("a\nb\n", "a\nb\n"), GoldenOutcome::Match);
        assert_eq!(
            compare_logs("a\nb\n", "a\nc\n"),
            GoldenOutcome::Mismatch {
                line: 2,
                expected: Some("b".into()),
                actual: Some("c".into())
            }
        );
        assert_eq!(
            compare_logs("a\n", "a\nb\n"),
            GoldenOutcome::Mismatch {
                line: 2,
                expected: None,
                actual: Some("b".into())
            }
        );
    }

    #[test]
    fn provenance_is_the_host() {
        assert_eq!(provenance("https://www.dpreview.com/reviews/x?y=1"), "www.dpreview.com");
        assert_eq!(provenance("not a url"), "not a url");
    }
}
