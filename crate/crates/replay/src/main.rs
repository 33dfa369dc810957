use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use wiggle_core::recognizer::{Direction, EngineConfig};
use wiggle_core::synth::{generate, layout, TraceKind, TraceSpec};
use wiggle_core::target::{TargetMap, Viewport};
use wiggle_core::{Mode, Point, Trace};
use wiggle_replay as replay;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_GOLDEN: u8 = 3;

/// Replay pointer traces through the wiggle recognizer.
#[derive(Debug, Parser)]
#[command(name = "wiggle", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Replay one trace and write its event log as JSON lines.
    Run {
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        targets: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        /// Event log destination (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Print the run report to stderr.
        #[arg(long)]
        report: bool,
    },
    /// Replay every trace in a directory and print aggregate metrics as JSON.
    Corpus {
        dir: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare each trace's event log with its golden file.
    Golden {
        dir: PathBuf,
        #[command(flatten)]
        engine: EngineArgs,
        /// Rewrite missing or differing golden files.
        #[arg(long)]
        bless: bool,
    },
    /// Write a synthetic trace (and optionally a matching page layout).
    Generate(GenerateArgs),
    /// Add the commits of an event log to a triage store file.
    Triage {
        #[arg(long)]
        log: PathBuf,
        #[arg(long)]
        targets: PathBuf,
        /// Store file; created when missing.
        #[arg(long)]
        store: PathBuf,
        /// Timestamp (ms) of the first added clip.
        #[arg(long, default_value_t = 0)]
        now: u64,
    },
}

#[derive(Debug, Args)]
struct EngineArgs {
    /// Engine config JSON; missing keys take their defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Overrides the config's mode.
    #[arg(long, value_enum)]
    mode: Option<ModeArg>,
}

impl EngineArgs {
    fn explicit(&self) -> Result<Option<EngineConfig<f64>>> {
        let config = match &self.config {
            Some(p) => Some(replay::load_config(p)?),
            None => None,
        };
        Ok(match (config, self.mode) {
            (c, None) => c,
            (c, Some(m)) => Some(EngineConfig {
                mode: m.into(),
                ..c.unwrap_or_default()
            }),
        })
    }

    /// Config for a corpus directory, honoring `config.json` there when no
    /// explicit file is given.
    fn for_dir(&self, dir: &Path) -> Result<EngineConfig<f64>> {
        let base = match &self.config {
            Some(p) => replay::load_config(p)?,
            None => replay::corpus_config(dir, None)?,
        };
        Ok(match self.mode {
            Some(m) => EngineConfig { mode: m.into(), ..base },
            None => base,
        })
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Desktop,
    Mobile,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Desktop => Mode::Desktop,
            ModeArg::Mobile => Mode::Mobile,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum KindArg {
    Wiggle,
    WiggleSwipe,
    ReadingDrift,
    Scroll,
    DragSelect,
    ClickMove,
}

impl From<KindArg> for TraceKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Wiggle => TraceKind::Wiggle,
            KindArg::WiggleSwipe => TraceKind::WiggleSwipe,
            KindArg::ReadingDrift => TraceKind::ReadingDrift,
            KindArg::Scroll => TraceKind::Scroll,
            KindArg::DragSelect => TraceKind::DragSelect,
            KindArg::ClickMove => TraceKind::ClickMove,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DirectionArg {
    Left,
    Right,
    Up,
    Down,
}

impl From<DirectionArg> for Direction {
    fn from(d: DirectionArg) -> Self {
        match d {
            DirectionArg::Left => Direction::Left,
            DirectionArg::Right => Direction::Right,
            DirectionArg::Up => Direction::Up,
            DirectionArg::Down => Direction::Down,
        }
    }
}

fn pair(s: &str, sep: char) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(sep).ok_or_else(|| format!("expected A{sep}B"))?;
    let parse = |v: &str| v.trim().parse::<f64>().map_err(|e| format!("{v}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

fn parse_point(s: &str) -> Result<(f64, f64), String> {
    pair(s, ',')
}

fn parse_size(s: &str) -> Result<(f64, f64), String> {
    pair(s, 'x')
}

#[derive(Debug, Args)]
struct GenerateArgs {
    #[arg(long, value_enum, default_value = "wiggle")]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "desktop")]
    mode: ModeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Peak-to-peak oscillation in px.
    #[arg(long, default_value_t = 40.0)]
    amplitude: f64,
    #[arg(long, default_value_t = 3)]
    cycles: u32,
    /// Gaussian jitter sigma in px.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
    /// Terminating swipe direction (implies kind wiggle-swipe).
    #[arg(long, value_enum)]
    swipe: Option<DirectionArg>,
    /// Swipe length as a fraction of the room toward the edge.
    #[arg(long, default_value_t = 0.5)]
    fraction: f64,
    /// Wiggle center as X,Y; defaults to a point over the first paragraph.
    #[arg(long, value_parser = parse_point)]
    anchor: Option<(f64, f64)>,
    /// Viewport as WxH; defaults to 1280x800 (desktop) or 390x844 (mobile).
    #[arg(long, value_parser = parse_size)]
    viewport: Option<(f64, f64)>,
    /// Trace destination (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write a synthetic article layout for the viewport.
    #[arg(long)]
    targets_out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => replay::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run {
            trace,
            targets,
            engine,
            out,
            report,
        } => {
            let t = replay::load_trace(&trace)?;
            let map = replay::load_targets(&targets)?;
            let config = EngineConfig {
                viewport: map.viewport,
                ..engine.explicit()?.unwrap_or_default()
            };
            let r = replay::replay(&replay::trace_id(&trace), &t, &map, config)?;
            for w in &r.report.warnings {
                eprintln!("warning: {w}");
            }
            emit(out.as_deref(), &r.log_jsonl())?;
            if report {
                eprintln!("{}", serde_json::to_string_pretty(&r.report)?);
            }
        }
        Command::Corpus { dir, engine, out } => {
            let config = engine.for_dir(&dir)?;
            let report = replay::run_corpus(&dir, Some(config))?;
            for run in &report.runs {
                for w in &run.warnings {
                    eprintln!("warning: {}: {w}", run.trace_id);
                }
            }
            emit(out.as_deref(), &format!("{}\n", serde_json::to_string_pretty(&report)?))?;
        }
        Command::Golden { dir, engine, bless } => {
            let config = engine.for_dir(&dir)?;
            let results = replay::golden_check(&dir, Some(config), bless)?;
            let mut failed = false;
            for r in &results {
                match &r.outcome {
                    replay::GoldenOutcome::Match => println!("ok       {}", r.id),
                    replay::GoldenOutcome::Missing => {
                        failed = true;
                        println!("missing  {} ({})", r.id, r.golden.display());
                    }
                    replay::GoldenOutcome::Mismatch { line, expected, actual } => {
                        failed = true;
                        println!("mismatch {} at line {line}", r.id);
                        println!("  expected: {}", expected.as_deref().unwrap_or("<end of log>"));
                        println!("  actual:   {}", actual.as_deref().unwrap_or("<end of log>"));
                    }
                }
            }
            if failed {
                return Ok(ExitCode::from(EXIT_GOLDEN));
            }
        }
        Command::Generate(args) => generate_cmd(args)?,
        Command::Triage {
            log,
            targets,
            store,
            now,
        } => {
            let records = replay::load_log(&log)?;
            let map = replay::load_targets(&targets)?;
            let mut s = replay::load_store(&store)?;
            let summary = replay::apply_log(&mut s, &records, &map, now)?;
            replay::write(&store, &s.to_json())?;
            for id in &summary.unknown_regions {
                eprintln!("warning: region {id} is not in the target map");
            }
            println!("{}", serde_json::to_string(&summary)?);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn generate_cmd(a: GenerateArgs) -> Result<()> {
    let mode: Mode = a.mode.into();
    let (w, h) = a.viewport.unwrap_or(match mode {
        Mode::Desktop => (1280.0, 800.0),
        Mode::Mobile => (390.0, 844.0),
    });
    let viewport = Viewport::new(w, h);
    let (x, y) = a.anchor.unwrap_or((w / 2.0, 0.27 * h));
    let mut spec = TraceSpec {
        kind: a.kind.into(),
        amplitude_px: a.amplitude,
        cycles: a.cycles,
        ..TraceSpec::new(a.kind.into(), mode, a.seed)
    }
    .with_viewport(viewport)
    .with_anchor(Point::new(x, y))
    .with_noise(a.noise);
    if let Some(d) = a.swipe {
        spec = spec.with_swipe(d.into(), a.fraction);
    } else if matches!(a.kind, KindArg::WiggleSwipe) {
        bail!("--kind wiggle-swipe needs --swipe");
    }
    let trace: Trace<f64> = generate(&spec).context("invalid trace parameters")?;
    if let Some(p) = &a.targets_out {
        let map: TargetMap<f64> = layout::article_map(viewport);
        replay::write(p, &format!("{}\n", map.to_json()))?;
    }
    emit(a.out.as_deref(), &trace.to_jsonl())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
