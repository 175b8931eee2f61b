//! Command-line driver: count, mine, generate and verify.

use std::fs;
use std::io::{self, BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use episodes::counting::{DEFAULT_AUTOMATON_CAP, TracedOccurrence};
use episodes::io::{read_events, write_events};
use episodes::oracle::differential::{all_measures, run_differential, TrialShape};
use episodes::oracle::{oracle_frequency, oracle_total};
use episodes::synth::{generate_synthetic, SyntheticConfig};
use episodes::{
    count, count_total, mine, parse_episode, ConfigError, CountError, CountRequest, Episode, EventSequence, MineConfig,
    MineMode,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_CAP: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "episodes", version, about = "Count and mine serial episodes in event logs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count given episodes.
    Count(CountArgs),
    /// Find all frequent episodes up to a length.
    Mine(MineArgs),
    /// Write a synthetic event log.
    Gen(GenArgs),
    /// Compare the counting engine with brute force on random inputs.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Debug, Args)]
struct Common {
    /// wb, mo, mo-x, no, no-i, no-x, ni, do, ao, hd or tot.
    #[arg(long)]
    mode: String,
    /// Expiry bound on occurrence span (window width for wb).
    #[arg(long, allow_negative_numbers = true)]
    tx: Option<i64>,
    /// Event log, one `time,symbol` per line; `-` reads stdin.
    #[arg(long, default_value = "-")]
    input: String,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Abort when more automata than this are alive at once.
    #[arg(long, default_value_t = DEFAULT_AUTOMATON_CAP)]
    ao_cap: usize,
}

#[derive(Debug, Args)]
struct CountArgs {
    #[command(flatten)]
    common: Common,
    /// Episodes like `A->B->C`, separated by commas or newlines, or a file holding them.
    #[arg(long)]
    episodes: String,
    /// Print the tracked occurrences.
    #[arg(long)]
    trace: bool,
    /// Recompute each count by brute force and fail on disagreement.
    #[arg(long)]
    verify: bool,
}

#[derive(Debug, Args)]
struct MineArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    threshold: u64,
    #[arg(long)]
    max_len: usize,
}

#[derive(Debug, Args)]
struct GenArgs {
    #[arg(long)]
    alphabet: usize,
    #[arg(long)]
    length: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Largest gap between consecutive timestamps.
    #[arg(long, default_value_t = 1)]
    max_gap: i64,
    /// Episode to embed, e.g. `A->B->C`.
    #[arg(long)]
    plant: Option<String>,
    #[arg(long, default_value_t = 1)]
    repetitions: usize,
    /// Chance that a planted event is replaced by a random one.
    #[arg(long, default_value_t = 0.0)]
    noise: f64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 100)]
    trials: usize,
    /// Let several events share a timestamp.
    #[arg(long)]
    repeated_times: bool,
}

#[derive(Debug, Error)]
enum Failure {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Cap(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Io(#[from] io::Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Config(_) => EXIT_CONFIG,
            Failure::Parse(_) | Failure::Io(_) => EXIT_PARSE,
            Failure::Cap(_) => EXIT_CAP,
            Failure::Mismatch(_) => EXIT_MISMATCH,
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        match e {
            CountError::Config(c) => c.into(),
            cap @ CountError::CapExceeded { .. } => Failure::Cap(cap.to_string()),
        }
    }
}

#[derive(Debug, Serialize)]
struct Row {
    episode: String,
    mode: String,
    frequency: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    tx: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    occurrences: Option<Vec<Vec<i64>>>,
}

/// Runs the CLI on `args` (program name first) and returns the exit status.
pub fn run<I, S>(args: I, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    let result = match cli.command {
        Command::Count(a) => run_count(a, stdin, stdout, stderr),
        Command::Mine(a) => run_mine(a, stdin, stdout),
        Command::Gen(a) => run_gen(a, stdout),
        Command::Verify(a) => run_verify(a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {f}");
            f.code()
        }
    }
}

fn parse_mode(text: &str, tx: Option<i64>) -> Result<MineMode, Failure> {
    let mode: MineMode = text.parse()?;
    mode.validate_expiry(tx)?;
    Ok(mode)
}

fn load_sequence(input: &str, stdin: &mut dyn BufRead) -> Result<EventSequence, Failure> {
    let parsed = if input == "-" {
        read_events(stdin)
    } else {
        let file = fs::File::open(input).map_err(|e| Failure::Parse(format!("cannot open {input}: {e}")))?;
        read_events(BufReader::new(file))
    };
    let name = if input == "-" { "<stdin>" } else { input };
    parsed.map_err(|e| Failure::Parse(format!("{name}: {e}")))
}

/// Episode list from inline text or, when it names a readable file, its contents.
fn episode_texts(arg: &str) -> Result<Vec<String>, Failure> {
    let path = PathBuf::from(arg);
    let text = if !arg.contains("->") && path.is_file() { fs::read_to_string(&path)? } else { arg.to_owned() };
    let list: Vec<String> = text
        .split([',', '\n'])
        .map(str::trim)
        .filter(|s| !s.is_empty() && !s.starts_with('#'))
        .map(str::to_owned)
        .collect();
    if list.is_empty() {
        return Err(Failure::Config("no episodes given".into()));
    }
    Ok(list)
}

fn emit(rows: &[Row], format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    match format {
        Format::Tsv => {
            for r in rows {
                writeln!(out, "{}\t{}\t{}", r.episode, r.mode, r.frequency)?;
                for occ in r.occurrences.iter().flatten() {
                    let times: Vec<String> = occ.iter().map(i64::to_string).collect();
                    writeln!(out, "{}\t{}\t{}", r.episode, r.mode, times.join(" "))?;
                }
            }
        }
        Format::Json => {
            serde_json::to_writer(&mut *out, rows).map_err(io::Error::from)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn occurrence_times(trace: &[TracedOccurrence]) -> Vec<Vec<i64>> {
    trace.iter().map(|t| t.occurrence.times().to_vec()).collect()
}

fn run_count(a: CountArgs, stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), Failure> {
    let c = &a.common;
    let mode = parse_mode(&c.mode, c.tx)?;
    if a.trace && mode == MineMode::Total {
        return Err(Failure::Config("--trace is not available for tot".into()));
    }
    let texts = episode_texts(&a.episodes)?;
    let d = load_sequence(&c.input, stdin)?;
    let mut alphabet = d.alphabet().clone();
    let episodes: Vec<Episode> = texts
        .iter()
        .map(|t| parse_episode(t, &mut alphabet))
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Parse(e.to_string()))?;
    // Symbols absent from the log still need ids.
    let d = EventSequence::new(d.events().to_vec(), alphabet).expect("same events");

    let (freqs, traces) = match mode {
        MineMode::Total => {
            let tx = c.tx.expect("validated");
            (count_total(&episodes, &d, tx)?, None)
        }
        MineMode::Count(m) => {
            let mut req = CountRequest::new(episodes.clone(), m).with_cap(c.ao_cap);
            req.tx = c.tx;
            req.trace = a.trace;
            let report = count(&req, &d)?;
            let traces: Option<Vec<_>> =
                a.trace.then(|| report.counts.iter().map(|x| occurrence_times(x.trace.as_deref().unwrap_or(&[]))).collect());
            (report.frequencies(), traces)
        }
    };

    let mut rows = Vec::with_capacity(episodes.len());
    for (i, (e, f)) in episodes.iter().zip(&freqs).enumerate() {
        rows.push(Row {
            episode: e.display(d.alphabet()).to_string(),
            mode: mode.label().to_owned(),
            frequency: *f,
            tx: c.tx,
            occurrences: traces.as_ref().map(|t| t[i].clone()),
        });
    }
    emit(&rows, c.format, stdout)?;

    if a.verify {
        let mut bad = 0;
        for (row, e) in rows.iter().zip(&episodes) {
            let expected = match mode {
                MineMode::Total => oracle_total(e, &d, c.tx.expect("validated")),
                MineMode::Count(m) => oracle_frequency(e, &d, m, c.tx),
            };
            match expected {
                Ok(v) if v == row.frequency => {}
                Ok(v) => {
                    bad += 1;
                    writeln!(stderr, "mismatch: {} engine {} brute force {v}", row.episode, row.frequency)?;
                }
                Err(err) => writeln!(stderr, "not verified: {}: {err}", row.episode)?,
            }
        }
        if bad > 0 {
            return Err(Failure::Mismatch(format!("{bad} counts disagree with brute force")));
        }
    }
    Ok(())
}

fn run_mine(a: MineArgs, stdin: &mut dyn BufRead, stdout: &mut dyn Write) -> Result<(), Failure> {
    let c = &a.common;
    let mode = parse_mode(&c.mode, c.tx)?;
    let d = load_sequence(&c.input, stdin)?;
    let mut config = MineConfig::new(mode, a.threshold, a.max_len);
    config.tx = c.tx;
    config.automaton_cap = c.ao_cap;
    let levels = mine(&d, &config)?;
    let rows: Vec<Row> = levels
        .iter()
        .flat_map(|l| l.entries())
        .map(|(e, f)| Row {
            episode: e.display(d.alphabet()).to_string(),
            mode: mode.label().to_owned(),
            frequency: *f,
            tx: c.tx,
            occurrences: None,
        })
        .collect();
    emit(&rows, c.format, stdout)
}

fn run_gen(a: GenArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let mut config = SyntheticConfig::new(a.alphabet, a.length, a.seed);
    config.max_gap = a.max_gap;
    if let Some(p) = &a.plant {
        config = config.with_planted(p, a.repetitions, a.noise);
    }
    let d = generate_synthetic(&config).map_err(|e| Failure::Config(e.to_string()))?;
    stdout.write_all(write_events(&d).as_bytes())?;
    Ok(())
}

fn run_verify(a: VerifyArgs, stdout: &mut dyn Write) -> Result<(), Failure> {
    let shape = TrialShape { repeated_times: a.repeated_times, ..TrialShape::default() };
    let summary = run_differential(a.seed, a.trials, shape, &all_measures());
    writeln!(
        stdout,
        "trials {}\tcompared {}\tskipped {}\tmismatches {}",
        summary.trials,
        summary.compared,
        summary.skipped,
        summary.mismatches.len()
    )?;
    for m in &summary.mismatches {
        writeln!(stdout, "{m}")?;
    }
    if summary.passed() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!("{} mismatches", summary.mismatches.len())))
    }
}
