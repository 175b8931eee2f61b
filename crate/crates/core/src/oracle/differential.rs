//! Randomized engine-versus-oracle comparison on small inputs.

use rand_chacha::ChaCha8Rng;
use rand::{Rng, SeedableRng};

use crate::counting::{count, count_total, CountRequest, ExpiryUse, FrequencyMode};
use crate::episode::Episode;
use crate::error::OracleError;
use crate::sequence::{Alphabet, Event, EventSequence, EventType};

use super::{oracle_frequency, oracle_total};

/// Shape of the random inputs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialShape {
    pub max_alphabet: usize,
    pub max_events: usize,
    pub max_nodes: usize,
    /// Allow several events to share a timestamp.
    pub repeated_times: bool,
}

impl Default for TrialShape {
    fn default() -> Self {
        Self { max_alphabet: 5, max_events: 30, max_nodes: 4, repeated_times: false }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trial {
    pub sequence: EventSequence,
    pub episode: Episode,
}

const NAMES: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];

/// Draws a random sequence and episode over a shared alphabet.
pub fn random_trial<R: Rng>(rng: &mut R, shape: TrialShape) -> Trial {
    let size = rng.random_range(1..=shape.max_alphabet.clamp(1, NAMES.len()));
    let alphabet = Alphabet::from_names(&NAMES[..size]);
    let n = rng.random_range(0..=shape.max_events);
    let mut time = 0i64;
    let mut events = Vec::with_capacity(n);
    for i in 0..n {
        let gap = if shape.repeated_times && i > 0 { rng.random_range(0..=2) } else { rng.random_range(1..=3) };
        time += gap;
        events.push(Event::new(EventType(rng.random_range(0..size as u32)), time));
    }
    let nodes = rng.random_range(1..=shape.max_nodes.max(1));
    let episode = Episode::new((0..nodes).map(|_| EventType(rng.random_range(0..size as u32))).collect());
    let sequence = EventSequence::new(events, alphabet).expect("valid by construction");
    Trial { sequence, episode }
}

/// A random expiry bound in `0..=span + 2`.
pub fn random_expiry<R: Rng>(rng: &mut R, d: &EventSequence) -> i64 {
    rng.random_range(0..=d.time_span() + 2)
}

/// What was compared: a counting mode or total frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    Mode(FrequencyMode),
    Total,
}

impl std::fmt::Display for Measure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Measure::Mode(m) => f.write_str(m.label()),
            Measure::Total => f.write_str("tot"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub trial: usize,
    pub measure: Measure,
    pub tx: Option<i64>,
    pub episode: String,
    pub sequence: String,
    pub engine: u64,
    pub oracle: u64,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "trial {} {} tx={:?} {} in [{}]: engine {} oracle {}",
            self.trial, self.measure, self.tx, self.episode, self.sequence, self.engine, self.oracle
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DifferentialSummary {
    pub trials: usize,
    pub compared: usize,
    /// Comparisons dropped because the oracle refused the input.
    pub skipped: usize,
    pub mismatches: Vec<Mismatch>,
}

impl DifferentialSummary {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn merge(&mut self, other: DifferentialSummary) {
        self.trials += other.trials;
        self.compared += other.compared;
        self.skipped += other.skipped;
        self.mismatches.extend(other.mismatches);
    }
}

/// Compares engine and oracle on one trial. Expiry bounds are drawn from
/// `rng` for modes that need one.
pub fn compare_trial<R: Rng>(
    rng: &mut R,
    trial_no: usize,
    trial: &Trial,
    measures: &[Measure],
    summary: &mut DifferentialSummary,
) {
    let d = &trial.sequence;
    let alpha = &trial.episode;
    for &measure in measures {
        let tx = match measure {
            Measure::Mode(m) if m.expiry_use() != ExpiryUse::Required => None,
            _ => Some(random_expiry(rng, d)),
        };
        let oracle = match measure {
            Measure::Mode(m) => oracle_frequency(alpha, d, m, tx),
            Measure::Total => oracle_total(alpha, d, tx.unwrap()),
        };
        let oracle = match oracle {
            Ok(v) => v,
            Err(
                OracleError::TooManyOccurrences { .. }
                | OracleError::SequenceTooLong { .. }
                | OracleError::SearchTooLarge { .. },
            ) => {
                summary.skipped += 1;
                continue;
            }
            Err(e) => panic!("oracle rejected a valid request: {e}"),
        };
        let engine = match measure {
            Measure::Mode(m) => {
                let mut req = CountRequest::new(vec![alpha.clone()], m);
                req.tx = tx;
                count(&req, d).expect("valid request").counts[0].frequency
            }
            Measure::Total => count_total(std::slice::from_ref(alpha), d, tx.unwrap()).expect("valid request")[0],
        };
        summary.compared += 1;
        if engine != oracle {
            summary.mismatches.push(Mismatch {
                trial: trial_no,
                measure,
                tx,
                episode: alpha.display(d.alphabet()).to_string(),
                sequence: d.to_string(),
                engine,
                oracle,
            });
        }
    }
}

/// Every counting mode plus total frequency.
pub fn all_measures() -> Vec<Measure> {
    FrequencyMode::ALL.into_iter().map(Measure::Mode).chain([Measure::Total]).collect()
}

/// Runs `trials` random comparisons seeded by `seed`.
pub fn run_differential(seed: u64, trials: usize, shape: TrialShape, measures: &[Measure]) -> DifferentialSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = DifferentialSummary { trials, ..Default::default() };
    for t in 0..trials {
        let trial = random_trial(&mut rng, shape);
        compare_trial(&mut rng, t, &trial, measures, &mut summary);
    }
    summary
}
