//! One-pass counting of serial episodes under every supported frequency.
//!
//! A single engine drives per-episode automata over the event stream. What
//! differs between frequencies is captured by a [`Policy`]: when an
//! automaton may transit, whether it leaves a copy behind, whether
//! colliding automata are merged, when a completed occurrence is counted
//! and by how much, and whether completion resets the episode.
//!
//! Events sharing a timestamp are processed as one batch. An automaton
//! makes at most one transition per batch; merges of colliding automata,
//! and the choice among automata completing together, are applied once the
//! whole batch has been seen.

mod distinct;
mod engine;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::automata::WaitsIndex;
use crate::episode::{Episode, Occurrence, Window};
use crate::error::{ConfigError, CountError};
use crate::sequence::EventSequence;

use distinct::Frontier;
use engine::{CapHit, Runner};

/// The frequency definitions the engine can count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FrequencyMode {
    /// Number of width-`tx` windows containing an occurrence.
    Wb,
    /// Number of minimal windows.
    Mo,
    /// Number of minimal windows of width at most `tx`.
    MoX,
    /// Maximum number of non-overlapped occurrences.
    No,
    /// Non-overlapped, tracking the innermost occurrence among those ending together.
    NoI,
    /// Maximum number of non-overlapped occurrences with span at most `tx`.
    NoX,
    /// Maximum number of non-interleaved occurrences.
    Ni,
    /// Maximum number of distinct (event-disjoint) occurrences.
    Do,
    /// All occurrences.
    Ao,
    /// Number of width-`tx` windows with an occurrence starting at the left end.
    Hd,
}

/// How a mode treats the expiry bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpiryUse {
    Required,
    Forbidden,
    /// No algorithm exists for the expiry variant.
    Unsupported,
}

impl FrequencyMode {
    pub const ALL: [FrequencyMode; 10] = [
        FrequencyMode::Wb,
        FrequencyMode::Mo,
        FrequencyMode::MoX,
        FrequencyMode::No,
        FrequencyMode::NoI,
        FrequencyMode::NoX,
        FrequencyMode::Ni,
        FrequencyMode::Do,
        FrequencyMode::Ao,
        FrequencyMode::Hd,
    ];

    pub fn label(self) -> &'static str {
        match self {
            FrequencyMode::Wb => "wb",
            FrequencyMode::Mo => "mo",
            FrequencyMode::MoX => "mo-x",
            FrequencyMode::No => "no",
            FrequencyMode::NoI => "no-i",
            FrequencyMode::NoX => "no-x",
            FrequencyMode::Ni => "ni",
            FrequencyMode::Do => "do",
            FrequencyMode::Ao => "ao",
            FrequencyMode::Hd => "hd",
        }
    }

    pub fn expiry_use(self) -> ExpiryUse {
        match self {
            FrequencyMode::Wb | FrequencyMode::MoX | FrequencyMode::NoX | FrequencyMode::Hd => {
                ExpiryUse::Required
            }
            FrequencyMode::Mo | FrequencyMode::No | FrequencyMode::NoI | FrequencyMode::Ao => {
                ExpiryUse::Forbidden
            }
            FrequencyMode::Ni | FrequencyMode::Do => ExpiryUse::Unsupported,
        }
    }

    pub fn validate_expiry(self, tx: Option<i64>) -> Result<(), ConfigError> {
        match (self.expiry_use(), tx) {
            (ExpiryUse::Required, None) => Err(ConfigError::ExpiryRequired(self.label().to_owned())),
            (ExpiryUse::Required, Some(t)) if t < 0 => Err(ConfigError::NegativeExpiry(t)),
            (ExpiryUse::Required, Some(_)) => Ok(()),
            (ExpiryUse::Forbidden, Some(_)) => Err(ConfigError::ExpiryForbidden(self)),
            (ExpiryUse::Unsupported, Some(_)) => Err(ConfigError::ExpiryUnsupported(self)),
            (_, None) => Ok(()),
        }
    }
}

impl fmt::Display for FrequencyMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for FrequencyMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        FrequencyMode::ALL
            .into_iter()
            .find(|m| m.label() == lower)
            .ok_or_else(|| ConfigError::UnknownMode(s.to_owned()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransitRule {
    Always,
    /// Only if no earlier automaton of the episode sits in the destination state.
    NoEarlierInNextState,
    /// Only the oldest automaton among those in the same state that can take the event.
    OldestInState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CopyRule {
    Never,
    OnStartExit,
    Always,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JoinRule {
    Never,
    Always,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncrementRule {
    Always,
    /// Only if the tracked span is at most the expiry bound.
    WithinExpiry,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RetireRule {
    Never,
    Always,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IncRule {
    Unit,
    /// Number of new sliding windows covering the latest minimal window.
    WindowsBased,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Policy {
    pub transit: TransitRule,
    pub copy: CopyRule,
    pub join: JoinRule,
    pub increment: IncrementRule,
    pub retire: RetireRule,
    pub inc: IncRule,
}

pub fn policy_for(mode: FrequencyMode) -> Policy {
    use FrequencyMode::*;
    let transit = match mode {
        Ni => TransitRule::NoEarlierInNextState,
        Do => TransitRule::OldestInState,
        _ => TransitRule::Always,
    };
    let copy = match mode {
        No => CopyRule::Never,
        Ao => CopyRule::Always,
        _ => CopyRule::OnStartExit,
    };
    let join = match mode {
        Wb | Mo | MoX | NoX | NoI => JoinRule::Always,
        _ => JoinRule::Never,
    };
    let increment = match mode {
        Wb | NoX | MoX | Hd => IncrementRule::WithinExpiry,
        _ => IncrementRule::Always,
    };
    let retire = match mode {
        No | NoX | NoI => RetireRule::Always,
        _ => RetireRule::Never,
    };
    let inc = if mode == Wb { IncRule::WindowsBased } else { IncRule::Unit };
    Policy { transit, copy, join, increment, retire, inc }
}

pub const DEFAULT_AUTOMATON_CAP: usize = 1_000_000;

/// What to count, how, and over which candidates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountRequest {
    pub candidates: Vec<Episode>,
    pub mode: FrequencyMode,
    /// Expiry bound on span (MO-X, NO-X) or window width (WB, HD).
    pub tx: Option<i64>,
    /// Record the counted occurrences.
    pub trace: bool,
    /// Abort once an episode holds more live automata than this.
    pub automaton_cap: usize,
}

impl CountRequest {
    pub fn new(candidates: Vec<Episode>, mode: FrequencyMode) -> Self {
        Self { candidates, mode, tx: None, trace: false, automaton_cap: DEFAULT_AUTOMATON_CAP }
    }

    pub fn with_expiry(mut self, tx: i64) -> Self {
        self.tx = Some(tx);
        self
    }

    pub fn with_trace(mut self) -> Self {
        self.trace = true;
        self
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.automaton_cap = cap;
        self
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        self.mode.validate_expiry(self.tx)
    }
}

/// A counted occurrence and what it added to the frequency.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedOccurrence {
    pub occurrence: Occurrence,
    pub increment: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpisodeCount {
    pub episode: Episode,
    pub frequency: u64,
    pub trace: Option<Vec<TracedOccurrence>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyReport {
    pub mode: FrequencyMode,
    pub expiry: Option<i64>,
    pub counts: Vec<EpisodeCount>,
}

impl FrequencyReport {
    pub fn frequency_of(&self, episode: &Episode) -> Option<u64> {
        self.counts.iter().find(|c| &c.episode == episode).map(|c| c.frequency)
    }

    pub fn frequencies(&self) -> Vec<u64> {
        self.counts.iter().map(|c| c.frequency).collect()
    }
}

/// Number of sliding windows of width `tx` that contain `cur` but not the
/// previously counted minimal window `prev`.
///
/// Windows containing `cur` start in `[cur.end - tx, cur.start]`. If `prev`
/// lies in the first of those, only the starts after `prev.start` are new.
pub fn wb_increment(prev: Option<Window>, cur: Window, tx: i64) -> u64 {
    assert!(cur.width() <= tx, "window {cur:?} wider than {tx}");
    match prev {
        Some(p) if p.start >= cur.end - tx => (cur.start - p.start) as u64,
        _ => (tx - cur.width() + 1) as u64,
    }
}

enum Counter {
    Runner(Box<Runner>),
    Frontier(Frontier),
}

impl Counter {
    fn on_event(&mut self, states: &[usize], index: usize, event: &crate::sequence::Event) -> Result<(), CapHit> {
        match self {
            Counter::Runner(r) => r.on_event(states, index, event),
            Counter::Frontier(f) => f.on_event(states, index, event),
        }
    }

    fn end_batch(&mut self, time: i64) {
        match self {
            Counter::Runner(r) => r.end_batch(time),
            Counter::Frontier(f) => f.end_batch(),
        }
    }

    fn finish(self) -> (u64, Option<Vec<TracedOccurrence>>) {
        match self {
            Counter::Runner(r) => r.finish(),
            Counter::Frontier(f) => f.finish(),
        }
    }
}

/// Counts every candidate of `request` in one pass over `d`.
pub fn count(request: &CountRequest, d: &EventSequence) -> Result<FrequencyReport, CountError> {
    request.validate()?;
    let policy = policy_for(request.mode);
    let tx = request.tx;
    let cap = request.automaton_cap;
    let mut counters: Vec<Counter> = request
        .candidates
        .iter()
        .map(|e| match policy.transit {
            TransitRule::OldestInState => Counter::Frontier(Frontier::new(e.clone(), request.trace, cap)),
            _ => Counter::Runner(Box::new(Runner::new(e.clone(), policy, tx, request.trace, cap))),
        })
        .collect();

    let batch_work = policy.join == JoinRule::Always || policy.transit != TransitRule::Always;
    let index = WaitsIndex::build(&request.candidates, d.alphabet().len());
    let events = d.events();
    let mut touched: Vec<usize> = Vec::new();
    let mut is_touched = vec![false; counters.len()];

    for batch in d.batches() {
        let time = events[batch.start].time;
        for i in batch {
            let ev = &events[i];
            for entry in index.get(ev.event_type) {
                counters[entry.episode].on_event(&entry.states, i, ev).map_err(|_| {
                    CountError::CapExceeded {
                        cap,
                        episode: request.candidates[entry.episode].display(d.alphabet()).to_string(),
                    }
                })?;
                if batch_work && !is_touched[entry.episode] {
                    is_touched[entry.episode] = true;
                    touched.push(entry.episode);
                }
            }
        }
        for e in touched.drain(..) {
            is_touched[e] = false;
            counters[e].end_batch(time);
        }
    }

    let counts = request
        .candidates
        .iter()
        .zip(counters)
        .map(|(episode, counter)| {
            let (frequency, trace) = counter.finish();
            EpisodeCount { episode: episode.clone(), frequency, trace }
        })
        .collect();
    Ok(FrequencyReport { mode: request.mode, expiry: tx, counts })
}

/// Total frequency of each candidate: the minimum head frequency over all
/// of its subepisodes, computed as `min(head(α), total(suffix(α)))`.
pub fn count_total(candidates: &[Episode], d: &EventSequence, tx: i64) -> Result<Vec<u64>, CountError> {
    FrequencyMode::Hd.validate_expiry(Some(tx))?;
    let mut needed: BTreeSet<Episode> = BTreeSet::new();
    for c in candidates {
        let mut cur = Some(c.clone());
        while let Some(e) = cur {
            cur = e.suffix();
            needed.insert(e);
        }
    }
    let needed: Vec<Episode> = needed.into_iter().collect();
    let heads = count(&CountRequest::new(needed.clone(), FrequencyMode::Hd).with_expiry(tx), d)?;
    let head: BTreeMap<&Episode, u64> = needed.iter().zip(heads.frequencies()).collect();

    let mut total: BTreeMap<&Episode, u64> = BTreeMap::new();
    let mut by_len: Vec<&Episode> = needed.iter().collect();
    by_len.sort_by_key(|e| e.len());
    for e in by_len {
        let h = head[e];
        let t = match e.suffix() {
            Some(s) => h.min(total[&s]),
            None => h,
        };
        total.insert(e, t);
    }
    Ok(candidates.iter().map(|c| total[c]).collect())
}

#[cfg(test)]
mod tests;
