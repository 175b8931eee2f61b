//! Brute-force reference semantics for every frequency definition.
//!
//! Everything here works from the full set of occurrences and the textbook
//! definitions, independently of the automata. It is meant for desk-scale
//! inputs and refuses anything larger.

pub mod chain;
pub mod differential;
pub mod lemmas;
pub mod mining;

use std::collections::{BTreeSet, HashMap};

use crate::counting::FrequencyMode;
use crate::episode::{subepisodes, Episode, Occurrence, Window};
use crate::error::OracleError;
use crate::sequence::EventSequence;

/// Default limit on enumerated occurrences.
pub const OCCURRENCE_CAP: usize = 5000;

/// Longest sequence the distinct-set search accepts.
pub const MAX_DISTINCT_LEN: usize = 128;

/// Memoized states the distinct-set search may visit before giving up.
pub const DISTINCT_STATE_BUDGET: usize = 50_000;

/// Occurrences of one episode, sorted lexicographically by time vector
/// (ties broken by event indices).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OccurrenceSet {
    occurrences: Vec<Occurrence>,
}

impl OccurrenceSet {
    fn from_unsorted(mut occurrences: Vec<Occurrence>) -> Self {
        occurrences.sort_by(|a, b| a.times().cmp(b.times()).then_with(|| a.indices().cmp(b.indices())));
        Self { occurrences }
    }

    pub fn as_slice(&self) -> &[Occurrence] {
        &self.occurrences
    }

    pub fn len(&self) -> usize {
        self.occurrences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.occurrences.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Occurrence> {
        self.occurrences.iter()
    }

    /// Time vectors, in order.
    pub fn time_vectors(&self) -> Vec<Vec<i64>> {
        self.occurrences.iter().map(|h| h.times().to_vec()).collect()
    }
}

impl<'a> IntoIterator for &'a OccurrenceSet {
    type Item = &'a Occurrence;
    type IntoIter = std::slice::Iter<'a, Occurrence>;

    fn into_iter(self) -> Self::IntoIter {
        self.occurrences.iter()
    }
}

/// Every occurrence of `alpha` in `d`, by exhaustive search over index choices.
pub fn enumerate_occurrences(alpha: &Episode, d: &EventSequence, cap: usize) -> Result<OccurrenceSet, OracleError> {
    let mut out = Vec::new();
    let mut picked = Vec::with_capacity(alpha.len());
    extend_occurrences(alpha, d, 0, &mut picked, &mut out, cap)?;
    Ok(OccurrenceSet::from_unsorted(out))
}

fn extend_occurrences(
    alpha: &Episode,
    d: &EventSequence,
    from: usize,
    picked: &mut Vec<usize>,
    out: &mut Vec<Occurrence>,
    cap: usize,
) -> Result<(), OracleError> {
    let ev = d.events();
    if picked.len() == alpha.len() {
        if out.len() == cap {
            return Err(OracleError::TooManyOccurrences { cap });
        }
        let times = picked.iter().map(|&i| ev[i].time).collect();
        out.push(Occurrence::new(picked.clone(), times));
        return Ok(());
    }
    let want = alpha.node(picked.len());
    let after = picked.last().map(|&i| ev[i].time);
    for (i, e) in ev.iter().enumerate().skip(from) {
        if e.event_type != want || after.is_some_and(|t| e.time <= t) {
            continue;
        }
        picked.push(i);
        extend_occurrences(alpha, d, i + 1, picked, out, cap)?;
        picked.pop();
    }
    Ok(())
}

/// The earliest-transiting occurrence from each viable start event: every
/// later node takes the first matching event strictly after the previous one.
pub fn enumerate_et(alpha: &Episode, d: &EventSequence) -> OccurrenceSet {
    let ev = d.events();
    let mut out = Vec::new();
    for start in 0..ev.len() {
        if ev[start].event_type != alpha.first() {
            continue;
        }
        let mut indices = vec![start];
        let mut pos = start;
        for k in 1..alpha.len() {
            let t = ev[pos].time;
            match (pos + 1..ev.len()).find(|&i| ev[i].event_type == alpha.node(k) && ev[i].time > t) {
                Some(i) => {
                    indices.push(i);
                    pos = i;
                }
                None => break,
            }
        }
        if indices.len() == alpha.len() {
            let times = indices.iter().map(|&i| ev[i].time).collect();
            out.push(Occurrence::new(indices, times));
        }
    }
    OccurrenceSet::from_unsorted(out)
}

/// Distinct time windows of the occurrences that contain no other such window.
pub fn minimal_windows(all: &OccurrenceSet) -> Vec<Window> {
    let windows: BTreeSet<Window> = all.iter().map(Occurrence::window).collect();
    // Walk starts from latest to earliest; a window is minimal iff it has the
    // smallest end for its start and ends before every later-starting window.
    let mut out = Vec::new();
    let mut earliest_end_after = i64::MAX;
    let mut last_start = None;
    for w in windows.iter().rev() {
        if last_start == Some(w.start) {
            continue;
        }
        let tightest = windows.range(Window { start: w.start, end: i64::MIN }..).next().expect("window present");
        last_start = Some(w.start);
        if tightest.end < earliest_end_after {
            out.push(*tightest);
            earliest_end_after = tightest.end;
        }
    }
    out.reverse();
    out
}

pub fn non_overlapped(h1: &Occurrence, h2: &Occurrence) -> bool {
    h1.end() < h2.start() || h2.end() < h1.start()
}

/// `h2` follows `h1` without interleaving: `h2(v_j) >= h1(v_{j+1})` for all `j`.
fn follows_without_interleaving(h1: &Occurrence, h2: &Occurrence) -> bool {
    let (a, b) = (h1.times(), h2.times());
    (0..a.len() - 1).all(|j| b[j] >= a[j + 1])
}

pub fn non_interleaved(h1: &Occurrence, h2: &Occurrence) -> bool {
    follows_without_interleaving(h1, h2) || follows_without_interleaving(h2, h1)
}

pub fn distinct(h1: &Occurrence, h2: &Occurrence) -> bool {
    !h1.indices().iter().any(|i| h2.indices().contains(i))
}

/// Largest chain under a transitive "may follow" relation that only relates
/// lexicographically increasing occurrences. Returns a witness chain.
fn longest_chain(occ: &[Occurrence], follows: impl Fn(&Occurrence, &Occurrence) -> bool) -> Vec<Occurrence> {
    if occ.is_empty() {
        return Vec::new();
    }
    let mut best = vec![1usize; occ.len()];
    let mut prev = vec![usize::MAX; occ.len()];
    for j in 0..occ.len() {
        for i in 0..j {
            if best[i] + 1 > best[j] && follows(&occ[i], &occ[j]) {
                best[j] = best[i] + 1;
                prev[j] = i;
            }
        }
    }
    let mut j = (0..occ.len()).max_by_key(|&j| (best[j], std::cmp::Reverse(j))).unwrap();
    let mut chain = vec![occ[j].clone()];
    while prev[j] != usize::MAX {
        j = prev[j];
        chain.push(occ[j].clone());
    }
    chain.reverse();
    chain
}

/// A maximum set of pairwise non-overlapped occurrences among `occ`.
pub fn max_non_overlapped(occ: &[Occurrence]) -> Vec<Occurrence> {
    longest_chain(occ, |a, b| a.end() < b.start())
}

/// A maximum set of pairwise non-interleaved occurrences among `occ`.
pub fn max_non_interleaved(occ: &[Occurrence]) -> Vec<Occurrence> {
    if occ.first().is_some_and(|h| h.times().len() == 1) {
        return occ.to_vec();
    }
    longest_chain(occ, follows_without_interleaving)
}

/// Size of a maximum set of pairwise event-disjoint occurrences.
///
/// Scans start events left to right; at each one either no occurrence
/// starts there or one whose events are all still free does. Events before
/// the scan position no longer matter, so the search is memoized on the
/// position and the free/used mask of the events from there on.
pub fn max_distinct(occ: &[Occurrence], n: usize) -> Result<u64, OracleError> {
    if n > MAX_DISTINCT_LEN {
        return Err(OracleError::SequenceTooLong { len: n, max: MAX_DISTINCT_LEN });
    }
    let mut by_start: Vec<Vec<u128>> = vec![Vec::new(); n];
    for h in occ {
        let mask = h.indices().iter().fold(0u128, |m, &i| m | (1u128 << i));
        by_start[h.indices()[0]].push(mask);
    }
    let mut memo = HashMap::new();
    distinct_search(&by_start, 0, 0, &mut memo)
        .ok_or(OracleError::SearchTooLarge { states: DISTINCT_STATE_BUDGET })
}

fn distinct_search(
    by_start: &[Vec<u128>],
    pos: usize,
    used: u128,
    memo: &mut HashMap<(usize, u128), u64>,
) -> Option<u64> {
    if pos == by_start.len() {
        return Some(0);
    }
    let key = (pos, used >> pos);
    if let Some(&v) = memo.get(&key) {
        return Some(v);
    }
    if memo.len() >= DISTINCT_STATE_BUDGET {
        return None;
    }
    let mut best = distinct_search(by_start, pos + 1, used, memo)?;
    if used & (1u128 << pos) == 0 {
        for &mask in &by_start[pos] {
            if mask & used == 0 {
                best = best.max(1 + distinct_search(by_start, pos + 1, used | mask, memo)?);
            }
        }
    }
    memo.insert(key, best);
    Some(best)
}

/// Number of integer window starts `t_s` in `[t_1 - tx, t_n]` whose window
/// `[t_s, t_s + tx]` contains one of `windows`.
pub fn windows_containing(windows: &[Window], d: &EventSequence, tx: i64) -> u64 {
    let (Some(first), Some(last)) = (d.first_time(), d.last_time()) else {
        return 0;
    };
    (first - tx..=last)
        .filter(|&s| windows.iter().any(|w| w.start >= s && w.end <= s + tx))
        .count() as u64
}

/// Number of distinct start times with an occurrence of span at most `tx`.
pub fn head_count(all: &OccurrenceSet, tx: i64) -> u64 {
    all.iter()
        .filter(|h| h.span() <= tx)
        .map(Occurrence::start)
        .collect::<BTreeSet<_>>()
        .len() as u64
}

/// Frequency of `alpha` in `d` computed straight from the definitions.
pub fn oracle_frequency(
    alpha: &Episode,
    d: &EventSequence,
    mode: FrequencyMode,
    tx: Option<i64>,
) -> Result<u64, OracleError> {
    mode.validate_expiry(tx)?;
    let all = enumerate_occurrences(alpha, d, OCCURRENCE_CAP)?;
    let tx_or_max = tx.unwrap_or(i64::MAX);
    let within: Vec<Occurrence> = all.iter().filter(|h| h.span() <= tx_or_max).cloned().collect();
    let value = match mode {
        FrequencyMode::Wb => windows_containing(&minimal_windows(&all), d, tx_or_max),
        FrequencyMode::Mo | FrequencyMode::MoX => {
            minimal_windows(&all).iter().filter(|w| w.width() <= tx_or_max).count() as u64
        }
        FrequencyMode::No | FrequencyMode::NoI | FrequencyMode::NoX => max_non_overlapped(&within).len() as u64,
        FrequencyMode::Ni => max_non_interleaved(all.as_slice()).len() as u64,
        FrequencyMode::Do => max_distinct(all.as_slice(), d.len())?,
        FrequencyMode::Ao => all.len() as u64,
        FrequencyMode::Hd => head_count(&all, tx_or_max),
    };
    Ok(value)
}

/// Minimum head frequency over every subepisode of `alpha`, itself included.
pub fn oracle_total(alpha: &Episode, d: &EventSequence, tx: i64) -> Result<u64, OracleError> {
    let mut best = u64::MAX;
    for k in 1..=alpha.len() {
        for beta in subepisodes(alpha, k)? {
            best = best.min(oracle_frequency(&beta, d, FrequencyMode::Hd, Some(tx))?);
        }
    }
    Ok(best)
}
