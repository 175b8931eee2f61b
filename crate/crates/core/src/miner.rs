//! Level-wise discovery of frequent episodes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::candgen::{generate_full, generate_head, generate_suffix_prefix, LevelSet};
use crate::counting::{count, CountRequest, FrequencyMode, DEFAULT_AUTOMATON_CAP};
use crate::episode::Episode;
use crate::error::{ConfigError, CountError, MissingSuffix};
use crate::sequence::EventSequence;

/// A counting mode, or total frequency (minimum head frequency over subepisodes).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MineMode {
    Count(FrequencyMode),
    Total,
}

impl MineMode {
    pub fn label(self) -> &'static str {
        match self {
            MineMode::Count(m) => m.label(),
            MineMode::Total => "tot",
        }
    }

    pub fn validate_expiry(self, tx: Option<i64>) -> Result<(), ConfigError> {
        match self {
            MineMode::Count(m) => m.validate_expiry(tx),
            MineMode::Total => match tx {
                None => Err(ConfigError::ExpiryRequired("tot".into())),
                Some(t) => FrequencyMode::Hd.validate_expiry(Some(t)),
            },
        }
    }
}

impl fmt::Display for MineMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for MineMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("tot") {
            Ok(MineMode::Total)
        } else {
            s.parse().map(MineMode::Count)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MineConfig {
    pub mode: MineMode,
    pub threshold: u64,
    pub tx: Option<i64>,
    pub max_len: usize,
    pub automaton_cap: usize,
    /// Worker threads for counting large candidate sets (1 = sequential).
    pub threads: usize,
}

impl MineConfig {
    pub fn new(mode: MineMode, threshold: u64, max_len: usize) -> Self {
        Self {
            mode,
            threshold,
            tx: None,
            max_len,
            automaton_cap: DEFAULT_AUTOMATON_CAP,
            threads: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    pub fn with_expiry(mut self, tx: i64) -> Self {
        self.tx = Some(tx);
        self
    }
}

/// Candidates per thread below which counting stays on one thread.
const SHARD_MIN: usize = 64;

fn count_candidates(
    candidates: Vec<Episode>,
    mode: FrequencyMode,
    tx: Option<i64>,
    d: &EventSequence,
    cap: usize,
    threads: usize,
) -> Result<Vec<u64>, CountError> {
    let run = |chunk: Vec<Episode>| {
        let mut req = CountRequest::new(chunk, mode).with_cap(cap);
        req.tx = tx;
        count(&req, d).map(|r| r.frequencies())
    };
    let shards = threads.min(candidates.len() / SHARD_MIN).max(1);
    if shards == 1 {
        return run(candidates);
    }
    let size = candidates.len().div_ceil(shards);
    let chunks: Vec<Vec<Episode>> = candidates.chunks(size).map(<[Episode]>::to_vec).collect();
    std::thread::scope(|s| {
        let handles: Vec<_> = chunks.into_iter().map(|c| s.spawn(move || run(c))).collect();
        let mut out = Vec::new();
        for h in handles {
            out.extend(h.join().expect("counting thread panicked")?);
        }
        Ok(out)
    })
}

/// Single-node frequencies straight from the symbol counts where the mode
/// allows it; the windowed modes go through the engine.
fn level_one(d: &EventSequence, config: &MineConfig) -> Result<LevelSet, CountError> {
    let singles: Vec<Episode> = d.alphabet().ids().map(|t| Episode::new(vec![t])).collect();
    let mode = match config.mode {
        MineMode::Total => FrequencyMode::Hd,
        MineMode::Count(m) => m,
    };
    let freqs = match mode {
        FrequencyMode::Ao | FrequencyMode::Do | FrequencyMode::Ni => {
            let mut tally = vec![0u64; singles.len()];
            for e in d.events() {
                tally[e.event_type.index()] += 1;
            }
            tally
        }
        FrequencyMode::Mo | FrequencyMode::MoX | FrequencyMode::No | FrequencyMode::NoI | FrequencyMode::NoX => {
            // Events of one type at one timestamp are a single window/occurrence here.
            let mut tally = vec![0u64; singles.len()];
            let mut last = vec![i64::MIN; singles.len()];
            for e in d.events() {
                let i = e.event_type.index();
                if last[i] != e.time {
                    last[i] = e.time;
                    tally[i] += 1;
                }
            }
            tally
        }
        FrequencyMode::Wb | FrequencyMode::Hd => {
            count_candidates(singles.clone(), mode, config.tx, d, config.automaton_cap, config.threads)?
        }
    };
    Ok(LevelSet::new(1, singles.into_iter().zip(freqs).collect()))
}

/// `min(head, total(suffix))` for each counted candidate.
pub fn total_frequency(
    heads: &[(Episode, u64)],
    suffix_totals: &BTreeMap<Episode, u64>,
) -> Result<Vec<(Episode, u64)>, MissingSuffix> {
    heads
        .iter()
        .map(|(e, h)| match e.suffix() {
            None => Ok((e.clone(), *h)),
            Some(s) => suffix_totals
                .get(&s)
                .map(|t| (e.clone(), (*h).min(*t)))
                .ok_or(MissingSuffix),
        })
        .collect()
}

/// All episodes of at most `max_len` nodes with frequency `>= threshold`,
/// one level set per size starting at one node (trailing empty levels dropped).
pub fn mine(d: &EventSequence, config: &MineConfig) -> Result<Vec<LevelSet>, CountError> {
    if config.threshold == 0 {
        return Err(ConfigError::ZeroThreshold.into());
    }
    config.mode.validate_expiry(config.tx)?;
    let mut out = Vec::new();
    if config.max_len == 0 {
        return Ok(out);
    }
    let alphabet: Vec<_> = d.alphabet().ids().collect();
    // Without an anti-monotone guarantee, all-occurrence mining grows from
    // every episode that occurs at all and filters at the end.
    let basis_threshold = match config.mode {
        MineMode::Count(FrequencyMode::Ao) => 1,
        _ => config.threshold,
    };
    let mut totals: BTreeMap<Episode, u64> = BTreeMap::new();

    let mut counted = level_one(d, config)?;
    loop {
        if config.mode == MineMode::Total {
            totals.extend(counted.entries().iter().cloned());
        }
        let basis = counted.filtered(|_, f| f >= basis_threshold);
        let reported = counted.filtered(|_, f| f >= config.threshold);
        let k = counted.k();
        out.push(reported);
        if k == config.max_len || basis.is_empty() {
            break;
        }
        let candidates = match config.mode {
            MineMode::Count(FrequencyMode::Mo | FrequencyMode::MoX | FrequencyMode::Ni) => {
                generate_suffix_prefix(&basis)
            }
            MineMode::Count(FrequencyMode::Hd) => generate_head(&basis, &alphabet),
            _ => generate_full(&basis),
        };
        if candidates.is_empty() {
            break;
        }
        let episodes: Vec<Episode> = candidates.episodes().cloned().collect();
        let (mode, tx) = match config.mode {
            MineMode::Count(m) => (m, config.tx),
            MineMode::Total => (FrequencyMode::Hd, config.tx),
        };
        let freqs = count_candidates(episodes.clone(), mode, tx, d, config.automaton_cap, config.threads)?;
        let mut entries: Vec<(Episode, u64)> = episodes.into_iter().zip(freqs).collect();
        if config.mode == MineMode::Total {
            entries = total_frequency(&entries, &totals).expect("suffixes of candidates were counted");
        }
        counted = LevelSet::new(k + 1, entries);
    }
    while out.last().is_some_and(LevelSet::is_empty) {
        out.pop();
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::episode::parse_episode;

    fn d1() -> EventSequence {
        crate::samples::abcd_stream()
    }

    #[test]
    fn finds_four_node_episode_in_d1() {
        let d = d1();
        let levels = mine(&d, &MineConfig::new(MineMode::Count(FrequencyMode::No), 2, 4)).unwrap();
        let mut a = d.alphabet().clone();
        let abcd = parse_episode("A->B->C->D", &mut a).unwrap();
        assert_eq!(levels[3].frequency(&abcd), Some(2));
    }

    #[test]
    fn single_event_sequence() {
        let d = EventSequence::from_pairs(&[("A", 1)]).unwrap();
        for mode in FrequencyMode::ALL {
            let mut cfg = MineConfig::new(MineMode::Count(mode), 1, 3);
            if mode.validate_expiry(None).is_err() {
                cfg.tx = Some(3);
            }
            let levels = mine(&d, &cfg).unwrap();
            assert_eq!(levels.len(), 1, "{mode}");
            let f = levels[0].entries()[0].1;
            let expected = if mode == FrequencyMode::Wb { 4 } else { 1 };
            assert_eq!(f, expected, "{mode}");
        }
    }

    #[test]
    fn total_recursion() {
        let mut a = crate::sequence::Alphabet::from_names(["A", "B", "C"]);
        let abc = parse_episode("A->B->C", &mut a).unwrap();
        let bc = parse_episode("B->C", &mut a).unwrap();
        let totals = BTreeMap::from([(bc, 3)]);
        assert_eq!(total_frequency(&[(abc.clone(), 4)], &totals).unwrap(), vec![(abc, 3)]);
        let single = parse_episode("A", &mut a).unwrap();
        assert_eq!(total_frequency(&[(single.clone(), 7)], &BTreeMap::new()).unwrap(), vec![(single, 7)]);
        let abd = parse_episode("A->B->D", &mut a).unwrap();
        assert!(total_frequency(&[(abd, 1)], &BTreeMap::new()).is_err());
    }

    #[test]
    fn zero_threshold_rejected() {
        let d = d1();
        let err = mine(&d, &MineConfig::new(MineMode::Count(FrequencyMode::Mo), 0, 2)).unwrap_err();
        assert_eq!(err, CountError::Config(ConfigError::ZeroThreshold));
    }
}
