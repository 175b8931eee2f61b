//! Frequent episodes by enumerating every episode over the alphabet.

use crate::candgen::LevelSet;
use crate::counting::FrequencyMode;
use crate::episode::Episode;
use crate::error::OracleError;
use crate::miner::MineMode;
use crate::sequence::{EventSequence, EventType};

use super::{oracle_frequency, oracle_total};

/// Every episode of at most `max_len` nodes whose oracle frequency is at
/// least `threshold`, one level per size (trailing empty levels dropped).
pub fn exhaustive_mine(
    d: &EventSequence,
    mode: MineMode,
    threshold: u64,
    tx: Option<i64>,
    max_len: usize,
) -> Result<Vec<LevelSet>, OracleError> {
    mode.validate_expiry(tx)?;
    let alphabet: Vec<EventType> = d.alphabet().ids().collect();
    let mut levels = Vec::new();
    let mut current: Vec<Vec<EventType>> = vec![Vec::new()];
    for k in 1..=max_len {
        current = current
            .iter()
            .flat_map(|p| alphabet.iter().map(move |&t| p.iter().copied().chain([t]).collect()))
            .collect();
        let mut frequent = Vec::new();
        for nodes in &current {
            let e = Episode::new(nodes.clone());
            let f = match mode {
                MineMode::Count(m) => oracle_frequency(&e, d, m, tx)?,
                MineMode::Total => oracle_total(&e, d, tx.expect("validated"))?,
            };
            if f >= threshold {
                frequent.push((e, f));
            }
        }
        levels.push(LevelSet::new(k, frequent));
    }
    while levels.last().is_some_and(LevelSet::is_empty) {
        levels.pop();
    }
    Ok(levels)
}

/// Modes plus total, each paired with an expiry bound when it needs one.
pub fn mine_modes(tx: i64) -> Vec<(MineMode, Option<i64>)> {
    FrequencyMode::ALL
        .into_iter()
        .map(|m| {
            let t = m.validate_expiry(None).is_err().then_some(tx);
            (MineMode::Count(m), t)
        })
        .chain([(MineMode::Total, Some(tx))])
        .collect()
}
