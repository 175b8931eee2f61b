//! The ordering between frequency definitions on a single input.
//!
//! With an expiry bound no smaller than the time span of the sequence,
//! `all >= head >= total >= distinct >= non-interleaved >= minimal >= non-overlapped`.
//! The step from distinct to non-interleaved needs an injective episode.

use crate::counting::{count, count_total, CountRequest, FrequencyMode};
use crate::episode::Episode;
use crate::error::CountError;
use crate::sequence::EventSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainCounts {
    pub all: u64,
    pub head: u64,
    pub total: u64,
    pub distinct: u64,
    pub non_interleaved: u64,
    pub minimal: u64,
    pub non_overlapped: u64,
}

/// Engine counts for every link of the chain, with the expiry set to the span of `d`.
pub fn chain_counts(alpha: &Episode, d: &EventSequence) -> Result<ChainCounts, CountError> {
    let tx = d.time_span();
    let one = |mode: FrequencyMode, tx: Option<i64>| -> Result<u64, CountError> {
        let mut req = CountRequest::new(vec![alpha.clone()], mode);
        req.tx = tx;
        Ok(count(&req, d)?.counts[0].frequency)
    };
    Ok(ChainCounts {
        all: one(FrequencyMode::Ao, None)?,
        head: one(FrequencyMode::Hd, Some(tx))?,
        total: count_total(std::slice::from_ref(alpha), d, tx)?[0],
        distinct: one(FrequencyMode::Do, None)?,
        non_interleaved: one(FrequencyMode::Ni, None)?,
        minimal: one(FrequencyMode::Mo, None)?,
        non_overlapped: one(FrequencyMode::No, None)?,
    })
}

/// Links of the chain that `c` breaks.
pub fn chain_violations(c: &ChainCounts, injective: bool) -> Vec<String> {
    let links = [
        ("all", c.all, "head", c.head, true),
        ("head", c.head, "total", c.total, true),
        ("total", c.total, "distinct", c.distinct, true),
        ("distinct", c.distinct, "non-interleaved", c.non_interleaved, injective),
        ("non-interleaved", c.non_interleaved, "minimal", c.minimal, true),
        ("minimal", c.minimal, "non-overlapped", c.non_overlapped, true),
    ];
    links
        .into_iter()
        .filter(|&(_, hi, _, lo, applies)| applies && hi < lo)
        .map(|(a, hi, b, lo, _)| format!("{a} {hi} < {b} {lo}"))
        .collect()
}
