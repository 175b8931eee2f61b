//! Level-wise candidate generation.
//!
//! Which (k+1)-node episodes are worth counting depends on which
//! subepisodes a frequency is guaranteed not to exceed:
//!
//! * [`generate_full`]: every k-node subepisode (windows-based,
//!   non-overlapped family, distinct, total).
//! * [`generate_suffix_prefix`]: the k-node prefix and suffix (minimal
//!   windows, non-interleaved).
//! * [`generate_head`]: the k-node subepisodes that keep the first node
//!   (head frequency).

use std::collections::BTreeSet;

use crate::episode::Episode;
use crate::sequence::EventType;

/// Episodes of one size with their frequencies, sorted by node ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSet {
    k: usize,
    episodes: Vec<(Episode, u64)>,
}

impl LevelSet {
    /// Sorts and deduplicates (keeping the first frequency seen per episode).
    /// Panics if an episode does not have `k` nodes.
    pub fn new(k: usize, mut episodes: Vec<(Episode, u64)>) -> Self {
        assert!(episodes.iter().all(|(e, _)| e.len() == k), "all episodes must have {k} nodes");
        episodes.sort_by(|a, b| a.0.cmp(&b.0));
        episodes.dedup_by(|b, a| a.0 == b.0);
        Self { k, episodes }
    }

    /// All episodes with frequency 0.
    pub fn from_episodes(k: usize, episodes: impl IntoIterator<Item = Episode>) -> Self {
        Self::new(k, episodes.into_iter().map(|e| (e, 0)).collect())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.episodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.episodes.is_empty()
    }

    pub fn entries(&self) -> &[(Episode, u64)] {
        &self.episodes
    }

    pub fn episodes(&self) -> impl Iterator<Item = &Episode> {
        self.episodes.iter().map(|(e, _)| e)
    }

    pub fn contains(&self, e: &Episode) -> bool {
        self.frequency(e).is_some()
    }

    pub fn frequency(&self, e: &Episode) -> Option<u64> {
        self.episodes.binary_search_by(|(x, _)| x.cmp(e)).ok().map(|i| self.episodes[i].1)
    }

    /// Entries whose first `prefix.len()` nodes equal `prefix` (a contiguous block).
    fn block(&self, prefix: &[EventType]) -> &[(Episode, u64)] {
        let p = prefix.len();
        let lo = self.episodes.partition_point(|(e, _)| &e.nodes()[..p] < prefix);
        let hi = self.episodes.partition_point(|(e, _)| &e.nodes()[..p] <= prefix);
        &self.episodes[lo..hi]
    }

    /// Keeps the entries satisfying `keep`.
    pub fn filtered(&self, keep: impl Fn(&Episode, u64) -> bool) -> LevelSet {
        LevelSet {
            k: self.k,
            episodes: self.episodes.iter().filter(|(e, f)| keep(e, *f)).cloned().collect(),
        }
    }
}

/// `β + γ[last]` for every pair whose k-1 suffix/prefix agree.
fn suffix_prefix_joins(frequent: &LevelSet) -> Vec<Episode> {
    let mut out = Vec::new();
    for (beta, _) in frequent.entries() {
        let suffix = &beta.nodes()[1..];
        for (gamma, _) in frequent.block(suffix) {
            out.push(beta.extended(gamma.last()));
        }
    }
    out
}

/// Candidates all of whose k-node subepisodes are in `frequent`.
pub fn generate_full(frequent: &LevelSet) -> LevelSet {
    let k = frequent.k();
    let candidates = suffix_prefix_joins(frequent)
        .into_iter()
        .filter(|c| (0..=k).all(|i| c.without(i).is_some_and(|s| frequent.contains(&s))));
    LevelSet::from_episodes(k + 1, candidates)
}

/// Candidates whose k-node prefix and suffix are both in `frequent`.
pub fn generate_suffix_prefix(frequent: &LevelSet) -> LevelSet {
    LevelSet::from_episodes(frequent.k() + 1, suffix_prefix_joins(frequent))
}

/// Candidates all of whose k-node subepisodes that keep the first node are
/// in `frequent`. From single nodes the second node is unconstrained, so it
/// ranges over `alphabet`.
pub fn generate_head(frequent: &LevelSet, alphabet: &[EventType]) -> LevelSet {
    let k = frequent.k();
    if k == 1 {
        let candidates =
            frequent.episodes().flat_map(|a| alphabet.iter().map(move |&b| a.extended(b)));
        return LevelSet::from_episodes(2, candidates);
    }
    let mut out = BTreeSet::new();
    let entries = frequent.entries();
    let mut start = 0;
    while start < entries.len() {
        let prefix = &entries[start].0.nodes()[..k - 1];
        let block = frequent.block(prefix);
        for (b, _) in block {
            for (c, _) in block {
                let cand = b.extended(c.last());
                if (1..=k).all(|i| cand.without(i).is_some_and(|s| frequent.contains(&s))) {
                    out.insert(cand);
                }
            }
        }
        start += block.len();
    }
    LevelSet::from_episodes(k + 1, out)
}
