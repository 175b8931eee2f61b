//! Serial episodes, their occurrences and the algebra over them.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{ConfigError, EpisodeParseError};
use crate::sequence::{Alphabet, EventSequence, EventType};

/// An N-node serial episode `α[1] -> α[2] -> ... -> α[N]`.
///
/// Ordering is lexicographic on interned ids, which is the order used for
/// candidate level sets.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Episode {
    nodes: Vec<EventType>,
}

impl Episode {
    /// Panics if `nodes` is empty.
    pub fn new(nodes: Vec<EventType>) -> Self {
        assert!(!nodes.is_empty(), "an episode has at least one node");
        Self { nodes }
    }

    pub fn nodes(&self) -> &[EventType] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Always false; present for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Zero-based node access.
    pub fn node(&self, i: usize) -> EventType {
        self.nodes[i]
    }

    pub fn first(&self) -> EventType {
        self.nodes[0]
    }

    pub fn last(&self) -> EventType {
        self.nodes[self.nodes.len() - 1]
    }

    /// True when no event type repeats.
    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<_> = self.nodes.iter().collect();
        set.len() == self.nodes.len()
    }

    /// The (N-1)-node prefix, or `None` for a single node.
    pub fn prefix(&self) -> Option<Episode> {
        (self.len() > 1).then(|| Episode::new(self.nodes[..self.len() - 1].to_vec()))
    }

    /// The (N-1)-node suffix, or `None` for a single node.
    pub fn suffix(&self) -> Option<Episode> {
        (self.len() > 1).then(|| Episode::new(self.nodes[1..].to_vec()))
    }

    /// Episode with node `i` (zero-based) removed. `None` for a single node.
    pub fn without(&self, i: usize) -> Option<Episode> {
        if self.len() == 1 {
            return None;
        }
        let mut nodes = self.nodes.clone();
        nodes.remove(i);
        Some(Episode::new(nodes))
    }

    /// Appends one node.
    pub fn extended(&self, last: EventType) -> Episode {
        let mut nodes = self.nodes.clone();
        nodes.push(last);
        Episode::new(nodes)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> EpisodeDisplay<'a> {
        EpisodeDisplay { episode: self, alphabet }
    }
}

pub struct EpisodeDisplay<'a> {
    episode: &'a Episode,
    alphabet: &'a Alphabet,
}

impl fmt::Display for EpisodeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &t) in self.episode.nodes.iter().enumerate() {
            if i > 0 {
                f.write_str("->")?;
            }
            f.write_str(self.alphabet.name(t))?;
        }
        Ok(())
    }
}

fn valid_symbol(s: &str) -> bool {
    !s.chars().any(|c| c.is_whitespace() || c == ',' || c == '#')
}

/// Parses `"A->B->C"` (whitespace around tokens allowed), interning any
/// symbols not yet in `alphabet`.
pub fn parse_episode(text: &str, alphabet: &mut Alphabet) -> Result<Episode, EpisodeParseError> {
    if text.trim().is_empty() {
        return Err(EpisodeParseError::Empty);
    }
    let mut nodes = Vec::new();
    for (i, token) in text.split("->").enumerate() {
        let token = token.trim();
        if token.is_empty() {
            return Err(EpisodeParseError::EmptySymbol { position: i + 1 });
        }
        if !valid_symbol(token) {
            return Err(EpisodeParseError::InvalidSymbol {
                position: i + 1,
                symbol: token.to_owned(),
            });
        }
        nodes.push(alphabet.intern(token));
    }
    Ok(Episode::new(nodes))
}

/// True iff `beta`'s types appear in `alpha` in the same order (not
/// necessarily contiguously).
pub fn is_subepisode(beta: &Episode, alpha: &Episode) -> bool {
    let mut rest = alpha.nodes.iter();
    beta.nodes.iter().all(|b| rest.any(|a| a == b))
}

/// All distinct `k`-node subepisodes of `alpha`.
pub fn subepisodes(alpha: &Episode, k: usize) -> Result<BTreeSet<Episode>, ConfigError> {
    let n = alpha.len();
    if k == 0 || k > n {
        return Err(ConfigError::SubepisodeSize { k, n });
    }
    let mut out = BTreeSet::new();
    let mut picked = Vec::with_capacity(k);
    collect_subsequences(&alpha.nodes, 0, k, &mut picked, &mut out);
    Ok(out)
}

fn collect_subsequences(
    nodes: &[EventType],
    from: usize,
    k: usize,
    picked: &mut Vec<EventType>,
    out: &mut BTreeSet<Episode>,
) {
    if picked.len() == k {
        out.insert(Episode::new(picked.clone()));
        return;
    }
    let need = k - picked.len();
    for i in from..=nodes.len() - need {
        picked.push(nodes[i]);
        collect_subsequences(nodes, i + 1, k, picked, out);
        picked.pop();
    }
}

/// Closed time interval `[start, end]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Window {
    pub start: i64,
    pub end: i64,
}

impl Window {
    pub fn new(start: i64, end: i64) -> Self {
        debug_assert!(start <= end);
        Self { start, end }
    }

    pub fn width(&self) -> i64 {
        self.end - self.start
    }

    pub fn contains(&self, other: &Window) -> bool {
        self.start <= other.start && other.end <= self.end
    }
}

/// An occurrence of an episode: the event index chosen for each node and
/// the corresponding times.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Occurrence {
    indices: Vec<usize>,
    times: Vec<i64>,
}

impl Occurrence {
    pub fn new(indices: Vec<usize>, times: Vec<i64>) -> Self {
        assert_eq!(indices.len(), times.len());
        assert!(!times.is_empty());
        debug_assert!(times.windows(2).all(|w| w[0] < w[1]));
        Self { indices, times }
    }

    /// Builds the occurrence at `indices` of `d`, checking it against `alpha`.
    pub fn at(alpha: &Episode, d: &EventSequence, indices: Vec<usize>) -> Option<Self> {
        if indices.len() != alpha.len() {
            return None;
        }
        let ev = d.events();
        let mut times = Vec::with_capacity(indices.len());
        for (k, &i) in indices.iter().enumerate() {
            let e = ev.get(i)?;
            if e.event_type != alpha.node(k) || times.last().is_some_and(|&t| t >= e.time) {
                return None;
            }
            times.push(e.time);
        }
        Some(Self { indices, times })
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn times(&self) -> &[i64] {
        &self.times
    }

    pub fn start(&self) -> i64 {
        self.times[0]
    }

    pub fn end(&self) -> i64 {
        self.times[self.times.len() - 1]
    }

    pub fn span(&self) -> i64 {
        self.end() - self.start()
    }

    pub fn window(&self) -> Window {
        Window::new(self.start(), self.end())
    }
}

/// Lexicographic order on time vectors; `Equal` iff the vectors are identical.
pub fn lex_compare(h1: &Occurrence, h2: &Occurrence) -> Ordering {
    h1.times.cmp(&h2.times)
}
