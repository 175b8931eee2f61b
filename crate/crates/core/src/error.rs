use thiserror::Error;

use crate::counting::FrequencyMode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("event {index}: time {time} is not positive")]
    NonPositiveTime { index: usize, time: i64 },
    #[error("event {index}: time {time} precedes previous time {previous}")]
    DecreasingTime { index: usize, previous: i64, time: i64 },
    #[error("event {index}: event type not in alphabet")]
    UnknownType { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EpisodeParseError {
    #[error("empty episode")]
    Empty,
    #[error("empty symbol at position {position}")]
    EmptySymbol { position: usize },
    #[error("invalid symbol {symbol:?} at position {position}")]
    InvalidSymbol { position: usize, symbol: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("expiry not supported for {}", .0.label().to_uppercase())]
    ExpiryUnsupported(FrequencyMode),
    #[error("mode {} does not take an expiry bound", .0.label())]
    ExpiryForbidden(FrequencyMode),
    #[error("mode {} requires an expiry bound (--tx)", .0)]
    ExpiryRequired(String),
    #[error("expiry bound must be non-negative, got {0}")]
    NegativeExpiry(i64),
    #[error("unknown frequency mode {0:?}")]
    UnknownMode(String),
    #[error("threshold must be at least 1")]
    ZeroThreshold,
    #[error("subepisode size {k} out of range 1..={n}")]
    SubepisodeSize { k: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CountError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("automaton cap of {cap} exceeded while counting {episode}")]
    CapExceeded { cap: usize, episode: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("more than {cap} occurrences; input too large for the oracle")]
    TooManyOccurrences { cap: usize },
    #[error("sequence of {len} events too long for the distinct-set search (max {max})")]
    SequenceTooLong { len: usize, max: usize },
    #[error("distinct-set search exceeded {states} states")]
    SearchTooLarge { states: usize },
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Failure while reading an event log; line and column are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{message} at line {line}, column {column}")]
pub struct InputError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("no total frequency recorded for a candidate's suffix")]
pub struct MissingSuffix;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SynthError {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,
    #[error("planted episode needs {needed} events but length is {length}")]
    TooShort { needed: usize, length: usize },
    #[error("noise rate {0} outside [0, 1]")]
    BadNoise(f64),
    #[error("time gap must be at least 1")]
    BadGap,
    #[error(transparent)]
    Episode(#[from] EpisodeParseError),
}
