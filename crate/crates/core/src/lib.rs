//! Counting and mining serial episodes in timestamped event sequences.
//!
//! A serial episode `A->B->C` occurs in a sequence when events of those
//! types appear at strictly increasing times. How often it "occurs" depends
//! on which occurrences are counted; [`counting::count`] supports the usual
//! definitions (windows, minimal windows, non-overlapped, non-interleaved,
//! distinct, all, head) with one automaton-driven pass over the data, and
//! [`miner::mine`] runs the level-wise discovery loop on top of it.
//!
//! [`oracle`] recomputes every frequency by brute force for testing.
//!
//! ```
//! use episodes::{count, parse_episode, samples, CountRequest, FrequencyMode};
//!
//! let d = samples::abcd_stream();
//! let mut names = d.alphabet().clone();
//! let alpha = parse_episode("A->B->C->D", &mut names).unwrap();
//! let report = count(&CountRequest::new(vec![alpha], FrequencyMode::No), &d).unwrap();
//! assert_eq!(report.counts[0].frequency, 2);
//! ```

pub mod automata;
pub mod candgen;
pub mod counting;
pub mod episode;
pub mod error;
pub mod io;
pub mod miner;
pub mod oracle;
pub mod samples;
pub mod sequence;
pub mod synth;

pub use counting::{count, count_total, policy_for, wb_increment, CountRequest, FrequencyMode, FrequencyReport};
pub use episode::{is_subepisode, lex_compare, parse_episode, subepisodes, Episode, Occurrence, Window};
pub use error::{ConfigError, CountError, EpisodeParseError, InputError, OracleError, SequenceError, SynthError};
pub use miner::{mine, MineConfig, MineMode};
pub use sequence::{Alphabet, Event, EventSequence, EventType};
