//! Reproducible synthetic event sequences, optionally with a planted episode.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::episode::parse_episode;
use crate::error::SynthError;
use crate::sequence::{Alphabet, Event, EventSequence, EventType};

/// An episode to embed `repetitions` times.
#[derive(Debug, Clone, PartialEq)]
pub struct Planted {
    /// Arrow notation, e.g. `"A->B->C"`.
    pub episode: String,
    pub repetitions: usize,
    /// Probability that a planted event is replaced by a random symbol.
    pub noise: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticConfig {
    pub alphabet_size: usize,
    pub length: usize,
    pub seed: u64,
    pub planted: Option<Planted>,
    /// Consecutive times differ by a random gap in `1..=max_gap`.
    pub max_gap: i64,
}

impl SyntheticConfig {
    pub fn new(alphabet_size: usize, length: usize, seed: u64) -> Self {
        Self { alphabet_size, length, seed, planted: None, max_gap: 1 }
    }

    pub fn with_planted(mut self, episode: &str, repetitions: usize, noise: f64) -> Self {
        self.planted = Some(Planted { episode: episode.to_owned(), repetitions, noise });
        self
    }
}

/// Name of the `i`-th generated symbol: `A`..`Z`, then `E26`, `E27`, ...
pub fn symbol_name(i: usize) -> String {
    if i < 26 {
        char::from(b'A' + i as u8).to_string()
    } else {
        format!("E{i}")
    }
}

pub fn generate_synthetic(config: &SyntheticConfig) -> Result<EventSequence, SynthError> {
    if config.alphabet_size == 0 {
        return Err(SynthError::EmptyAlphabet);
    }
    if config.max_gap < 1 {
        return Err(SynthError::BadGap);
    }
    let mut alphabet = Alphabet::from_names((0..config.alphabet_size).map(symbol_name));
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let size = config.alphabet_size as u32;
    let mut types: Vec<Option<EventType>> = vec![None; config.length];

    if let Some(p) = &config.planted {
        if !(0.0..=1.0).contains(&p.noise) {
            return Err(SynthError::BadNoise(p.noise));
        }
        let episode = parse_episode(&p.episode, &mut alphabet)?;
        let needed = p.repetitions * episode.len();
        if needed > config.length {
            return Err(SynthError::TooShort { needed, length: config.length });
        }
        if let Some(block) = config.length.checked_div(p.repetitions) {
            for r in 0..p.repetitions {
                let lo = r * block;
                let hi = if r + 1 == p.repetitions { config.length } else { lo + block };
                let mut slots = rand::seq::index::sample(&mut rng, hi - lo, episode.len()).into_vec();
                slots.sort_unstable();
                for (k, s) in slots.into_iter().enumerate() {
                    let keep = p.noise == 0.0 || !rng.random_bool(p.noise);
                    let t = if keep { episode.node(k) } else { EventType(rng.random_range(0..size)) };
                    types[lo + s] = Some(t);
                }
            }
        }
    }

    let mut time = 0i64;
    let mut events = Vec::with_capacity(config.length);
    for slot in types {
        time += rng.random_range(1..=config.max_gap);
        let t = slot.unwrap_or_else(|| EventType(rng.random_range(0..size)));
        events.push(Event::new(t, time));
    }
    Ok(EventSequence::new(events, alphabet).expect("valid by construction"))
}
