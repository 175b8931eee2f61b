//! Events, the symbol alphabet and time-ordered event sequences.

use std::collections::HashMap;
use std::fmt;

use crate::error::SequenceError;

/// Dense id of an interned event type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EventType(pub u32);

impl EventType {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Interning table mapping event-type names to dense ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    ids: HashMap<String, EventType>,
}

impl Alphabet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an alphabet from names in order; duplicates keep their first id.
    pub fn from_names<I, S>(names: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut alphabet = Self::new();
        for name in names {
            alphabet.intern(name.as_ref());
        }
        alphabet
    }

    pub fn intern(&mut self, name: &str) -> EventType {
        if let Some(&id) = self.ids.get(name) {
            return id;
        }
        let id = EventType(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.ids.insert(name.to_owned(), id);
        id
    }

    pub fn get(&self, name: &str) -> Option<EventType> {
        self.ids.get(name).copied()
    }

    pub fn name(&self, id: EventType) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// All ids in interning order.
    pub fn ids(&self) -> impl Iterator<Item = EventType> + '_ {
        (0..self.names.len() as u32).map(EventType)
    }
}

/// One `(event type, time)` pair of the input stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Event {
    pub event_type: EventType,
    pub time: i64,
}

impl Event {
    pub fn new(event_type: EventType, time: i64) -> Self {
        Self { event_type, time }
    }
}

/// Events ordered by nondecreasing, positive time, together with the
/// alphabet their types were interned in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EventSequence {
    events: Vec<Event>,
    alphabet: Alphabet,
}

impl EventSequence {
    pub fn new(events: Vec<Event>, alphabet: Alphabet) -> Result<Self, SequenceError> {
        for (i, ev) in events.iter().enumerate() {
            if ev.time < 1 {
                return Err(SequenceError::NonPositiveTime { index: i, time: ev.time });
            }
            if ev.event_type.index() >= alphabet.len() {
                return Err(SequenceError::UnknownType { index: i });
            }
            if i > 0 && events[i - 1].time > ev.time {
                return Err(SequenceError::DecreasingTime {
                    index: i,
                    previous: events[i - 1].time,
                    time: ev.time,
                });
            }
        }
        Ok(Self { events, alphabet })
    }

    /// Convenience constructor from `(name, time)` pairs.
    pub fn from_pairs<S: AsRef<str>>(pairs: &[(S, i64)]) -> Result<Self, SequenceError> {
        let mut alphabet = Alphabet::new();
        let events = pairs
            .iter()
            .map(|(name, t)| Event::new(alphabet.intern(name.as_ref()), *t))
            .collect();
        Self::new(events, alphabet)
    }

    /// Symbols of `text` placed at times 1, 2, 3, ... (one char per event).
    pub fn from_symbols(text: &str) -> Self {
        let pairs: Vec<(String, i64)> = text
            .chars()
            .filter(|c| !c.is_whitespace())
            .enumerate()
            .map(|(i, c)| (c.to_string(), i as i64 + 1))
            .collect();
        Self::from_pairs(&pairs).expect("increasing positive times")
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn first_time(&self) -> Option<i64> {
        self.events.first().map(|e| e.time)
    }

    pub fn last_time(&self) -> Option<i64> {
        self.events.last().map(|e| e.time)
    }

    /// `t_n - t_1`, or 0 for an empty sequence.
    pub fn time_span(&self) -> i64 {
        match (self.first_time(), self.last_time()) {
            (Some(a), Some(b)) => b - a,
            _ => 0,
        }
    }

    pub fn has_distinct_times(&self) -> bool {
        self.events.windows(2).all(|w| w[0].time < w[1].time)
    }

    /// Maximal runs of events sharing one timestamp, as index ranges.
    pub fn batches(&self) -> Batches<'_> {
        Batches { events: &self.events, pos: 0 }
    }
}

pub struct Batches<'a> {
    events: &'a [Event],
    pos: usize,
}

impl Iterator for Batches<'_> {
    type Item = std::ops::Range<usize>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.pos >= self.events.len() {
            return None;
        }
        let start = self.pos;
        let t = self.events[start].time;
        let mut end = start + 1;
        while end < self.events.len() && self.events[end].time == t {
            end += 1;
        }
        self.pos = end;
        Some(start..end)
    }
}

impl fmt::Display for EventSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, ev) in self.events.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "({},{})", self.alphabet.name(ev.event_type), ev.time)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_is_dense_and_stable() {
        let mut a = Alphabet::new();
        assert_eq!(a.intern("A"), EventType(0));
        assert_eq!(a.intern("B"), EventType(1));
        assert_eq!(a.intern("A"), EventType(0));
        assert_eq!(a.name(EventType(1)), "B");
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn rejects_decreasing_and_non_positive_times() {
        let err = EventSequence::from_pairs(&[("B", 3), ("A", 1)]).unwrap_err();
        assert!(matches!(err, SequenceError::DecreasingTime { index: 1, .. }));
        let err = EventSequence::from_pairs(&[("A", 0)]).unwrap_err();
        assert!(matches!(err, SequenceError::NonPositiveTime { .. }));
    }

    #[test]
    fn batches_group_equal_times() {
        let d = EventSequence::from_pairs(&[("A", 1), ("B", 1), ("C", 2), ("A", 4), ("A", 4)]).unwrap();
        let b: Vec<_> = d.batches().collect();
        assert_eq!(b, vec![0..2, 2..3, 3..5]);
        assert!(!d.has_distinct_times());
        assert_eq!(d.time_span(), 3);
    }
}
