//! Per-episode recognizers and the pool/index machinery that lets a single
//! pass over the data drive many of them.
//!
//! An automaton for an N-node episode has states `0..=N`. In state `j < N`
//! it has accepted the first `j` nodes and waits for node `j` (zero-based);
//! state `N` is accepting. Automata of one episode live in an
//! [`AutomatonPool`], bucketed by state and kept oldest-first inside each
//! bucket.

use crate::episode::{Episode, Occurrence};
use crate::sequence::{Event, EventType};

/// One accepted event: its index in the sequence and its time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub index: usize,
    pub time: i64,
}

/// A single recognizer instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automaton {
    state: usize,
    trace: Vec<Step>,
    birth: u64,
    /// Accepted events must be strictly later than this when the trace is empty.
    base_floor: i64,
    /// Events with a smaller index are not offered (a copy may not take the
    /// event that created it).
    min_index: usize,
}

impl Automaton {
    /// A start-state automaton with the given birth order.
    pub fn fresh(birth: u64) -> Self {
        Self::fresh_after(birth, i64::MIN)
    }

    /// A start-state automaton that only accepts events later than `floor`.
    pub fn fresh_after(birth: u64, floor: i64) -> Self {
        Self { state: 0, trace: Vec::new(), birth, base_floor: floor, min_index: 0 }
    }

    pub fn state(&self) -> usize {
        self.state
    }

    pub fn trace(&self) -> &[Step] {
        &self.trace
    }

    pub fn birth(&self) -> u64 {
        self.birth
    }

    pub fn start_time(&self) -> Option<i64> {
        self.trace.first().map(|s| s.time)
    }

    pub fn last_time(&self) -> Option<i64> {
        self.trace.last().map(|s| s.time)
    }

    fn floor(&self) -> i64 {
        self.last_time().unwrap_or(self.base_floor)
    }

    pub fn is_accepting(&self, episode: &Episode) -> bool {
        self.state == episode.len()
    }

    /// The event type this automaton is ready to accept, if not accepting.
    pub fn waits_for(&self, episode: &Episode) -> Option<EventType> {
        episode.nodes().get(self.state).copied()
    }

    pub fn can_accept(&self, episode: &Episode, index: usize, event: &Event) -> bool {
        self.waits_for(episode) == Some(event.event_type)
            && event.time > self.floor()
            && index >= self.min_index
    }

    /// Transits to the next state on `event`.
    ///
    /// Panics if the automaton is not waiting for this event type or the
    /// event is not strictly later than the last accepted one.
    pub fn step(&mut self, episode: &Episode, index: usize, event: &Event) {
        assert!(
            self.can_accept(episode, index, event),
            "automaton in state {} cannot accept event {index} at time {}",
            self.state,
            event.time
        );
        self.trace.push(Step { index, time: event.time });
        self.state += 1;
    }

    /// Undoes the last transition.
    pub fn retreat(&mut self) -> Option<Step> {
        let step = self.trace.pop()?;
        self.state -= 1;
        Some(step)
    }

    /// The occurrence tracked by an accepting automaton.
    pub fn occurrence_of(&self, episode: &Episode) -> Option<Occurrence> {
        if !self.is_accepting(episode) {
            return None;
        }
        Some(Occurrence::new(
            self.trace.iter().map(|s| s.index).collect(),
            self.trace.iter().map(|s| s.time).collect(),
        ))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AutomatonId(u32);

/// All automata of one episode, recycled through a free list.
#[derive(Debug, Clone)]
pub struct AutomatonPool {
    episode: Episode,
    slots: Vec<Automaton>,
    free: Vec<u32>,
    buckets: Vec<Vec<AutomatonId>>,
    next_birth: u64,
    live: usize,
}

impl AutomatonPool {
    pub fn new(episode: Episode) -> Self {
        let n = episode.len();
        Self {
            episode,
            slots: Vec::new(),
            free: Vec::new(),
            buckets: vec![Vec::new(); n],
            next_birth: 0,
            live: 0,
        }
    }

    pub fn episode(&self) -> &Episode {
        &self.episode
    }

    pub fn get(&self, id: AutomatonId) -> &Automaton {
        &self.slots[id.0 as usize]
    }

    /// Number of allocated (live or detached) automata.
    pub fn live(&self) -> usize {
        self.live
    }

    /// Automata in state `state` (`< N`), oldest first.
    pub fn bucket(&self, state: usize) -> &[AutomatonId] {
        &self.buckets[state]
    }

    fn alloc(&mut self, make: impl FnOnce(&mut Automaton)) -> AutomatonId {
        self.live += 1;
        if let Some(slot) = self.free.pop() {
            make(&mut self.slots[slot as usize]);
            AutomatonId(slot)
        } else {
            let mut a = Automaton::fresh(0);
            make(&mut a);
            self.slots.push(a);
            AutomatonId(self.slots.len() as u32 - 1)
        }
    }

    fn take_birth(&mut self) -> u64 {
        let b = self.next_birth;
        self.next_birth += 1;
        b
    }

    /// Adds a start-state automaton accepting only events later than `floor`.
    pub fn spawn(&mut self, floor: i64) -> AutomatonId {
        let birth = self.take_birth();
        let id = self.alloc(|a| {
            a.state = 0;
            a.trace.clear();
            a.birth = birth;
            a.base_floor = floor;
            a.min_index = 0;
        });
        self.buckets[0].push(id);
        id
    }

    /// Adds a newer automaton with the same state and trace as `id`, which
    /// may only take events with index `>= min_index`.
    pub fn copy(&mut self, id: AutomatonId, min_index: usize) -> AutomatonId {
        let birth = self.take_birth();
        let src = self.slots[id.0 as usize].clone();
        let new = self.alloc(|a| {
            a.state = src.state;
            a.trace.clear();
            a.trace.extend_from_slice(&src.trace);
            a.birth = birth;
            a.base_floor = src.base_floor;
            a.min_index = min_index;
        });
        // Newest birth: goes last in its bucket.
        self.buckets[src.state].push(new);
        new
    }

    fn position(&self, state: usize, id: AutomatonId) -> usize {
        let birth = self.get(id).birth;
        self.buckets[state]
            .binary_search_by_key(&birth, |&x| self.get(x).birth)
            .expect("automaton present in its state bucket")
    }

    fn insert(&mut self, state: usize, id: AutomatonId) {
        let birth = self.get(id).birth;
        let pos = self.buckets[state]
            .binary_search_by_key(&birth, |&x| self.slots[x.0 as usize].birth)
            .unwrap_err();
        self.buckets[state].insert(pos, id);
    }

    fn unlink(&mut self, id: AutomatonId) {
        let state = self.get(id).state;
        if state < self.episode.len() {
            let pos = self.position(state, id);
            self.buckets[state].remove(pos);
        }
    }

    /// Transits `id` on `event`. An automaton reaching the accepting state
    /// leaves the buckets but keeps its slot until [`release`](Self::release).
    pub fn advance(&mut self, id: AutomatonId, index: usize, event: &Event) {
        self.unlink(id);
        let slot = &mut self.slots[id.0 as usize];
        slot.step(&self.episode, index, event);
        let state = slot.state;
        if state < self.episode.len() {
            self.insert(state, id);
        }
    }

    /// Undoes the last transition of `id`.
    pub fn retreat(&mut self, id: AutomatonId) {
        self.unlink(id);
        let slot = &mut self.slots[id.0 as usize];
        slot.retreat().expect("retreat from start state");
        let state = slot.state;
        self.insert(state, id);
    }

    /// Removes `id` from the pool.
    pub fn release(&mut self, id: AutomatonId) {
        self.unlink(id);
        self.free.push(id.0);
        self.live -= 1;
    }

    /// Removes every automaton still in a bucket. Detached accepting
    /// automata must be released separately.
    pub fn retire_all(&mut self) {
        for bucket in &mut self.buckets {
            for id in bucket.drain(..) {
                self.free.push(id.0);
                self.live -= 1;
            }
        }
    }

    /// Number of automata in each non-accepting state.
    pub fn state_counts(&self) -> Vec<usize> {
        self.buckets.iter().map(Vec::len).collect()
    }
}

/// One entry of the waits index: the states of `episode` that wait for the
/// indexed event type, highest state first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaitEntry {
    pub episode: usize,
    pub states: Vec<usize>,
}

/// Maps an event type to the (episode, state) slots able to accept it.
///
/// The automata themselves sit in the per-state buckets of each episode's
/// pool, oldest first, so iterating an entry's states and then the bucket
/// visits exactly the automata currently ready for the event type.
#[derive(Debug, Clone, Default)]
pub struct WaitsIndex {
    entries: Vec<Vec<WaitEntry>>,
}

impl WaitsIndex {
    pub fn build(episodes: &[Episode], alphabet_len: usize) -> Self {
        let width = episodes
            .iter()
            .flat_map(|e| e.nodes().iter().map(|t| t.index() + 1))
            .chain(std::iter::once(alphabet_len))
            .max()
            .unwrap_or(0);
        let mut entries: Vec<Vec<WaitEntry>> = vec![Vec::new(); width];
        for (ei, ep) in episodes.iter().enumerate() {
            for (state, t) in ep.nodes().iter().enumerate().rev() {
                let list = &mut entries[t.index()];
                match list.last_mut() {
                    Some(entry) if entry.episode == ei => entry.states.push(state),
                    _ => list.push(WaitEntry { episode: ei, states: vec![state] }),
                }
            }
        }
        Self { entries }
    }

    pub fn get(&self, t: EventType) -> &[WaitEntry] {
        self.entries.get(t.index()).map(Vec::as_slice).unwrap_or(&[])
    }
}
