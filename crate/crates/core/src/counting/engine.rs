use crate::automata::{AutomatonId, AutomatonPool};
use crate::episode::{Episode, Window};
use crate::sequence::Event;

use super::{wb_increment, CopyRule, IncRule, IncrementRule, JoinRule, Policy, RetireRule, TracedOccurrence, TransitRule};

/// Raised when an episode holds more live automata than allowed.
#[derive(Debug)]
pub(crate) struct CapHit;

/// Automata of one episode under a fixed policy (every mode except DO).
pub(crate) struct Runner {
    pool: AutomatonPool,
    policy: Policy,
    tx: i64,
    cap: usize,
    frequency: u64,
    trace: Option<Vec<TracedOccurrence>>,
    /// Automata that reached the accepting state in the current batch
    /// (join modes complete only the newest of them).
    pending: Vec<AutomatonId>,
    /// Automata that transited in the current batch (NI resolution).
    moved: Vec<AutomatonId>,
    last_window: Option<Window>,
    last_head: Option<i64>,
    scratch: Vec<AutomatonId>,
}

impl Runner {
    pub(crate) fn new(episode: Episode, policy: Policy, tx: Option<i64>, trace: bool, cap: usize) -> Self {
        let mut pool = AutomatonPool::new(episode);
        pool.spawn(i64::MIN);
        Self {
            pool,
            policy,
            tx: tx.unwrap_or(i64::MAX),
            cap,
            frequency: 0,
            trace: trace.then(Vec::new),
            pending: Vec::new(),
            moved: Vec::new(),
            last_window: None,
            last_head: None,
            scratch: Vec::new(),
        }
    }

    fn n(&self) -> usize {
        self.pool.episode().len()
    }

    pub(crate) fn on_event(&mut self, states: &[usize], index: usize, event: &Event) -> Result<(), CapHit> {
        let n = self.n();
        let head_mode = self.policy.increment == IncrementRule::WithinExpiry && self.policy.join == JoinRule::Never;
        for &j in states {
            self.scratch.clear();
            self.scratch.extend_from_slice(self.pool.bucket(j));
            for k in 0..self.scratch.len() {
                let id = self.scratch[k];
                let a = self.pool.get(id);
                if !a.can_accept(self.pool.episode(), index, event) {
                    continue;
                }
                // Head counting keeps every start alive; drop those already too wide.
                if head_mode && a.start_time().is_some_and(|s| event.time - s > self.tx) {
                    self.pool.release(id);
                    continue;
                }
                let copy = match self.policy.copy {
                    CopyRule::Never => false,
                    CopyRule::OnStartExit => j == 0,
                    CopyRule::Always => true,
                };
                if copy {
                    self.pool.copy(id, index + 1);
                }
                self.pool.advance(id, index, event);
                if j + 1 == n {
                    if self.policy.join == JoinRule::Always {
                        self.pending.push(id);
                    } else {
                        self.complete(id, event.time);
                    }
                } else if self.policy.transit == TransitRule::NoEarlierInNextState {
                    self.moved.push(id);
                }
            }
        }
        if self.pool.live() > self.cap {
            return Err(CapHit);
        }
        Ok(())
    }

    /// Counts (or drops) an automaton that reached the accepting state.
    fn complete(&mut self, id: AutomatonId, time: i64) {
        let a = self.pool.get(id);
        let occurrence = a.occurrence_of(self.pool.episode()).expect("accepting automaton");
        self.pool.release(id);
        let within = occurrence.span() <= self.tx;
        if self.policy.increment == IncrementRule::WithinExpiry && !within {
            return;
        }
        if self.policy.join == JoinRule::Never && self.policy.increment == IncrementRule::WithinExpiry {
            // Automata started at one timestamp track identical occurrences.
            if self.last_head == Some(occurrence.start()) {
                return;
            }
            self.last_head = Some(occurrence.start());
        }
        let inc = match self.policy.inc {
            IncRule::Unit => 1,
            IncRule::WindowsBased => {
                let w = occurrence.window();
                let inc = wb_increment(self.last_window, w, self.tx);
                self.last_window = Some(w);
                inc
            }
        };
        self.frequency += inc;
        if let Some(trace) = &mut self.trace {
            trace.push(TracedOccurrence { occurrence, increment: inc });
        }
        if self.policy.retire == RetireRule::Always {
            self.pool.retire_all();
            self.pool.spawn(time);
        }
    }

    pub(crate) fn end_batch(&mut self, time: i64) {
        if self.policy.join == JoinRule::Always {
            for state in 1..self.n() {
                while self.pool.bucket(state).len() > 1 {
                    let oldest = self.pool.bucket(state)[0];
                    self.pool.release(oldest);
                }
            }
            if let Some(newest) = self.pending.iter().copied().max_by_key(|&id| self.pool.get(id).birth()) {
                for id in std::mem::take(&mut self.pending) {
                    if id != newest {
                        self.pool.release(id);
                    }
                }
                self.complete(newest, time);
            }
            debug_assert!((0..self.n()).all(|s| self.pool.bucket(s).len() <= 1));
        }
        if self.policy.transit == TransitRule::NoEarlierInNextState && !self.moved.is_empty() {
            let mut moved = std::mem::take(&mut self.moved);
            moved.sort_by_key(|&id| self.pool.get(id).birth());
            for &id in &moved {
                let a = self.pool.get(id);
                let state = a.state();
                let oldest = self.pool.bucket(state)[0];
                if oldest != id {
                    self.pool.retreat(id);
                }
            }
            while self.pool.bucket(0).len() > 1 {
                let newest = *self.pool.bucket(0).last().unwrap();
                self.pool.release(newest);
            }
            moved.clear();
            self.moved = moved;
        }
    }

    pub(crate) fn finish(self) -> (u64, Option<Vec<TracedOccurrence>>) {
        (self.frequency, self.trace)
    }
}
