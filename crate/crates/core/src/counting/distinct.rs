//! Counting distinct (event-disjoint) occurrences.
//!
//! Every event is given to at most one automaton: the oldest eligible one in
//! the state that takes it. For an injective episode only one state waits
//! for any given type, so this is a single greedy pass. When several states
//! wait for the same type the right choice is not locally decidable, so the
//! counter keeps a set of alternative runs and branches on each such event.
//! At the end of every timestamp batch, runs that another run dominates are
//! dropped: run `a` dominates `b` when, for every `k`, `a` has at least as
//! many automata at state `k` or beyond (completed occurrences included).
//! A higher-state automaton can replay the remaining steps of a lower one on
//! a subset of its events, so nothing is lost.

use crate::automata::AutomatonPool;
use crate::episode::Episode;
use crate::sequence::Event;

use super::engine::CapHit;
use super::TracedOccurrence;

#[derive(Clone)]
struct Run {
    pool: AutomatonPool,
    done: u64,
    trace: Vec<TracedOccurrence>,
}

impl Run {
    /// Gives event `index` to the oldest eligible automaton in `state`.
    fn take(&mut self, state: usize, index: usize, event: &Event, tracing: bool) {
        let ep = self.pool.episode();
        let id = *self
            .pool
            .bucket(state)
            .iter()
            .find(|&&id| self.pool.get(id).can_accept(ep, index, event))
            .expect("eligible automaton");
        if state == 0 {
            self.pool.copy(id, index + 1);
        }
        self.pool.advance(id, index, event);
        if state + 1 == self.pool.episode().len() {
            if tracing {
                let occurrence = self.pool.get(id).occurrence_of(self.pool.episode()).expect("accepting");
                self.trace.push(TracedOccurrence { occurrence, increment: 1 });
            }
            self.pool.release(id);
            self.done += 1;
        }
    }

    fn can_take(&self, state: usize, index: usize, event: &Event) -> bool {
        let ep = self.pool.episode();
        self.pool.bucket(state).iter().any(|&id| self.pool.get(id).can_accept(ep, index, event))
    }

    /// `done + #automata at state >= k` for `k = N-1, ..., 1`, then `done`.
    fn profile(&self) -> Vec<u64> {
        let counts = self.pool.state_counts();
        let mut acc = self.done;
        let mut out = Vec::with_capacity(counts.len());
        out.push(acc);
        for c in counts.iter().skip(1).rev() {
            acc += *c as u64;
            out.push(acc);
        }
        out
    }
}

pub(crate) struct Frontier {
    runs: Vec<Run>,
    tracing: bool,
    cap: usize,
    options: Vec<usize>,
}

impl Frontier {
    pub(crate) fn new(episode: Episode, tracing: bool, cap: usize) -> Self {
        let mut pool = AutomatonPool::new(episode);
        pool.spawn(i64::MIN);
        Self {
            runs: vec![Run { pool, done: 0, trace: Vec::new() }],
            tracing,
            cap,
            options: Vec::new(),
        }
    }

    pub(crate) fn on_event(&mut self, states: &[usize], index: usize, event: &Event) -> Result<(), CapHit> {
        if states.len() == 1 {
            for run in &mut self.runs {
                if run.can_take(states[0], index, event) {
                    run.take(states[0], index, event, self.tracing);
                }
            }
        } else {
            let mut next = Vec::with_capacity(self.runs.len());
            for mut run in self.runs.drain(..) {
                self.options.clear();
                self.options.extend(states.iter().copied().filter(|&s| run.can_take(s, index, event)));
                if let Some((&last, rest)) = self.options.split_last() {
                    for &s in rest {
                        let mut alt = run.clone();
                        alt.take(s, index, event, self.tracing);
                        next.push(alt);
                    }
                    run.take(last, index, event, self.tracing);
                }
                next.push(run);
            }
            self.runs = next;
        }
        let live: usize = self.runs.iter().map(|r| r.pool.live()).sum();
        if live > self.cap {
            return Err(CapHit);
        }
        Ok(())
    }

    pub(crate) fn end_batch(&mut self) {
        if self.runs.len() < 2 {
            return;
        }
        let profiles: Vec<Vec<u64>> = self.runs.iter().map(Run::profile).collect();
        let dominated = |i: usize| {
            profiles.iter().enumerate().any(|(j, p)| {
                j != i
                    && p.iter().zip(&profiles[i]).all(|(a, b)| a >= b)
                    && (p != &profiles[i] || j < i)
            })
        };
        let keep: Vec<bool> = (0..self.runs.len()).map(|i| !dominated(i)).collect();
        let mut k = keep.iter();
        self.runs.retain(|_| *k.next().unwrap());
    }

    pub(crate) fn finish(self) -> (u64, Option<Vec<TracedOccurrence>>) {
        let tracing = self.tracing;
        let best = self
            .runs
            .into_iter()
            .reduce(|a, b| if b.done > a.done { b } else { a })
            .expect("at least one run");
        (best.done, tracing.then_some(best.trace))
    }
}
