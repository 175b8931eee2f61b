//! Exhaustive checks of the structural facts the counting algorithms rely on,
//! instantiated on one `(episode, sequence)` pair.
//!
//! Most facts assume all event times are distinct; on other inputs those
//! checks are reported as skipped.

use std::fmt;

use crate::counting::{count, CountRequest, FrequencyMode};
use crate::episode::{lex_compare, Episode, Occurrence};
use crate::error::OracleError;
use crate::sequence::EventSequence;

use super::{enumerate_et, enumerate_occurrences, minimal_windows, non_overlapped, OCCURRENCE_CAP};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
    Skipped(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaCheck {
    pub name: &'static str,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LemmaReport {
    pub checks: Vec<LemmaCheck>,
}

impl LemmaReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| !matches!(c.verdict, Verdict::Fail(_)))
    }

    pub fn failures(&self) -> impl Iterator<Item = &LemmaCheck> {
        self.checks.iter().filter(|c| matches!(c.verdict, Verdict::Fail(_)))
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.checks.iter().find(|c| c.name == name).map(|c| &c.verdict)
    }

    fn push(&mut self, name: &'static str, result: Result<(), String>) {
        let verdict = match result {
            Ok(()) => Verdict::Pass,
            Err(msg) => Verdict::Fail(msg),
        };
        self.checks.push(LemmaCheck { name, verdict });
    }
}

impl fmt::Display for LemmaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.verdict {
                Verdict::Pass => writeln!(f, "{}: pass", c.name)?,
                Verdict::Fail(m) => writeln!(f, "{}: FAIL ({m})", c.name)?,
                Verdict::Skipped(m) => writeln!(f, "{}: skipped ({m})", c.name)?,
            }
        }
        Ok(())
    }
}

pub const ET_DOMINANCE: &str = "et-dominance";
pub const ET_MONOTONE: &str = "et-monotone";
pub const NON_MINIMAL_IMPLIES_SHARED_END: &str = "non-minimal-implies-shared-end";
pub const SHARED_END_IMPLIES_NON_MINIMAL: &str = "shared-end-implies-non-minimal";
pub const MO_TRACKS_LAST_ET_PER_END: &str = "mo-tracks-last-et-per-end";
pub const NO_X_MAXIMAL: &str = "no-x-maximal";
pub const NO_X_GREEDY_MINIMAL: &str = "no-x-greedy-minimal";
pub const NI_POSITIONAL: &str = "ni-positional";
pub const NO_NO_I_ENDS: &str = "no-vs-no-i-ends";
pub const NO_X_FULL_SPAN_IS_NO_I: &str = "no-x-full-span-is-no-i";

pub const ALL_CHECKS: [&str; 10] = [
    ET_DOMINANCE,
    ET_MONOTONE,
    NON_MINIMAL_IMPLIES_SHARED_END,
    SHARED_END_IMPLIES_NON_MINIMAL,
    MO_TRACKS_LAST_ET_PER_END,
    NO_X_MAXIMAL,
    NO_X_GREEDY_MINIMAL,
    NI_POSITIONAL,
    NO_NO_I_ENDS,
    NO_X_FULL_SPAN_IS_NO_I,
];

fn traced(alpha: &Episode, d: &EventSequence, mode: FrequencyMode, tx: Option<i64>) -> Vec<Occurrence> {
    let mut req = CountRequest::new(vec![alpha.clone()], mode).with_trace();
    req.tx = tx;
    let report = count(&req, d).expect("valid request");
    report.counts[0]
        .trace
        .as_ref()
        .expect("trace requested")
        .iter()
        .map(|t| t.occurrence.clone())
        .collect()
}

fn times(hs: &[Occurrence]) -> Vec<Vec<i64>> {
    hs.iter().map(|h| h.times().to_vec()).collect()
}

/// Runs every check on `(alpha, d)`. `tx` is the expiry bound used for the
/// expiry-constrained checks (defaults to the full time span of `d`).
pub fn check_lemma_suite(alpha: &Episode, d: &EventSequence, tx: Option<i64>) -> Result<LemmaReport, OracleError> {
    let mut report = LemmaReport::default();
    if !d.has_distinct_times() {
        for name in ALL_CHECKS {
            report.checks.push(LemmaCheck {
                name,
                verdict: Verdict::Skipped("sequence has repeated timestamps".into()),
            });
        }
        return Ok(report);
    }
    let tx = tx.unwrap_or_else(|| d.time_span());
    let all = enumerate_occurrences(alpha, d, OCCURRENCE_CAP)?;
    let et = enumerate_et(alpha, d);
    let et = et.as_slice();

    report.push(ET_DOMINANCE, et_dominance(et, all.as_slice()));
    report.push(ET_MONOTONE, et_monotone(et));

    let minimal = minimal_windows(&all);
    let is_minimal = |h: &Occurrence| minimal.binary_search(&h.window()).is_ok();
    let shares_end = |i: usize| i + 1 < et.len() && et[i].end() == et[i + 1].end();
    report.push(
        NON_MINIMAL_IMPLIES_SHARED_END,
        (0..et.len())
            .find(|&i| !is_minimal(&et[i]) && !shares_end(i))
            .map_or(Ok(()), |i| Err(format!("ET {:?} not minimal yet its successor ends later", et[i].times()))),
    );
    report.push(
        SHARED_END_IMPLIES_NON_MINIMAL,
        (0..et.len())
            .find(|&i| shares_end(i) && is_minimal(&et[i]))
            .map_or(Ok(()), |i| Err(format!("ET {:?} shares its end but is minimal", et[i].times()))),
    );

    let expected_mo: Vec<Occurrence> =
        (0..et.len()).filter(|&i| !shares_end(i)).map(|i| et[i].clone()).collect();
    let mo = traced(alpha, d, FrequencyMode::Mo, None);
    report.push(
        MO_TRACKS_LAST_ET_PER_END,
        if times(&mo) == times(&expected_mo) {
            Ok(())
        } else {
            Err(format!("engine {:?}, expected {:?}", times(&mo), times(&expected_mo)))
        },
    );

    let nox = traced(alpha, d, FrequencyMode::NoX, Some(tx));
    let within: Vec<Occurrence> = all.iter().filter(|h| h.span() <= tx).cloned().collect();
    report.push(NO_X_MAXIMAL, no_x_maximal(&nox, &within, tx));
    let minimal_within: Vec<_> = minimal.iter().filter(|w| w.width() <= tx).copied().collect();
    report.push(NO_X_GREEDY_MINIMAL, {
        let mut expected = Vec::new();
        let mut after = i64::MIN;
        for w in &minimal_within {
            if w.start > after {
                expected.push(*w);
                after = w.end;
            }
        }
        let got: Vec<_> = nox.iter().map(Occurrence::window).collect();
        if got == expected {
            Ok(())
        } else {
            Err(format!("engine windows {got:?}, expected {expected:?}"))
        }
    });

    let ni = traced(alpha, d, FrequencyMode::Ni, None);
    report.push(NI_POSITIONAL, ni_positional(alpha, d, &ni));

    let no = traced(alpha, d, FrequencyMode::No, None);
    let noi = traced(alpha, d, FrequencyMode::NoI, None);
    report.push(NO_NO_I_ENDS, no_vs_no_i(&no, &noi, et));

    let full = traced(alpha, d, FrequencyMode::NoX, Some(d.time_span()));
    report.push(
        NO_X_FULL_SPAN_IS_NO_I,
        if times(&full) == times(&noi) {
            Ok(())
        } else {
            Err(format!("NO-X {:?} vs NO-I {:?}", times(&full), times(&noi)))
        },
    );
    Ok(report)
}

/// An ET occurrence is pointwise no later than every lexicographically
/// larger occurrence.
fn et_dominance(et: &[Occurrence], all: &[Occurrence]) -> Result<(), String> {
    for h in et {
        for g in all {
            if lex_compare(h, g).is_lt() && h.times().iter().zip(g.times()).any(|(a, b)| a > b) {
                return Err(format!("ET {:?} exceeds {:?}", h.times(), g.times()));
            }
        }
    }
    Ok(())
}

/// ET occurrences are pointwise nondecreasing in order, with strictly
/// increasing starts.
fn et_monotone(et: &[Occurrence]) -> Result<(), String> {
    for (i, h) in et.iter().enumerate() {
        for g in &et[i + 1..] {
            if h.start() >= g.start() || h.times().iter().zip(g.times()).any(|(a, b)| a > b) {
                return Err(format!("{:?} before {:?}", h.times(), g.times()));
            }
        }
    }
    Ok(())
}

fn no_x_maximal(nox: &[Occurrence], within: &[Occurrence], tx: i64) -> Result<(), String> {
    if let Some(h) = nox.iter().find(|h| h.span() > tx) {
        return Err(format!("{:?} exceeds expiry {tx}", h.times()));
    }
    for (i, h) in nox.iter().enumerate() {
        if let Some(g) = nox[i + 1..].iter().find(|g| !non_overlapped(h, g)) {
            return Err(format!("{:?} overlaps {:?}", h.times(), g.times()));
        }
    }
    // Any non-overlapped set's i-th end is at least the engine's i-th end.
    let witness = super::max_non_overlapped(within);
    if witness.len() != nox.len() {
        return Err(format!("engine found {}, maximum is {}", nox.len(), witness.len()));
    }
    if let Some((h, w)) = nox.iter().zip(&witness).find(|(h, w)| h.end() > w.end()) {
        return Err(format!("engine {:?} ends after witness {:?}", h.times(), w.times()));
    }
    Ok(())
}

/// The i-th tracked occurrence is positioned greedily after the (i-1)-th:
/// node `j` is the first matching event at or after node `j+1` of the
/// previous occurrence (and after node `j-1` of this one); the last node is
/// the first match after node `N-1`. Nothing can follow the last one.
fn ni_positional(alpha: &Episode, d: &EventSequence, ni: &[Occurrence]) -> Result<(), String> {
    let ev = d.events();
    let n = alpha.len();
    let first_at = |k: usize, at_least: i64, after: i64| -> Option<i64> {
        ev.iter()
            .find(|e| e.event_type == alpha.node(k) && e.time >= at_least && e.time > after)
            .map(|e| e.time)
    };
    let next = |prev: Option<&[i64]>| -> Option<Vec<i64>> {
        let mut out: Vec<i64> = Vec::with_capacity(n);
        for k in 0..n {
            let after = out.last().copied().unwrap_or(i64::MIN);
            let at_least = match prev {
                Some(p) if k + 1 < n => p[k + 1],
                // The last node of a later occurrence need not clear anything but its own predecessor.
                Some(p) if n == 1 => p[0] + 1,
                _ => i64::MIN,
            };
            out.push(first_at(k, at_least, after)?);
        }
        Some(out)
    };
    let mut prev: Option<Vec<i64>> = None;
    for h in ni {
        let expected = next(prev.as_deref());
        if expected.as_deref() != Some(h.times()) {
            return Err(format!("tracked {:?}, expected {:?}", h.times(), expected));
        }
        prev = Some(h.times().to_vec());
    }
    if let Some(extra) = next(prev.as_deref()) {
        return Err(format!("untracked follower {extra:?}"));
    }
    Ok(())
}

fn no_vs_no_i(no: &[Occurrence], noi: &[Occurrence], et: &[Occurrence]) -> Result<(), String> {
    if no.len() != noi.len() {
        return Err(format!("NO tracked {}, NO-I tracked {}", no.len(), noi.len()));
    }
    for (a, b) in no.iter().zip(noi) {
        let last_et = et.iter().rfind(|h| h.end() == a.end());
        if last_et.map(|h| h.times()) != Some(b.times()) {
            return Err(format!(
                "NO {:?}: NO-I tracked {:?}, last ET with that end is {:?}",
                a.times(),
                b.times(),
                last_et.map(|h| h.times())
            ));
        }
    }
    Ok(())
}
