use super::*;
use crate::episode::parse_episode;
use crate::samples::{abc_stream, abcd_stream};
use crate::sequence::Alphabet;

fn ep(d: &EventSequence, text: &str) -> Episode {
    let mut a = d.alphabet().clone();
    let e = parse_episode(text, &mut a).unwrap();
    assert_eq!(a.len(), d.alphabet().len(), "episode uses unknown symbols");
    e
}

fn freq(d: &EventSequence, text: &str, mode: FrequencyMode, tx: Option<i64>) -> u64 {
    let mut req = CountRequest::new(vec![ep(d, text)], mode);
    req.tx = tx;
    count(&req, d).unwrap().counts[0].frequency
}

fn trace(d: &EventSequence, text: &str, mode: FrequencyMode, tx: Option<i64>) -> Vec<Vec<i64>> {
    let mut req = CountRequest::new(vec![ep(d, text)], mode).with_trace();
    req.tx = tx;
    count(&req, d).unwrap().counts[0]
        .trace
        .as_ref()
        .unwrap()
        .iter()
        .map(|t| t.occurrence.times().to_vec())
        .collect()
}

use FrequencyMode::*;

#[test]
fn policy_rows() {
    let no = policy_for(No);
    assert_eq!(
        (no.transit, no.copy, no.join, no.increment, no.retire),
        (TransitRule::Always, CopyRule::Never, JoinRule::Never, IncrementRule::Always, RetireRule::Always)
    );
    let mo = policy_for(Mo);
    assert_eq!(
        (mo.transit, mo.copy, mo.join, mo.increment, mo.retire),
        (TransitRule::Always, CopyRule::OnStartExit, JoinRule::Always, IncrementRule::Always, RetireRule::Never)
    );
    let d = policy_for(Do);
    assert_eq!(
        (d.transit, d.copy, d.join, d.increment, d.retire),
        (TransitRule::OldestInState, CopyRule::OnStartExit, JoinRule::Never, IncrementRule::Always, RetireRule::Never)
    );
    assert_eq!(policy_for(Ao).copy, CopyRule::Always);
    assert_eq!(policy_for(Ni).transit, TransitRule::NoEarlierInNextState);
    assert_eq!(policy_for(Wb).inc, IncRule::WindowsBased);
    assert!(FrequencyMode::ALL.iter().filter(|&&m| m != Wb).all(|&m| policy_for(m).inc == IncRule::Unit));
    assert_eq!(policy_for(MoX).increment, IncrementRule::WithinExpiry);
    assert_eq!(policy_for(Hd).join, JoinRule::Never);
}

#[test]
fn mode_labels_round_trip() {
    for m in FrequencyMode::ALL {
        assert_eq!(m.label().parse::<FrequencyMode>().unwrap(), m);
    }
    assert_eq!("NO-X".parse::<FrequencyMode>().unwrap(), NoX);
    assert!("xx".parse::<FrequencyMode>().is_err());
}

#[test]
fn abc_stream_examples() {
    let d = abc_stream();
    assert_eq!(freq(&d, "A->B->C", Wb, Some(5)), 5);
    assert_eq!(freq(&d, "A->B->C", Mo, None), 3);
    let windows: Vec<_> = trace(&d, "A->B->C", Mo, None).iter().map(|t| (t[0], t[2])).collect();
    assert_eq!(windows, [(2, 8), (7, 12), (13, 15)]);
    assert_eq!(freq(&d, "A->B->C", Hd, Some(6)), 4);
    assert_eq!(freq(&d, "A->B->C", No, None), 2);
    assert_eq!(freq(&d, "A->B->C", Ni, None), 3);
    assert_eq!(freq(&d, "A->B->C", Do, None), 3);
    assert_eq!(count_total(&[ep(&d, "A->B->C")], &d, 6).unwrap(), [3]);
}

#[test]
fn abcd_stream_examples() {
    let d = abcd_stream();
    let abcd = "A->B->C->D";
    assert_eq!(freq(&d, abcd, No, None), 2);
    assert_eq!(trace(&d, abcd, No, None), [[1, 3, 7, 15], [19, 21, 25, 29]]);
    assert_eq!(trace(&d, abcd, NoX, Some(9)), [[14, 17, 20, 23]]);
    assert_eq!(trace(&d, abcd, NoI, None), [[5, 9, 11, 15], [22, 24, 25, 29]]);
    let mo_ends: Vec<_> = trace(&d, abcd, Mo, None).iter().map(|t| t[3]).collect();
    assert_eq!(mo_ends, [15, 23, 29]);
    assert_eq!(
        trace(&d, abcd, Ni, None),
        [[1, 3, 7, 15], [4, 9, 16, 18], [14, 17, 20, 23], [19, 21, 25, 29]]
    );
    assert_eq!(
        trace(&d, abcd, Do, None),
        [[1, 3, 7, 15], [4, 9, 11, 18], [5, 17, 20, 23], [14, 21, 25, 29], [19, 24, 30, 31]]
    );
    assert_eq!(freq(&d, abcd, Hd, Some(10)), 4);
    assert_eq!(
        trace(&d, abcd, Hd, Some(10)),
        [[5, 9, 11, 15], [14, 17, 20, 23], [19, 21, 25, 29], [22, 24, 25, 29]]
    );
}

#[test]
fn windows_based_increments() {
    let d = abcd_stream();
    let mut req = CountRequest::new(vec![ep(&d, "A->B->C->D")], Wb).with_expiry(16).with_trace();
    req.trace = true;
    let c = &count(&req, &d).unwrap().counts[0];
    let incs: Vec<_> = c.trace.as_ref().unwrap().iter().map(|t| t.increment).collect();
    assert_eq!(incs, [7, 8, 8]);
    assert_eq!(c.frequency, 23);
}

#[test]
fn wb_increment_closed_form() {
    assert_eq!(wb_increment(None, Window::new(5, 15), 16), 7);
    assert_eq!(wb_increment(Some(Window::new(5, 15)), Window::new(14, 23), 16), 8);
    assert_eq!(wb_increment(Some(Window::new(14, 23)), Window::new(22, 29), 16), 8);
    assert_eq!(wb_increment(None, Window::new(3, 8), 5), 1);
}

#[test]
#[should_panic(expected = "wider")]
fn wb_increment_rejects_wide_window() {
    wb_increment(None, Window::new(0, 9), 5);
}

#[test]
fn all_occurrences() {
    let d = EventSequence::from_symbols("AABBCC");
    assert_eq!(freq(&d, "A->B->C", Ao, None), 8);
    for sub in ["A->B", "A->C", "B->C"] {
        assert_eq!(freq(&d, sub, Ao, None), 4);
    }
}

#[test]
fn automaton_cap_aborts() {
    let d = EventSequence::from_symbols("AAAAAAAABBBBBBBB");
    let req = CountRequest::new(vec![ep(&d, "A->B")], Ao).with_cap(4);
    assert!(matches!(count(&req, &d), Err(CountError::CapExceeded { cap: 4, .. })));
}

#[test]
fn empty_sequence_counts_zero() {
    let d = EventSequence::from_pairs::<&str>(&[]).unwrap();
    let mut a = Alphabet::from_names(["A", "B"]);
    let e = parse_episode("A->B", &mut a).unwrap();
    for m in FrequencyMode::ALL {
        let mut req = CountRequest::new(vec![e.clone()], m);
        if m.expiry_use() == ExpiryUse::Required {
            req.tx = Some(3);
        }
        assert_eq!(count(&req, &d).unwrap().counts[0].frequency, 0, "{m}");
    }
}

#[test]
fn expiry_configuration_rules() {
    let d = abc_stream();
    let e = ep(&d, "A->B");
    let with = |m, tx| {
        let mut r = CountRequest::new(vec![e.clone()], m);
        r.tx = tx;
        count(&r, &d)
    };
    for m in [Ni, Do] {
        let err = with(m, Some(5)).unwrap_err();
        assert_eq!(err, CountError::Config(ConfigError::ExpiryUnsupported(m)));
    }
    assert_eq!(
        with(Ni, Some(5)).unwrap_err().to_string(),
        "expiry not supported for NI"
    );
    for m in [Mo, No, NoI, Ao] {
        assert!(matches!(with(m, Some(5)), Err(CountError::Config(ConfigError::ExpiryForbidden(_)))));
    }
    for m in [Wb, MoX, NoX, Hd] {
        assert!(matches!(with(m, None), Err(CountError::Config(ConfigError::ExpiryRequired(_)))));
        assert!(matches!(with(m, Some(-1)), Err(CountError::Config(ConfigError::NegativeExpiry(-1)))));
    }
}

#[test]
fn same_timestamp_events_are_not_chained() {
    let d = EventSequence::from_pairs(&[("A", 5), ("B", 5)]).unwrap();
    for m in [Mo, No, NoI, Ni, Do, Ao] {
        assert_eq!(freq(&d, "A->B", m, None), 0, "{m}");
    }
    let d = EventSequence::from_pairs(&[("A", 5), ("B", 5), ("B", 6)]).unwrap();
    assert_eq!(trace(&d, "A->B", No, None), [[5, 6]]);
}

#[test]
fn same_timestamp_joins_keep_one_window() {
    // Both A's at time 1 start automata that reach the same state together.
    let d = EventSequence::from_pairs(&[("A", 1), ("A", 1), ("B", 2)]).unwrap();
    assert_eq!(freq(&d, "A->B", Mo, None), 1);
    assert_eq!(freq(&d, "A->B", Ao, None), 2);
    assert_eq!(freq(&d, "A->B", Do, None), 1);
    assert_eq!(freq(&d, "A->B", Hd, Some(5)), 1);
    assert_eq!(freq(&d, "A", Ni, None), 2);
    assert_eq!(freq(&d, "A", Mo, None), 1);
}

#[test]
fn non_injective_distinct_branching() {
    let d = EventSequence::from_symbols("AAAB");
    assert_eq!(freq(&d, "A->A", Do, None), 1);
    assert_eq!(freq(&d, "A->A->B", Do, None), 1);
    // Taking B at 3 for the first A would strand the second one.
    let d = EventSequence::from_symbols("ABAB");
    assert_eq!(freq(&d, "A->B->B", Do, None), 1);
    let d = EventSequence::from_symbols("AAABBB");
    assert_eq!(freq(&d, "A->A->B->B", Do, None), 1);
    assert_eq!(freq(&d, "A->B", Do, None), 3);
}

#[test]
fn deterministic_reports() {
    let d = abcd_stream();
    let req = CountRequest::new(vec![ep(&d, "A->B->C->D"), ep(&d, "A->C")], Ni).with_trace();
    assert_eq!(count(&req, &d).unwrap(), count(&req, &d).unwrap());
}

#[test]
fn total_of_repeated_head() {
    let mut text = "A".repeat(100);
    text.push_str("BC");
    let d = EventSequence::from_symbols(&text);
    assert_eq!(count_total(&[ep(&d, "A->B->C")], &d, 1000).unwrap(), [1]);
    assert_eq!(freq(&d, "A->B->C", Hd, Some(1000)), 100);
}

#[test]
fn many_candidates_share_one_pass() {
    let d = abcd_stream();
    let texts = ["A->B", "B->A", "C->D", "A->B->C->D", "D"];
    let cands: Vec<_> = texts.iter().map(|t| ep(&d, t)).collect();
    let report = count(&CountRequest::new(cands.clone(), Mo), &d).unwrap();
    for (t, c) in texts.iter().zip(&report.counts) {
        assert_eq!(c.frequency, freq(&d, t, Mo, None), "{t}");
    }
}
