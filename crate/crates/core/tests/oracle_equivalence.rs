use episodes::oracle::differential::{all_measures, run_differential, TrialShape};

fn check(seed: u64, trials: usize, shape: TrialShape) {
    let summary = run_differential(seed, trials, shape, &all_measures());
    for m in summary.mismatches.iter().take(10) {
        eprintln!("{m}");
    }
    assert!(summary.passed(), "{} mismatches over {} comparisons", summary.mismatches.len(), summary.compared);
    assert!(summary.skipped * 10 < summary.compared, "too many skipped: {}", summary.skipped);
}

#[test]
fn engine_matches_oracle_on_distinct_times() {
    check(7, 800, TrialShape::default());
}

#[test]
fn engine_matches_oracle_with_shared_timestamps() {
    check(11, 800, TrialShape { repeated_times: true, ..TrialShape::default() });
}

#[test]
fn engine_matches_oracle_on_tiny_alphabets() {
    check(13, 800, TrialShape { max_alphabet: 2, max_events: 20, max_nodes: 5, repeated_times: false });
}

#[test]
fn engine_matches_oracle_on_tiny_alphabets_with_shared_timestamps() {
    check(17, 800, TrialShape { max_alphabet: 2, max_events: 20, max_nodes: 5, repeated_times: true });
}
