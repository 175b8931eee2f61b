//! Acceptance checks. Run with `cargo test -p episodes --test acceptance`.
//! Prints one PASS/FAIL line per criterion and exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use episodes::candgen::LevelSet;
use episodes::oracle::chain::{chain_counts, chain_violations};
use episodes::oracle::differential::{random_trial, run_differential, Measure, TrialShape};
use episodes::oracle::lemmas::{check_lemma_suite, Verdict, ALL_CHECKS};
use episodes::oracle::mining::{exhaustive_mine, mine_modes};
use episodes::oracle::{enumerate_et, oracle_frequency};
use episodes::samples::{abc_stream, abcd_stream};
use episodes::synth::{generate_synthetic, SyntheticConfig};
use episodes::{
    count, count_total, mine, parse_episode, CountRequest, Episode, EventSequence, EventType, FrequencyMode, MineConfig,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use FrequencyMode::*;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn ep(d: &EventSequence, text: &str) -> Episode {
    let mut a = d.alphabet().clone();
    parse_episode(text, &mut a).expect("valid episode")
}

fn request(d: &EventSequence, text: &str, mode: FrequencyMode, tx: Option<i64>) -> CountRequest {
    let mut req = CountRequest::new(vec![ep(d, text)], mode).with_trace();
    req.tx = tx;
    req
}

fn freq(d: &EventSequence, text: &str, mode: FrequencyMode, tx: Option<i64>) -> u64 {
    count(&request(d, text, mode, tx), d).expect("valid request").counts[0].frequency
}

fn trace(d: &EventSequence, text: &str, mode: FrequencyMode, tx: Option<i64>) -> Vec<Vec<i64>> {
    count(&request(d, text, mode, tx), d).expect("valid request").counts[0]
        .trace
        .as_ref()
        .expect("tracing on")
        .iter()
        .map(|t| t.occurrence.times().to_vec())
        .collect()
}

fn expect_eq<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    ensure(got == want, || format!("{what}: got {got:?}, want {want:?}"))
}

fn abc_regression() -> Outcome {
    let start = Instant::now();
    let d = abc_stream();
    let abc = "A->B->C";
    expect_eq("WB(5)", freq(&d, abc, Wb, Some(5)), 5)?;
    expect_eq("MO", freq(&d, abc, Mo, None), 3)?;
    let windows: Vec<_> = trace(&d, abc, Mo, None).iter().map(|t| (t[0], t[2])).collect();
    expect_eq("MO windows", windows, vec![(2, 8), (7, 12), (13, 15)])?;
    expect_eq("HD(6)", freq(&d, abc, Hd, Some(6)), 4)?;
    expect_eq("TOT(6)", count_total(&[ep(&d, abc)], &d, 6).unwrap()[0], 3)?;
    expect_eq("NO", freq(&d, abc, No, None), 2)?;
    expect_eq("NI", freq(&d, abc, Ni, None), 3)?;
    expect_eq("DO", freq(&d, abc, Do, None), 3)?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    Ok(format!("all counts exact in {took:?}"))
}

fn abcd_regression() -> Outcome {
    let d = abcd_stream();
    let abcd = "A->B->C->D";
    expect_eq("NO", freq(&d, abcd, No, None), 2)?;
    expect_eq("NO traces", trace(&d, abcd, No, None), vec![vec![1, 3, 7, 15], vec![19, 21, 25, 29]])?;
    expect_eq("NO-X(9)", freq(&d, abcd, NoX, Some(9)), 1)?;
    expect_eq("NO-X(9) traces", trace(&d, abcd, NoX, Some(9)), vec![vec![14, 17, 20, 23]])?;
    expect_eq(
        "ET set",
        enumerate_et(&ep(&d, abcd), &d).time_vectors(),
        vec![
            vec![1, 3, 7, 15],
            vec![4, 9, 11, 15],
            vec![5, 9, 11, 15],
            vec![14, 17, 20, 23],
            vec![19, 21, 25, 29],
            vec![22, 24, 25, 29],
        ],
    )?;
    expect_eq("NO-I traces", trace(&d, abcd, NoI, None), vec![vec![5, 9, 11, 15], vec![22, 24, 25, 29]])?;
    let ends: Vec<_> = trace(&d, abcd, Mo, None).iter().map(|t| t[3]).collect();
    expect_eq("MO ends", ends, vec![15, 23, 29])?;
    expect_eq(
        "NI traces",
        trace(&d, abcd, Ni, None),
        vec![vec![1, 3, 7, 15], vec![4, 9, 16, 18], vec![14, 17, 20, 23], vec![19, 21, 25, 29]],
    )?;
    expect_eq(
        "DO traces",
        trace(&d, abcd, Do, None),
        vec![vec![1, 3, 7, 15], vec![4, 9, 11, 18], vec![5, 17, 20, 23], vec![14, 21, 25, 29], vec![19, 24, 30, 31]],
    )?;
    expect_eq("HD(10)", freq(&d, abcd, Hd, Some(10)), 4)?;
    Ok("counts and traces exact".into())
}

fn wb_increments() -> Outcome {
    let d = abcd_stream();
    let abcd = "A->B->C->D";
    let report = count(&request(&d, abcd, Wb, Some(16)), &d).unwrap();
    let c = &report.counts[0];
    let incs: Vec<u64> = c.trace.as_ref().unwrap().iter().map(|t| t.increment).collect();
    expect_eq("increments", incs, vec![7, 8, 8])?;
    let brute = oracle_frequency(&ep(&d, abcd), &d, Wb, Some(16)).unwrap();
    expect_eq("WB total vs window scan", c.frequency, brute)?;
    Ok(format!("increments 7, 8, 8; total {brute} matches the window scan"))
}

fn all_occurrences() -> Outcome {
    let d = EventSequence::from_symbols("AABBCC");
    expect_eq("AO(A->B->C)", freq(&d, "A->B->C", Ao, None), 8)?;
    for sub in ["A->B", "A->C", "B->C"] {
        expect_eq(sub, freq(&d, sub, Ao, None), 4)?;
    }
    Ok("8 occurrences; each 2-node subepisode has 4".into())
}

fn inequality_chain() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let trials = 1500;
    let mut injective = 0;
    for t in 0..trials {
        let trial = random_trial(&mut rng, TrialShape::default());
        let c = chain_counts(&trial.episode, &trial.sequence).map_err(|e| format!("trial {t}: {e}"))?;
        injective += usize::from(trial.episode.is_injective());
        let v = chain_violations(&c, trial.episode.is_injective());
        ensure(v.is_empty(), || {
            format!(
                "trial {t}: {} in [{}]: {v:?}",
                trial.episode.display(trial.sequence.alphabet()),
                trial.sequence
            )
        })?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(60), || format!("took {took:?}"))?;
    Ok(format!("{trials} trials ({injective} injective), 0 violations in {took:?}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let modes: Vec<Measure> = FrequencyMode::ALL.into_iter().map(Measure::Mode).collect();
    let distinct = run_differential(61, 1000, TrialShape::default(), &modes);
    let shared_shape = TrialShape { repeated_times: true, ..TrialShape::default() };
    let shared_modes: Vec<Measure> = modes.iter().copied().filter(|m| *m != Measure::Mode(Ni)).collect();
    let shared = run_differential(62, 1000, shared_shape, &shared_modes);
    let shared_ni = run_differential(63, 1000, shared_shape, &[Measure::Mode(Ni)]);
    for (label, s) in [("distinct times", &distinct), ("shared times", &shared)] {
        ensure(s.passed(), || format!("{label}: {} mismatches, first: {}", s.mismatches.len(), s.mismatches[0]))?;
    }
    let compared = distinct.compared + shared.compared;
    let skipped = distinct.skipped + shared.skipped;
    Ok(format!(
        "{compared} comparisons, 0 mismatches, {skipped} skipped (oracle limits); \
         NI with shared times: {} of {} differ; {:?}",
        shared_ni.mismatches.len(),
        shared_ni.compared,
        start.elapsed()
    ))
}

fn lemma_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let instances = 400;
    let mut passes = vec![0usize; ALL_CHECKS.len()];
    for i in 0..instances {
        let trial = random_trial(&mut rng, TrialShape { max_events: 20, ..TrialShape::default() });
        let tx = rng.random_range(0..=trial.sequence.time_span() + 1);
        let report = check_lemma_suite(&trial.episode, &trial.sequence, Some(tx))
            .map_err(|e| format!("instance {i}: {e}"))?;
        if let Some(f) = report.failures().next() {
            return Err(format!(
                "instance {i}: {} failed on {} in [{}] tx={tx}: {:?}",
                f.name,
                trial.episode.display(trial.sequence.alphabet()),
                trial.sequence,
                f.verdict
            ));
        }
        for c in &report.checks {
            if c.verdict == Verdict::Pass {
                passes[ALL_CHECKS.iter().position(|n| *n == c.name).unwrap()] += 1;
            }
        }
    }
    let least = passes.iter().copied().min().unwrap_or(0);
    ensure(least >= 200, || format!("some check verified on only {least} instances"))?;
    Ok(format!("{} checks, each verified on >= {least} of {instances} instances", ALL_CHECKS.len()))
}

fn anti_monotonicity() -> Outcome {
    let d = EventSequence::from_symbols("ABACBDCD");
    expect_eq("MO(A->B->C->D)", freq(&d, "A->B->C->D", Mo, None), 2)?;
    expect_eq("MO(A->B->D)", freq(&d, "A->B->D", Mo, None), 1)?;
    expect_eq("MO(A->C->D)", freq(&d, "A->C->D", Mo, None), 1)?;
    let mut rng = ChaCha8Rng::seed_from_u64(88);
    let mut checked = 0;
    for t in 0..2000 {
        let shape = TrialShape { repeated_times: t % 2 == 1, ..TrialShape::default() };
        let trial = random_trial(&mut rng, shape);
        let (d, alpha) = (&trial.sequence, &trial.episode);
        if alpha.len() < 2 {
            continue;
        }
        for mode in [Mo, Ni] {
            let one = |e: &Episode| count(&CountRequest::new(vec![e.clone()], mode), d).unwrap().counts[0].frequency;
            let (f, p, s) = (one(alpha), one(&alpha.prefix().unwrap()), one(&alpha.suffix().unwrap()));
            ensure(f <= p.min(s), || {
                format!("{mode} {} in [{d}]: {f} > min({p}, {s})", alpha.display(d.alphabet()))
            })?;
            checked += 1;
        }
    }
    Ok(format!("counterexample stream exact; {checked} prefix/suffix checks hold"))
}

fn render(levels: &[LevelSet], d: &EventSequence) -> Vec<String> {
    levels
        .iter()
        .flat_map(|l| l.entries().iter().map(|(e, f)| format!("{} {f}", e.display(d.alphabet()))))
        .collect()
}

fn end_to_end_mining() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let datasets = 50;
    let mut found = 0;
    for i in 0..datasets {
        let mut cfg = SyntheticConfig::new(rng.random_range(2..=4), rng.random_range(12..=22), rng.random());
        cfg.max_gap = 3;
        let d = generate_synthetic(&cfg).unwrap();
        let tx = rng.random_range(1..=d.time_span().max(1));
        for (mode, tx) in mine_modes(tx) {
            let mut config = MineConfig::new(mode, 2, 3);
            config.tx = tx;
            let got = render(&mine(&d, &config).map_err(|e| format!("dataset {i} {mode}: {e}"))?, &d);
            let want = render(&exhaustive_mine(&d, mode, 2, tx, 3).map_err(|e| format!("dataset {i} {mode}: {e}"))?, &d);
            ensure(got == want, || format!("dataset {i} {mode} tx={tx:?}: mined {got:?}, expected {want:?}"))?;
            found += got.len();
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(120), || format!("took {took:?}"))?;
    Ok(format!("{datasets} datasets x 12 modes, {found} frequent episodes, identical in {took:?}"))
}

fn performance() -> Outcome {
    let alphabet = 20u32;
    let d = generate_synthetic(&SyntheticConfig::new(alphabet as usize, 1_000_000, 5)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let candidates: Vec<Episode> = (0..100)
        .map(|_| Episode::new((0..4).map(|_| EventType(rng.random_range(0..alphabet))).collect()))
        .collect();
    let start = Instant::now();
    let report = count(&CountRequest::new(candidates, No), &d).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(took < Duration::from_secs(5), || format!("took {took:?}"))?;
    let total: u64 = report.frequencies().iter().sum();
    Ok(format!("100 candidates over 1,000,000 events in {took:?} (sum of counts {total})"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("small stream regression", abc_regression),
        ("four-node stream regression", abcd_regression),
        ("windows-based increments", wb_increments),
        ("all-occurrence count", all_occurrences),
        ("inequality chain", inequality_chain),
        ("oracle equivalence", oracle_equivalence),
        ("lemma suite", lemma_suite),
        ("anti-monotonicity", anti_monotonicity),
        ("end-to-end mining", end_to_end_mining),
        ("performance smoke", performance),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
