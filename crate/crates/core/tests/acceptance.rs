//! Acceptance criteria, one line each. Runs without the libtest harness so
//! every PASS/FAIL line is printed; exits non-zero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use optseq::arith::is_prime;
use optseq::construct_u::{HypothesisCheck, Regime};
use optseq::correlation::{self, oracle, Symmetry};
use optseq::generators::{self, legendre, LegendreKind, TwinPrimeSpec};
use optseq::interleave::{self, InterleavedSpec};
use optseq::verify::{self, Target};
use optseq::BinarySequence;

struct Outcome {
    ok: bool,
    detail: String,
}

impl Outcome {
    fn new(ok: bool, detail: impl Into<String>) -> Self {
        Outcome {
            ok,
            detail: detail.into(),
        }
    }
}

fn odd_primes_to(limit: u64) -> Vec<u64> {
    (3..=limit).filter(|&p| is_prime(p)).collect()
}

fn k1_embedding(s: &BinarySequence) -> InterleavedSpec {
    InterleavedSpec::new(
        (0..s.period())
            .map(|t| BinarySequence::from_bits(&[s.bit(t as i64)]).unwrap())
            .collect(),
    )
    .unwrap()
}

fn random_column(rng: &mut ChaCha8Rng, k: usize) -> BinarySequence {
    BinarySequence::from_fn(k, |_| rng.gen_bool(0.5))
}

/// Out-of-phase values expected from the Legendre table: ideal for
/// `p = 3 mod 4`; otherwise `l` has 1 on residues and -3 on non-residues and
/// `l'` the reverse.
fn legendre_table(p: u64, kind: LegendreKind, tau: u64) -> i64 {
    if tau == 0 {
        return p as i64;
    }
    if p % 4 == 3 {
        return -1;
    }
    let residue = (1..p).any(|x| x * x % p == tau);
    match (kind, residue) {
        (LegendreKind::First, true) | (LegendreKind::Second, false) => 1,
        _ => -3,
    }
}

fn criterion1() -> Outcome {
    let mut bad = Vec::new();
    let mut swapped = true;
    for p in odd_primes_to(101) {
        for kind in [LegendreKind::First, LegendreKind::Second] {
            let spectrum = oracle::autocorrelation_spectrum(&legendre(p, kind).unwrap());
            let packed = correlation::autocorrelation_spectrum(&legendre(p, kind).unwrap());
            assert_eq!(spectrum, packed);
            let matches = (0..p).all(|tau| spectrum.values[tau as usize] == legendre_table(p, kind, tau));
            if !matches {
                bad.push(format!("{p}/{kind:?}"));
                let other = match kind {
                    LegendreKind::First => LegendreKind::Second,
                    LegendreKind::Second => LegendreKind::First,
                };
                swapped &= (0..p).all(|tau| spectrum.values[tau as usize] == legendre_table(p, other, tau));
            }
        }
    }
    if bad.is_empty() {
        Outcome::new(true, "all odd primes <= 101, both kinds")
    } else {
        Outcome::new(
            false,
            format!(
                "{} (prime, kind) pairs differ from the table: {}{}",
                bad.len(),
                bad.join(" "),
                if swapped {
                    "; each matches the other kind's row"
                } else {
                    ""
                }
            ),
        )
    }
}

fn criterion2() -> Outcome {
    let mut bad = Vec::new();
    for p in odd_primes_to(101) {
        for kind in [LegendreKind::First, LegendreKind::Second] {
            let got = correlation::symmetry_type(&legendre(p, kind).unwrap());
            let want = if p % 4 == 1 {
                Symmetry::Symmetric
            } else {
                Symmetry::Antisymmetric
            };
            if got != want {
                bad.push(format!("{p}/{kind:?}: {got:?}"));
            }
        }
    }
    Outcome::new(bad.is_empty(), format!("mismatches: {bad:?}"))
}

fn criterion3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let pairs: Vec<(usize, usize)> = (1..=100)
        .flat_map(|k| (2..=200 / k).map(move |t| (k, t)))
        .collect();
    let mut rows = 0;
    let mut mismatches = 0;
    for _ in 0..500 {
        let (k, t) = pairs[rng.gen_range(0..pairs.len())];
        let spec = InterleavedSpec::new((0..t).map(|_| random_column(&mut rng, k)).collect()).unwrap();
        for report in [verify::verify_theorem1(&spec), verify::verify_theorem2(&spec)] {
            rows += report.rows().count();
            mismatches += report.mismatches;
        }
    }
    Outcome::new(
        mismatches == 0,
        format!("500 specs, KT <= 200: {rows} rows compared, {mismatches} mismatches"),
    )
}

fn criterion4() -> Outcome {
    let mut problems = Vec::new();
    let mut summary = Vec::new();
    for p in [3u64, 5, 11, 17] {
        let tp = TwinPrimeSpec::new(p).unwrap();
        let spec_t = tp.array(false).unwrap();
        let balances = spec_t.balances();
        if balances[1..].iter().any(|&d| d != 1) {
            problems.push(format!("p={p}: balances {balances:?}"));
        }
        let t = interleave::build(&spec_t);
        let t_mod = interleave::build(&tp.array(true).unwrap());
        if !correlation::classify_sequence(&t).is_ideal() {
            problems.push(format!("p={p}: t not ideal"));
        }
        let auto = oracle::autocorrelation_spectrum(&t_mod);
        let tt = oracle::cross_correlation_spectrum(&t, &t_mod).unwrap();
        let tpt = oracle::cross_correlation_spectrum(&t_mod, &t).unwrap();
        if auto.levels() != 3 {
            problems.push(format!("p={p}: t' levels {:?}", auto.value_set()));
        }
        if tt.values != tpt.values || tt.value_set().len() != 3 {
            problems.push(format!("p={p}: cross values {:?}", tt.value_set()));
        }
        summary.push(format!("p={p} R_t' {:?} R_tt' {:?}", auto.value_set(), tt.value_set()));
    }
    Outcome::new(
        problems.is_empty(),
        if problems.is_empty() {
            summary.join("; ")
        } else {
            problems.join("; ")
        },
    )
}

/// Odd `K`, odd `T` with `d(a_{T-x}) = -d(a_x)`: column `T-x` is a rotated
/// complement of column `x`.
fn random_antisymmetric_spec(rng: &mut ChaCha8Rng, max_period: usize) -> InterleavedSpec {
    loop {
        let k = 2 * rng.gen_range(0..8) + 1;
        let t = 2 * rng.gen_range(1..8) + 1;
        if k * t > max_period {
            continue;
        }
        let mut cols = vec![BinarySequence::zeros(k); t];
        for x in 1..=t / 2 {
            cols[x] = random_column(rng, k);
            cols[t - x] = cols[x].complement().shift_left(rng.gen_range(0..k) as i64);
        }
        return InterleavedSpec::new(cols).unwrap();
    }
}

fn criterion5() -> Outcome {
    let mut mismatches = 0;
    let mut instances = 0;
    let mut readings = BTreeSet::new();
    let mut unreported = 0;
    let ms15 = generators::m_sequence_array(4, None).unwrap();
    for eta in 0..=15 {
        let r = verify::verify_theorem3(&ms15, eta, Regime::ConstantBalance { c1: 1 }, HypothesisCheck::Strict)
            .unwrap();
        mismatches += r.mismatches;
        instances += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..12 {
        let spec = random_antisymmetric_spec(&mut rng, 105);
        for eta in 0..=15 {
            let r = verify::verify_theorem3(&spec, eta, Regime::AntisymmetricBalance, HypothesisCheck::Strict)
                .unwrap();
            mismatches += r.mismatches;
            instances += 1;
            match r.experiments.iter().find(|e| e.row == "mu2=1") {
                Some(e) => {
                    readings.insert(format!("mu2=1 matching {:?}", e.matching));
                }
                None => unreported += 1,
            }
            if let Some(e) = r.experiments.iter().find(|e| e.row == "mu2=3") {
                readings.insert(format!("mu2=3 matching {:?}", e.matching));
            }
        }
    }
    Outcome::new(
        mismatches == 0 && unreported == 0,
        format!(
            "{instances} (spec, eta) instances, {mismatches} mismatches; readings seen: {}",
            readings.into_iter().collect::<Vec<_>>().join(", ")
        ),
    )
}

fn criterion6_forward() -> Outcome {
    let mut failures = Vec::new();
    let mut out_of_phase = BTreeSet::new();
    let mut instances = vec![(generators::m_sequence_array(4, None).unwrap(), 1u8)];
    for p in [7u64, 11, 19] {
        instances.push((k1_embedding(&legendre(p, LegendreKind::Second).unwrap()), 2));
    }
    for (spec, condition) in &instances {
        if verify::satisfied_conditions(spec) != vec![*condition] {
            failures.push(format!("KT={}: condition {condition} not satisfied", spec.period()));
            continue;
        }
        for eta in 0..spec.period() as i64 {
            let r = verify::verify_theorem4(spec, eta, Some(*condition)).unwrap();
            let values = &r.series[0].observed;
            out_of_phase.extend(values[1..].iter().copied());
            if !r.passed() || !values[1..].iter().all(|v| [0, -4, 4].contains(v)) {
                failures.push(format!("KT={} eta={eta}: {} mismatches", spec.period(), r.mismatches));
            }
        }
    }
    Outcome::new(
        failures.is_empty(),
        format!(
            "m-sequence 15 (condition 1), Legendre 7/11/19 (condition 2), every eta; out-of-phase {out_of_phase:?}; failures {failures:?}"
        ),
    )
}

fn criterion6_reverse() -> Outcome {
    let report = verify::theorem4_reverse_sample(
        verify::DEFAULT_REVERSE_SAMPLES,
        verify::DEFAULT_REVERSE_SEED,
        verify::DEFAULT_REVERSE_MAX_PERIOD,
    )
    .unwrap();
    let examples: Vec<String> = report
        .samples
        .iter()
        .filter(|s| s.is_counterexample())
        .take(5)
        .map(|s| {
            format!(
                "K={} T={} eta={} columns {:?} -> {:?} {:?}",
                s.k, s.t, s.eta, s.columns, s.verdict, s.out_of_phase
            )
        })
        .collect();
    Outcome::new(
        report.passed(),
        format!(
            "{} samples (seed {}, KT <= {}), {} classify optimal; {}",
            report.samples.len(),
            report.seed,
            report.max_period,
            report.counterexamples,
            examples.join("; ")
        ),
    )
}

fn criterion7() -> Outcome {
    let mut problems = Vec::new();
    let n7 = verify::exhaustive_search(7, Target::Ideal, None, true).unwrap();
    let n15 = verify::exhaustive_search(15, Target::Ideal, None, true).unwrap();
    let n5 = verify::exhaustive_search(5, Target::Ideal, None, true).unwrap();
    for kind in [LegendreKind::First, LegendreKind::Second] {
        if !n7.contains(&legendre(7, kind).unwrap()) {
            problems.push(format!("N=7 missing Legendre {kind:?}"));
        }
    }
    if !n15.contains(&generators::m_sequence(4, None).unwrap()) {
        problems.push("N=15 missing m-sequence".to_string());
    }
    if !n15.contains(&generators::twin_prime(3, false).unwrap()) {
        problems.push("N=15 missing twin-prime".to_string());
    }
    if n5.count != 0 {
        problems.push(format!("N=5 has {} ideal classes", n5.count));
    }
    let disagreements: usize = [&n7, &n15, &n5]
        .iter()
        .map(|r| r.oracle_disagreements.unwrap())
        .sum();
    if disagreements != 0 {
        problems.push(format!("{disagreements} kernel/oracle disagreements"));
    }
    for r in [&n7, &n15] {
        if r.representatives.iter().any(|x| x.balance.abs() != 1) {
            problems.push(format!("N={}: unbalanced ideal representative", r.period));
        }
    }
    Outcome::new(
        problems.is_empty(),
        format!(
            "ideal classes N=7: {}, N=15: {}, N=5: {}; {} necklaces cross-checked; {problems:?}",
            n7.count,
            n15.count,
            n5.count,
            n7.necklaces_examined + n15.necklaces_examined + n5.necklaces_examined
        ),
    )
}

fn criterion8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let s = BinarySequence::from_fn(4095, |_| rng.gen_bool(0.5));
    let start = Instant::now();
    let spectrum = correlation::autocorrelation_spectrum(&s);
    let elapsed = start.elapsed();
    let m12 = generators::m_sequence(12, None).unwrap();
    let ideal = correlation::classify_sequence(&m12).is_ideal();
    let mut bad = 0;
    for _ in 0..100 {
        let tau = rng.gen_range(0..4095i64);
        if oracle::cross_correlation(&s, &s, tau).unwrap() != spectrum.values[tau as usize] {
            bad += 1;
        }
    }
    Outcome::new(
        elapsed < Duration::from_secs(1) && bad == 0 && ideal,
        format!("kernel spectrum {elapsed:?}; {bad} of 100 sampled shifts differ from the oracle; degree-12 m-sequence ideal: {ideal}"),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 9] = [
        ("1 legendre spectra", criterion1, Duration::from_secs(1)),
        ("2 symmetry law", criterion2, Duration::from_secs(1)),
        ("3 theorems 1-2", criterion3, Duration::from_secs(30)),
        ("4 twin-prime", criterion4, Duration::from_secs(10)),
        ("5 theorem 3 sweep", criterion5, Duration::from_secs(60)),
        ("6 theorem 4 forward", criterion6_forward, Duration::from_secs(60)),
        ("6 theorem 4 converse", criterion6_reverse, Duration::from_secs(60)),
        ("7 search closure", criterion7, Duration::from_secs(120)),
        ("8 kernel 4095", criterion8, Duration::from_secs(1)),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = 0;
    for (name, run, limit) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let ok = outcome.ok && elapsed <= limit;
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {name}: {} ({:.2?} of {limit:?}) {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed,
            outcome.detail
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
