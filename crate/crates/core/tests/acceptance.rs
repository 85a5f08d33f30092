//! Acceptance suite: one test per criterion, each printing a single
//! `criterion N: PASS|FAIL ...` line before asserting.

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use sbt_core::bench::{distance_fixtures, exhaustive, random_bench, replay_fixtures, Ratio};
use sbt_core::cycle_graph::correspondence_check;
use sbt_core::oracle::{build_table, exact_distance, unrank, DistanceTable};
use sbt_core::search::audit_cases;
use sbt_core::solver::{f, sbt1375};
use sbt_core::structures::ComponentKind;
use sbt_core::Permutation;

const SEED: u64 = 2024;
const APPROX: Ratio = Ratio { num: 11, den: 8 };
const EXPECTED_DIAMETERS: [usize; 8] = [1, 2, 3, 3, 4, 5, 6, 6];
const PCT_EXACT_FLOOR_N8: f64 = 85.0;
const MAX_SECS_SIZE_500: f64 = 2.0;
const CRIT1_BUDGET: Duration = Duration::from_secs(300);
const TABLE9_BUDGET: Duration = Duration::from_secs(600);
const AUDIT_BUDGET: Duration = Duration::from_secs(600);
const BENCH_500_BUDGET: Duration = Duration::from_secs(3600);

fn report(n: u32, ok: bool, detail: impl std::fmt::Display) {
    println!("criterion {n}: {} {detail}", if ok { "PASS" } else { "FAIL" });
}

fn tables() -> &'static Vec<DistanceTable> {
    static T: OnceLock<Vec<DistanceTable>> = OnceLock::new();
    T.get_or_init(|| (1..=9).map(|n| build_table(n).unwrap()).collect())
}

fn table(n: usize) -> &'static DistanceTable {
    &tables()[n - 1]
}

fn each_perm(n: usize, mut f: impl FnMut(usize, Permutation)) {
    let total: usize = (1..=n).product();
    let mut buf = vec![0u8; n];
    for r in 0..total {
        unrank(r, n, &mut buf);
        f(r, Permutation::new(buf.iter().map(|&v| v as usize).collect()).unwrap());
    }
}

#[test]
fn criterion_01_exhaustive_correctness() {
    let start = Instant::now();
    let mut violations = Vec::new();
    let mut count = 0usize;
    for n in 1..=8 {
        let t = table(n);
        each_perm(n, |r, pi| {
            count += 1;
            let exact = t.distances()[r] as usize;
            match sbt1375(&pi) {
                Ok(res) if res.verify(&pi) && 8 * res.distance <= 11 * exact => {}
                Ok(res) => violations.push(format!("{pi}: {} vs exact {exact}", res.distance)),
                Err(e) => violations.push(format!("{pi}: {e}")),
            }
        });
    }
    let took = start.elapsed();
    let ok = violations.is_empty() && took < CRIT1_BUDGET;
    report(1, ok, format!("{count} permutations, {} violations, {:.1}s", violations.len(), took.as_secs_f64()));
    assert!(violations.is_empty(), "{:?}", &violations[..violations.len().min(10)]);
    assert!(took < CRIT1_BUDGET);
}

#[test]
fn criterion_02_table_diameters() {
    let start = Instant::now();
    let t9 = build_table(9).unwrap();
    let took9 = start.elapsed();
    let got: Vec<usize> = (2..=8).map(|n| table(n).diameter()).chain([t9.diameter()]).collect();
    let ok = got == EXPECTED_DIAMETERS && took9 < TABLE9_BUDGET;
    report(
        2,
        ok,
        format!("diameters n=2..9 {got:?}, expected {EXPECTED_DIAMETERS:?}, n=9 table {:.1}s", took9.as_secs_f64()),
    );
    assert!(took9 < TABLE9_BUDGET);
    assert_eq!(got, EXPECTED_DIAMETERS);
}

#[test]
fn criterion_03_max_ratios() {
    let mut parts = Vec::new();
    let mut ok = true;
    for n in 7..=9 {
        let rep = exhaustive(n, Some(table(n)), true).unwrap();
        ok &= rep.failures.is_empty() && rep.record.max_ratio <= APPROX;
        parts.push(format!("n={n} max {} ({:.4}) max output {}", rep.record.max_ratio, rep.record.max_ratio.to_f64(), rep.max_distance));
    }
    report(3, ok, parts.join(", "));
    assert!(ok);
}

#[test]
fn criterion_04_exact_percentage() {
    let rep = exhaustive(8, Some(table(8)), true).unwrap();
    let pct = rep.record.pct_exact.unwrap();
    let ok = pct >= PCT_EXACT_FLOOR_N8;
    report(4, ok, format!("n=8 exact {pct:.2}% (floor {PCT_EXACT_FLOOR_N8}%)"));
    assert!(ok);
}

#[test]
fn criterion_05_counterexample_fixtures() {
    let mut got = Vec::new();
    for (pi, _) in distance_fixtures() {
        got.push(exact_distance(&pi, None, Duration::from_secs(600)).unwrap());
    }
    let want: Vec<usize> = distance_fixtures().iter().map(|(_, d)| *d).collect();
    let gap = got[1] as i64 - got[0] as i64;
    let replays = replay_fixtures().iter().all(|(_, pi, seq)| pi.apply_all(seq).unwrap().is_identity());
    let ok = got == want && gap == 2 && replays;
    report(5, ok, format!("exact {got:?}, simplification gap {gap}, replays {}", if replays { "ok" } else { "broken" }));
    assert_eq!(got, want);
    assert_eq!(gap, 2);
    assert!(replays);
}

#[test]
fn criterion_06_bound_sandwich() {
    let mut failures = 0;
    for n in 1..=8 {
        failures += exhaustive(n, None, true).unwrap().failures.len();
    }
    let mut slowest = Duration::ZERO;
    for n in [20, 50, 100, 200, 500] {
        let rep = random_bench(n, 1000, SEED, true);
        failures += rep.failures.len();
        if n == 500 {
            slowest = rep.max_instance;
        }
    }
    let ok = failures == 0 && slowest.as_secs_f64() < MAX_SECS_SIZE_500;
    report(6, ok, format!("{failures} violations, slowest size-500 instance {:.3}s", slowest.as_secs_f64()));
    assert_eq!(failures, 0);
    assert!(slowest.as_secs_f64() < MAX_SECS_SIZE_500);
}

#[test]
fn criterion_07_ratio_table() {
    let bad: Vec<usize> = (0..=200usize)
        .filter(|&m| 8 * (f(m) + 2) > 11 * (m + 2) || 8 * f(m) > 11 * (m + 1))
        .collect();
    report(7, bad.is_empty(), format!("m = 0..200, {} violations", bad.len()));
    assert!(bad.is_empty(), "{bad:?}");
}

#[test]
fn criterion_08_correspondence() {
    let mut bad = 0;
    each_perm(7, |_, pi| bad += usize::from(!correspondence_check(&pi)));
    for pi in sbt_core::bench::random_permutations(500, 1000, SEED) {
        bad += usize::from(!correspondence_check(&pi));
    }
    report(8, bad == 0, format!("S7 + 1000 random of size 500, {bad} violations"));
    assert_eq!(bad, 0);
}

#[test]
fn criterion_09_case_audit() {
    let start = Instant::now();
    let rep = audit_cases(4).unwrap();
    let took = start.elapsed();
    let kinds: BTreeSet<(usize, ComponentKind)> = rep.bad_small().into_iter().collect();
    let want: BTreeSet<(usize, ComponentKind)> = [
        (2, ComponentKind::BadOriented5Cycle),
        (2, ComponentKind::UnorientedInterleavingPair),
        (4, ComponentKind::Necklace4),
        (4, ComponentKind::TwistedNecklace4),
    ]
    .into_iter()
    .collect();
    let ok = rep.counterexamples() == 0 && kinds == want && took < AUDIT_BUDGET;
    let names: Vec<String> = kinds.iter().map(|(n, k)| format!("{k}@{n}")).collect();
    report(
        9,
        ok,
        format!(
            "{} configurations, {} counterexamples, bad small [{}], {:.1}s",
            rep.records.len(),
            rep.counterexamples(),
            names.join(" "),
            took.as_secs_f64()
        ),
    );
    assert_eq!(rep.counterexamples(), 0);
    assert_eq!(kinds, want);
    assert!(took < AUDIT_BUDGET);
}

#[test]
fn criterion_10_long_permutation_throughput() {
    let start = Instant::now();
    let mut failures = 0;
    let mut size_500 = Duration::ZERO;
    let mut worst = Ratio::one();
    for n in (20..=500).step_by(10) {
        let t = Instant::now();
        let rep = random_bench(n, 1000, SEED, true);
        failures += rep.failures.len();
        worst = worst.max(rep.record.max_ratio);
        if n == 500 {
            size_500 = t.elapsed();
        }
    }
    let ok = failures == 0 && size_500 < BENCH_500_BUDGET;
    report(
        10,
        ok,
        format!(
            "49 sizes x 1000, {failures} failures, worst ratio vs lower bound {:.4}, size 500 {:.1}s, total {:.1}s",
            worst.to_f64(),
            size_500.as_secs_f64(),
            start.elapsed().as_secs_f64()
        ),
    );
    assert_eq!(failures, 0);
    assert!(size_500 < BENCH_500_BUDGET);
}
