//! Experiment harness: exhaustive sweeps over Sn, seeded random batches of
//! long permutations, and the fixture regression suite.

use std::cmp::Ordering;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::Result;
use crate::oracle::{exact_distance, unrank, DistanceTable};
use crate::perm::{Permutation, TranspositionDesc};
use crate::search::find_32_sequence;
use crate::solver::{diameter_bound, sbt1375, SortResult};
use crate::State;

pub const CSV_HEADER: &str = "n,max_ratio,avg_ratio,avg_distance,pct_exact,elapsed_ms,seed";

/// Non-negative fraction compared by cross-multiplication.
#[derive(Clone, Copy, Debug)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        Self { num, den: den.max(1) }
    }

    pub fn one() -> Self {
        Self::new(1, 1)
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl PartialEq for Ratio {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Ratio {}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub n: usize,
    /// Against the exact distance in exhaustive mode with an oracle, against
    /// the lower bound otherwise.
    pub max_ratio: Ratio,
    pub avg_ratio: f64,
    pub avg_distance: f64,
    pub pct_exact: Option<f64>,
    pub elapsed_ms: u128,
    pub seed: Option<u64>,
}

impl BenchRecord {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{:.4},{:.4},{:.4},{},{},{}",
            self.n,
            self.max_ratio.to_f64(),
            self.avg_ratio,
            self.avg_distance,
            self.pct_exact.map(|p| format!("{p:.2}")).unwrap_or_default(),
            self.elapsed_ms,
            self.seed.map(|s| s.to_string()).unwrap_or_default(),
        )
    }
}

/// A permutation the harness rejected, with the reason.
#[derive(Clone, Debug)]
pub struct Failure {
    pub pi: Permutation,
    pub reason: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.pi, self.reason)
    }
}

#[derive(Debug, Default)]
struct Acc {
    count: u64,
    sum_ratio: f64,
    sum_distance: u64,
    exact: u64,
    max_ratio: Option<Ratio>,
    max_distance: usize,
    failures: Vec<Failure>,
}

impl Acc {
    /// Skips ι, whose ratio is undefined.
    fn add(&mut self, d: usize, reference: usize) {
        if d == 0 && reference == 0 {
            return;
        }
        let ratio = if reference == 0 { Ratio::one() } else { Ratio::new(d as u64, reference as u64) };
        self.count += 1;
        self.sum_ratio += ratio.to_f64();
        self.sum_distance += d as u64;
        self.exact += u64::from(d == reference);
        self.max_ratio = Some(self.max_ratio.map_or(ratio, |m| m.max(ratio)));
        self.max_distance = self.max_distance.max(d);
    }
}

/// Solves `pi`, replays the sequence and checks the bound sandwich.
fn checked_solve(pi: &Permutation) -> std::result::Result<SortResult, String> {
    let res = sbt1375(pi).map_err(|e| e.to_string())?;
    if !res.verify(pi) {
        return Err("sequence does not sort".into());
    }
    if res.distance < res.lower || res.distance > res.upper {
        return Err(format!("distance {} outside [{}, {}]", res.distance, res.lower, res.upper));
    }
    if res.distance > diameter_bound(pi.len()) {
        return Err(format!("distance {} above diameter bound {}", res.distance, diameter_bound(pi.len())));
    }
    Ok(res)
}

fn within_ratio(d: usize, reference: usize) -> bool {
    8 * d <= 11 * reference
}

/// Result of a full sweep of Sn.
#[derive(Clone, Debug)]
pub struct ExhaustiveReport {
    pub record: BenchRecord,
    pub max_distance: usize,
    pub failures: Vec<Failure>,
}

/// Runs the solver on every permutation of length `n`. With a table the
/// ratios are against exact distances, otherwise against the lower bound.
pub fn exhaustive(n: usize, table: Option<&DistanceTable>, zero_time: bool) -> Result<ExhaustiveReport> {
    let start = Instant::now();
    let total: usize = (1..=n).product();
    // (distance, reference) per rank, aggregated in rank order so the
    // floating-point sums do not depend on scheduling.
    let outcomes: Vec<std::result::Result<(usize, usize), String>> = (0..total)
        .into_par_iter()
        .with_min_len(256)
        .map_init(
            || vec![0u8; n],
            |buf, r| {
                unrank(r, n, buf);
                let pi = Permutation::new(buf.iter().map(|&v| v as usize).collect()).expect("unranked permutation");
                let res = checked_solve(&pi)?;
                let reference = table.map_or(res.lower, |t| t.distances()[r] as usize);
                Ok((res.distance, reference))
            },
        )
        .collect();
    let mut acc = Acc::default();
    let mut buf = vec![0u8; n];
    for (r, outcome) in outcomes.into_iter().enumerate() {
        let (d, reference) = match outcome {
            Ok(v) => v,
            Err(reason) => {
                unrank(r, n, &mut buf);
                let pi = Permutation::new(buf.iter().map(|&v| v as usize).collect()).expect("unranked permutation");
                acc.failures.push(Failure { pi, reason });
                continue;
            }
        };
        if table.is_some() && !within_ratio(d, reference) {
            unrank(r, n, &mut buf);
            let pi = Permutation::new(buf.iter().map(|&v| v as usize).collect()).expect("unranked permutation");
            acc.failures.push(Failure { pi, reason: format!("distance {d} exceeds 11/8 of exact {reference}") });
        }
        acc.add(d, reference);
    }
    let count = acc.count.max(1) as f64;
    Ok(ExhaustiveReport {
        record: BenchRecord {
            n,
            max_ratio: acc.max_ratio.unwrap_or_else(Ratio::one),
            avg_ratio: acc.sum_ratio / count,
            avg_distance: acc.sum_distance as f64 / count,
            pct_exact: table.map(|_| 100.0 * acc.exact as f64 / count),
            elapsed_ms: if zero_time { 0 } else { start.elapsed().as_millis() },
            seed: None,
        },
        max_distance: acc.max_distance,
        failures: acc.failures,
    })
}

/// Uniform permutations of length `n`, reproducible from `(seed, n)`.
pub fn random_permutations(n: usize, count: usize, seed: u64) -> Vec<Permutation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    let mut v: Vec<usize> = (1..=n).collect();
    (0..count)
        .map(|_| {
            v.shuffle(&mut rng);
            Permutation::new(v.clone()).expect("shuffled identity")
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct RandomReport {
    pub record: BenchRecord,
    /// Slowest single instance.
    pub max_instance: Duration,
    pub failures: Vec<Failure>,
}

/// Solves `count` random permutations of length `n`; ratios are against the
/// lower bound.
pub fn random_bench(n: usize, count: usize, seed: u64, zero_time: bool) -> RandomReport {
    let start = Instant::now();
    let perms = random_permutations(n, count, seed);
    let results: Vec<(std::result::Result<SortResult, String>, Duration)> = perms
        .par_iter()
        .map(|pi| {
            let t = Instant::now();
            let r = checked_solve(pi);
            (r, t.elapsed())
        })
        .collect();
    let mut acc = Acc::default();
    let mut max_instance = Duration::ZERO;
    for (pi, (res, took)) in perms.into_iter().zip(results) {
        max_instance = max_instance.max(took);
        match res {
            Ok(res) => acc.add(res.distance, res.lower),
            Err(reason) => acc.failures.push(Failure { pi, reason }),
        }
    }
    let count_f = acc.count.max(1) as f64;
    RandomReport {
        record: BenchRecord {
            n,
            max_ratio: acc.max_ratio.unwrap_or_else(Ratio::one),
            avg_ratio: if acc.count == 0 { 0.0 } else { acc.sum_ratio / count_f },
            avg_distance: if acc.count == 0 { 0.0 } else { acc.sum_distance as f64 / count_f },
            pct_exact: None,
            elapsed_ms: if zero_time { 0 } else { start.elapsed().as_millis() },
            seed: Some(seed),
        },
        max_instance,
        failures: acc.failures,
    }
}

#[derive(Clone, Debug)]
pub struct FixtureCheck {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl fmt::Display for FixtureCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.ok { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

fn perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).expect("fixture permutation")
}

fn rhos(v: &[(usize, usize, usize)]) -> Vec<TranspositionDesc> {
    v.iter().map(|&(i, j, k)| TranspositionDesc { i, j, k }).collect()
}

/// Permutations with known exact distances.
pub fn distance_fixtures() -> Vec<(Permutation, usize)> {
    vec![
        (perm(&[4, 3, 2, 1, 8, 7, 6, 5]), 4),
        (perm(&[5, 4, 3, 2, 1, 6, 11, 10, 9, 8, 7]), 6),
        (perm(&[3, 6, 2, 5, 1, 4, 10, 9, 8, 7]), 5),
        (perm(&[4, 8, 3, 7, 2, 6, 1, 5, 9, 14, 13, 12, 11, 10]), 7),
    ]
}

/// Explicit sorting sequences that must replay to ι.
pub fn replay_fixtures() -> Vec<(&'static str, Permutation, Vec<TranspositionDesc>)> {
    vec![
        ("four_step_sort", perm(&[4, 3, 2, 1, 8, 7, 6, 5]), rhos(&[(4, 6, 9), (3, 5, 8), (2, 4, 7), (1, 3, 6)])),
        (
            "five_step_sort",
            perm(&[3, 6, 2, 5, 1, 4, 10, 9, 8, 7]),
            rhos(&[(6, 8, 11), (5, 7, 10), (3, 6, 9), (2, 4, 8), (1, 3, 5)]),
        ),
        (
            "necklace5_three_two_pairs",
            perm(&[14, 13, 3, 2, 1, 6, 5, 4, 9, 8, 7, 12, 11, 10]),
            rhos(&[(1, 10, 14), (4, 6, 15), (3, 5, 14), (4, 8, 9), (2, 5, 8), (1, 3, 6), (2, 5, 9)]),
        ),
    ]
}

/// The regression suite. `timeout` bounds each exact search.
pub fn fixtures(timeout: Duration) -> Vec<FixtureCheck> {
    let mut out = Vec::new();
    for (pi, want) in distance_fixtures() {
        let got = exact_distance(&pi, None, timeout);
        let (ok, detail) = match got {
            Ok(d) => (d == want, format!("exact {d}, expected {want}")),
            Err(e) => (false, e.to_string()),
        };
        out.push(FixtureCheck { name: format!("exact [{pi}]"), ok, detail });
        let (ok, detail) = match checked_solve(&pi) {
            Ok(res) => (within_ratio(res.distance, want), format!("sorted with {} steps", res.distance)),
            Err(e) => (false, e),
        };
        out.push(FixtureCheck { name: format!("solve [{pi}]"), ok, detail });
    }
    for (name, pi, seq) in replay_fixtures() {
        let (ok, detail) = match pi.apply_all(&seq) {
            Ok(p) => (p.is_identity(), format!("{} steps end at [{p}]", seq.len())),
            Err(e) => (false, e.to_string()),
        };
        out.push(FixtureCheck { name: name.into(), ok, detail });
    }
    let necklace = perm(&[14, 13, 3, 2, 1, 6, 5, 4, 9, 8, 7, 12, 11, 10]);
    let (ok, detail) = match sort_by_three_two(&necklace) {
        Ok(steps) => {
            let sorted = necklace.apply_all(&steps).map(|p| p.is_identity()).unwrap_or(false);
            (sorted, format!("{} steps", steps.len()))
        }
        Err(e) => (false, e.to_string()),
    };
    out.push(FixtureCheck { name: "necklace5_by_three_two".into(), ok, detail });
    out
}

/// Sorts by repeated 3/2-sequences (or a lone 2-move at the end).
pub fn sort_by_three_two(pi: &Permutation) -> Result<Vec<TranspositionDesc>> {
    let mut st = State::new(pi);
    let mut steps = Vec::new();
    while !st.is_sorted() {
        let seq = find_32_sequence(&st)?;
        steps.extend(seq.rho_steps.iter().copied());
        st = seq.final_state(&st)?;
    }
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::build_table;

    #[test]
    fn ratio_ordering() {
        assert!(Ratio::new(5, 4) < Ratio::new(4, 3));
        assert_eq!(Ratio::new(2, 2).cmp(&Ratio::one()), Ordering::Equal);
        assert_eq!(Ratio::new(3, 0).den, 1);
    }

    #[test]
    fn tiny_exhaustive_rows() {
        let t = build_table(2).unwrap();
        let rep = exhaustive(2, Some(&t), true).unwrap();
        assert!(rep.failures.is_empty());
        assert_eq!(rep.record.pct_exact, Some(100.0));
        assert_eq!(rep.record.csv_row(), "2,1.0000,1.0000,1.0000,100.00,0,");
        let rep = exhaustive(4, Some(&build_table(4).unwrap()), true).unwrap();
        assert_eq!(format!("{:.4}", rep.record.avg_distance), "1.6087");
        let t6 = build_table(6).unwrap();
        let rep = exhaustive(6, Some(&t6), true).unwrap();
        assert!(rep.failures.is_empty());
        assert_eq!(rep.record.max_ratio, Ratio::one());
    }

    #[test]
    fn random_is_reproducible() {
        let a = random_permutations(30, 5, 7);
        assert_eq!(a, random_permutations(30, 5, 7));
        assert_ne!(a, random_permutations(30, 5, 8));
        assert!(random_permutations(30, 0, 7).is_empty());
        let r = random_bench(20, 10, 3, true);
        assert!(r.failures.is_empty());
        assert_eq!(r.record.csv_row(), random_bench(20, 10, 3, true).record.csv_row());
    }

    #[test]
    fn replay_fixtures_sort() {
        for (name, pi, seq) in replay_fixtures() {
            assert!(pi.apply_all(&seq).unwrap().is_identity(), "{name}");
        }
    }
}
