use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand};
use sbt_core::bench::{self, CSV_HEADER};
use sbt_core::oracle::{build_table_capped, exact_distance, DistanceTable, DEFAULT_TABLE_CAP, MAX_TABLE_N};
use sbt_core::search::audit_cases;
use sbt_core::solver::sbt1375;
use sbt_core::Permutation;

#[derive(Parser)]
#[command(name = "sbt", version, about = "Sorting permutations by transpositions")]
struct Cli {
    /// Worker threads for batch commands (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sort one permutation and print the transpositions used.
    Sort {
        /// One-line permutation, e.g. "4 3 2 1 8 7 6 5".
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        /// Replay the sequence and check that it sorts.
        #[arg(long)]
        verify: bool,
        /// Also compute the exact distance.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        tables: TableArgs,
    },
    /// Run the solver on every permutation of each size.
    Exhaustive {
        #[arg(long, default_value = "2..8")]
        sizes: String,
        /// Compare against exact distances.
        #[arg(long)]
        oracle: bool,
        /// Print 0 in the elapsed_ms column.
        #[arg(long)]
        zero_time: bool,
        #[command(flatten)]
        tables: TableArgs,
    },
    /// Solve seeded random permutations and report ratios against the lower bound.
    RandomBench {
        #[arg(long, default_value = "20..500:10")]
        sizes: String,
        #[arg(long, default_value_t = 1000)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        zero_time: bool,
    },
    /// Exact distances and explicit sorting sequences of the regression permutations.
    Fixtures {
        /// Seconds allowed per exact search.
        #[arg(long, default_value_t = 600)]
        timeout: u64,
    },
    /// Grow the basic configurations and check every branch.
    AuditCases {
        #[arg(long, default_value_t = 4)]
        norm_limit: usize,
        /// Only print the summary.
        #[arg(long)]
        quiet: bool,
    },
    /// Build distance tables and write them to --table-path.
    BuildTable {
        #[arg(long, default_value = "2..8")]
        sizes: String,
        #[command(flatten)]
        tables: TableArgs,
    },
}

#[derive(Args)]
struct TableArgs {
    /// Directory holding `s<n>.tdpt` distance tables.
    #[arg(long)]
    table_path: Option<PathBuf>,
    /// Allow n = 11 tables and sweeps above n = 10.
    #[arg(long)]
    allow_large: bool,
}

impl TableArgs {
    fn cap(&self) -> usize {
        if self.allow_large {
            MAX_TABLE_N
        } else {
            DEFAULT_TABLE_CAP
        }
    }

    fn file(dir: &Path, n: usize) -> PathBuf {
        dir.join(format!("s{n}.tdpt"))
    }

    /// Loads the table for `n` if present under --table-path, else builds it.
    fn table(&self, n: usize) -> sbt_core::Result<DistanceTable> {
        if let Some(dir) = &self.table_path {
            let path = Self::file(dir, n);
            if path.exists() {
                return DistanceTable::load(&path);
            }
        }
        build_table_capped(n, self.cap())
    }
}

/// Accepts `a,b,c`, `a..b` (inclusive) and `a..b:step`, or a mix of them.
fn parse_sizes(text: &str) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| format!("bad size {s:?}"));
        if let Some((lo, rest)) = part.split_once("..") {
            let (hi, step) = match rest.split_once(':') {
                Some((hi, step)) => (num(hi)?, num(step)?),
                None => (num(rest)?, 1),
            };
            if step == 0 {
                return Err("step must be positive".into());
            }
            out.extend((num(lo)?..=hi).step_by(step));
        } else {
            out.push(num(part)?);
        }
    }
    Ok(out)
}

fn parse_perm(parts: &[String]) -> sbt_core::Result<Permutation> {
    parts.join(" ").parse()
}

fn cmd_sort(perm: &[String], verify: bool, oracle: bool, tables: &TableArgs) -> Result<bool, String> {
    let pi = parse_perm(perm).map_err(|e| e.to_string())?;
    let res = sbt1375(&pi).map_err(|e| e.to_string())?;
    println!("distance {}", res.distance);
    println!("lower {}", res.lower);
    println!("upper {}", res.upper);
    for (rho, phase) in res.sequence.rho_steps.iter().zip(&res.trace) {
        println!("{rho} {phase}");
    }
    let mut ok = true;
    if verify {
        ok = res.verify(&pi);
        println!("verify {}", if ok { "ok" } else { "FAILED" });
    }
    if oracle {
        let exact = if pi.is_empty() {
            Ok(0)
        } else if pi.len() <= tables.cap() {
            tables.table(pi.len()).and_then(|t| t.get(&pi))
        } else {
            exact_distance(&pi, None, Duration::from_secs(600))
        };
        match exact {
            Ok(d) => println!("exact {d}"),
            Err(e) => println!("exact unknown ({e})"),
        }
    }
    Ok(ok)
}

fn cmd_exhaustive(sizes: &[usize], oracle: bool, zero_time: bool, tables: &TableArgs) -> Result<bool, String> {
    let cap = if tables.allow_large { 12 } else { DEFAULT_TABLE_CAP };
    if let Some(&n) = sizes.iter().find(|&&n| n < 1 || n > cap) {
        return Err(format!("exhaustive size {n} outside 1..={cap} (see --allow-large)"));
    }
    if oracle && sizes.iter().any(|&n| n > tables.cap()) {
        return Err(format!("--oracle needs a distance table; tables stop at n = {}", tables.cap()));
    }
    eprintln!("ratios against {}", if oracle { "exact distance" } else { "lower bound" });
    println!("{CSV_HEADER}");
    let mut ok = true;
    for &n in sizes {
        let table = if oracle { Some(tables.table(n).map_err(|e| e.to_string())?) } else { None };
        let rep = bench::exhaustive(n, table.as_ref(), zero_time).map_err(|e| e.to_string())?;
        println!("{}", rep.record.csv_row());
        for f in &rep.failures {
            eprintln!("violation n={n} {f}");
        }
        ok &= rep.failures.is_empty();
    }
    Ok(ok)
}

fn cmd_random(sizes: &[usize], count: usize, seed: u64, zero_time: bool) -> bool {
    eprintln!("ratios against lower bound");
    println!("{CSV_HEADER}");
    let mut ok = true;
    for &n in sizes {
        if count == 0 {
            continue;
        }
        let rep = bench::random_bench(n, count, seed, zero_time);
        println!("{}", rep.record.csv_row());
        for f in &rep.failures {
            eprintln!("violation n={n} {f}");
        }
        ok &= rep.failures.is_empty();
    }
    ok
}

fn cmd_fixtures(timeout: u64) -> bool {
    let checks = bench::fixtures(Duration::from_secs(timeout));
    for c in &checks {
        println!("{c}");
    }
    checks.iter().all(|c| c.ok)
}

fn cmd_audit(norm_limit: usize, quiet: bool) -> Result<bool, String> {
    if norm_limit < 2 {
        return Err("--norm-limit must be at least 2".into());
    }
    let start = Instant::now();
    let report = audit_cases(norm_limit).map_err(|e| e.to_string())?;
    if !quiet {
        for line in report.lines() {
            println!("{line}");
        }
    }
    let bad: Vec<String> = report.bad_small().iter().map(|(norm, kind)| format!("{kind}@{norm}")).collect();
    println!(
        "summary records={} unions={} counterexamples={} bad_small=[{}] elapsed_ms={}",
        report.records.len(),
        report.unions.len(),
        report.counterexamples(),
        bad.join(" "),
        start.elapsed().as_millis()
    );
    Ok(report.counterexamples() == 0)
}

fn cmd_build_table(sizes: &[usize], tables: &TableArgs) -> Result<bool, String> {
    let dir = tables.table_path.as_ref().ok_or("build-table needs --table-path")?;
    std::fs::create_dir_all(dir).map_err(|e| e.to_string())?;
    for &n in sizes {
        let start = Instant::now();
        let t = build_table_capped(n, tables.cap()).map_err(|e| e.to_string())?;
        let path = TableArgs::file(dir, n);
        t.save(&path).map_err(|e| e.to_string())?;
        println!("n={n} diameter={} entries={} ms={} -> {}", t.diameter(), t.len(), start.elapsed().as_millis(), path.display());
    }
    Ok(true)
}

fn run(cli: Cli) -> Result<bool, String> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global().map_err(|e| e.to_string())?;
    }
    match cli.cmd {
        Cmd::Sort { perm, verify, oracle, tables } => cmd_sort(&perm, verify, oracle, &tables),
        Cmd::Exhaustive { sizes, oracle, zero_time, tables } => {
            cmd_exhaustive(&parse_sizes(&sizes)?, oracle, zero_time, &tables)
        }
        Cmd::RandomBench { sizes, count, seed, zero_time } => Ok(cmd_random(&parse_sizes(&sizes)?, count, seed, zero_time)),
        Cmd::Fixtures { timeout } => Ok(cmd_fixtures(timeout)),
        Cmd::AuditCases { norm_limit, quiet } => cmd_audit(norm_limit, quiet),
        Cmd::BuildTable { sizes, tables } => cmd_build_table(&parse_sizes(&sizes)?, &tables),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        assert_eq!(parse_sizes("2..5").unwrap(), vec![2, 3, 4, 5]);
        assert_eq!(parse_sizes("20..50:10").unwrap(), vec![20, 30, 40, 50]);
        assert_eq!(parse_sizes("7, 9,11").unwrap(), vec![7, 9, 11]);
        assert!(parse_sizes("3..x").is_err());
        assert!(parse_sizes("1..4:0").is_err());
    }

    #[test]
    fn perm_text() {
        let p = parse_perm(&["4 3 2 1".into()]).unwrap();
        assert_eq!(p, parse_perm(&["4".into(), "3".into(), "2".into(), "1".into()]).unwrap());
        assert!(parse_perm(&["1 1".into()]).is_err());
    }
}
