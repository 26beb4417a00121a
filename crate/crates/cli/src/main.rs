mod target;

use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;
use std::sync::mpsc;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use qbailey::identities::{jobs, matching, Overrides, Schema};
use qbailey::report::format_coefficient;
use qbailey::{Params, Series, Status};

const USAGE_ERROR: u8 = 2;

#[derive(Parser)]
#[command(
    name = "qbailey",
    version,
    about = "Verify Bailey pair and mock theta double-sum identities as exact truncated q-series"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List registered identities
    List {
        /// Glob over identity ids (`*` and `?`)
        #[arg(long = "id", default_value = "*")]
        pattern: String,
        /// One JSON record per line
        #[arg(long)]
        json: bool,
    },
    /// Check identities through a given order
    Verify {
        #[arg(long = "id", default_value = "*")]
        pattern: String,
        /// Order to check through (overrides every entry's default)
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        order: Option<i64>,
        /// Largest index for per-index entries
        #[arg(long = "nmax")]
        n_max: Option<u64>,
        /// Comma separated values of k for family entries
        #[arg(long, value_delimiter = ',', value_parser = clap::value_parser!(i64).range(2..))]
        k: Option<Vec<i64>>,
        /// Worker threads (default: all cores)
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        jobs: Option<u64>,
        #[arg(long)]
        json: bool,
    },
    /// Print the coefficients of a named series
    Expand {
        /// One of: A, F2, phi, f(a,b,c,ex,ey,p), hecke(k), bilateral(k),
        /// multisum(k), <pair>.alpha(n), <pair>.beta(n), <id>.lhs, <id>.rhs,
        /// <id>(k).lhs, <id>(k).rhs
        #[arg(long)]
        target: String,
        #[arg(long, value_parser = clap::value_parser!(i64).range(0..))]
        order: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Serialize)]
struct ListRecord {
    id: &'static str,
    anchor: &'static str,
    base_den: i64,
    default_order: i64,
    defaults: Vec<Params>,
}

fn list(pattern: &str, json: bool) -> ExitCode {
    let mut out = std::io::stdout().lock();
    for e in matching(pattern) {
        if json {
            let rec = ListRecord {
                id: e.id,
                anchor: e.anchor,
                base_den: e.base_den.get(),
                default_order: e.default_order,
                defaults: e.default_params(),
            };
            let _ = writeln!(out, "{}", serde_json::to_string(&rec).expect("record serializes"));
        } else {
            let params = match e.schema {
                Schema::Plain => String::new(),
                Schema::Indexed { n_max } => format!(" n_max={n_max}"),
                Schema::Family { ks } => {
                    let ks: Vec<String> = ks.iter().map(|k| k.to_string()).collect();
                    format!(" k={}", ks.join(","))
                }
            };
            let _ = writeln!(out, "{:<14} order={}{params}\n    {}", e.id, e.default_order, e.anchor);
        }
    }
    ExitCode::SUCCESS
}

fn verify(pattern: &str, overrides: Overrides, threads: Option<u64>, json: bool) -> ExitCode {
    let work = jobs(pattern, &overrides);
    if work.is_empty() {
        eprintln!("qbailey: no identities match {pattern:?}");
        return ExitCode::from(USAGE_ERROR);
    }
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        pool = pool.num_threads(n as usize);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("qbailey: cannot start workers: {e}");
            return ExitCode::from(USAGE_ERROR);
        }
    };

    let (tx, rx) = mpsc::channel();
    let total = work.len();
    let mut counts = BTreeMap::<&str, usize>::new();
    let mut out = std::io::stdout().lock();
    std::thread::scope(|scope| {
        scope.spawn(|| {
            pool.install(|| {
                work.par_iter().enumerate().for_each_with(tx, |tx, (i, job)| {
                    let _ = tx.send((i, job.run()));
                });
            });
        });
        // Print in job order as soon as each prefix is complete.
        let mut pending = BTreeMap::new();
        let mut next = 0;
        for (i, report) in rx {
            pending.insert(i, report);
            while let Some(report) = pending.remove(&next) {
                let line = if json {
                    report.to_json_line()
                } else {
                    report.to_string()
                };
                let _ = writeln!(out, "{line}");
                let _ = out.flush();
                *counts
                    .entry(match report.status {
                        Status::Pass => "passed",
                        Status::Fail => "failed",
                        Status::Error => "errors",
                    })
                    .or_default() += 1;
                next += 1;
            }
        }
    });

    let passed = counts.get("passed").copied().unwrap_or(0);
    if !json {
        let _ = writeln!(
            out,
            "{passed}/{total} passed, {} failed, {} errors",
            counts.get("failed").copied().unwrap_or(0),
            counts.get("errors").copied().unwrap_or(0)
        );
    }
    if passed == total {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

#[derive(Serialize)]
struct DumpLine {
    exp_num: i64,
    exp_den: i64,
    coeff: String,
}

#[derive(Serialize)]
struct Dump<'a> {
    target: &'a str,
    den: i64,
    guarantee: i64,
    coefficients: Vec<DumpLine>,
}

fn dump_lines(s: &Series) -> Vec<DumpLine> {
    let den = s.den().get();
    let lo = s.min_exp().unwrap_or(0).min(0);
    (lo..=s.guarantee())
        .map(|e| DumpLine {
            exp_num: e,
            exp_den: den,
            coeff: format_coefficient(&s.coeff(e).expect("within guarantee")),
        })
        .collect()
}

fn expand(name: &str, order: i64, json: bool) -> ExitCode {
    let target = match target::parse(name) {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("qbailey: {msg}");
            return ExitCode::from(USAGE_ERROR);
        }
    };
    let series = match target.expand(order) {
        Ok(s) => s.truncate(order),
        Err(e) => {
            eprintln!("qbailey: cannot expand {name}: {e}");
            return ExitCode::from(1);
        }
    };
    let mut out = std::io::stdout().lock();
    let dump = Dump {
        target: name,
        den: series.den().get(),
        guarantee: series.guarantee(),
        coefficients: dump_lines(&series),
    };
    if json {
        let _ = writeln!(out, "{}", serde_json::to_string(&dump).expect("dump serializes"));
    } else {
        let _ = writeln!(
            out,
            "# target={} den={} guarantee={}",
            dump.target, dump.den, dump.guarantee
        );
        for l in &dump.coefficients {
            let _ = writeln!(out, "{}/{}\t{}", l.exp_num, l.exp_den, l.coeff);
        }
    }
    ExitCode::SUCCESS
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::List { pattern, json } => list(&pattern, json),
        Command::Verify {
            pattern,
            order,
            n_max,
            k,
            jobs,
            json,
        } => verify(&pattern, Overrides { order, n_max, ks: k }, jobs, json),
        Command::Expand { target, order, json } => expand(&target, order, json),
    }
}
