//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::time::{Duration, Instant};

use clap::Parser;

use chtube_cli::commands::{execute, Cli};
use chtube_cli::report::{self, Format};
use chtube_cli::suites::{run_part, Check};

const SEED: u64 = 42;

struct Criterion {
    id: u32,
    title: &'static str,
    parts: &'static [(&'static str, &'static str)],
    limit: Duration,
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "metric: symmetry, triangle slack, restriction to Poincare",
        parts: &[("metric", "bergman"), ("metric", "restriction")],
        limit: Duration::from_secs(10),
    },
    Criterion {
        id: 2,
        title: "projection: sampled radius = s(d), s(s(d)) = d",
        parts: &[("projection", "radius"), ("projection", "involution")],
        limit: Duration::from_secs(30),
    },
    Criterion {
        id: 3,
        title: "holonomy: N identity, disjointness, r* threshold, angle bound",
        parts: &[("holonomy", "displacement"), ("holonomy", "trivial_threshold"), ("holonomy", "angle")],
        limit: Duration::from_secs(60),
    },
    Criterion {
        id: 4,
        title: "volume: Monte Carlo wedge at 1e7, half-disc area",
        parts: &[("volume", "monte_carlo"), ("volume", "closed_forms")],
        limit: Duration::from_secs(300),
    },
    Criterion {
        id: 5,
        title: "bound calculators: golden values, chi vs area forms",
        parts: &[("tubes", "golden"), ("tubes", "forms")],
        limit: Duration::from_secs(1),
    },
    Criterion {
        id: 6,
        title: "tube function asymptotics at |chi| = 1e6",
        parts: &[("tubes", "asymptotics")],
        limit: Duration::from_secs(1),
    },
    Criterion {
        id: 7,
        title: "combination: margin 0.1, ping-pong, distance realized, control fails",
        parts: &[("groups", "combination")],
        limit: Duration::from_secs(120),
    },
    Criterion {
        id: 8,
        title: "surface group: commutator relation, injectivity radius",
        parts: &[("groups", "surface_group")],
        limit: Duration::from_secs(30),
    },
    Criterion {
        id: 9,
        title: "Schottky: axis gap decreasing, fixed lengths",
        parts: &[("groups", "schottky")],
        limit: Duration::from_secs(30),
    },
];

fn describe(c: &Check) -> String {
    let rel = if c.relation == chtube_cli::suites::Relation::AtMost { "<=" } else { ">=" };
    format!("{} {:e} {rel} {:e}", c.name, c.worst, c.bound)
}

fn run(c: &Criterion) -> (bool, String) {
    let start = Instant::now();
    let mut checks = Vec::new();
    for (suite, part) in c.parts {
        checks.extend(run_part(suite, part, SEED).unwrap_or_else(|| panic!("no part {suite}.{part}")));
    }
    let elapsed = start.elapsed();
    let failed: Vec<String> = checks.iter().filter(|c| !c.passed).map(describe).collect();
    let in_time = elapsed < c.limit;
    let detail =
        if failed.is_empty() { format!("{} checks", checks.len()) } else { format!("failed: {}", failed.join("; ")) };
    let timing = format!("{:.2}s {} {}s", elapsed.as_secs_f64(), if in_time { "<" } else { ">=" }, c.limit.as_secs());
    (failed.is_empty() && in_time, format!("{detail} [{timing}]"))
}

/// JSON of `chtube verify --suite all --seed 42` on a pool of `threads`
/// workers, with the wall-clock field removed.
fn verify_all(threads: usize) -> String {
    let cli = Cli::parse_from(["chtube", "verify", "--suite", "all", "--seed", "42", "--format", "json"]);
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().expect("thread pool");
    let r = pool.install(|| execute(&cli)).expect("verify runs");
    let mut buf = Vec::new();
    report::write(&r, Format::Json, &mut buf).expect("write report");
    let text = String::from_utf8(buf).expect("utf-8 report");
    text.lines().filter(|l| !l.trim_start().starts_with("\"wall_clock_seconds\"")).collect::<Vec<_>>().join("\n")
}

fn determinism() -> (bool, String) {
    let runs = [verify_all(1), verify_all(1), verify_all(4)];
    let same_run = runs[0] == runs[1];
    let same_threads = runs[0] == runs[2];
    let nonempty = runs[0].contains("\"suites\"");
    (
        same_run && same_threads && nonempty,
        format!("repeat identical: {same_run}, 1 vs 4 threads identical: {same_threads}, {} bytes", runs[0].len()),
    )
}

fn main() {
    let mut all = true;
    for c in CRITERIA {
        let (ok, detail) = run(c);
        all &= ok;
        println!("criterion {:>2} {}: {} -- {detail}", c.id, if ok { "PASS" } else { "FAIL" }, c.title);
    }
    let (ok, detail) = determinism();
    all &= ok;
    println!(
        "criterion 10 {}: determinism of verify --suite all --seed 42 -- {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    if !all {
        std::process::exit(1);
    }
}
