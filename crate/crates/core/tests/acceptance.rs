//! One PASS/FAIL line per acceptance criterion, with its runtime limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use inproj::verify::{run_check, Status, VerifyConfig};

const CRITERIA: [(usize, &str, u64); 11] = [
    (1, "example-3.3", 1),
    (2, "g24-chain", 60),
    (3, "rnc-chain", 120),
    (4, "lb-veronese", 120),
    (5, "nonacm-depth", 10),
    (6, "mapping-cone", 180),
    (7, "thm21b-flags", 120),
    (8, "embedded-syzygies", 180),
    (9, "pei-shape", 120),
    (10, "segre-strand", 600),
    (11, "property-suite", 180),
];

fn main() -> ExitCode {
    let mut config = VerifyConfig::default();
    config.segre_budget = Duration::from_secs(600);
    let mut failed = 0;
    for (n, name, limit) in CRITERIA {
        let start = Instant::now();
        let report = run_check(name, &config).expect("known check");
        let secs = start.elapsed().as_secs_f64();
        let in_time = secs <= limit as f64;
        let tag = match (report.status, in_time) {
            (Status::Pass, true) => "PASS",
            (Status::Skipped, _) => "SKIP",
            _ => {
                failed += 1;
                "FAIL"
            }
        };
        let late = if in_time { String::new() } else { format!(" [over the {limit} s limit]") };
        println!("{tag} {n:>2} {name} ({secs:.2} s){late}: {}", report.summary);
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
