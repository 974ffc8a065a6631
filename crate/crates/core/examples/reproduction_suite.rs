//! Runs selected reproduction criteria and prints their checks.
use centra::suite::run_suite;

fn main() {
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    for report in run_suite(&only) {
        println!("{}", report.summary_line());
        for r in &report.records {
            println!(
                "    {:?} {}: {} (expected {})",
                r.status, r.id, r.computed, r.expected
            );
        }
    }
}
