//! Run the randomized self-check suites programmatically. Each suite draws
//! its cases from a seeded generator, so a failure is reproducible from
//! the (suite, seed, case) triple it reports.

use qstack::verify::{run_suite, SUITES};

fn main() {
    println!("available suites: {}", SUITES.join(", "));
    for result in run_suite("all", 50, 2024).unwrap() {
        if result.passed() {
            println!("{:28} ok  ({} cases)", result.name, result.cases);
        } else {
            println!("{:28} FAILED", result.name);
            for f in &result.failures {
                println!("    {f}");
            }
        }
    }
}
