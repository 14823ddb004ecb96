//! The fourteen acceptance criteria, each checked exactly and within its
//! wall-clock budget. One line per criterion is printed; the target runs
//! without the libtest harness so the lines are never captured.

use std::time::Instant;

use tate_smith::selftest::{run_criterion, CRITERIA};

const SEED: u64 = 7;

fn main() {
    let mut failed = Vec::new();
    for c in CRITERIA.iter() {
        let start = Instant::now();
        let r = run_criterion(c.id, SEED);
        let secs = start.elapsed().as_secs_f64();
        let in_budget = secs < c.budget;
        let ok = r.pass && in_budget;
        println!(
            "criterion {:>2} {:<34} {} ({:.2}s of {:.0}s){}",
            c.id,
            c.name,
            if ok { "PASS" } else { "FAIL" },
            secs,
            c.budget,
            if r.pass { String::new() } else { format!(" {}", r.detail) }
        );
        if !ok {
            failed.push(c.id);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("all {} criteria passed", CRITERIA.len());
}
