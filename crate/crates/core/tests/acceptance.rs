use std::process::ExitCode;
use std::time::Instant;

use nccr_core::acceptance::{run, CRITERIA};

fn main() -> ExitCode {
    let mut failed = 0;
    for id in 1..=CRITERIA {
        let start = Instant::now();
        let c = run(id).expect("criterion id in range");
        let status = if c.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {:>2} {status} {} ({:.1}s): {}",
            c.id,
            c.title,
            start.elapsed().as_secs_f64(),
            c.detail
        );
        if !c.pass {
            failed += 1;
        }
    }
    println!("{} of {CRITERIA} criteria passed", CRITERIA - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
