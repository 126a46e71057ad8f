//! The eight acceptance criteria, one line each. Criteria 1 to 7 run through
//! the library; criterion 8 runs the built binary end to end.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use burncat::verify;

const SEED: u64 = 0;
const VERIFY_LIMIT: Duration = Duration::from_secs(300);

fn main() -> ExitCode {
    let mut all = true;
    for id in 1..=verify::CRITERIA.len() {
        let r = verify::run_criterion(id, SEED);
        let limit = r.limit_ms.map(|l| format!(" (limit {l} ms)")).unwrap_or_default();
        println!(
            "criterion {id}: {} {} in {} ms{limit}: {}",
            if r.passed { "PASS" } else { "FAIL" },
            r.name,
            r.elapsed_ms,
            r.detail
        );
        all &= r.passed;
    }

    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_burncat"))
        .args(["verify", "--seed", &SEED.to_string()])
        .output()
        .expect("the burncat binary runs");
    let elapsed = start.elapsed();
    let passed = out.status.code() == Some(0) && elapsed < VERIFY_LIMIT;
    println!(
        "criterion 8: {} `burncat verify --seed {SEED}` exited with {:?} in {} ms (limit {} ms)",
        if passed { "PASS" } else { "FAIL" },
        out.status.code(),
        elapsed.as_millis(),
        VERIFY_LIMIT.as_millis()
    );
    if !passed {
        println!("{}", String::from_utf8_lossy(&out.stdout));
    }
    all &= passed;

    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
