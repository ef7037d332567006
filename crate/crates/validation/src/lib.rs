//! Verdict plumbing for the acceptance suite in `tests/acceptance.rs`.

use std::time::{Duration, Instant};

use rendezvous_core::analysis::CheckResult;

pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

/// Combines check results, optionally adding a wall-clock limit to the verdict.
pub fn from_checks(results: &[CheckResult], limit: Option<(Duration, Duration)>) -> Verdict {
    let mut passed = results.iter().all(|r| r.passed);
    let mut detail: Vec<String> = results.iter().map(CheckResult::line).collect();
    if let Some((elapsed, target)) = limit {
        passed &= elapsed < target;
        detail.push(format!("runtime {:.1}s (target < {}s)", elapsed.as_secs_f64(), target.as_secs()));
    }
    Verdict { passed, detail: detail.join("; ") }
}

pub fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}
