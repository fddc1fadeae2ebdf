//! Bookkeeping for the acceptance run.
//!
//! Each criterion collects named sub-checks and a wall-clock budget. A
//! criterion passes when every sub-check passes and the elapsed time stays
//! within the budget. [`Criterion::finish`] prints one `PASS`/`FAIL` line
//! followed by an indented line per sub-check.

use std::fmt::Display;
use std::time::{Duration, Instant};

/// One named comparison inside a criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    /// Short description of the quantity checked.
    pub name: String,
    /// Whether the comparison held.
    pub passed: bool,
    /// Measured value and bound, formatted for the report.
    pub detail: String,
}

/// A numbered acceptance criterion being evaluated.
#[derive(Debug)]
pub struct Criterion {
    number: usize,
    title: String,
    budget: Duration,
    start: Instant,
    checks: Vec<Check>,
}

/// Final verdict of a criterion.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    /// Criterion number.
    pub number: usize,
    /// Whether all sub-checks and the runtime budget held.
    pub passed: bool,
    /// The sub-checks in evaluation order, runtime last.
    pub checks: Vec<Check>,
}

impl Criterion {
    /// Starts the clock for criterion `number` with a runtime budget in seconds.
    pub fn start(number: usize, title: impl Into<String>, budget_s: f64) -> Self {
        Self {
            number,
            title: title.into(),
            budget: Duration::from_secs_f64(budget_s),
            start: Instant::now(),
            checks: Vec::new(),
        }
    }

    /// Records a sub-check with a free-form detail string.
    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl Display) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.to_string(),
        });
    }

    /// Records `|value − target| ≤ tol`.
    pub fn within(&mut self, name: impl Into<String>, value: f64, target: f64, tol: f64) {
        let diff = (value - target).abs();
        self.check(
            name,
            diff <= tol,
            format!("{value:.16e} vs {target:.16e}, |diff| = {diff:.3e}, tol {tol:.0e}"),
        );
    }

    /// Records `value ≤ bound`.
    pub fn at_most(&mut self, name: impl Into<String>, value: f64, bound: f64) {
        self.check(name, value <= bound, format!("{value:.6e} <= {bound:.3e}"));
    }

    /// Records a failed sub-check for an error raised during evaluation.
    pub fn error(&mut self, err: impl Display) {
        self.check("evaluation", false, format!("error: {err}"));
    }

    /// Elapsed time since [`start`](Self::start).
    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    /// Adds the runtime check, prints the report and returns the verdict.
    pub fn finish(mut self) -> Outcome {
        let elapsed = self.elapsed();
        let budget = self.budget;
        self.check(
            "runtime",
            elapsed <= budget,
            format!("{:.3} s <= {:.3} s", elapsed.as_secs_f64(), budget.as_secs_f64()),
        );
        let passed = !self.checks.is_empty() && self.checks.iter().all(|c| c.passed);
        println!(
            "criterion {:>2}: {} {}",
            self.number,
            if passed { "PASS" } else { "FAIL" },
            self.title
        );
        for c in &self.checks {
            println!(
                "    [{}] {}: {}",
                if c.passed { "ok" } else { "FAIL" },
                c.name,
                c.detail
            );
        }
        Outcome {
            number: self.number,
            passed,
            checks: self.checks,
        }
    }
}

/// Largest absolute difference between equally long slices.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "compared slices differ in length");
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// Indices `i` with `v[i] < v[i − 1]` and `v[i] < v[i + 1]`.
pub fn strict_local_minima(v: &[f64]) -> Vec<usize> {
    (1..v.len().saturating_sub(1))
        .filter(|&i| v[i] < v[i - 1] && v[i] < v[i + 1])
        .collect()
}
