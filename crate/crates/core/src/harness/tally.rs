use crate::mc::MCEstimate;

/// Result of one check, summarized by its worst sub-check.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub passed: bool,
    pub observed: f64,
    pub expected: f64,
    pub tolerance: f64,
    pub stderr: f64,
    pub n: u64,
    pub detail: String,
}

/// Relative floor added to statistical tolerances so that two exact values
/// agreeing to rounding error are not reported as infinitely many σ apart.
pub const FLOAT_FLOOR: f64 = 1e-10;

#[derive(Debug)]
struct Worst {
    label: String,
    observed: f64,
    expected: f64,
    tolerance: f64,
    stderr: f64,
    passed: bool,
    badness: f64,
}

/// Accumulates sub-checks and keeps the one closest to (or furthest past)
/// its tolerance.
#[derive(Debug, Default)]
pub struct Tally {
    worst: Option<Worst>,
    count: usize,
    failures: usize,
    retries: usize,
    n: u64,
}

impl Tally {
    /// Records `observed` against `expected`, passing iff `ok`.
    pub fn push(&mut self, label: impl Into<String>, observed: f64, expected: f64, tolerance: f64, stderr: f64, n: u64, ok: bool) {
        let gap = (observed - expected).abs();
        let badness = match (ok, tolerance > 0.0) {
            (false, _) => f64::INFINITY,
            (true, true) => gap / tolerance,
            (true, false) => 0.0,
        };
        self.count += 1;
        self.n += n;
        if !ok {
            self.failures += 1;
        }
        if self.worst.as_ref().is_none_or(|w| badness > w.badness || (!ok && w.passed)) {
            self.worst = Some(Worst { label: label.into(), observed, expected, tolerance, stderr, passed: ok, badness });
        }
    }

    /// Exact comparison of two values that were computed exactly.
    pub fn push_exact(&mut self, label: impl Into<String>, observed: f64, expected: f64, equal: bool) {
        self.push(label, observed, expected, 0.0, 0.0, 1, equal);
    }

    /// `|observed − expected| ≤ tol`.
    pub fn push_close(&mut self, label: impl Into<String>, observed: f64, expected: f64, tol: f64) {
        let ok = (observed - expected).abs() <= tol;
        self.push(label, observed, expected, tol, 0.0, 1, ok);
    }

    /// Statistical agreement of two estimates within `sigma` combined
    /// standard errors (plus [`FLOAT_FLOOR`]); returns whether it held.
    pub fn push_estimates(&mut self, label: impl Into<String>, a: &MCEstimate, b: &MCEstimate, sigma: f64) -> bool {
        let (tol, ok) = agreement(a, b, sigma);
        let stderr = a.stderr.hypot(b.stderr);
        self.push(label, a.mean, b.mean, tol, stderr, a.n.max(b.n), ok);
        ok
    }

    pub fn note_retry(&mut self) {
        self.retries += 1;
    }

    pub fn outcome(self, what: &str) -> Outcome {
        let Some(w) = self.worst else {
            return Outcome { passed: false, detail: format!("{what}: no sub-checks ran"), ..Default::default() };
        };
        Outcome {
            passed: self.failures == 0,
            observed: w.observed,
            expected: w.expected,
            tolerance: w.tolerance,
            stderr: w.stderr,
            n: self.n,
            detail: format!(
                "{what}: {}/{} sub-checks passed, {} retried at 4x samples; worst: {}",
                self.count - self.failures,
                self.count,
                self.retries,
                w.label
            ),
        }
    }
}

/// Allowed gap and verdict for two estimates at `sigma` standard errors.
pub fn agreement(a: &MCEstimate, b: &MCEstimate, sigma: f64) -> (f64, bool) {
    let tol = sigma * a.stderr.hypot(b.stderr) + FLOAT_FLOOR * a.mean.abs().max(b.mean.abs()).max(1.0);
    (tol, (a.mean - b.mean).abs() <= tol)
}
