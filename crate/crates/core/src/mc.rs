//! Monte Carlo estimates with standard errors.

use serde::{Deserialize, Serialize};

/// Mean, standard error, sample count and seed of a Monte Carlo result.
///
/// Exact quantities are represented with `stderr = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: u64,
    pub seed: u64,
}

impl MCEstimate {
    pub fn exact(value: f64) -> Self {
        Self { mean: value, stderr: 0.0, n: 1, seed: 0 }
    }

    /// Sum of independent estimates; errors add in quadrature.
    pub fn sum<I: IntoIterator<Item = MCEstimate>>(parts: I, seed: u64) -> Self {
        let mut mean = 0.0;
        let mut var = 0.0;
        let mut n = 0;
        for p in parts {
            mean += p.mean;
            var += p.stderr * p.stderr;
            n += p.n;
        }
        Self { mean, stderr: var.sqrt(), n: n.max(1), seed }
    }

    pub fn scaled(self, factor: f64) -> Self {
        Self {
            mean: self.mean * factor,
            stderr: self.stderr * factor.abs(),
            ..self
        }
    }

    /// `|self - other| / sqrt(se_self² + se_other²)`; infinite if both are
    /// exact and differ, zero if both are exact and equal.
    pub fn z_score(&self, other: &MCEstimate) -> f64 {
        let diff = (self.mean - other.mean).abs();
        let se = (self.stderr.powi(2) + other.stderr.powi(2)).sqrt();
        if se == 0.0 {
            if diff == 0.0 {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / se
        }
    }

    pub fn z_score_against(&self, exact: f64) -> f64 {
        self.z_score(&MCEstimate::exact(exact))
    }

    pub fn within_sigma(&self, other: &MCEstimate, sigmas: f64) -> bool {
        self.z_score(other) <= sigmas
    }
}

/// Streaming sum and sum of squares of per-draw values.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    pub sum: f64,
    pub sum_sq: f64,
    pub n: u64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
        self.n += 1;
    }

    pub fn merge(mut self, other: Accumulator) -> Self {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.n += other.n;
        self
    }

    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.sum / self.n as f64
        }
    }

    /// Estimate of the mean of the draws.
    pub fn estimate(&self, seed: u64) -> MCEstimate {
        let n = self.n.max(1) as f64;
        let mean = self.sum / n;
        let var = if self.n > 1 {
            ((self.sum_sq - n * mean * mean) / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        MCEstimate {
            mean,
            stderr: (var / n).sqrt(),
            n: self.n.max(1),
            seed,
        }
    }
}
