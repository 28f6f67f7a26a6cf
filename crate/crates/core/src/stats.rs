//! Streaming moment accumulators for Monte Carlo estimates.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Single-pass Welford accumulator over complex samples. The second moment
/// `m2` tracks the combined real+imaginary squared deviation, so `se()` is
/// the standard error of the complex mean as a single scalar.
#[derive(Clone, Copy, Debug, Default)]
pub struct ComplexWelford {
    count: u64,
    mean: Complex64,
    m2: f64,
}

impl ComplexWelford {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, x: Complex64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        let delta2 = x - self.mean;
        self.m2 += delta.re * delta2.re + delta.im * delta2.im;
    }

    /// Chan's pairwise merge; associative and order-independent up to
    /// floating-point noise, which is what the deterministic reduction tree
    /// relies on.
    pub fn merge(a: &Self, b: &Self) -> Self {
        if a.count == 0 {
            return *b;
        }
        if b.count == 0 {
            return *a;
        }
        let count = a.count + b.count;
        let delta = b.mean - a.mean;
        let mean = a.mean + delta * (b.count as f64 / count as f64);
        let m2 = a.m2
            + b.m2
            + delta.norm_sqr() * (a.count as f64 * b.count as f64 / count as f64);
        Self { count, mean, m2 }
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn mean(&self) -> Complex64 {
        self.mean
    }

    /// Unbiased sample variance (combined over real and imaginary parts).
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    /// Standard error of the mean: sample standard deviation / sqrt(count).
    pub fn se(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            (self.variance() / self.count as f64).sqrt()
        }
    }

    pub fn estimate(&self) -> MCEstimate {
        MCEstimate {
            mean: self.mean,
            se: self.se(),
            count: self.count,
        }
    }
}

/// Monte Carlo estimate of one complex quantity.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MCEstimate {
    pub mean: Complex64,
    pub se: f64,
    pub count: u64,
}

impl MCEstimate {
    /// z-score of the estimate against a reference value. A zero standard
    /// error (degenerate distribution or the exact monic coefficient) maps to
    /// z = 0 when the estimate matches the reference to f64 noise and
    /// infinity otherwise.
    pub fn z_score(&self, reference: Complex64) -> f64 {
        let diff = (self.mean - reference).norm();
        if self.se == 0.0 {
            let scale = self.mean.norm().max(reference.norm()).max(1.0);
            if diff <= 1e-12 * scale {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            diff / self.se
        }
    }
}
