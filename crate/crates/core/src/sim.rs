//! Seeded randomness, Monte-Carlo accumulators and simulation reports.
//!
//! Every trial draws from its own ChaCha8 stream seeded with
//! `trial_seed(master, index)`, so serial and parallel runs replay identically.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub type SimRng = ChaCha8Rng;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of trial `index` under master seed `master`.
pub fn trial_seed(master: u64, index: u64) -> u64 {
    splitmix64(master ^ splitmix64(index.wrapping_add(0x5851_F42D_4C95_7F2D)))
}

pub fn rng(seed: u64) -> SimRng {
    SimRng::seed_from_u64(seed)
}

pub fn trial_rng(master: u64, index: u64) -> SimRng {
    rng(trial_seed(master, index))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Metric {
    pub value: f64,
    pub stderr: Option<f64>,
    pub trials: u64,
}

impl Metric {
    pub fn exact(value: f64) -> Self {
        Self { value, stderr: None, trials: 0 }
    }

    /// `|value - expected| <= k * stderr`.
    pub fn within_sigma(&self, expected: f64, k: f64) -> bool {
        let s = self.stderr.unwrap_or(0.0);
        (self.value - expected).abs() <= k * s
    }
}

/// Success counter for a Bernoulli quantity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Proportion {
    pub hits: u64,
    pub trials: u64,
}

impl Proportion {
    pub fn record(&mut self, hit: bool) {
        self.trials += 1;
        self.hits += hit as u64;
    }

    pub fn merge(&mut self, other: Proportion) {
        self.hits += other.hits;
        self.trials += other.trials;
    }

    pub fn rate(&self) -> f64 {
        if self.trials == 0 {
            0.0
        } else {
            self.hits as f64 / self.trials as f64
        }
    }

    pub fn metric(&self) -> Metric {
        let p = self.rate();
        let stderr = if self.trials == 0 { 0.0 } else { (p * (1.0 - p) / self.trials as f64).sqrt() };
        Metric { value: p, stderr: Some(stderr), trials: self.trials }
    }
}

/// Running mean and variance of a real-valued quantity.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct MeanAcc {
    pub n: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl MeanAcc {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        self.sum += x;
        self.sum_sq += x * x;
    }

    pub fn mean(&self) -> f64 {
        if self.n == 0 {
            0.0
        } else {
            self.sum / self.n as f64
        }
    }

    pub fn variance(&self) -> f64 {
        if self.n < 2 {
            return 0.0;
        }
        let m = self.mean();
        ((self.sum_sq - self.n as f64 * m * m) / (self.n - 1) as f64).max(0.0)
    }

    pub fn metric(&self) -> Metric {
        let se = if self.n == 0 { 0.0 } else { (self.variance() / self.n as f64).sqrt() };
        Metric { value: self.mean(), stderr: Some(se), trials: self.n }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SimReport {
    pub name: String,
    pub seed: u64,
    pub params: BTreeMap<String, f64>,
    pub metrics: BTreeMap<String, Metric>,
    #[serde(skip)]
    pub wall_time_s: f64,
}

impl SimReport {
    pub fn new(name: &str, seed: u64) -> Self {
        Self { name: name.into(), seed, params: BTreeMap::new(), metrics: BTreeMap::new(), wall_time_s: 0.0 }
    }

    pub fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.into(), value);
        self
    }

    pub fn metric(mut self, key: &str, m: Metric) -> Self {
        self.metrics.insert(key.into(), m);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Metric> {
        self.metrics.get(key)
    }

    pub fn value(&self, key: &str) -> f64 {
        self.metrics.get(key).map_or(f64::NAN, |m| m.value)
    }
}

/// Runs `run` at every grid point; point `i` receives seed `trial_seed(seed, i)`.
pub fn sweep<F>(grid: &[f64], seed: u64, mut run: F) -> Vec<SimReport>
where
    F: FnMut(f64, u64) -> SimReport,
{
    grid.iter().enumerate().map(|(i, &x)| run(x, trial_seed(seed, i as u64))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn trial_streams_replay() {
        let a: Vec<u64> = (0..4).map(|i| trial_rng(7, i).random()).collect();
        let b: Vec<u64> = (0..4).map(|i| trial_rng(7, i).random()).collect();
        assert_eq!(a, b);
        assert_ne!(a[0], a[1]);
    }

    #[test]
    fn proportion_stderr() {
        let mut p = Proportion::default();
        for i in 0..100 {
            p.record(i % 4 == 0);
        }
        let m = p.metric();
        assert_eq!(m.value, 0.25);
        assert!((m.stderr.unwrap() - (0.25f64 * 0.75 / 100.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn empty_sweep_is_empty() {
        assert!(sweep(&[], 1, |_, s| SimReport::new("x", s)).is_empty());
    }
}
