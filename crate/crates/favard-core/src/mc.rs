//! Seeded, sharded Monte Carlo plumbing.
//!
//! Estimates are split into a fixed number of shards regardless of how
//! many threads execute them; each shard derives its generator from the
//! root seed and its shard index (separate ChaCha streams), and shard
//! results are combined in shard order. The estimate is therefore a pure
//! function of `(seed, sample count)`.

use alloc::vec::Vec;

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::math;

/// Generator family recorded in reports next to the seed.
pub const RNG_NAME: &str = "chacha12";

/// Shard count used by every sharded estimator.
pub const SHARDS: u64 = 64;

/// The generator for one shard of a sharded estimate.
pub fn shard_rng(seed: u64, shard: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(shard);
    rng
}

/// Number of samples shard `i` contributes to a total of `n`.
pub fn shard_quota(n: u64, shard: u64) -> u64 {
    let base = n / SHARDS;
    let extra = n % SHARDS;
    base + u64::from(shard < extra)
}

/// Mean/stderr accumulator with fixed-order combination.
#[derive(Debug, Clone, Copy, Default)]
pub struct MeanAccumulator {
    pub sum: f64,
    pub sum_sq: f64,
    pub count: u64,
}

impl MeanAccumulator {
    pub fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
        self.count += 1;
    }

    /// Combines per-shard accumulators in slice order.
    pub fn combine(parts: &[MeanAccumulator]) -> MeanAccumulator {
        let sums: Vec<f64> = parts.iter().map(|p| p.sum).collect();
        let sqs: Vec<f64> = parts.iter().map(|p| p.sum_sq).collect();
        MeanAccumulator {
            sum: math::pairwise_sum(&sums),
            sum_sq: math::pairwise_sum(&sqs),
            count: parts.iter().map(|p| p.count).sum(),
        }
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.count as f64
    }

    /// Standard error of the mean.
    pub fn stderr(&self) -> f64 {
        let n = self.count as f64;
        let var = (self.sum_sq / n - self.mean() * self.mean()).max(0.0);
        math::sqrt(var / n)
    }
}
