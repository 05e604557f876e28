//! Seeded Monte Carlo under the two probability models.
//!
//! Generator contract: trials are grouped into batches of [`BATCH_SIZE`].
//! Batch `b` draws from `ChaCha8Rng::seed_from_u64(seed)` switched to stream
//! `b` (`set_stream(b)`). `seed_from_u64` is the PCG32-based expansion from
//! `rand_core`. The batch layout depends only on the trial count, so the hit
//! count is the same whether batches run in parallel or one after another.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::numeric::Count;
use crate::oracle::{suffix_completions, Trajectory};

/// Trials per generator stream.
pub const BATCH_SIZE: u64 = 4096;

/// Two-sided 99% normal quantile, `Phi^{-1}(0.995)`.
pub const Z_99: f64 = 2.575_829_303_548_900_4;

/// Probability space over trajectories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    /// Every Dyck path equally likely.
    Uniform,
    /// Every draw order of `2n` distinguishable socks equally likely.
    Physical,
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::Uniform => "uniform",
            Model::Physical => "physical",
        })
    }
}

impl FromStr for Model {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Model::Uniform),
            "physical" => Ok(Model::Physical),
            other => Err(Error::Argument(format!("unknown model {other:?}"))),
        }
    }
}

/// Generator for batch `batch` of a run seeded with `seed`.
pub fn batch_rng(seed: u64, batch: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(batch);
    rng
}

/// Uniform integer in `0..bound` for arbitrarily large `bound`, by rejection
/// on the bit length of `bound - 1`.
fn big_below<R: RngCore + ?Sized>(rng: &mut R, bound: &BigUint) -> BigUint {
    assert!(*bound > BigUint::ZERO, "empty range");
    let bits = (bound - 1u32).bits();
    let words = bits.div_ceil(32) as usize;
    let spare = (words as u64 * 32 - bits) as u32;
    loop {
        let mut digits: Vec<u32> = (0..words).map(|_| rng.next_u32()).collect();
        if let Some(top) = digits.last_mut() {
            *top = top.checked_shr(spare).unwrap_or(0);
        }
        let candidate = BigUint::new(digits);
        if candidate < *bound {
            return candidate;
        }
    }
}

enum SuffixTable {
    Word(Vec<u64>),
    Wide(Vec<u128>),
    Big(Vec<Count>),
}

/// Exact uniform sampler for Dyck paths of one fixed semilength.
///
/// Each step goes up with probability `suffix(m-1, a+1) / suffix(m, a)`,
/// decided by comparing a uniform integer below the denominator.
pub struct UniformDyckSampler {
    n: u32,
    width: usize,
    table: SuffixTable,
}

impl UniformDyckSampler {
    pub fn new(n: u32) -> Self {
        assert!(n >= 1, "need at least one pair");
        let width = n as usize + 2;
        let counts: Vec<Count> = (0..=2 * n)
            .flat_map(|m| (0..width as u32).map(move |a| suffix_completions(m, a)))
            .collect();
        let widest = counts.iter().map(|c| c.bits()).max().unwrap_or(0);
        let table = if widest <= 63 {
            SuffixTable::Word(counts.iter().map(|c| c.to_u64().unwrap()).collect())
        } else if widest <= 127 {
            SuffixTable::Wide(counts.iter().map(|c| c.to_u128().unwrap()).collect())
        } else {
            SuffixTable::Big(counts)
        };
        Self { n, width, table }
    }

    fn go_up<R: RngCore + ?Sized>(&self, rng: &mut R, remaining: u32, height: u32) -> bool {
        let up = (remaining as usize - 1) * self.width + height as usize + 1;
        let here = remaining as usize * self.width + height as usize;
        match &self.table {
            SuffixTable::Word(t) => {
                let (up, total) = (t[up], t[here]);
                if up == 0 {
                    return false;
                }
                if up == total {
                    return true;
                }
                rng.random_range(0..total) < up
            }
            SuffixTable::Wide(t) => {
                let (up, total) = (t[up], t[here]);
                if up == 0 {
                    return false;
                }
                if up == total {
                    return true;
                }
                rng.random_range(0..total) < up
            }
            SuffixTable::Big(t) => {
                let (up, total) = (&t[up], &t[here]);
                if *up == BigUint::ZERO {
                    return false;
                }
                if up == total {
                    return true;
                }
                big_below(rng, total) < *up
            }
        }
    }

    /// Walks one path, calling `step` with each height.
    fn walk<R: RngCore + ?Sized>(&self, rng: &mut R, mut step: impl FnMut(u32)) {
        let len = 2 * self.n;
        let mut height = 0u32;
        for taken in 0..len {
            if self.go_up(rng, len - taken, height) {
                height += 1;
            } else {
                height -= 1;
            }
            step(height);
        }
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Trajectory {
        let mut values = Vec::with_capacity(2 * self.n as usize);
        self.walk(rng, |h| values.push(h));
        Trajectory::from_valid(values)
    }

    pub fn sample_height<R: RngCore + ?Sized>(&self, rng: &mut R) -> u32 {
        let mut peak = 0;
        self.walk(rng, |h| peak = peak.max(h));
        peak
    }
}

/// One Dyck path drawn uniformly from all `C_n` of them.
pub fn sample_uniform_dyck<R: RngCore + ?Sized>(n: u32, rng: &mut R) -> Trajectory {
    UniformDyckSampler::new(n).sample(rng)
}

fn physical_walk<R: RngCore + ?Sized>(n: u32, rng: &mut R, mut step: impl FnMut(u32)) {
    let total = 2 * n;
    let mut unmatched = 0u32;
    for drawn in 0..total {
        let left = total - drawn;
        // The next sock matches one on the table with probability unmatched / left.
        if unmatched > 0 && rng.random_range(0..left) < unmatched {
            unmatched -= 1;
        } else {
            unmatched += 1;
        }
        step(unmatched);
    }
}

/// Simulates drawing `n` pairs one sock at a time in random order.
pub fn simulate_physical_draw<R: RngCore + ?Sized>(n: u32, rng: &mut R) -> Trajectory {
    assert!(n >= 1, "need at least one pair");
    let mut values = Vec::with_capacity(2 * n as usize);
    physical_walk(n, rng, |u| values.push(u));
    Trajectory::from_valid(values)
}

fn physical_height<R: RngCore + ?Sized>(n: u32, rng: &mut R) -> u32 {
    let mut peak = 0;
    physical_walk(n, rng, |u| peak = peak.max(u));
    peak
}

/// Wilson score interval for `hits` out of `trials` at normal quantile `z`.
pub fn wilson_interval(hits: u64, trials: u64, z: f64) -> (f64, f64) {
    assert!(trials > 0 && hits <= trials);
    let n = trials as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = z / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
    let low = (center - half).max(0.0).min(p);
    let high = (center + half).min(1.0).max(p);
    (low, high)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimResult {
    pub model: Model,
    pub n: u32,
    pub k: u32,
    pub trials: u64,
    pub hits: u64,
    pub p_hat: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub seed: u64,
}

impl SimResult {
    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }
}

/// Monte Carlo estimate of the probability that a trajectory reaches
/// height `k`, with a 99% Wilson interval.
pub fn estimate_hit_probability(
    model: Model,
    n: u32,
    k: u32,
    trials: u64,
    seed: u64,
) -> Result<SimResult> {
    estimate_hit_probability_with(model, n, k, trials, seed, Execution::default())
}

pub fn estimate_hit_probability_with(
    model: Model,
    n: u32,
    k: u32,
    trials: u64,
    seed: u64,
    exec: Execution,
) -> Result<SimResult> {
    if trials == 0 {
        return Err(Error::Argument("trials must be positive".into()));
    }
    if k == 0 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::Argument("n must be at least 1".into()));
    }
    let batches = trials.div_ceil(BATCH_SIZE);
    let uniform = match model {
        Model::Uniform => Some(UniformDyckSampler::new(n)),
        Model::Physical => None,
    };
    let per_batch = exec.map(0..batches as usize, |b| {
        let b = b as u64;
        let mut rng = batch_rng(seed, b);
        let count = BATCH_SIZE.min(trials - b * BATCH_SIZE);
        let mut hits = 0u64;
        for _ in 0..count {
            let height = match &uniform {
                Some(s) => s.sample_height(&mut rng),
                None => physical_height(n, &mut rng),
            };
            hits += u64::from(height >= k);
        }
        hits
    });
    let hits: u64 = per_batch.iter().sum();
    let (ci_low, ci_high) = wilson_interval(hits, trials, Z_99);
    Ok(SimResult {
        model,
        n,
        k,
        trials,
        hits,
        p_hat: hits as f64 / trials as f64,
        ci_low,
        ci_high,
        seed,
    })
}
