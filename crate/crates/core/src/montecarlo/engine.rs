//! Per-pair sampling with a partition-independent random stream layout.
//!
//! Pairs are grouped into blocks of [`BLOCK_PAIRS`] consecutive indices. Block
//! `k` of a run with stream base `s` draws from ChaCha8 seeded with the run seed
//! on stream `s + k`, consuming numbers in pair order. Blocks are independent,
//! so any split of blocks across workers yields identical counts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::counts::CoincidenceCounts;
use crate::correlations::{Choice, Sign};
use crate::error::{Error, Result};

pub const BLOCK_PAIRS: u64 = 4096;

/// Draws the raw (pre-detector) outcome of one pair; `None` marks a particle removed by its channel.
pub trait PairSampler: Sync {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (Option<Sign>, Option<Sign>);
}

/// Anything that can emit pairs for each of the four CHSH setting combinations.
pub trait PairSource: Sync {
    type Sampler: PairSampler;
    fn sampler(&self, alice: Choice, bob: Choice) -> Result<Self::Sampler>;
}

/// Fixed joint distribution over `{+, −, removed}²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OutcomeTable {
    probabilities: [[f64; 3]; 3],
    cumulative: [f64; 9],
}

const SIDE: [Option<Sign>; 3] = [Some(Sign::Plus), Some(Sign::Minus), None];

impl OutcomeTable {
    /// Rows index Alice's outcome `(+, −, removed)`, columns Bob's.
    pub fn new(mut probabilities: [[f64; 3]; 3]) -> Result<Self> {
        for p in probabilities.iter_mut().flatten() {
            if !p.is_finite() || *p < -1e-12 {
                return Err(Error::InvalidConfig(format!("invalid outcome probability {p}")));
            }
            // Rounding residue of structurally impossible outcomes.
            if *p < 4.0 * f64::EPSILON {
                *p = 0.0;
            }
        }
        let total: f64 = probabilities.iter().flatten().sum();
        if (total - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidConfig(format!("outcome probabilities sum to {total}")));
        }
        let mut cumulative = [0.0; 9];
        let mut acc = 0.0;
        for (k, p) in probabilities.iter().flatten().enumerate() {
            acc += p / total;
            cumulative[k] = acc;
        }
        // Pin the top of the last non-empty cell to 1 so rounding cannot drop a draw.
        let top = (0..9).rev().find(|&k| probabilities[k / 3][k % 3] > 0.0).unwrap_or(8);
        for c in cumulative.iter_mut().skip(top) {
            *c = 1.0;
        }
        Ok(OutcomeTable {
            probabilities,
            cumulative,
        })
    }

    pub fn probabilities(&self) -> [[f64; 3]; 3] {
        self.probabilities
    }
}

impl PairSampler for OutcomeTable {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (Option<Sign>, Option<Sign>) {
        let u: f64 = rng.random();
        let k = self.cumulative.iter().position(|&c| u < c).unwrap_or(8);
        (SIDE[k / 3], SIDE[k % 3])
    }
}

fn block_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Samples `pairs` pairs and thins each detection independently with `efficiency`.
pub fn sample_counts<S: PairSampler>(
    sampler: &S,
    pairs: u64,
    efficiency: f64,
    seed: u64,
    stream_base: u64,
) -> Result<CoincidenceCounts> {
    if !(efficiency > 0.0 && efficiency <= 1.0) {
        return Err(Error::InvalidConfig(format!(
            "detector efficiency must lie in (0, 1], got {efficiency}"
        )));
    }
    let blocks = pairs.div_ceil(BLOCK_PAIRS);
    let counts = (0..blocks)
        .into_par_iter()
        .map(|block| {
            let mut rng = block_rng(seed, stream_base + block);
            let start = block * BLOCK_PAIRS;
            let n = BLOCK_PAIRS.min(pairs - start);
            let mut c = CoincidenceCounts::default();
            for _ in 0..n {
                let (mut a, mut b) = sampler.sample(&mut rng);
                if efficiency < 1.0 {
                    if a.is_some() && rng.random::<f64>() >= efficiency {
                        a = None;
                    }
                    if b.is_some() && rng.random::<f64>() >= efficiency {
                        b = None;
                    }
                }
                c.record(a, b);
            }
            c
        })
        .sum();
    Ok(counts)
}
