use rand::Rng;

use super::engine::{PairSampler, PairSource};
use crate::correlations::{validate_weights, Choice, LhvStrategy, Sign};
use crate::error::Result;

/// Local model: each pair carries a strategy drawn from `weights`, and each side
/// reads its outcome off the strategy for its own setting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LhvSource {
    weights: [f64; 16],
}

impl LhvSource {
    pub fn new(weights: [f64; 16]) -> Result<Self> {
        validate_weights(&weights, 1e-12)?;
        Ok(LhvSource { weights })
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LhvSampler {
    cumulative: [f64; 16],
    alice: Choice,
    bob: Choice,
}

impl PairSource for LhvSource {
    type Sampler = LhvSampler;

    fn sampler(&self, alice: Choice, bob: Choice) -> Result<LhvSampler> {
        let total: f64 = self.weights.iter().sum();
        let mut cumulative = [0.0; 16];
        let mut acc = 0.0;
        for (c, w) in cumulative.iter_mut().zip(self.weights) {
            acc += w / total;
            *c = acc;
        }
        Ok(LhvSampler { cumulative, alice, bob })
    }
}

impl PairSampler for LhvSampler {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> (Option<Sign>, Option<Sign>) {
        let u: f64 = rng.random();
        let lambda = self.cumulative.iter().position(|&c| u < c).unwrap_or(15);
        let s = LhvStrategy::from_index(lambda);
        (Some(s.alice(self.alice)), Some(s.bob(self.bob)))
    }
}
