use super::config::{ExperimentConfig, QuantumSource, SettingsSpec};
use super::counts::CoincidenceCounts;
use super::engine::{sample_counts, PairSource};
use crate::correlations::{Choice, CHSH_TERMS};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Stream offset separating the four setting combinations of a CHSH run.
const TERM_STREAM_STRIDE: u64 = 1 << 40;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub std_error: f64,
}

/// Normalized correlation over coincidences and its binomial standard error `√((1−E²)/N_c)`.
pub fn estimate_e(counts: &CoincidenceCounts) -> Result<Estimate> {
    let n = counts.coincidences();
    if n == 0 {
        return Err(Error::InsufficientData("no coincidences recorded".into()));
    }
    let same = (counts.pp + counts.mm) as f64;
    let diff = (counts.pm + counts.mp) as f64;
    let value = (same - diff) / n as f64;
    let std_error = ((1.0 - value * value).max(0.0) / n as f64).sqrt();
    Ok(Estimate { value, std_error })
}

/// Counts from a single pair of settings.
pub fn run_experiment<T: Real>(config: &ExperimentConfig<T>) -> Result<CoincidenceCounts> {
    config.validate()?;
    let SettingsSpec::Pair { a, b } = config.settings else {
        return Err(Error::InvalidConfig(
            "run_experiment needs a single setting pair; use estimate_chsh".into(),
        ));
    };
    let table = config.system.outcome_table(a, b)?;
    sample_counts(&table, config.pairs, config.efficiency, config.seed, 0)
}

/// Counts for one of the four CHSH setting combinations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshTerm {
    pub alice: Choice,
    pub bob: Choice,
    /// `+1` or `−1`: the sign of this correlation in `S`.
    pub sign: i8,
    pub counts: CoincidenceCounts,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChshEstimate {
    pub s: f64,
    pub abs_s: f64,
    pub std_error: f64,
    pub correlations: [Estimate; 4],
}

/// Splits `pairs` as evenly as possible over the four combinations (earlier
/// terms take the remainder) and samples each on its own stream range.
pub fn run_chsh_counts<S: PairSource>(source: &S, pairs: u64, efficiency: f64, seed: u64) -> Result<[ChshTerm; 4]> {
    let mut terms = Vec::with_capacity(4);
    for (k, &(alice, bob, sign)) in CHSH_TERMS.iter().enumerate() {
        let n = pairs / 4 + u64::from((k as u64) < pairs % 4);
        let sampler = source.sampler(alice, bob)?;
        let counts = sample_counts(&sampler, n, efficiency, seed, k as u64 * TERM_STREAM_STRIDE)?;
        terms.push(ChshTerm {
            alice,
            bob,
            sign,
            counts,
        });
    }
    Ok(terms.try_into().expect("four terms"))
}

/// Combines four correlation estimates into `S`, standard errors in quadrature.
pub fn chsh_from_counts(terms: &[ChshTerm; 4]) -> Result<ChshEstimate> {
    let mut correlations = [Estimate {
        value: 0.0,
        std_error: 0.0,
    }; 4];
    let mut s = 0.0;
    let mut var = 0.0;
    for (slot, term) in correlations.iter_mut().zip(terms) {
        let e = estimate_e(&term.counts)?;
        s += f64::from(term.sign) * e.value;
        var += e.std_error * e.std_error;
        *slot = e;
    }
    Ok(ChshEstimate {
        s,
        abs_s: s.abs(),
        std_error: var.sqrt(),
        correlations,
    })
}

pub fn estimate_chsh_with<S: PairSource>(source: &S, pairs: u64, efficiency: f64, seed: u64) -> Result<ChshEstimate> {
    chsh_from_counts(&run_chsh_counts(source, pairs, efficiency, seed)?)
}

/// CHSH estimate for a four-setting experiment.
pub fn estimate_chsh<T: Real>(config: &ExperimentConfig<T>) -> Result<ChshEstimate> {
    config.validate()?;
    let SettingsSpec::Chsh(settings) = config.settings else {
        return Err(Error::InvalidConfig("estimate_chsh needs four settings".into()));
    };
    let source = QuantumSource {
        system: config.system,
        settings,
    };
    estimate_chsh_with(&source, config.pairs, config.efficiency, config.seed)
}
