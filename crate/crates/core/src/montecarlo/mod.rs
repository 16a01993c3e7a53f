//! Monte Carlo coincidence experiments: per-pair outcome sampling with channel
//! loss and detector inefficiency, and the normalized correlation estimators.
//!
//! Channel loss (fiber PDL, meson decay) removes a particle before it reaches
//! its analyzer. Detector inefficiency then drops each remaining detection
//! independently. Estimators use coincidences only (fair sampling).

mod config;
mod counts;
mod engine;
mod estimate;
mod lhv;

pub use config::{ExperimentConfig, PairSystem, QuantumSource, SettingsSpec};
pub use counts::CoincidenceCounts;
pub use engine::{sample_counts, OutcomeTable, PairSampler, PairSource, BLOCK_PAIRS};
pub use estimate::{
    chsh_from_counts, estimate_chsh, estimate_chsh_with, estimate_e, run_chsh_counts, run_experiment, ChshEstimate,
    ChshTerm, Estimate,
};
pub use lhv::{LhvSampler, LhvSource};
