//! Entangled two-level pairs on the Bloch/Poincaré sphere.
//!
//! Photon polarization in fibers (birefringence, polarization-dependent loss)
//! and neutral-meson strangeness (mixing, decay) share one algebra: a rotation
//! and a contraction of the sphere. This crate provides that algebra, the
//! channel operators, CHSH correlation functions with their local-model bound,
//! and a seeded Monte Carlo harness for coincidence experiments.
//!
//! Numeric code is generic over [`Real`] (`f32` or `f64`); the `*64` aliases
//! below are the common instantiations.

pub mod channels;
pub mod correlations;
mod error;
pub mod montecarlo;
mod scalar;
pub mod state;

pub use error::{Error, Result};
pub use scalar::{lit, Real};

pub type BlochVector64 = state::BlochVector<f64>;
pub type Spinor64 = state::Spinor<f64>;
pub type Operator64 = state::Operator2<f64>;
pub type JointState64 = state::JointState<f64>;
pub type KaonSpec64 = channels::KaonSpec<f64>;
pub type BMesonSpec64 = channels::BMesonSpec<f64>;
pub type PdlSpec64 = channels::PdlSpec<f64>;
pub type BirefringenceSpec64 = channels::BirefringenceSpec<f64>;
pub type FiberSpec64 = channels::FiberSpec<f64>;
pub type Settings64 = correlations::Settings4<f64>;
pub type ScanRecord64 = correlations::ScanRecord<f64>;
pub type CorrelationSystem64 = correlations::CorrelationSystem<f64>;
pub type ExperimentConfig64 = montecarlo::ExperimentConfig<f64>;

pub type BlochVector32 = state::BlochVector<f32>;
pub type Spinor32 = state::Spinor<f32>;
pub type Operator32 = state::Operator2<f32>;
pub type JointState32 = state::JointState<f32>;
pub type KaonSpec32 = channels::KaonSpec<f32>;
pub type CorrelationSystem32 = correlations::CorrelationSystem<f32>;
