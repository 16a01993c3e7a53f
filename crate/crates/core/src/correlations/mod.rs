//! Correlation functions, CHSH combinations, local-model bounds and
//! one-parameter scans for photon, kaon and B-meson pairs.

mod chsh;
pub mod first_principles;
mod functions;
mod lhv;
pub mod optimize;
mod scan;

pub use chsh::{chsh_s, try_chsh_s, violates, Choice, Settings4, CHSH_TERMS};
pub use functions::{bmeson_e, kaon_e_normalized, kaon_e_unnormalized, kaon_r_pp, kaon_rates, photon_e, KaonRates};
pub use lhv::{lhv_bound, validate_weights, LhvStrategy, Sign};
pub use optimize::Maximum;
pub use scan::{chsh_theta_scan, maximize_s, CorrelationSystem, ScanRecord, MAXIMIZE_GRID_POINTS, MAXIMIZE_XTOL};
