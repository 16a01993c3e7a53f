use rayon::prelude::*;

use super::chsh::violates;
use super::functions::{bmeson_e, kaon_e_normalized, kaon_e_unnormalized, photon_e};
use super::optimize::{maximize_on_grid, Maximum};
use crate::channels::{BMesonSpec, KaonSpec};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Grid size used by [`maximize_s`].
pub const MAXIMIZE_GRID_POINTS: usize = 20_001;
/// Parameter tolerance of the golden-section refinement.
pub const MAXIMIZE_XTOL: f64 = 1e-10;

/// A correlation model with a one-parameter CHSH family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CorrelationSystem<T> {
    /// Spin ½ or photon singlet; parameter is a sphere angle in radians.
    Photon,
    /// Kaons, correlation over all emitted pairs; parameter is a time in `1/γ_S`.
    Kaon(KaonSpec<T>),
    /// Kaons, correlation over pairs that survived to detection.
    KaonNormalized(KaonSpec<T>),
    /// `B⁰B̄⁰`, renormalized; parameter is a time in `τ_B`.
    BMeson(BMesonSpec<T>),
}

impl<T: Real> CorrelationSystem<T> {
    pub fn name(&self) -> &'static str {
        match self {
            CorrelationSystem::Photon => "photon",
            CorrelationSystem::Kaon(_) => "kaon",
            CorrelationSystem::KaonNormalized(_) => "kaon-normalized",
            CorrelationSystem::BMeson(_) => "bmeson",
        }
    }

    /// Two-setting correlation `E(x, y)`.
    pub fn correlation(&self, x: T, y: T) -> Result<T> {
        match self {
            CorrelationSystem::Photon => Ok(photon_e(x, y)),
            CorrelationSystem::Kaon(k) => kaon_e_unnormalized(x, y, k),
            CorrelationSystem::KaonNormalized(k) => kaon_e_normalized(x, y, k),
            CorrelationSystem::BMeson(b) => bmeson_e(x, y, b),
        }
    }

    /// `E` as a function of the setting difference `d ≥ 0`, with the earlier
    /// setting at zero: `E(0, d)`. For kaons this is the least damped member
    /// of each equal-`Δt` class.
    pub fn difference_correlation(&self, d: T) -> Result<T> {
        self.correlation(T::zero(), d)
    }

    /// Default scan range: half a period for the photon and
    /// B-meson, several oscillation periods for kaons.
    pub fn scan_range(&self) -> (T, T) {
        match self {
            CorrelationSystem::Photon => (T::zero(), T::PI()),
            CorrelationSystem::Kaon(k) | CorrelationSystem::KaonNormalized(k) => {
                (T::zero(), lit::<T>(4.0) * T::PI() / k.delta_m)
            }
            CorrelationSystem::BMeson(b) => (T::zero(), T::PI() / b.delta_m),
        }
    }

    /// Range searched by [`maximize_s`]. The sinusoidal systems are restricted
    /// to the first quarter period so that the maximum is unique.
    pub fn search_range(&self) -> (T, T) {
        match self {
            CorrelationSystem::Photon => (T::zero(), T::FRAC_PI_2()),
            CorrelationSystem::BMeson(b) => (T::zero(), T::FRAC_PI_2() / b.delta_m),
            _ => self.scan_range(),
        }
    }

    /// `S(θ) = 3E(θ) − E(3θ)` record.
    pub fn scan_point(&self, theta: T) -> Result<ScanRecord<T>> {
        let e = self.difference_correlation(theta)?;
        let e3 = self.difference_correlation(lit::<T>(3.0) * theta)?;
        Ok(ScanRecord {
            param: theta,
            e,
            e3,
            s: lit::<T>(3.0) * e - e3,
        })
    }
}

/// One point of a CHSH scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRecord<T> {
    pub param: T,
    /// `E(θ)`.
    pub e: T,
    /// `E(3θ)`.
    pub e3: T,
    /// `3E(θ) − E(3θ)`.
    pub s: T,
}

impl<T: Real> ScanRecord<T> {
    pub fn abs_s(&self) -> T {
        self.s.abs()
    }

    pub fn violates(&self) -> bool {
        violates(self.s)
    }
}

/// Evaluates `steps` equally spaced parameters from `lo` to `hi` inclusive.
/// Records come back ordered by parameter regardless of how the work is split.
pub fn chsh_theta_scan<T: Real>(
    system: &CorrelationSystem<T>,
    lo: T,
    hi: T,
    steps: usize,
) -> Result<Vec<ScanRecord<T>>> {
    if steps < 2 {
        return Err(Error::Domain(format!("a scan needs at least 2 steps, got {steps}")));
    }
    if !(lo.is_finite() && hi.is_finite()) || hi < lo {
        return Err(Error::Domain(format!("invalid scan range [{lo}, {hi}]")));
    }
    let last = steps - 1;
    let span = hi - lo;
    let denom = T::from_usize(last).expect("step count representable");
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let theta = if i == last {
                hi
            } else {
                lo + span * T::from_usize(i).expect("index representable") / denom
            };
            system.scan_point(theta)
        })
        .collect()
}

/// Maximum of `|S(θ)|` over [`CorrelationSystem::search_range`].
pub fn maximize_s<T: Real>(system: &CorrelationSystem<T>) -> Result<Maximum<T>> {
    let (lo, hi) = system.search_range();
    // The whole search range is non-negative, so every evaluation is in-domain.
    system.scan_point(lo)?;
    let f = |theta: T| system.scan_point(theta).map(|r| r.abs_s()).unwrap_or(T::neg_infinity());
    Ok(maximize_on_grid(f, lo, hi, MAXIMIZE_GRID_POINTS, lit(MAXIMIZE_XTOL)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    #[test]
    fn record_identity() {
        let sys = CorrelationSystem::KaonNormalized(KaonSpec::<f64>::default());
        for r in chsh_theta_scan(&sys, 0.0, 10.0, 57).unwrap() {
            assert!((r.s - (3.0 * r.e - r.e3)).abs() < 1e-15);
        }
    }

    #[test]
    fn scan_endpoints_exact() {
        let recs = chsh_theta_scan(&CorrelationSystem::<f64>::Photon, 0.25, 1.75, 7).unwrap();
        assert_eq!(recs.len(), 7);
        assert_eq!(recs[0].param, 0.25);
        assert_eq!(recs[6].param, 1.75);
        assert!((recs[3].param - 1.0).abs() < 1e-15);
    }

    #[test]
    fn too_few_steps() {
        assert!(chsh_theta_scan(&CorrelationSystem::<f64>::Photon, 0.0, 1.0, 1).is_err());
    }

    #[test]
    fn photon_maximum() {
        let m = maximize_s(&CorrelationSystem::<f64>::Photon).unwrap();
        assert!((m.argmax - FRAC_PI_4).abs() < 1e-9);
        assert!((m.value - 2.0 * SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn single_precision_scan() {
        let recs = chsh_theta_scan(&CorrelationSystem::<f32>::Photon, 0.0, std::f32::consts::FRAC_PI_2, 3).unwrap();
        assert!((recs[1].abs_s() - 2.0 * std::f32::consts::SQRT_2).abs() < 1e-5);
    }
}
