use super::engine::{OutcomeTable, PairSource};
use crate::channels::{
    bmeson_evolution_operator, fiber_operator, kaon_evolution_operator, BMesonSpec, FiberSpec, KaonSpec,
};
use crate::correlations::{Choice, Settings4};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::{singlet, BasisElement, BasisLabel, BlochVector, Operator2};

/// Pair source and the channels each particle crosses before its analyzer.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PairSystem<T> {
    /// Polarization singlet; each arm may run through a fiber. Settings are
    /// analyzer angles on the sphere.
    Photon {
        arm_a: Option<FiberSpec<T>>,
        arm_b: Option<FiberSpec<T>>,
    },
    /// Kaon pair; settings are detection times, the analyzer tells K⁰ (+) from K̄⁰ (−).
    Kaon(KaonSpec<T>),
    BMeson(BMesonSpec<T>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SettingsSpec<T> {
    Pair { a: T, b: T },
    Chsh(Settings4<T>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentConfig<T> {
    pub system: PairSystem<T>,
    pub settings: SettingsSpec<T>,
    pub pairs: u64,
    /// Per-arm detection probability in `(0, 1]`.
    pub efficiency: f64,
    pub seed: u64,
}

impl<T: Real> ExperimentConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.pairs == 0 {
            return Err(Error::InvalidConfig("pair count must be at least 1".into()));
        }
        if !(self.efficiency > 0.0 && self.efficiency <= 1.0) {
            return Err(Error::InvalidConfig(format!(
                "detector efficiency must lie in (0, 1], got {}",
                self.efficiency
            )));
        }
        if !matches!(self.system, PairSystem::Photon { .. }) {
            let ok = match self.settings {
                SettingsSpec::Pair { a, b } => a >= T::zero() && b >= T::zero(),
                SettingsSpec::Chsh(s) => s.all_non_negative(),
            };
            if !ok {
                return Err(Error::InvalidConfig("detection times must be non-negative".into()));
            }
        }
        Ok(())
    }
}

impl<T: Real> PairSystem<T> {
    /// Arm operator and analyzer axis for one side at setting `x`.
    fn arm(&self, x: T, first: bool) -> Result<(Operator2<T>, BlochVector<T>)> {
        match self {
            PairSystem::Photon { arm_a, arm_b } => {
                let fiber = if first { arm_a } else { arm_b };
                let op = fiber.as_ref().map(fiber_operator).unwrap_or_else(Operator2::identity);
                Ok((op, BlochVector::equator(x)))
            }
            PairSystem::Kaon(k) => Ok((kaon_evolution_operator(k, x)?, BasisElement::K0.bloch())),
            PairSystem::BMeson(b) => Ok((bmeson_evolution_operator(b, x)?, BasisElement::K0.bloch())),
        }
    }

    fn source_basis(&self) -> BasisLabel {
        match self {
            PairSystem::Photon { .. } => BasisLabel::Linear,
            _ => BasisLabel::Strangeness,
        }
    }

    /// Joint distribution over `{+, −, removed}²` for settings `(a, b)`.
    ///
    /// Each arm contributes the effects `K†P₊K`, `K†P₋K` and `I − K†K`; the
    /// cell probabilities are their product expectations in the singlet.
    pub fn outcome_table(&self, a: T, b: T) -> Result<OutcomeTable> {
        let effects = |op: Operator2<T>, axis: BlochVector<T>| {
            let dag = op.adjoint();
            [
                dag * Operator2::projector(&axis) * op,
                dag * Operator2::projector(&-axis) * op,
                Operator2::identity() - dag * op,
            ]
        };
        let (ka, na) = self.arm(a, true)?;
        let (kb, nb) = self.arm(b, false)?;
        let ea = effects(ka, na);
        let eb = effects(kb, nb);
        let pair = singlet::<T>(self.source_basis());
        let mut p = [[0.0; 3]; 3];
        for (i, row) in p.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = pair.expectation(&ea[i], &eb[j]).to_f64().expect("finite probability");
            }
        }
        OutcomeTable::new(p)
    }
}

/// Quantum pair source bound to a set of four settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumSource<T> {
    pub system: PairSystem<T>,
    pub settings: Settings4<T>,
}

impl<T: Real> PairSource for QuantumSource<T> {
    type Sampler = OutcomeTable;

    fn sampler(&self, alice: Choice, bob: Choice) -> Result<OutcomeTable> {
        self.system
            .outcome_table(self.settings.alice(alice), self.settings.bob(bob))
    }
}
