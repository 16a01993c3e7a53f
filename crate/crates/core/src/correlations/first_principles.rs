//! Correlations computed directly from the pair state: singlet, per-arm
//! evolution operators, and projective analyzers. Shares no code with the
//! closed forms in `functions`.

use crate::channels::{kaon_evolution_operator, KaonSpec};
use crate::error::Result;
use crate::scalar::Real;
use crate::state::{singlet, BasisElement, BasisLabel, BlochVector, JointProbabilities};

/// Joint strangeness probabilities (+ = K⁰) after each kaon has evolved for its own time.
pub fn kaon_probabilities<T: Real>(t_a: T, t_b: T, spec: &KaonSpec<T>) -> Result<JointProbabilities<T>> {
    let ua = kaon_evolution_operator(spec, t_a)?;
    let ub = kaon_evolution_operator(spec, t_b)?;
    let pair = singlet::<T>(BasisLabel::Strangeness).apply_local(&ua, &ub);
    let k0 = BasisElement::K0.bloch();
    pair.joint_probabilities(&k0, &k0)
}

/// Singlet correlation with equatorial analyzers at sphere angles `a`, `b`.
pub fn photon_probabilities<T: Real>(a: T, b: T) -> Result<JointProbabilities<T>> {
    singlet::<T>(BasisLabel::Linear).joint_probabilities(&BlochVector::equator(a), &BlochVector::equator(b))
}
