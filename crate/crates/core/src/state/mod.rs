//! Single- and two-particle two-level state algebra on the Bloch/Poincaré sphere.

mod basis;
mod bloch;
mod joint;
mod operator;
mod spinor;

pub use basis::{basis_change, basis_change_operator, BasisElement, BasisLabel, System};
pub use bloch::BlochVector;
pub use joint::{singlet, ConditionalState, JointProbabilities, JointState};
pub use operator::Operator2;
pub use spinor::{bloch_to_spinor, overlap, spinor_to_bloch, Spinor};

/// `(opA ⊗ opB)|ψ⟩`; operators in the pole basis, no renormalization.
pub fn apply_local<T: crate::Real>(j: &JointState<T>, op_a: &Operator2<T>, op_b: &Operator2<T>) -> JointState<T> {
    j.apply_local(op_a, op_b)
}

pub fn joint_probabilities<T: crate::Real>(
    j: &JointState<T>,
    a: &BlochVector<T>,
    b: &BlochVector<T>,
) -> crate::Result<JointProbabilities<T>> {
    j.joint_probabilities(a, b)
}

pub fn conditional_state<T: crate::Real>(
    j: &JointState<T>,
    outcome_axis: &BlochVector<T>,
    outcome_sign: i8,
) -> crate::Result<ConditionalState<T>> {
    j.conditional_state(outcome_axis, outcome_sign)
}
