use num_complex::Complex;

use super::basis::{basis_change_operator, BasisElement, BasisLabel};
use super::bloch::BlochVector;
use super::operator::Operator2;
use super::spinor::{spinor_to_bloch, Spinor};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Two-particle state: amplitudes `c[i][j]` over `first_i ⊗ second_j` of `basis`.
///
/// The state is not renormalized after lossy channels; `weight()` is the
/// surviving probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointState<T> {
    amps: [[Complex<T>; 2]; 2],
    basis: BasisLabel,
}

/// Outcome probabilities for analyzers along `±a` (particle 1) and `±b` (particle 2).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointProbabilities<T> {
    pub pp: T,
    pub pm: T,
    pub mp: T,
    pub mm: T,
    /// `1 − (pp + pm + mp + mm)`: probability the pair did not survive the channels.
    pub lost: T,
}

impl<T: Real> JointProbabilities<T> {
    pub fn detected(&self) -> T {
        self.pp + self.pm + self.mp + self.mm
    }

    /// `P₊₊ + P₋₋ − P₊₋ − P₋₊`.
    pub fn correlation(&self) -> T {
        self.pp + self.mm - self.pm - self.mp
    }

    /// Correlation conditioned on both particles surviving.
    pub fn normalized_correlation(&self) -> Result<T> {
        let d = self.detected();
        if d <= T::zero() {
            return Err(Error::DegenerateState("no surviving pairs".into()));
        }
        Ok(self.correlation() / d)
    }
}

/// Post-measurement state of particle 2 and the probability of the branch.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionalState<T> {
    pub state: Spinor<T>,
    pub probability: T,
}

impl<T: Real> ConditionalState<T> {
    pub fn bloch(&self) -> BlochVector<T> {
        spinor_to_bloch(&self.state).expect("conditional state is normalized")
    }
}

impl<T: Real> JointState<T> {
    pub fn from_amplitudes(amps: [[Complex<T>; 2]; 2], basis: BasisLabel) -> Self {
        JointState { amps, basis }
    }

    pub fn product(a: &Spinor<T>, b: &Spinor<T>, basis: BasisLabel) -> Self {
        let sa = [a.up, a.down];
        let sb = [b.up, b.down];
        let mut amps = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in amps.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate() {
                *c = sa[i] * sb[j];
            }
        }
        Self::from_amplitudes(amps, basis)
    }

    pub fn basis(&self) -> BasisLabel {
        self.basis
    }

    pub fn amplitudes(&self) -> [[Complex<T>; 2]; 2] {
        self.amps
    }

    /// Amplitude of `|e1⟩₁|e2⟩₂`; both elements must belong to this state's basis.
    pub fn amplitude(&self, e1: BasisElement, e2: BasisElement) -> Result<Complex<T>> {
        let i = self.basis.position(e1);
        let j = self.basis.position(e2);
        match (i, j) {
            (Some(i), Some(j)) => Ok(self.amps[i][j]),
            _ => Err(Error::BasisMismatch {
                from: e1.basis(),
                to: self.basis,
            }),
        }
    }

    /// Squared norm.
    pub fn weight(&self) -> T {
        self.amps.iter().flatten().map(|c| c.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &Self) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for i in 0..2 {
            for j in 0..2 {
                acc = acc + self.amps[i][j].conj() * other.amps[i][j];
            }
        }
        acc
    }

    /// Same ray, global phase ignored. Both states must share a basis label.
    pub fn same_ray(&self, other: &Self, tol: T) -> bool {
        if self.basis != other.basis {
            return false;
        }
        let (wa, wb) = (self.weight(), other.weight());
        wa > T::zero() && wb > T::zero() && (self.inner(other).norm_sqr() / (wa * wb) - T::one()).abs() <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for i in 0..2 {
            for j in 0..2 {
                worst = worst.max((self.amps[i][j] - other.amps[i][j]).norm());
            }
        }
        worst
    }

    /// Applies `a ⊗ b` to the raw amplitudes, keeping the basis label.
    fn transform(&self, a: &Operator2<T>, b: &Operator2<T>) -> [[Complex<T>; 2]; 2] {
        let mut out = [[Complex::new(T::zero(), T::zero()); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let mut acc = Complex::new(T::zero(), T::zero());
                for k in 0..2 {
                    for l in 0..2 {
                        acc = acc + a.m[i][k] * b.m[j][l] * self.amps[k][l];
                    }
                }
                *slot = acc;
            }
        }
        out
    }

    /// Re-expresses both particles over `to`.
    pub fn in_basis(&self, to: BasisLabel) -> Result<Self> {
        if self.basis.system() != to.system() {
            return Err(Error::BasisMismatch { from: self.basis, to });
        }
        if self.basis == to {
            return Ok(*self);
        }
        let h = basis_change_operator::<T>();
        Ok(Self::from_amplitudes(self.transform(&h, &h), to))
    }

    pub fn in_pole_basis(&self) -> Self {
        let pole = BasisLabel::pole_basis(self.basis.system());
        self.in_basis(pole).expect("pole basis of the same system")
    }

    /// `(a ⊗ b)|ψ⟩` with both operators written in the pole basis; the result is in the pole basis.
    pub fn apply_local(&self, a: &Operator2<T>, b: &Operator2<T>) -> Self {
        let pole = self.in_pole_basis();
        Self::from_amplitudes(pole.transform(a, b), pole.basis)
    }

    /// `⟨ψ|a ⊗ b|ψ⟩` (real part), operators in the pole basis.
    pub fn expectation(&self, a: &Operator2<T>, b: &Operator2<T>) -> T {
        let pole = self.in_pole_basis();
        let image = Self::from_amplitudes(pole.transform(a, b), pole.basis);
        pole.inner(&image).re
    }

    /// Joint probabilities for projective analyzers along `±a` and `±b`.
    pub fn joint_probabilities(&self, a: &BlochVector<T>, b: &BlochVector<T>) -> Result<JointProbabilities<T>> {
        a.ensure_unit()?;
        b.ensure_unit()?;
        let w = self.weight();
        if w <= T::min_positive_value() {
            return Err(Error::DegenerateState("joint state has zero weight".into()));
        }
        let (pa, ma) = (Operator2::projector(a), Operator2::projector(&-*a));
        let (pb, mb) = (Operator2::projector(b), Operator2::projector(&-*b));
        let nonneg = |x: T| x.max(T::zero());
        let pp = nonneg(self.expectation(&pa, &pb));
        let pm = nonneg(self.expectation(&pa, &mb));
        let mp = nonneg(self.expectation(&ma, &pb));
        let mm = nonneg(self.expectation(&ma, &mb));
        Ok(JointProbabilities {
            pp,
            pm,
            mp,
            mm,
            lost: T::one() - (pp + pm + mp + mm),
        })
    }

    /// Projects particle 1 onto `sign·axis` and returns the normalized state of particle 2.
    pub fn conditional_state(&self, axis: &BlochVector<T>, sign: i8) -> Result<ConditionalState<T>> {
        axis.ensure_unit()?;
        let dir = match sign {
            1 => *axis,
            -1 => -*axis,
            _ => return Err(Error::Domain(format!("outcome sign must be ±1, got {sign}"))),
        };
        let m = super::spinor::bloch_to_spinor(&dir)?;
        let c = self.in_pole_basis().amps;
        let bra = [m.up.conj(), m.down.conj()];
        let v = Spinor::new(bra[0] * c[0][0] + bra[1] * c[1][0], bra[0] * c[0][1] + bra[1] * c[1][1]);
        let probability = v.weight();
        if probability <= T::epsilon() * T::epsilon() {
            return Err(Error::DegenerateState("outcome branch has zero probability".into()));
        }
        let (state, _) = v.normalized()?;
        Ok(ConditionalState { state, probability })
    }
}

/// The antisymmetric pair state written over `basis` as it reads in that basis:
///
/// * Circular: `(|L⟩|R⟩ − |R⟩|L⟩)/√2`
/// * Linear: `(|H⟩|V⟩ − |V⟩|H⟩)/√2`
/// * Mass: `(|K_L⟩|K_S⟩ − |K_S⟩|K_L⟩)/√2`
/// * Strangeness: `(|K⁰⟩|K̄⁰⟩ − |K̄⁰⟩|K⁰⟩)/√2`
///
/// The two forms of each system are the same vector, not merely the same ray.
pub fn singlet<T: Real>(basis: BasisLabel) -> JointState<T> {
    use BasisElement::*;
    let (first, second) = match basis {
        BasisLabel::Circular => (L, R),
        BasisLabel::Linear => (H, V),
        BasisLabel::Mass => (KLong, KShort),
        BasisLabel::Strangeness => (K0, K0Bar),
    };
    let h = T::FRAC_1_SQRT_2();
    let i = basis.position(first).expect("element of basis");
    let j = basis.position(second).expect("element of basis");
    let mut amps = [[Complex::new(T::zero(), T::zero()); 2]; 2];
    amps[i][j] = Complex::new(h, T::zero());
    amps[j][i] = Complex::new(-h, T::zero());
    JointState::from_amplitudes(amps, basis)
}
