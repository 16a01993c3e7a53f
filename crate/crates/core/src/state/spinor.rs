use num_complex::Complex;

use super::bloch::BlochVector;
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Two complex amplitudes over an ordered basis `(first, second)`.
///
/// Unless stated otherwise the basis is the pole basis of the system, so the
/// first component is the north pole (L or K_S). Post-channel spinors are not
/// renormalized; their squared norm is the surviving weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spinor<T> {
    pub up: Complex<T>,
    pub down: Complex<T>,
}

impl<T: Real> Spinor<T> {
    pub fn new(up: Complex<T>, down: Complex<T>) -> Self {
        Spinor { up, down }
    }

    pub fn from_real(up: T, down: T) -> Self {
        Self::new(Complex::new(up, T::zero()), Complex::new(down, T::zero()))
    }

    /// Squared norm; 1 for a normalized state.
    pub fn weight(&self) -> T {
        self.up.norm_sqr() + self.down.norm_sqr()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        self.up.conj() * other.up + self.down.conj() * other.down
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Self::new(self.up * k, self.down * k)
    }

    /// Returns the normalized state together with the weight it carried.
    pub fn normalized(&self) -> Result<(Self, T)> {
        let w = self.weight();
        if w <= T::min_positive_value() || !w.is_finite() {
            return Err(Error::DegenerateState("spinor has zero weight".into()));
        }
        let k = Complex::new(T::one() / w.sqrt(), T::zero());
        Ok((self.scale(k), w))
    }

    /// True when both spinors describe the same ray, ignoring norm and global phase.
    pub fn same_ray(&self, other: &Self, tol: T) -> bool {
        let wa = self.weight();
        let wb = other.weight();
        if wa <= T::zero() || wb <= T::zero() {
            return false;
        }
        (self.inner(other).norm_sqr() / (wa * wb) - T::one()).abs() <= tol
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.up - other.up).norm().max((self.down - other.down).norm())
    }
}

/// Spinor `(√((1+η)/2)·e^{−iφ/2}, √((1−η)/2)·e^{+iφ/2})` of a unit Bloch vector.
pub fn bloch_to_spinor<T: Real>(m: &BlochVector<T>) -> Result<Spinor<T>> {
    m.ensure_unit()?;
    let m = m.normalized()?;
    let half = lit::<T>(0.5);
    let eta = m.eta().max(-T::one()).min(T::one());
    let half_phi = m.phi() * half;
    let up = ((T::one() + eta) * half).sqrt();
    let down = ((T::one() - eta) * half).sqrt();
    Ok(Spinor::new(
        Complex::from_polar(up, -half_phi),
        Complex::from_polar(down, half_phi),
    ))
}

/// Pauli expectation values `⟨s|σ⃗|s⟩ / ⟨s|s⟩`.
pub fn spinor_to_bloch<T: Real>(s: &Spinor<T>) -> Result<BlochVector<T>> {
    let w = s.weight();
    if w <= T::min_positive_value() || !w.is_finite() {
        return Err(Error::InvalidState("zero spinor has no Bloch vector".into()));
    }
    let cross = s.up.conj() * s.down;
    let two = lit::<T>(2.0);
    Ok(BlochVector::new(
        two * cross.re / w,
        two * cross.im / w,
        (s.up.norm_sqr() - s.down.norm_sqr()) / w,
    ))
}

/// `|⟨m₁|m₂⟩|²` evaluated on the spinors.
pub fn overlap<T: Real>(m1: &BlochVector<T>, m2: &BlochVector<T>) -> Result<T> {
    let a = bloch_to_spinor(m1)?;
    let b = bloch_to_spinor(m2)?;
    Ok(a.inner(&b).norm_sqr())
}
