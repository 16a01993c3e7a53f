use num_complex::Complex;

use super::bloch::BlochVector;
use super::operator::Operator2;
use super::spinor::Spinor;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum System {
    Photon,
    Kaon,
}

/// Named basis of one of the two systems.
///
/// Element order is `(first, second)` with the first element at the north
/// pole (pole bases) or at `+x` (equatorial bases):
///
/// | basis       | first | second | sphere position |
/// |-------------|-------|--------|-----------------|
/// | Circular    | L     | R      | poles           |
/// | Linear      | V     | H      | ±x on equator   |
/// | Mass        | K_S   | K_L    | poles           |
/// | Strangeness | K⁰    | K̄⁰     | ±x on equator   |
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisLabel {
    Circular,
    Linear,
    Mass,
    Strangeness,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisElement {
    L,
    R,
    V,
    H,
    KShort,
    KLong,
    K0,
    K0Bar,
}

impl BasisLabel {
    pub fn system(self) -> System {
        match self {
            BasisLabel::Circular | BasisLabel::Linear => System::Photon,
            BasisLabel::Mass | BasisLabel::Strangeness => System::Kaon,
        }
    }

    /// Pole bases are the ones spinor components and Bloch vectors refer to.
    pub fn is_pole(self) -> bool {
        matches!(self, BasisLabel::Circular | BasisLabel::Mass)
    }

    pub fn pole_basis(system: System) -> Self {
        match system {
            System::Photon => BasisLabel::Circular,
            System::Kaon => BasisLabel::Mass,
        }
    }

    pub fn elements(self) -> [BasisElement; 2] {
        use BasisElement::*;
        match self {
            BasisLabel::Circular => [L, R],
            BasisLabel::Linear => [V, H],
            BasisLabel::Mass => [KShort, KLong],
            BasisLabel::Strangeness => [K0, K0Bar],
        }
    }

    /// Position of `e` in this basis, if it belongs to it.
    pub fn position(self, e: BasisElement) -> Option<usize> {
        self.elements().iter().position(|&x| x == e)
    }
}

impl BasisElement {
    pub fn basis(self) -> BasisLabel {
        use BasisElement::*;
        match self {
            L | R => BasisLabel::Circular,
            V | H => BasisLabel::Linear,
            KShort | KLong => BasisLabel::Mass,
            K0 | K0Bar => BasisLabel::Strangeness,
        }
    }

    /// Sphere point representing this element.
    pub fn bloch<T: Real>(self) -> BlochVector<T> {
        use BasisElement::*;
        let (o, z) = (T::one(), T::zero());
        match self {
            L | KShort => BlochVector::new(z, z, o),
            R | KLong => BlochVector::new(z, z, -o),
            V | K0 => BlochVector::new(o, z, z),
            H | K0Bar => BlochVector::new(-o, z, z),
        }
    }

    /// Amplitudes of this element in the pole basis of its system (real, no `i`).
    pub fn pole_spinor<T: Real>(self) -> Spinor<T> {
        let basis = self.basis();
        let idx = basis.position(self).expect("element belongs to its basis");
        let unit = if idx == 0 {
            Spinor::from_real(T::one(), T::zero())
        } else {
            Spinor::from_real(T::zero(), T::one())
        };
        if basis.is_pole() {
            unit
        } else {
            basis_change_operator::<T>().apply(&unit)
        }
    }
}

/// Real Hadamard-type map between the pole and equatorial bases of either system.
///
/// `|V⟩ = (|L⟩+|R⟩)/√2`, `|H⟩ = (|L⟩−|R⟩)/√2` and conversely, and likewise
/// `|K⁰⟩ = (|K_S⟩+|K_L⟩)/√2`, `|K̄⁰⟩ = (|K_S⟩−|K_L⟩)/√2`. The map is its own inverse.
pub fn basis_change_operator<T: Real>() -> Operator2<T> {
    let h = T::FRAC_1_SQRT_2();
    let p = Complex::new(h, T::zero());
    Operator2::new(p, p, p, -p)
}

/// Re-expresses `s`, given over `from`, over `to`.
pub fn basis_change<T: Real>(s: &Spinor<T>, from: BasisLabel, to: BasisLabel) -> Result<Spinor<T>> {
    if from.system() != to.system() {
        return Err(Error::BasisMismatch { from, to });
    }
    if from == to {
        return Ok(*s);
    }
    Ok(basis_change_operator::<T>().apply(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::spinor::spinor_to_bloch;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn k0_in_mass_basis() {
        let k0 = Spinor::<f64>::from_real(1.0, 0.0);
        let m = basis_change(&k0, BasisLabel::Strangeness, BasisLabel::Mass).unwrap();
        assert!(m.max_abs_diff(&Spinor::from_real(FRAC_1_SQRT_2, FRAC_1_SQRT_2)) < 1e-15);
        let k0bar = Spinor::<f64>::from_real(0.0, 1.0);
        let m = basis_change(&k0bar, BasisLabel::Strangeness, BasisLabel::Mass).unwrap();
        assert!(m.max_abs_diff(&Spinor::from_real(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)) < 1e-15);
    }

    #[test]
    fn linear_states_in_circular_basis() {
        let l = Spinor::<f64>::from_real(1.0, 0.0);
        let as_linear = basis_change(&l, BasisLabel::Circular, BasisLabel::Linear).unwrap();
        // |L⟩ = (|V⟩ + |H⟩)/√2
        assert!(as_linear.max_abs_diff(&Spinor::from_real(FRAC_1_SQRT_2, FRAC_1_SQRT_2)) < 1e-15);
        let r = Spinor::<f64>::from_real(0.0, 1.0);
        let as_linear = basis_change(&r, BasisLabel::Circular, BasisLabel::Linear).unwrap();
        // |R⟩ = (|V⟩ − |H⟩)/√2
        assert!(as_linear.max_abs_diff(&Spinor::from_real(FRAC_1_SQRT_2, -FRAC_1_SQRT_2)) < 1e-15);
    }

    #[test]
    fn photon_and_kaon_maps_coincide() {
        let s = Spinor::new(Complex::new(0.3, -0.2), Complex::new(-0.7, 0.1));
        let a = basis_change(&s, BasisLabel::Linear, BasisLabel::Circular).unwrap();
        let b = basis_change(&s, BasisLabel::Strangeness, BasisLabel::Mass).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn involution() {
        let s = Spinor::new(Complex::new(0.3, -0.2), Complex::new(-0.7, 0.1));
        let there = basis_change(&s, BasisLabel::Linear, BasisLabel::Circular).unwrap();
        let back = basis_change(&there, BasisLabel::Circular, BasisLabel::Linear).unwrap();
        assert!(back.max_abs_diff(&s) < 1e-15);
    }

    #[test]
    fn mismatched_systems() {
        let s = Spinor::<f64>::from_real(1.0, 0.0);
        assert_eq!(
            basis_change(&s, BasisLabel::Linear, BasisLabel::Mass),
            Err(Error::BasisMismatch {
                from: BasisLabel::Linear,
                to: BasisLabel::Mass
            })
        );
    }

    #[test]
    fn element_spinors_sit_at_their_sphere_points() {
        use BasisElement::*;
        for e in [L, R, V, H, KShort, KLong, K0, K0Bar] {
            let m = spinor_to_bloch(&e.pole_spinor::<f64>()).unwrap();
            assert!(m.max_abs_diff(&e.bloch()) < 1e-15, "{e:?}");
        }
    }
}
