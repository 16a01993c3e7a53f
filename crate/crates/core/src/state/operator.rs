use std::ops::{Add, Mul, Sub};

use num_complex::Complex;

use super::bloch::BlochVector;
use super::spinor::{bloch_to_spinor, spinor_to_bloch, Spinor};
use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// 2×2 complex operator acting on spinors in the pole basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator2<T> {
    /// Row-major entries `[[a11, a12], [a21, a22]]`.
    pub m: [[Complex<T>; 2]; 2],
}

impl<T: Real> Operator2<T> {
    pub fn new(a11: Complex<T>, a12: Complex<T>, a21: Complex<T>, a22: Complex<T>) -> Self {
        Operator2 {
            m: [[a11, a12], [a21, a22]],
        }
    }

    pub fn diag(d1: Complex<T>, d2: Complex<T>) -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::new(d1, z, z, d2)
    }

    pub fn identity() -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self::diag(one, one)
    }

    pub fn zero() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        Self::diag(z, z)
    }

    pub fn pauli_x() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        let one = Complex::new(T::one(), T::zero());
        Self::new(z, one, one, z)
    }

    pub fn pauli_y() -> Self {
        let z = Complex::new(T::zero(), T::zero());
        let i = Complex::new(T::zero(), T::one());
        Self::new(z, -i, i, z)
    }

    pub fn pauli_z() -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self::diag(one, -one)
    }

    /// `[σ₁, σ₂, σ₃]`.
    pub fn pauli() -> [Self; 3] {
        [Self::pauli_x(), Self::pauli_y(), Self::pauli_z()]
    }

    /// `n⃗·σ⃗` for a real 3-vector.
    pub fn sigma_dot(n: &BlochVector<T>) -> Self {
        let [sx, sy, sz] = Self::pauli();
        sx.scale_real(n.x) + sy.scale_real(n.y) + sz.scale_real(n.z)
    }

    /// Projector `(I + m⃗·σ⃗)/2` onto the pure state `m⃗`.
    pub fn projector(m: &BlochVector<T>) -> Self {
        (Self::identity() + Self::sigma_dot(m)).scale_real(lit(0.5))
    }

    /// `|a⟩⟨b|`.
    pub fn outer(a: &Spinor<T>, b: &Spinor<T>) -> Self {
        Self::new(
            a.up * b.up.conj(),
            a.up * b.down.conj(),
            a.down * b.up.conj(),
            a.down * b.down.conj(),
        )
    }

    /// `e^{−i angle·n⃗·σ⃗/2}`; induces a right-handed rotation by `angle` about `axis`.
    pub fn rotation(axis: &BlochVector<T>, angle: T) -> Self {
        let half = angle * lit(0.5);
        let (s, c) = half.sin_cos();
        let minus_i_sin = Complex::new(T::zero(), -s);
        Self::identity().scale_real(c) + Self::sigma_dot(axis).scale(minus_i_sin)
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        let m = &self.m;
        Self::new(m[0][0] * k, m[0][1] * k, m[1][0] * k, m[1][1] * k)
    }

    pub fn scale_real(&self, k: T) -> Self {
        self.scale(Complex::new(k, T::zero()))
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.m;
        Self::new(m[0][0].conj(), m[1][0].conj(), m[0][1].conj(), m[1][1].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        self.m[0][0] + self.m[1][1]
    }

    pub fn det(&self) -> Complex<T> {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    pub fn apply(&self, s: &Spinor<T>) -> Spinor<T> {
        let m = &self.m;
        Spinor::new(m[0][0] * s.up + m[0][1] * s.down, m[1][0] * s.up + m[1][1] * s.down)
    }

    /// `⟨s|A|s⟩`.
    pub fn expectation(&self, s: &Spinor<T>) -> Complex<T> {
        s.inner(&self.apply(s))
    }

    pub fn commutator(&self, other: &Self) -> Self {
        *self * *other - *other * *self
    }

    /// Singular values, largest first.
    pub fn singular_values(&self) -> (T, T) {
        let gram = self.adjoint() * *self;
        let tr = gram.trace().re;
        let det = self.det().norm_sqr();
        let disc = (tr * tr - lit::<T>(4.0) * det).max(T::zero()).sqrt();
        let half = lit::<T>(0.5);
        let hi = ((tr + disc) * half).max(T::zero()).sqrt();
        let lo = ((tr - disc) * half).max(T::zero()).sqrt();
        (hi, lo)
    }

    /// Matrix exponential via the traceless split `G = cI + N`, `N² = −det(N)·I`.
    pub fn exp(&self) -> Self {
        let c = self.trace() * Complex::new(lit::<T>(0.5), T::zero());
        let n = *self - Self::identity().scale(c);
        let s = (-n.det()).sqrt();
        let s2 = s * s;
        let (cosh, sinhc) = if s.norm() < lit(1e-3) {
            let s4 = s2 * s2;
            (
                Complex::new(T::one(), T::zero()) + s2 / lit::<T>(2.0) + s4 / lit::<T>(24.0),
                Complex::new(T::one(), T::zero()) + s2 / lit::<T>(6.0) + s4 / lit::<T>(120.0),
            )
        } else {
            (s.cosh(), s.sinh() / s)
        };
        (Self::identity().scale(cosh) + n.scale(sinhc)).scale(c.exp())
    }

    /// Applies the operator to the state `m⃗` and renormalizes; also returns the surviving weight.
    ///
    /// A weight at the rounding floor of the operator's gain counts as zero.
    pub fn map_bloch(&self, m: &BlochVector<T>) -> Result<(BlochVector<T>, T)> {
        let out = self.apply(&bloch_to_spinor(m)?);
        let (gain, _) = self.singular_values();
        let floor = T::epsilon() * T::epsilon() * gain * gain;
        if out.weight() <= floor {
            return Err(Error::DegenerateState("state fully absorbed by the channel".into()));
        }
        let (normed, w) = out.normalized()?;
        Ok((spinor_to_bloch(&normed)?, w))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        let mut worst = T::zero();
        for r in 0..2 {
            for c in 0..2 {
                worst = worst.max((self.m[r][c] - other.m[r][c]).norm());
            }
        }
        worst
    }

    pub fn approx_eq(&self, other: &Self, tol: T) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        (self.adjoint() * *self).approx_eq(&Self::identity(), tol)
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.approx_eq(&self.adjoint(), tol)
    }
}

impl<T: Real> Mul for Operator2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self::new(
            a[0][0] * b[0][0] + a[0][1] * b[1][0],
            a[0][0] * b[0][1] + a[0][1] * b[1][1],
            a[1][0] * b[0][0] + a[1][1] * b[1][0],
            a[1][0] * b[0][1] + a[1][1] * b[1][1],
        )
    }
}

impl<T: Real> Add for Operator2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let a = &self.m;
        let b = &rhs.m;
        Self::new(
            a[0][0] + b[0][0],
            a[0][1] + b[0][1],
            a[1][0] + b[1][0],
            a[1][1] + b[1][1],
        )
    }
}

impl<T: Real> Sub for Operator2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + rhs.scale_real(-T::one())
    }
}
