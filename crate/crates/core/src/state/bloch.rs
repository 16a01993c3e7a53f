use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Point on (or inside) the Bloch/Poincaré sphere.
///
/// The poles are the circular polarizations (L north, R south) for photons and
/// the mass eigenstates (K_S north, K_L south) for kaons; the equatorial `+x`
/// point is V or K⁰.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BlochVector<T> {
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> BlochVector<T> {
    /// Raw constructor; no normalization check.
    pub fn new(x: T, y: T, z: T) -> Self {
        BlochVector { x, y, z }
    }

    /// Constructor for a pure state; rejects vectors that are not unit length.
    pub fn unit(x: T, y: T, z: T) -> Result<Self> {
        let v = Self::new(x, y, z);
        v.ensure_unit()?;
        Ok(v)
    }

    /// Builds `(√(1−η²)cosφ, √(1−η²)sinφ, η)`.
    pub fn from_angles(eta: T, phi: T) -> Result<Self> {
        if !(eta >= -T::one() && eta <= T::one()) {
            return Err(Error::InvalidState(format!("eta = {eta} outside [-1, 1]")));
        }
        let rho = (T::one() - eta * eta).max(T::zero()).sqrt();
        Ok(Self::new(rho * phi.cos(), rho * phi.sin(), eta))
    }

    pub fn north() -> Self {
        Self::new(T::zero(), T::zero(), T::one())
    }

    pub fn south() -> Self {
        Self::new(T::zero(), T::zero(), -T::one())
    }

    /// Equatorial point at azimuth `phi`; photon linear analyzers live here.
    pub fn equator(phi: T) -> Self {
        Self::new(phi.cos(), phi.sin(), T::zero())
    }

    /// Polar coordinate η (the `z` component).
    pub fn eta(&self) -> T {
        self.z
    }

    /// Azimuth φ in `[0, 2π)`; zero at the poles.
    pub fn phi(&self) -> T {
        let phi = self.y.atan2(self.x);
        if phi < T::zero() {
            phi + T::TAU()
        } else {
            phi
        }
    }

    pub fn norm(&self) -> T {
        self.dot(self).sqrt()
    }

    pub fn dot(&self, other: &Self) -> T {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(&self, other: &Self) -> Self {
        Self::new(
            self.y * other.z - self.z * other.y,
            self.z * other.x - self.x * other.z,
            self.x * other.y - self.y * other.x,
        )
    }

    pub fn scale(&self, k: T) -> Self {
        Self::new(self.x * k, self.y * k, self.z * k)
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= T::epsilon() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(self.scale(T::one() / n))
    }

    pub fn ensure_unit(&self) -> Result<()> {
        let n = self.norm();
        if (n - T::one()).abs() > T::input_tolerance() || !n.is_finite() {
            return Err(Error::InvalidState(format!("Bloch vector norm {n} is not 1")));
        }
        Ok(())
    }

    /// Angle between two vectors, in `[0, π]`.
    pub fn angle_to(&self, other: &Self) -> T {
        let c = self.dot(other) / (self.norm() * other.norm());
        c.max(-T::one()).min(T::one()).acos()
    }

    /// Classical right-handed rotation by `angle` about the unit `axis` (Rodrigues).
    pub fn rotated(&self, axis: &Self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        let along = axis.scale(axis.dot(self) * (T::one() - c));
        self.scale(c) + axis.cross(self).scale(s) + along
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (self.x - other.x)
            .abs()
            .max((self.y - other.y).abs())
            .max((self.z - other.z).abs())
    }

    pub fn to_array(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    /// Uniform point on the sphere from two numbers in `[0, 1)`.
    pub fn from_uniform(u: T, v: T) -> Self {
        let eta = lit::<T>(2.0) * u - T::one();
        Self::from_angles(eta, T::TAU() * v).expect("eta in range")
    }
}

impl<T: Real> Add for BlochVector<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y, self.z + rhs.z)
    }
}

impl<T: Real> Sub for BlochVector<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y, self.z - rhs.z)
    }
}

impl<T: Real> Neg for BlochVector<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul<T> for BlochVector<T> {
    type Output = Self;
    fn mul(self, k: T) -> Self {
        self.scale(k)
    }
}
