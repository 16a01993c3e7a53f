use crate::error::Result;
use crate::scalar::{lit, Real};

/// Which of a side's two settings is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Choice {
    Unprimed,
    Primed,
}

/// Alice's settings `a, a'` and Bob's `b, b'`. Angles for photons, detection
/// times (non-negative) for kaons and B-mesons.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings4<T> {
    pub a: T,
    pub a_prime: T,
    pub b: T,
    pub b_prime: T,
}

impl<T: Real> Settings4<T> {
    pub fn new(a: T, a_prime: T, b: T, b_prime: T) -> Self {
        Settings4 { a, a_prime, b, b_prime }
    }

    /// `(0, 2θ, θ, 3θ)`.
    pub fn one_parameter(theta: T) -> Self {
        Self::new(T::zero(), lit::<T>(2.0) * theta, theta, lit::<T>(3.0) * theta)
    }

    pub fn alice(&self, c: Choice) -> T {
        match c {
            Choice::Unprimed => self.a,
            Choice::Primed => self.a_prime,
        }
    }

    pub fn bob(&self, c: Choice) -> T {
        match c {
            Choice::Unprimed => self.b,
            Choice::Primed => self.b_prime,
        }
    }

    pub fn all_non_negative(&self) -> bool {
        [self.a, self.a_prime, self.b, self.b_prime]
            .iter()
            .all(|&x| x >= T::zero())
    }
}

/// The four setting pairs with the sign each correlation carries in `S`.
pub const CHSH_TERMS: [(Choice, Choice, i8); 4] = [
    (Choice::Unprimed, Choice::Unprimed, 1),
    (Choice::Unprimed, Choice::Primed, -1),
    (Choice::Primed, Choice::Unprimed, 1),
    (Choice::Primed, Choice::Primed, 1),
];

/// `S = E(a,b) − E(a,b') + E(a',b) + E(a',b')`. Local models satisfy `|S| ≤ 2`.
pub fn chsh_s<T: Real, F: FnMut(T, T) -> T>(mut e: F, s: &Settings4<T>) -> T {
    e(s.a, s.b) - e(s.a, s.b_prime) + e(s.a_prime, s.b) + e(s.a_prime, s.b_prime)
}

/// [`chsh_s`] for correlation functions that can fail (e.g. negative times).
pub fn try_chsh_s<T: Real, F: FnMut(T, T) -> Result<T>>(mut e: F, s: &Settings4<T>) -> Result<T> {
    Ok(e(s.a, s.b)? - e(s.a, s.b_prime)? + e(s.a_prime, s.b)? + e(s.a_prime, s.b_prime)?)
}

/// Violation means `|S| > 2`.
pub fn violates<T: Real>(s: T) -> bool {
    s.abs() > lit(2.0)
}
