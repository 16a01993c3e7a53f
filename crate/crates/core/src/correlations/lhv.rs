//! Deterministic local strategies and their mixtures.

use num_traits::Num;

use super::chsh::Choice;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    fn from_bit(bit: bool) -> Self {
        if bit {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Predetermined outcomes for each of the four settings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LhvStrategy {
    pub a: Sign,
    pub a_prime: Sign,
    pub b: Sign,
    pub b_prime: Sign,
}

impl LhvStrategy {
    /// Strategy number `index` (0..16); bit k set means outcome −1 on setting k in
    /// the order `a, a', b, b'`. Index 0 is "always +1".
    pub fn from_index(index: usize) -> Self {
        assert!(index < 16, "strategy index {index} out of range");
        let bit = |k: usize| Sign::from_bit(index >> k & 1 == 1);
        LhvStrategy {
            a: bit(0),
            a_prime: bit(1),
            b: bit(2),
            b_prime: bit(3),
        }
    }

    pub fn all() -> [LhvStrategy; 16] {
        std::array::from_fn(Self::from_index)
    }

    pub fn alice(&self, c: Choice) -> Sign {
        match c {
            Choice::Unprimed => self.a,
            Choice::Primed => self.a_prime,
        }
    }

    pub fn bob(&self, c: Choice) -> Sign {
        match c {
            Choice::Unprimed => self.b,
            Choice::Primed => self.b_prime,
        }
    }

    /// `μ(a)μ(b) − μ(a)μ(b') + μ(a')μ(b) + μ(a')μ(b')`, always ±2.
    pub fn chsh_value(&self) -> i8 {
        let (a, ap, b, bp) = (
            self.a.value(),
            self.a_prime.value(),
            self.b.value(),
            self.b_prime.value(),
        );
        a * (b - bp) + ap * (b + bp)
    }
}

fn signed<W: Num>(x: i8) -> W {
    match x {
        2 => W::one() + W::one(),
        1 => W::one(),
        -1 => W::zero() - W::one(),
        -2 => W::zero() - W::one() - W::one(),
        _ => unreachable!("CHSH values of deterministic strategies are ±2"),
    }
}

/// Checks that `weights` is a probability distribution up to `tolerance` on the sum.
pub fn validate_weights<W: Num + Copy + PartialOrd>(weights: &[W; 16], tolerance: W) -> Result<()> {
    if weights
        .iter()
        .any(|w| w.partial_cmp(&W::zero()).is_none_or(|o| o.is_lt()))
    {
        return Err(Error::Domain("strategy weights must be non-negative".into()));
    }
    let total = weights.iter().fold(W::zero(), |acc, &w| acc + w);
    let excess = if total > W::one() {
        total - W::one()
    } else {
        W::one() - total
    };
    if excess > tolerance {
        return Err(Error::Domain("strategy weights must sum to 1".into()));
    }
    Ok(())
}

/// CHSH value of a mixture of the 16 deterministic strategies, by exact enumeration.
///
/// Generic over the weight type so exact rationals can be used; pass a zero
/// tolerance in that case. Floating-point callers typically use `1e-12`.
pub fn lhv_bound<W: Num + Copy + PartialOrd>(weights: &[W; 16], tolerance: W) -> Result<W> {
    validate_weights(weights, tolerance)?;
    Ok(LhvStrategy::all()
        .iter()
        .zip(weights)
        .fold(W::zero(), |acc, (s, &w)| acc + w * signed::<W>(s.chsh_value())))
}
