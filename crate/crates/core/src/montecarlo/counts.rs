use std::iter::Sum;
use std::ops::Add;

use crate::correlations::Sign;

/// Tally of pair outcomes. Coincidences need both particles detected; a
/// single means only one side fired; `lost` pairs left no detection at all.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct CoincidenceCounts {
    pub pp: u64,
    pub pm: u64,
    pub mp: u64,
    pub mm: u64,
    pub single_a_plus: u64,
    pub single_a_minus: u64,
    pub single_b_plus: u64,
    pub single_b_minus: u64,
    pub lost: u64,
}

impl CoincidenceCounts {
    /// Records one pair; `None` means that side produced no detection.
    pub fn record(&mut self, a: Option<Sign>, b: Option<Sign>) {
        use Sign::*;
        match (a, b) {
            (Some(Plus), Some(Plus)) => self.pp += 1,
            (Some(Plus), Some(Minus)) => self.pm += 1,
            (Some(Minus), Some(Plus)) => self.mp += 1,
            (Some(Minus), Some(Minus)) => self.mm += 1,
            (Some(Plus), None) => self.single_a_plus += 1,
            (Some(Minus), None) => self.single_a_minus += 1,
            (None, Some(Plus)) => self.single_b_plus += 1,
            (None, Some(Minus)) => self.single_b_minus += 1,
            (None, None) => self.lost += 1,
        }
    }

    pub fn coincidences(&self) -> u64 {
        self.pp + self.pm + self.mp + self.mm
    }

    pub fn single_a(&self) -> u64 {
        self.single_a_plus + self.single_a_minus
    }

    pub fn single_b(&self) -> u64 {
        self.single_b_plus + self.single_b_minus
    }

    pub fn total(&self) -> u64 {
        self.coincidences() + self.single_a() + self.single_b() + self.lost
    }

    /// Alice's detections with outcome +1, with or without a partner.
    pub fn alice_plus(&self) -> u64 {
        self.pp + self.pm + self.single_a_plus
    }

    pub fn alice_detected(&self) -> u64 {
        self.coincidences() + self.single_a()
    }

    pub fn bob_plus(&self) -> u64 {
        self.pp + self.mp + self.single_b_plus
    }

    pub fn bob_detected(&self) -> u64 {
        self.coincidences() + self.single_b()
    }
}

impl Add for CoincidenceCounts {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        CoincidenceCounts {
            pp: self.pp + o.pp,
            pm: self.pm + o.pm,
            mp: self.mp + o.mp,
            mm: self.mm + o.mm,
            single_a_plus: self.single_a_plus + o.single_a_plus,
            single_a_minus: self.single_a_minus + o.single_a_minus,
            single_b_plus: self.single_b_plus + o.single_b_plus,
            single_b_minus: self.single_b_minus + o.single_b_minus,
            lost: self.lost + o.lost,
        }
    }
}

impl Sum for CoincidenceCounts {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::default(), Add::add)
    }
}
