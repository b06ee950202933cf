use alloc::vec::Vec;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::rational::Rat;

/// A point or direction of the ambient rational vector space.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RatVec(pub Vec<Rat>);

impl RatVec {
    pub fn zeros(dim: usize) -> Self {
        RatVec(alloc::vec![Rat::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &RatVec) -> Rat {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scaled(&self, k: &Rat) -> RatVec {
        RatVec(self.0.iter().map(|x| x * k).collect())
    }

    /// `self + k * other`
    pub fn add_scaled(&self, k: &Rat, other: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&other.0).map(|(a, b)| a + k * b).collect())
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rat> {
        self.0.iter()
    }
}

impl From<Vec<Rat>> for RatVec {
    fn from(v: Vec<Rat>) -> Self {
        RatVec(v)
    }
}

impl Add for &RatVec {
    type Output = RatVec;
    fn add(self, rhs: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RatVec {
    type Output = RatVec;
    fn sub(self, rhs: &RatVec) -> RatVec {
        RatVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &RatVec {
    type Output = RatVec;
    fn neg(self) -> RatVec {
        RatVec(self.0.iter().map(|a| -a).collect())
    }
}

/// An integral lattice vector: ray generators, edge directions, contact orders.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVec(pub Vec<i64>);

impl IntVec {
    pub fn zeros(dim: usize) -> Self {
        IntVec(alloc::vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// gcd of the absolute values of the entries; zero for the zero vector.
    pub fn content(&self) -> u64 {
        self.0
            .iter()
            .fold(0u64, |g, &x| g.gcd(&x.unsigned_abs()))
    }

    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    /// Splits a nonzero vector as `k * primitive`.
    pub fn primitive_part(&self) -> Option<(IntVec, u64)> {
        let g = self.content();
        if g == 0 {
            return None;
        }
        Some((IntVec(self.0.iter().map(|&x| x / g as i64).collect()), g))
    }

    /// First nonzero entry is positive.
    pub fn is_lex_positive(&self) -> bool {
        self.0.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0)
    }

    pub fn scaled(&self, k: i64) -> IntVec {
        IntVec(self.0.iter().map(|&x| x * k).collect())
    }

    pub fn to_rat(&self) -> RatVec {
        RatVec(self.0.iter().map(|&x| Rat::from_integer(BigInt::from(x))).collect())
    }

    /// Recovers an integral vector from a rational one with integer entries.
    pub fn from_rat(v: &RatVec) -> Option<IntVec> {
        v.0.iter()
            .map(|x| {
                if x.is_integer() {
                    i64::try_from(x.to_integer()).ok()
                } else {
                    None
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(IntVec)
    }

    pub fn abs_max(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }
}

impl Add for &IntVec {
    type Output = IntVec;
    fn add(self, rhs: &IntVec) -> IntVec {
        IntVec(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for &IntVec {
    type Output = IntVec;
    fn neg(self) -> IntVec {
        IntVec(self.0.iter().map(|a| -a).collect())
    }
}
