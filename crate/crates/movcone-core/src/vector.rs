//! Exact rational coordinate vectors.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

/// A vector of exact rationals: a divisor class in N¹ or a curve class in N₁,
/// depending on context.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Self(alloc::vec![Rational::zero(); dim])
    }

    pub fn unit(dim: usize, axis: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[axis] = Rational::one();
        v
    }

    pub fn from_ints<I: IntoIterator<Item = i64>>(coords: I) -> Self {
        Self(coords.into_iter().map(|c| Rational::from_integer(BigInt::from(c))).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if self.dim() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dim() })
        }
    }

    /// Intersection pairing. Curve classes are stored in the basis dual to the
    /// divisor basis, so this is the plain dot product.
    pub fn dot(&self, other: &Self) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn try_dot(&self, other: &Self) -> Result<Rational> {
        other.check_dim(self.dim())?;
        Ok(self.dot(other))
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self(self.0.iter().map(|c| c * factor).collect())
    }

    /// `a * self + b * other`
    pub fn combine(&self, a: &Rational, other: &Self, b: &Rational) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(x, y)| a * x + b * y).collect())
    }

    /// The canonical representative of the ray through `self`: denominators
    /// cleared, entries divided by their gcd, orientation kept. The zero
    /// vector is returned unchanged.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * &lcm).to_integer()).collect();
        let gcd = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        Self(ints.into_iter().map(|c| Rational::from_integer(c / &gcd)).collect())
    }

    /// True for integer vectors with coprime entries.
    pub fn is_primitive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|c| c.is_integer()) && *self == self.primitive()
    }

    /// Positive multiples of one another (the same ray).
    pub fn same_ray(&self, other: &Self) -> bool {
        self.primitive() == other.primitive()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Rational> {
        self.0.iter()
    }
}

impl Index<usize> for RationalVector {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl Neg for &RationalVector {
    type Output = RationalVector;

    fn neg(self) -> RationalVector {
        RationalVector(self.0.iter().map(|c| -c).collect())
    }
}

impl Neg for RationalVector {
    type Output = RationalVector;

    fn neg(self) -> RationalVector {
        -&self
    }
}

impl Add for &RationalVector {
    type Output = RationalVector;

    fn add(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &RationalVector {
    type Output = RationalVector;

    fn sub(self, rhs: Self) -> RationalVector {
        RationalVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl From<Vec<Rational>> for RationalVector {
    fn from(coords: Vec<Rational>) -> Self {
        Self(coords)
    }
}

/// Comma-separated canonical rationals, e.g. `1,-1/2,0`.
impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_rational(f, c)?;
        }
        Ok(())
    }
}

/// Writes `p` or `p/q` with `q > 0` and `gcd(p, q) = 1`.
pub fn write_rational(f: &mut impl fmt::Write, c: &Rational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer())
    } else {
        debug_assert!(c.denom().is_positive());
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

/// Sorts a list of vectors lexicographically and drops exact duplicates.
pub(crate) fn sort_dedup(mut vs: Vec<RationalVector>) -> Vec<RationalVector> {
    vs.sort();
    vs.dedup();
    vs
}
