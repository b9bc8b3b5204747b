//! Linear maps between class spaces.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::vector::RationalVector;
use crate::Rational;

/// A `rows × cols` matrix of exact rationals acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl LinearMap {
    /// Builds a map from its rows. All rows must have the same length.
    pub fn from_rows(rows: Vec<RationalVector>) -> Result<Self> {
        let cols = rows.first().map_or(0, RationalVector::dim);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            row.check_dim(cols)?;
            entries.extend(row.into_coords());
        }
        Ok(Self { rows: n, cols, entries })
    }

    pub fn from_int_rows<const C: usize>(rows: &[[i64; C]]) -> Self {
        Self::from_rows(rows.iter().map(|r| RationalVector::from_ints(r.iter().copied())).collect())
            .expect("rows of equal length")
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = alloc::vec![Rational::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Rational::one();
        }
        Self { rows: n, cols: n, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> RationalVector {
        RationalVector::new(self.entries[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn row_vectors(&self) -> Vec<RationalVector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn apply(&self, v: &RationalVector) -> Result<RationalVector> {
        if v.dim() != self.cols {
            return Err(Error::ShapeMismatch { rows: self.rows, cols: self.cols, len: v.dim() });
        }
        Ok(RationalVector::new((0..self.rows).map(|i| self.row(i).dot(v)).collect()))
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.entry(i, j).clone());
            }
        }
        Self { rows: self.cols, cols: self.rows, entries }
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if other.rows != self.cols {
            return Err(Error::ShapeMismatch { rows: self.rows, cols: self.cols, len: other.rows });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Rational::zero();
                for k in 0..self.cols {
                    acc += self.entry(i, k) * other.entry(k, j);
                }
                entries.push(acc);
            }
        }
        Ok(Self { rows: self.rows, cols: other.cols, entries })
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::SingularMatrix);
        }
        let n = self.rows;
        let mut a: Vec<Vec<Rational>> = (0..n).map(|i| self.row(i).into_coords()).collect();
        let mut inv: Vec<Vec<Rational>> = (0..n).map(|i| RationalVector::unit(n, i).into_coords()).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMatrix)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] /= &p;
                inv[col][j] /= &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let da = &f * &a[col][j];
                    let di = &f * &inv[col][j];
                    a[r][j] -= da;
                    inv[r][j] -= di;
                }
            }
        }
        Ok(Self { rows: n, cols: n, entries: inv.into_iter().flatten().collect() })
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }
}
