//! Rational polyhedral cones held in both representations at once.
//!
//! Every [`Cone`] stores its extreme rays and lineality space alongside its
//! facet normals and implicit equations. Both sides are canonical: rays and
//! normals are primitive integer vectors projected onto the orthogonal
//! complement of the respective lineality space, lineality bases are in
//! reduced row echelon form, and all lists are sorted. Two cones are equal as
//! sets exactly when they compare equal.

use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use crate::error::Result;
use crate::linear::LinearMap;
use crate::vector::{sort_dedup, RationalVector};
use crate::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    rays: Vec<RationalVector>,
    lineality: Vec<RationalVector>,
    facets: Vec<RationalVector>,
    equations: Vec<RationalVector>,
}

impl Cone {
    /// The cone spanned by `vectors` in an ambient space of dimension `dim`.
    pub fn from_generators(dim: usize, vectors: &[RationalVector]) -> Result<Self> {
        check_dims(dim, vectors)?;
        let outer = double_description(dim, vectors);
        let inner = double_description(dim, &outer.spanning_set());
        Ok(Self::assemble(dim, inner, outer))
    }

    /// The cone `{x : x·n ≥ 0 for every n in normals}`.
    pub fn from_inequalities(dim: usize, normals: &[RationalVector]) -> Result<Self> {
        check_dims(dim, normals)?;
        let inner = double_description(dim, normals);
        let outer = double_description(dim, &inner.spanning_set());
        Ok(Self::assemble(dim, inner, outer))
    }

    pub fn zero(dim: usize) -> Self {
        Self::from_generators(dim, &[]).expect("no inputs to mismatch")
    }

    pub fn whole_space(dim: usize) -> Self {
        Self::from_inequalities(dim, &[]).expect("no inputs to mismatch")
    }

    /// The non-negative orthant.
    pub fn orthant(dim: usize) -> Self {
        let units: Vec<_> = (0..dim).map(|i| RationalVector::unit(dim, i)).collect();
        Self::from_generators(dim, &units).expect("unit vectors share a dimension")
    }

    fn assemble(dim: usize, inner: Generated, outer: Generated) -> Self {
        Self { dim, rays: inner.rays, lineality: inner.lineality, facets: outer.rays, equations: outer.lineality }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Extreme rays modulo the lineality space.
    pub fn extreme_rays(&self) -> &[RationalVector] {
        &self.rays
    }

    /// Basis of the largest linear subspace contained in the cone.
    pub fn lineality_basis(&self) -> &[RationalVector] {
        &self.lineality
    }

    /// Normals of the facets, excluding implicit equations.
    pub fn facet_rays(&self) -> &[RationalVector] {
        &self.facets
    }

    /// Basis of the orthogonal complement of the linear span of the cone.
    pub fn equations(&self) -> &[RationalVector] {
        &self.equations
    }

    /// A minimal generating set: the extreme rays together with `±v` for
    /// every lineality basis vector `v`. Sorted.
    pub fn generators(&self) -> Vec<RationalVector> {
        with_both_signs(&self.rays, &self.lineality)
    }

    /// A minimal inequality description: facet normals together with `±e` for
    /// every implicit equation `e`. Sorted.
    pub fn facet_normals(&self) -> Vec<RationalVector> {
        with_both_signs(&self.facets, &self.equations)
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.equations.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.rays.is_empty() && self.lineality.is_empty()
    }

    pub fn dual(&self) -> Self {
        Self {
            dim: self.dim,
            rays: self.facets.clone(),
            lineality: self.equations.clone(),
            facets: self.rays.clone(),
            equations: self.lineality.clone(),
        }
    }

    pub fn contains(&self, v: &RationalVector) -> Result<bool> {
        v.check_dim(self.dim)?;
        Ok(self.facets.iter().all(|n| !n.dot(v).is_negative()) && self.equations.iter().all(|e| e.dot(v).is_zero()))
    }

    /// Containment of another cone, tested on its generators.
    pub fn contains_cone(&self, other: &Self) -> Result<bool> {
        other.check_same_dim(self)?;
        for g in other.generators() {
            if !self.contains(&g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when `v` spans an extreme ray of this cone (as a positive
    /// multiple of one of its stored rays). Only meaningful for pointed cones.
    pub fn has_extreme_ray(&self, v: &RationalVector) -> bool {
        if v.dim() != self.dim || !self.lineality.is_empty() {
            return false;
        }
        let p = v.primitive();
        self.rays.contains(&p)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        other.check_same_dim(self)?;
        let mut normals = self.facet_normals();
        normals.extend(other.facet_normals());
        Self::from_inequalities(self.dim, &normals)
    }

    /// The image cone, spanned by the images of the generators.
    pub fn apply_map(&self, map: &LinearMap) -> Result<Self> {
        let images = self.generators().iter().map(|g| map.apply(g)).collect::<Result<Vec<_>>>()?;
        if images.is_empty() && map.cols() != self.dim {
            return Err(crate::Error::ShapeMismatch { rows: map.rows(), cols: map.cols(), len: self.dim });
        }
        Self::from_generators(map.rows(), &images)
    }

    fn check_same_dim(&self, other: &Self) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(crate::Error::DimensionMismatch { expected: other.dim, found: self.dim })
        }
    }
}

fn check_dims(dim: usize, vectors: &[RationalVector]) -> Result<()> {
    vectors.iter().try_for_each(|v| v.check_dim(dim))
}

fn with_both_signs(rays: &[RationalVector], basis: &[RationalVector]) -> Vec<RationalVector> {
    let mut out: Vec<_> = rays.to_vec();
    for b in basis {
        out.push(b.clone());
        out.push(-b);
    }
    sort_dedup(out)
}

/// Canonical V-representation produced by the double description method.
#[derive(Debug)]
struct Generated {
    rays: Vec<RationalVector>,
    lineality: Vec<RationalVector>,
}

impl Generated {
    fn spanning_set(&self) -> Vec<RationalVector> {
        with_both_signs(&self.rays, &self.lineality)
    }
}

/// Tight-constraint set of a ray, as a bitset over constraint indices.
#[derive(Clone, Debug, PartialEq, Eq)]
struct ZeroSet(Vec<u64>);

impl ZeroSet {
    fn empty(n: usize) -> Self {
        Self(alloc::vec![0; n.div_ceil(64)])
    }

    fn full_below(n: usize, upto: usize) -> Self {
        let mut z = Self::empty(n);
        for i in 0..upto {
            z.insert(i);
        }
        z
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn intersection(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn is_subset(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }
}

struct Ray {
    v: RationalVector,
    zeros: ZeroSet,
}

/// Computes the extreme rays and lineality space of `{x : a·x ≥ 0 ∀ a}`.
///
/// Constraints are added one at a time. While the current cone still has
/// lineality not orthogonal to the new constraint, that lineality direction
/// is promoted to a ray and the rest of the cone is sheared onto the
/// constraint hyperplane. Otherwise the usual double description step runs,
/// combining pairs of rays on opposite sides that pass the combinatorial
/// adjacency test.
fn double_description(dim: usize, constraints: &[RationalVector]) -> Generated {
    let m = constraints.len();
    let mut lineality: Vec<RationalVector> = (0..dim).map(|i| RationalVector::unit(dim, i)).collect();
    let mut rays: Vec<Ray> = Vec::new();

    for (idx, a) in constraints.iter().enumerate() {
        if let Some(pos) = lineality.iter().position(|l| !a.dot(l).is_zero()) {
            let mut l = lineality.swap_remove(pos);
            let mut al = a.dot(&l);
            if al.is_negative() {
                l = -l;
                al = -al;
            }
            for other in lineality.iter_mut() {
                let c = a.dot(other) / &al;
                if !c.is_zero() {
                    *other = other.combine(&Rational::from_integer(1.into()), &l, &-c).primitive();
                }
            }
            for r in rays.iter_mut() {
                let c = a.dot(&r.v) / &al;
                if !c.is_zero() {
                    r.v = r.v.combine(&Rational::from_integer(1.into()), &l, &-c).primitive();
                }
                r.zeros.insert(idx);
            }
            rays.push(Ray { v: l.primitive(), zeros: ZeroSet::full_below(m, idx) });
            continue;
        }

        let values: Vec<Rational> = rays.iter().map(|r| a.dot(&r.v)).collect();
        let positive: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_positive()).collect();
        let negative: Vec<usize> = (0..rays.len()).filter(|&i| values[i].is_negative()).collect();
        if negative.is_empty() {
            for (r, val) in rays.iter_mut().zip(&values) {
                if val.is_zero() {
                    r.zeros.insert(idx);
                }
            }
            continue;
        }

        let mut fresh = Vec::new();
        for &p in &positive {
            for &n in &negative {
                let common = rays[p].zeros.intersection(&rays[n].zeros);
                let adjacent = rays.iter().enumerate().all(|(k, r)| k == p || k == n || !common.is_subset(&r.zeros));
                if !adjacent {
                    continue;
                }
                let v = rays[n].v.combine(&values[p], &rays[p].v, &-&values[n]).primitive();
                let mut zeros = common;
                zeros.insert(idx);
                fresh.push(Ray { v, zeros });
            }
        }

        let mut kept = Vec::with_capacity(rays.len() + fresh.len());
        for (mut r, val) in rays.into_iter().zip(values) {
            if val.is_negative() {
                continue;
            }
            if val.is_zero() {
                r.zeros.insert(idx);
            }
            kept.push(r);
        }
        kept.extend(fresh);
        rays = kept;
    }

    let lineality = echelon_basis(lineality);
    let orthogonal = gram_schmidt(&lineality);
    let rays = rays.into_iter().map(|r| project_out(&r.v, &orthogonal).primitive()).filter(|v| !v.is_zero()).collect();
    Generated { rays: sort_dedup(rays), lineality }
}

/// Reduced row echelon basis of the span of `vectors`, rows made primitive.
pub(crate) fn echelon_basis(vectors: Vec<RationalVector>) -> Vec<RationalVector> {
    let Some(dim) = vectors.first().map(RationalVector::dim) else {
        return Vec::new();
    };
    let mut rows: Vec<Vec<Rational>> = vectors.into_iter().map(RationalVector::into_coords).collect();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let p = rows[rank][col].clone();
        for x in rows[rank].iter_mut() {
            *x /= &p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rows.truncate(rank);
    rows.into_iter().map(|r| RationalVector::new(r).primitive()).collect()
}

/// Rank of the span of `vectors`.
pub fn rank(vectors: &[RationalVector]) -> usize {
    echelon_basis(vectors.to_vec()).len()
}

fn gram_schmidt(basis: &[RationalVector]) -> Vec<RationalVector> {
    let mut out: Vec<RationalVector> = Vec::with_capacity(basis.len());
    for b in basis {
        let v = project_out(b, &out);
        if !v.is_zero() {
            out.push(v);
        }
    }
    out
}

/// Removes from `v` its components along the pairwise orthogonal `basis`.
fn project_out(v: &RationalVector, basis: &[RationalVector]) -> RationalVector {
    let mut v = v.clone();
    for b in basis {
        let c = v.dot(b) / b.dot(b);
        if !c.is_zero() {
            v = &v - &b.scale(&c);
        }
    }
    v
}
