//! Planar cross-sections of cones in a rank-three class space.

use std::cmp::Ordering;

use movcone_core::{Cone, Rational, RationalVector};
use num_traits::{Signed, Zero};

#[derive(Debug, PartialEq, Eq, thiserror::Error)]
pub enum SliceError {
    #[error("cross-sections need a rank-3 space, got rank {0}")]
    Rank(usize),
    #[error("plane normal has {found} coordinates, expected {expected}")]
    NormalLength { expected: usize, found: usize },
    #[error("cone contains a line and has no bounded cross-section")]
    NotPointed,
    #[error("ray ({0}) does not meet the plane x·n = 1")]
    NotSliceable(RationalVector),
}

fn cross(a: &RationalVector, b: &RationalVector) -> RationalVector {
    RationalVector::new(vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ])
}

/// Intersects `cone` with the affine plane `{x : x·normal = 1}`.
///
/// Each extreme ray is scaled to meet the plane. Vertices are listed
/// counterclockwise as seen from the origin, starting at the
/// lexicographically smallest one.
pub fn cross_section(cone: &Cone, normal: &RationalVector) -> Result<Vec<RationalVector>, SliceError> {
    if cone.dim() != 3 {
        return Err(SliceError::Rank(cone.dim()));
    }
    if normal.dim() != 3 {
        return Err(SliceError::NormalLength { expected: 3, found: normal.dim() });
    }
    if !cone.is_pointed() {
        return Err(SliceError::NotPointed);
    }
    let mut vertices = Vec::with_capacity(cone.extreme_rays().len());
    for ray in cone.extreme_rays() {
        let height = ray.dot(normal);
        if !height.is_positive() {
            return Err(SliceError::NotSliceable(ray.clone()));
        }
        vertices.push(ray.scale(&(Rational::from_integer(1.into()) / height)));
    }
    vertices.sort();
    if vertices.len() < 3 {
        return Ok(vertices);
    }

    let count = Rational::from_integer(vertices.len().into());
    let centroid = vertices
        .iter()
        .fold(RationalVector::zero(3), |acc, v| &acc + v)
        .scale(&(Rational::from_integer(1.into()) / count));
    // Positive when b is counterclockwise from a, viewed from the origin.
    let turn = |a: &RationalVector, b: &RationalVector| -cross(a, b).dot(normal);
    let reference = &vertices[0] - &centroid;
    let half = |w: &RationalVector| {
        let t = turn(&reference, w);
        if t.is_positive() || (t.is_zero() && reference.dot(w).is_positive()) {
            0
        } else {
            1
        }
    };
    let first = vertices.remove(0);
    vertices.sort_by(|p, q| {
        let (a, b) = (p - &centroid, q - &centroid);
        half(&a).cmp(&half(&b)).then_with(|| match turn(&a, &b) {
            t if t.is_positive() => Ordering::Less,
            t if t.is_negative() => Ordering::Greater,
            _ => Ordering::Equal,
        })
    });
    vertices.insert(0, first);
    Ok(vertices)
}
