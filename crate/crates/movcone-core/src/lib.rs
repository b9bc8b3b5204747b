//! Exact computation of the cone of moving curves of numerical models of
//! smooth Fano three- and fourfolds.
//!
//! The crate is `no_std` and needs only `alloc`. It covers
//!
//! * [`cone`]: rational polyhedral cones with synchronized generator and
//!   inequality representations,
//! * [`model`]: the numerical data of one birational model and its
//!   consistency checks,
//! * [`flip`]: transport of classes across flips, verification of declared
//!   flip data and enumeration of flip sequences,
//! * [`pipeline`]: assembly of the finite equation set and the moving cone,
//! * [`corpus`]: bundled reference models.

#![no_std]

extern crate alloc;

pub mod cone;
pub mod corpus;
mod error;
pub mod flip;
pub mod linear;
pub mod model;
pub mod pipeline;
pub mod report;
pub mod vector;

pub use cone::Cone;
pub use error::{Error, Result};
pub use flip::{FlipSequence, FlipSpec, FlipStep};
pub use linear::LinearMap;
pub use model::{ClassSpace, ExtremalRayData, ModelGraph, RayKind, VarietyModel};
pub use pipeline::{EquationSet, Provenance};
pub use report::{Check, Issue, ValidationReport};
pub use vector::RationalVector;

/// Arbitrary-precision exact rational.
pub type Rational = num_rational::BigRational;
