//! Reference models with hand-derived coordinates.
//!
//! The flagship graph is the blow-up `X` of `Y = ℙ(O ⊕ O(1)²)` over ℙ² along
//! a line `l` in a fibre that misses the section `S'`, together with the
//! flips `X ⇢ X₁` (of ν) and `X ⇢ X₂` (of γ).
//!
//! Divisor basis is `(Γ, Λ, E)` with `Γ = μ*Γ'`, `Λ = μ*Λ' − E` and `E` the
//! exceptional divisor. Curve classes are written as `(c·Γ, c·Λ, c·E)`:
//!
//! * `γ = (1, 0, 0)`: line in the section, disjoint from `l`;
//! * `λ = (0, 1, 0)`: general line in a fibre of `Y → ℙ²`;
//! * `η = (0, 1, −1)`: line in a fibre of `E → l`, using `E·η = −1`;
//! * `ν = λ − η = (0, 0, 1)`: line in the fibre `F'` meeting `l`.
//!
//! `K_Y = −3Λ' − Γ'` (relative Euler sequence, `det = O(2)`), and blowing up
//! a smooth curve in a fourfold adds `2E`, so `K_X = −Γ − 3Λ − E`. Then
//! `K·γ = K·ν = −1` and `K·η = −2`. All three flips use the transported
//! bases, so every pushforward matrix is the identity.

use alloc::vec;
use alloc::vec::Vec;

use crate::flip::FlipSpec;
use crate::linear::LinearMap;
use crate::model::{ClassSpace, ExtremalRayData, ModelGraph, VarietyModel};
use crate::vector::RationalVector;

fn v<const N: usize>(c: [i64; N]) -> RationalVector {
    RationalVector::from_ints(c)
}

fn vs<const N: usize>(rows: &[[i64; N]]) -> Vec<RationalVector> {
    rows.iter().map(|r| v(*r)).collect()
}

fn bundle_blowup_space() -> ClassSpace {
    ClassSpace::new(["Gamma", "Lambda", "E"])
}

/// The six classes that cut out the moving cone of the blown-up bundle.
pub fn bundle_equation_classes() -> Vec<RationalVector> {
    vs(&[[0, 1, 0], [1, 0, 0], [0, 0, 1], [1, 0, -1], [0, 1, 1], [-1, 1, 1]])
}

/// The canonical class of the blown-up bundle in the basis `(Γ, Λ, E)`.
pub fn bundle_canonical_class() -> RationalVector {
    v([-1, -3, -1])
}

/// Three-model graph rooted at the blown-up bundle `X`.
pub fn bundle_example() -> ModelGraph {
    let k = bundle_canonical_class();
    let x = VarietyModel {
        id: "X".into(),
        dimension: 4,
        space: bundle_blowup_space(),
        canonical_class: k.clone(),
        mori_generators: vs(&[[1, 0, 0], [0, 0, 1], [0, 1, -1]]),
        extremal_rays: vec![
            ExtremalRayData::small(
                "nu",
                v([0, 0, 1]),
                FlipSpec::new("nu", "X1", LinearMap::identity(3), v([0, 0, -1])),
            ),
            ExtremalRayData::small(
                "gamma",
                v([1, 0, 0]),
                FlipSpec::new("gamma", "X2", LinearMap::identity(3), v([-1, 0, 0])),
            ),
            ExtremalRayData::divisorial("eta", v([0, 1, -1]), v([0, 0, 1])),
        ],
        fano: true,
        k_nonneg_curves: Vec::new(),
        declared_nef_generators: Some(vs(&[[1, 0, 0], [0, 1, 0], [0, 1, 1]])),
        declared_eff_generators: Some(bundle_equation_classes()),
    };
    // ν₁ = −φ₁♮(ν), γ₁ = φ₁♮(γ) − ν₁, λ₁ = φ₁♮(λ)
    let x1 = VarietyModel {
        id: "X1".into(),
        dimension: 4,
        space: bundle_blowup_space(),
        canonical_class: k.clone(),
        mori_generators: vs(&[[1, 0, 1], [0, 0, -1], [0, 1, 0]]),
        extremal_rays: vec![
            ExtremalRayData::fibre("gamma1", v([1, 0, 1])),
            ExtremalRayData::fibre("lambda1", v([0, 1, 0])),
        ],
        fano: false,
        k_nonneg_curves: vec![v([0, 0, -1])],
        declared_nef_generators: Some(vs(&[[1, 0, 0], [0, 1, 0], [1, 0, -1]])),
        declared_eff_generators: None,
    };
    // γ₂ = −φ₂♮(γ), ν₂ = φ₂♮(ν) − γ₂, η₂ = φ₂♮(η)
    let x2 = VarietyModel {
        id: "X2".into(),
        dimension: 4,
        space: bundle_blowup_space(),
        canonical_class: k,
        mori_generators: vs(&[[-1, 0, 0], [1, 0, 1], [0, 1, -1]]),
        extremal_rays: vec![
            ExtremalRayData::fibre("nu2", v([1, 0, 1])),
            ExtremalRayData::divisorial("eta2", v([0, 1, -1]), v([0, 0, 1])),
        ],
        fano: false,
        k_nonneg_curves: vec![v([-1, 0, 0])],
        declared_nef_generators: Some(vs(&[[0, 1, 0], [0, 1, 1], [-1, 1, 1]])),
        declared_eff_generators: None,
    };
    ModelGraph::new("X", vec![x, x1, x2]).expect("distinct ids")
}

/// Blow-up of ℙ³ at a point, basis `(H, E)`.
///
/// Curves: `e = (0, −1)` a line in `E ≅ ℙ²`, `ℓ = (1, 0)` a general line,
/// and `(1, 1)` the strict transform of a line through the point. The Mori
/// cone is spanned by `e` (divisorial) and `(1, 1)` (fibres of the projection
/// from the point). `K = −4H + 2E`.
pub fn threefold_example() -> ModelGraph {
    let m = VarietyModel {
        id: "BlP3".into(),
        dimension: 3,
        space: ClassSpace::new(["H", "E"]),
        canonical_class: v([-4, 2]),
        mori_generators: vs(&[[0, -1], [1, 1]]),
        extremal_rays: vec![
            ExtremalRayData::divisorial("e", v([0, -1]), v([0, 1])),
            ExtremalRayData::fibre("line_through_point", v([1, 1])),
        ],
        fano: true,
        k_nonneg_curves: Vec::new(),
        declared_nef_generators: Some(vs(&[[1, 0], [1, -1]])),
        declared_eff_generators: Some(vs(&[[0, 1], [1, -1]])),
    };
    ModelGraph::single(m)
}

/// ℙⁿ for `n` in {3, 4}: Picard rank one, `K = −(n+1)H`.
pub fn projective_space(n: u32) -> ModelGraph {
    let m = VarietyModel {
        id: alloc::format!("P{n}"),
        dimension: n,
        space: ClassSpace::new(["H"]),
        canonical_class: v([-(i64::from(n) + 1)]),
        mori_generators: vec![v([1])],
        extremal_rays: vec![ExtremalRayData::fibre("line", v([1]))],
        fano: true,
        k_nonneg_curves: Vec::new(),
        declared_nef_generators: Some(vec![v([1])]),
        declared_eff_generators: Some(vec![v([1])]),
    };
    ModelGraph::single(m)
}

/// Two models whose small rays flip into each other. Not realizable; exists
/// to exercise cycle detection.
pub fn cycle_example() -> ModelGraph {
    let model = |id: &str, other: &str| VarietyModel {
        id: id.into(),
        dimension: 4,
        space: ClassSpace::new(["D1", "D2"]),
        canonical_class: v([-1, -1]),
        mori_generators: vs(&[[1, 0], [0, 1]]),
        extremal_rays: vec![
            ExtremalRayData::small("s", v([1, 0]), FlipSpec::new("s", other, LinearMap::identity(2), v([-1, 0]))),
            ExtremalRayData::fibre("t", v([0, 1])),
        ],
        fano: true,
        k_nonneg_curves: Vec::new(),
        declared_nef_generators: None,
        declared_eff_generators: None,
    };
    ModelGraph::new("A", vec![model("A", "B"), model("B", "A")]).expect("distinct ids")
}
