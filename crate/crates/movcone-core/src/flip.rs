//! Transport of classes across flips, verification of declared flip data,
//! and enumeration of flip sequences.
//!
//! A flip `X ⇢ X⁺` is an isomorphism in codimension one, so it identifies
//! N¹(X) with N¹(X⁺). That identification is the pushforward matrix of a
//! [`FlipSpec`]; every other transport map is derived from it:
//!
//! | map                      | matrix |
//! |--------------------------|--------|
//! | divisor pushforward      | `M`    |
//! | divisor pullback         | `M⁻¹`  |
//! | curve numerical pullback | `Mᵀ`   |
//! | curve numerical pushforward | `M⁻ᵀ` |

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::linear::LinearMap;
use crate::model::{ModelGraph, RayKind, VarietyModel};
use crate::report::{Check, ValidationReport};
use crate::vector::RationalVector;
use crate::Rational;

/// Numerical data of one flip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipSpec {
    /// Label of the flipped small ray in the source model.
    pub source_ray: String,
    pub target_model: String,
    /// Divisor pushforward N¹(X) → N¹(X⁺), in the two models' bases.
    pub pushforward: LinearMap,
    /// The flipped curve class in the target's curve coordinates.
    pub flipped_curve: RationalVector,
}

impl FlipSpec {
    pub fn new(
        source_ray: impl Into<String>,
        target_model: impl Into<String>,
        pushforward: LinearMap,
        flipped_curve: RationalVector,
    ) -> Self {
        Self { source_ray: source_ray.into(), target_model: target_model.into(), pushforward, flipped_curve }
    }

    pub fn pushforward_divisor(&self, d: &RationalVector) -> Result<RationalVector> {
        self.pushforward.apply(d)
    }

    pub fn pullback_divisor(&self, d: &RationalVector) -> Result<RationalVector> {
        self.pushforward.inverse()?.apply(d)
    }

    /// Dual of the divisor pushforward: `φ^♮(c)·d = c·φ_*(d)`.
    pub fn numerical_pullback_curve(&self, c: &RationalVector) -> Result<RationalVector> {
        self.pushforward.transpose().apply(c)
    }

    /// Dual of the divisor pullback: `φ_♮(c)·d⁺ = c·φ^*(d⁺)`.
    pub fn numerical_pushforward_curve(&self, c: &RationalVector) -> Result<RationalVector> {
        self.pushforward.inverse()?.transpose().apply(c)
    }
}

/// Checks declared flip data `source ⇢ target` against the numerical flip
/// axioms. Violations are returned as report entries.
pub fn verify_flip(source: &VarietyModel, flip: &FlipSpec, target: &VarietyModel) -> ValidationReport {
    let mut report = ValidationReport::new();
    let id = source.id.as_str();
    let label = flip.source_ray.as_str();

    let Some(ray) = source.ray(label) else {
        report.push(Check::FlipShape, id, format!("flip names unknown source ray {label}"));
        return report;
    };
    if ray.kind != RayKind::Small {
        report.push(Check::FlipShape, id, format!("ray {label} is {}, not small", ray.kind.as_str()));
    }
    if target.id != flip.target_model {
        report.push(
            Check::FlipShape,
            id,
            format!("flip of {label} targets {} but was checked against {}", flip.target_model, target.id),
        );
    }
    let rho = source.picard_rank();
    if target.picard_rank() != rho {
        report.push(
            Check::FlipShape,
            id,
            format!("flip of {label} changes the Picard rank from {rho} to {}", target.picard_rank()),
        );
        return report;
    }
    if flip.pushforward.rows() != rho || flip.pushforward.cols() != rho || flip.flipped_curve.dim() != rho {
        report.push(Check::FlipShape, id, format!("flip data of {label} has the wrong shape for rank {rho}"));
        return report;
    }
    if !flip.pushforward.is_invertible() {
        report.push(Check::FlipShape, id, format!("pushforward matrix of {label} is not invertible"));
        return report;
    }
    let s = &ray.generator;
    let s_plus = &flip.flipped_curve;
    let one = Rational::one();

    // (a) φ^♮(s⁺) = −s
    let pulled = flip.numerical_pullback_curve(s_plus).expect("shape checked");
    if pulled != -s {
        report.push(
            Check::FlipPullback,
            id,
            format!("pullback of flipped curve ≠ −s: φ^♮({s_plus}) = ({pulled}), expected ({})", -s),
        );
    }

    // (b) K_X·s = −1, K_X⁺·s⁺ = +1
    let k_s = source.k_degree(s);
    if k_s != -one.clone() {
        let hint = if k_s.is_negative() { "; use the primitive class along the ray" } else { "" };
        report.push(Check::FlipCanonical, id, format!("K_X·{label} = {k_s}, expected -1{hint}"));
    }
    let k_plus = target.k_degree(s_plus);
    if k_plus != one {
        report.push(
            Check::FlipCanonical,
            id,
            format!("K_{}·s⁺ = {k_plus} for the flipped curve of {label}, expected 1", target.id),
        );
    }

    // (c) φ_* K_X = K_X⁺
    let pushed_k = flip.pushforward_divisor(&source.canonical_class).expect("shape checked");
    if pushed_k != target.canonical_class {
        report.push(
            Check::FlipCanonicalTransport,
            id,
            format!("pushforward of K_X is ({pushed_k}) but K_{} is ({})", target.id, target.canonical_class),
        );
    }

    // (d) K-nonnegative curves: the flipped curve plus the transported ones,
    // and exactly the K-nonnegative extreme rays of the target.
    let transported: Vec<RationalVector> =
        source.k_nonneg_curves.iter().map(|c| flip.numerical_pushforward_curve(c).expect("shape checked")).collect();
    let expected: BTreeSet<RationalVector> =
        core::iter::once(s_plus).chain(&transported).map(RationalVector::primitive).collect();
    let declared: BTreeSet<RationalVector> = target.k_nonneg_curves.iter().map(RationalVector::primitive).collect();
    for c in expected.difference(&declared) {
        report.push(
            Check::FlipKNonnegative,
            id,
            format!("{} does not list transported K-nonnegative curve ({c})", target.id),
        );
    }
    for c in declared.difference(&expected) {
        report.push(
            Check::FlipKNonnegative,
            id,
            format!("{} lists K-nonnegative curve ({c}) that is not transported from {}", target.id, source.id),
        );
    }
    match target.mori_cone() {
        Ok(mori) => {
            let actual: BTreeSet<RationalVector> =
                mori.extreme_rays().iter().filter(|r| !target.k_degree(r).is_negative()).cloned().collect();
            if mori.is_pointed() && actual != expected {
                report.push(
                    Check::FlipKNonnegative,
                    id,
                    format!("K-nonnegative extreme rays of {} differ from the transported curves", target.id),
                );
            }
        }
        Err(e) => report.push(Check::FlipShape, id, format!("Mori cone of {}: {e}", target.id)),
    }

    // (e) transported curves keep K-degree 1
    for c in &transported {
        let k = target.k_degree(c);
        if k != one {
            report.push(
                Check::FlipTransportedDegree,
                id,
                format!("transported curve ({c}) has K_{}-degree {k}, expected 1", target.id),
            );
        }
    }
    report
}

/// One flip in a sequence: the ray `ray` of model `model` is flipped.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlipStep {
    pub model: String,
    pub ray: String,
}

/// A maximal chain of flips of K-negative small rays.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlipSequence {
    pub start: String,
    pub steps: Vec<FlipStep>,
    /// Model without K-negative small rays where the chain stops.
    pub terminal: String,
}

impl FlipSequence {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Every model reached after the start, in order; the last is the terminal model.
    pub fn reached_models<'g>(&self, graph: &'g ModelGraph) -> Result<Vec<&'g VarietyModel>> {
        self.steps
            .iter()
            .map(|s| {
                let m = graph.model(&s.model)?;
                let f = flip_of(m, &s.ray)?;
                graph.model(&f.target_model)
            })
            .collect()
    }
}

/// `nu: X -> X1 (len 1)`
impl fmt::Display for FlipSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let first = self.steps.first().map_or("-", |s| s.ray.as_str());
        write!(f, "{first}: {}", self.start)?;
        for (i, _) in self.steps.iter().enumerate() {
            let next = self.steps.get(i + 1).map_or(self.terminal.as_str(), |s| s.model.as_str());
            write!(f, " -> {next}")?;
        }
        write!(f, " (len {})", self.len())
    }
}

pub(crate) fn flip_of<'m>(model: &'m VarietyModel, ray: &str) -> Result<&'m FlipSpec> {
    let r = model.ray(ray).ok_or_else(|| Error::UnknownRay { model: model.id.clone(), ray: ray.into() })?;
    r.flip.as_ref().ok_or_else(|| Error::MissingFlipData { model: model.id.clone(), ray: ray.into() })
}

/// All maximal flip chains leaving `start`, optionally restricted to a first
/// flip of `start_ray`. A start model without K-negative small rays yields a
/// single empty sequence. Results are sorted by their step labels.
pub fn enumerate_pmc_sequences(graph: &ModelGraph, start: &str, start_ray: Option<&str>) -> Result<Vec<FlipSequence>> {
    let model = graph.model(start)?;
    let mut out = Vec::new();
    let mut chain = alloc::vec![String::from(start)];
    let mut steps = Vec::new();
    match start_ray {
        Some(ray) => {
            if !model.small_rays().iter().any(|r| r.label == ray) {
                return Err(if model.ray(ray).is_some() {
                    Error::NotSmallRay { model: start.into(), ray: ray.into() }
                } else {
                    Error::UnknownRay { model: start.into(), ray: ray.into() }
                });
            }
            descend(graph, model, ray, &mut chain, &mut steps, &mut out)?;
        }
        None => walk(graph, model, &mut chain, &mut steps, &mut out)?,
    }
    out.sort();
    Ok(out)
}

fn walk(
    graph: &ModelGraph,
    model: &VarietyModel,
    chain: &mut Vec<String>,
    steps: &mut Vec<FlipStep>,
    out: &mut Vec<FlipSequence>,
) -> Result<()> {
    let small = model.small_rays();
    if small.is_empty() {
        out.push(FlipSequence { start: chain[0].clone(), steps: steps.clone(), terminal: model.id.clone() });
        return Ok(());
    }
    for ray in small {
        descend(graph, model, &ray.label, chain, steps, out)?;
    }
    Ok(())
}

fn descend(
    graph: &ModelGraph,
    model: &VarietyModel,
    ray: &str,
    chain: &mut Vec<String>,
    steps: &mut Vec<FlipStep>,
    out: &mut Vec<FlipSequence>,
) -> Result<()> {
    let flip = flip_of(model, ray)?;
    let target = graph.model(&flip.target_model)?;
    if chain.contains(&target.id) {
        let mut cycle = chain.clone();
        cycle.push(target.id.clone());
        return Err(Error::CycleDetected { model: target.id.clone(), chain: cycle });
    }
    chain.push(target.id.clone());
    steps.push(FlipStep { model: model.id.clone(), ray: ray.into() });
    walk(graph, target, chain, steps, out)?;
    steps.pop();
    chain.pop();
    Ok(())
}
