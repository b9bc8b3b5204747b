//! Numerical data of a single birational model.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Signed;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::flip::FlipSpec;
use crate::report::{Check, ValidationReport};
use crate::vector::RationalVector;

/// Coordinates for N¹ and N₁ of one model.
///
/// Divisor classes are written in the labelled basis. Curve classes are
/// stored as their intersection numbers against that basis, so the pairing
/// of a curve with a divisor is the dot product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSpace {
    pub divisor_basis_labels: Vec<String>,
}

impl ClassSpace {
    /// The only curve coordinate convention in use.
    pub const CURVE_CONVENTION: &'static str = "dual-basis";

    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        Self { divisor_basis_labels: labels.into_iter().map(Into::into).collect() }
    }

    pub fn picard_rank(&self) -> usize {
        self.divisor_basis_labels.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RayKind {
    Fibre,
    Divisorial,
    Small,
}

impl RayKind {
    pub fn as_str(self) -> &'static str {
        match self {
            RayKind::Fibre => "fibre",
            RayKind::Divisorial => "divisorial",
            RayKind::Small => "small",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "fibre" | "fiber" => Some(RayKind::Fibre),
            "divisorial" => Some(RayKind::Divisorial),
            "small" => Some(RayKind::Small),
            _ => None,
        }
    }
}

/// A classified extremal ray of the Mori cone.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalRayData {
    pub label: String,
    pub generator: RationalVector,
    pub kind: RayKind,
    /// Required for divisorial rays only.
    pub exceptional_divisor: Option<RationalVector>,
    /// Required for small rays only.
    pub flip: Option<FlipSpec>,
}

impl ExtremalRayData {
    pub fn fibre(label: &str, generator: RationalVector) -> Self {
        Self { label: label.into(), generator, kind: RayKind::Fibre, exceptional_divisor: None, flip: None }
    }

    pub fn divisorial(label: &str, generator: RationalVector, divisor: RationalVector) -> Self {
        Self {
            label: label.into(),
            generator,
            kind: RayKind::Divisorial,
            exceptional_divisor: Some(divisor),
            flip: None,
        }
    }

    pub fn small(label: &str, generator: RationalVector, flip: FlipSpec) -> Self {
        Self { label: label.into(), generator, kind: RayKind::Small, exceptional_divisor: None, flip: Some(flip) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyModel {
    pub id: String,
    /// 3 or 4.
    pub dimension: u32,
    pub space: ClassSpace,
    pub canonical_class: RationalVector,
    pub mori_generators: Vec<RationalVector>,
    pub extremal_rays: Vec<ExtremalRayData>,
    pub fano: bool,
    /// Transported flipped curves, the only K-nonnegative extreme rays.
    /// Empty for Fano models.
    pub k_nonneg_curves: Vec<RationalVector>,
    pub declared_nef_generators: Option<Vec<RationalVector>>,
    pub declared_eff_generators: Option<Vec<RationalVector>>,
}

impl VarietyModel {
    pub fn picard_rank(&self) -> usize {
        self.space.picard_rank()
    }

    pub fn ray(&self, label: &str) -> Option<&ExtremalRayData> {
        self.extremal_rays.iter().find(|r| r.label == label)
    }

    pub fn mori_cone(&self) -> Result<Cone> {
        Cone::from_generators(self.picard_rank(), &self.mori_generators)
    }

    /// The dual of the Mori cone.
    pub fn nef_cone(&self) -> Result<Cone> {
        Ok(self.mori_cone()?.dual())
    }

    /// K-negative small rays, in declaration order.
    pub fn small_rays(&self) -> Vec<&ExtremalRayData> {
        self.extremal_rays
            .iter()
            .filter(|r| r.kind == RayKind::Small && self.k_degree(&r.generator).is_negative())
            .collect()
    }

    /// Exceptional divisors of the divisorial rays, in declaration order.
    pub fn exceptional_divisors(&self) -> Vec<(&str, &RationalVector)> {
        self.extremal_rays
            .iter()
            .filter(|r| r.kind == RayKind::Divisorial)
            .filter_map(|r| r.exceptional_divisor.as_ref().map(|e| (r.label.as_str(), e)))
            .collect()
    }

    /// `K_X · c`.
    pub fn k_degree(&self, curve: &RationalVector) -> crate::Rational {
        self.canonical_class.dot(curve)
    }

    fn describe_ray(&self, v: &RationalVector) -> String {
        match self.extremal_rays.iter().find(|r| r.generator.same_ray(v)) {
            Some(r) => r.label.clone(),
            None => format!("({v})"),
        }
    }

    /// Checks every internal invariant and lists the violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let id = self.id.as_str();
        let rho = self.picard_rank();

        if rho == 0 {
            report.push(Check::Shape, id, "empty divisor basis".into());
        }
        let distinct: BTreeSet<&String> = self.space.divisor_basis_labels.iter().collect();
        if distinct.len() != rho {
            report.push(Check::Shape, id, "divisor basis labels are not distinct".into());
        }
        if !(3..=4).contains(&self.dimension) {
            report.push(Check::Shape, id, format!("dimension {} is not 3 or 4", self.dimension));
        }
        let mut shape = Vec::new();
        let mut sized: Vec<(String, &RationalVector)> = Vec::new();
        let mut wrong_len = |what: &str, v| sized.push((what.into(), v));
        wrong_len("canonical class", &self.canonical_class);
        self.mori_generators.iter().for_each(|v| wrong_len("Mori generator", v));
        self.k_nonneg_curves.iter().for_each(|v| wrong_len("K-nonnegative curve", v));
        for v in self.declared_nef_generators.iter().flatten() {
            wrong_len("declared nef generator", v);
        }
        for v in self.declared_eff_generators.iter().flatten() {
            wrong_len("declared effective generator", v);
        }
        for r in &self.extremal_rays {
            wrong_len(&format!("generator of ray {}", r.label), &r.generator);
            if let Some(e) = &r.exceptional_divisor {
                wrong_len(&format!("exceptional divisor of ray {}", r.label), e);
            }
            if let Some(f) = &r.flip {
                wrong_len(&format!("flipped curve of ray {}", r.label), &f.flipped_curve);
            }
        }
        for (what, v) in sized {
            if v.dim() != rho {
                shape.push(format!("{what} has {} coordinates, expected {rho}", v.dim()));
            }
        }
        for r in &self.extremal_rays {
            if let Some(f) = &r.flip {
                if f.pushforward.rows() != rho || f.pushforward.cols() != rho {
                    shape.push(format!(
                        "pushforward matrix of ray {} is {}x{}, expected {rho}x{rho}",
                        r.label,
                        f.pushforward.rows(),
                        f.pushforward.cols()
                    ));
                }
            }
        }
        for message in shape {
            report.push(Check::Shape, id, message);
        }
        if !report.is_empty() {
            return report;
        }

        self.check_ray_declarations(&mut report);

        let mori = match self.mori_cone() {
            Ok(c) => c,
            Err(e) => {
                report.push(Check::Shape, id, format!("{e}"));
                return report;
            }
        };
        self.check_rays_against_cone(&mori, &mut report);

        if let Some(declared) = &self.declared_nef_generators {
            match (Cone::from_generators(rho, declared), self.nef_cone()) {
                (Ok(d), Ok(n)) if d == n => {}
                _ => report.push(
                    Check::DeclaredNef,
                    id,
                    "declared nef generators do not span the dual of the Mori cone".into(),
                ),
            }
        }
        report
    }

    fn check_ray_declarations(&self, report: &mut ValidationReport) {
        let id = self.id.as_str();
        let mut seen = BTreeSet::new();
        for r in &self.extremal_rays {
            if !seen.insert(r.label.as_str()) {
                report.push(Check::RayData, id, format!("ray label {} declared twice", r.label));
            }
            if !r.generator.is_primitive() {
                report.push(
                    Check::Primitive,
                    id,
                    format!("generator ({}) of ray {} is not a primitive integer vector", r.generator, r.label),
                );
            }
            match r.kind {
                RayKind::Fibre => {
                    if r.exceptional_divisor.is_some() || r.flip.is_some() {
                        report.push(Check::RayData, id, format!("fibre ray {} carries extra data", r.label));
                    }
                }
                RayKind::Divisorial => {
                    if r.exceptional_divisor.is_none() {
                        report.push(
                            Check::RayData,
                            id,
                            format!("divisorial ray {} without exceptional divisor", r.label),
                        );
                    }
                    if r.flip.is_some() {
                        report.push(Check::RayData, id, format!("divisorial ray {} carries flip data", r.label));
                    }
                }
                RayKind::Small => {
                    if r.exceptional_divisor.is_some() {
                        report.push(
                            Check::RayData,
                            id,
                            format!("small ray {} carries an exceptional divisor", r.label),
                        );
                    }
                    match &r.flip {
                        None => report.push(Check::RayData, id, format!("small ray {} without flip data", r.label)),
                        Some(f) => {
                            if f.source_ray != r.label {
                                report.push(
                                    Check::RayData,
                                    id,
                                    format!("flip of ray {} names source ray {}", r.label, f.source_ray),
                                );
                            }
                            if !f.pushforward.is_invertible() {
                                report.push(
                                    Check::FlipShape,
                                    id,
                                    format!("pushforward matrix of ray {} is not invertible", r.label),
                                );
                            }
                            if !f.flipped_curve.is_primitive() {
                                report.push(
                                    Check::Primitive,
                                    id,
                                    format!("flipped curve of ray {} is not a primitive integer vector", r.label),
                                );
                            }
                        }
                    }
                    if self.dimension == 3 && self.k_degree(&r.generator).is_negative() {
                        report.push(
                            Check::Threefold,
                            id,
                            format!("threefold declares K-negative small ray {}", r.label),
                        );
                    }
                }
            }
        }
    }

    fn check_rays_against_cone(&self, mori: &Cone, report: &mut ValidationReport) {
        let id = self.id.as_str();
        if self.fano && !mori.is_pointed() {
            report.push(Check::Fano, id, "Mori cone of a Fano model is not pointed".into());
        }
        if self.fano && mori.is_zero() {
            report.push(Check::Fano, id, "Mori cone of a Fano model is zero".into());
        }

        for r in &self.extremal_rays {
            if !r.generator.is_zero() && !mori.has_extreme_ray(&r.generator) {
                report.push(
                    Check::NotExtreme,
                    id,
                    format!("ray {} ({}) is not an extreme ray of the Mori cone", r.label, r.generator),
                );
            }
        }

        let mut k_nonneg_rays = BTreeSet::new();
        let mut all_negative = true;
        for ray in mori.extreme_rays() {
            let degree = self.k_degree(ray);
            let matching: Vec<_> = self.extremal_rays.iter().filter(|r| r.generator.same_ray(ray)).collect();
            if degree.is_negative() {
                match matching.len() {
                    0 => report.push(
                        Check::Classification,
                        id,
                        format!("K-negative extreme ray ({ray}) has no ray declaration"),
                    ),
                    1 => {}
                    _ => report.push(
                        Check::Classification,
                        id,
                        format!("extreme ray ({ray}) is declared {} times", matching.len()),
                    ),
                }
            } else {
                all_negative = false;
                k_nonneg_rays.insert(ray.clone());
                if self.fano {
                    report.push(Check::Fano, id, format!("K_X not negative on ray {}", self.describe_ray(ray)));
                }
                for r in matching {
                    report.push(
                        Check::Classification,
                        id,
                        format!("ray {} is declared on a K-nonnegative extreme ray", r.label),
                    );
                }
            }
        }
        if !self.fano && all_negative && mori.is_pointed() && !mori.is_zero() {
            report.push(Check::Fano, id, "K_X is negative on the whole Mori cone but fano is false".into());
        }

        let declared: BTreeSet<RationalVector> = self.k_nonneg_curves.iter().map(RationalVector::primitive).collect();
        for missing in k_nonneg_rays.difference(&declared) {
            report.push(
                Check::KNonnegative,
                id,
                format!("K-nonnegative extreme ray ({missing}) is not listed among k_nonneg_curves"),
            );
        }
        for extra in declared.difference(&k_nonneg_rays) {
            report.push(
                Check::KNonnegative,
                id,
                format!("listed K-nonnegative curve ({extra}) is not a K-nonnegative extreme ray"),
            );
        }
    }
}

/// A set of models linked by flips, keyed by id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelGraph {
    root: String,
    models: Vec<VarietyModel>,
}

impl ModelGraph {
    pub fn new(root: impl Into<String>, models: Vec<VarietyModel>) -> Result<Self> {
        let root = root.into();
        let mut ids = BTreeSet::new();
        for m in &models {
            if !ids.insert(m.id.as_str()) {
                return Err(Error::DuplicateModel(m.id.clone()));
            }
        }
        if !ids.contains(root.as_str()) {
            return Err(Error::MissingModel(root));
        }
        Ok(Self { root, models })
    }

    pub fn root(&self) -> &str {
        &self.root
    }

    pub fn root_model(&self) -> &VarietyModel {
        self.get(&self.root).expect("root checked on construction")
    }

    pub fn models(&self) -> &[VarietyModel] {
        &self.models
    }

    pub fn get(&self, id: &str) -> Option<&VarietyModel> {
        self.models.iter().find(|m| m.id == id)
    }

    pub fn model(&self, id: &str) -> Result<&VarietyModel> {
        self.get(id).ok_or_else(|| Error::MissingModel(id.into()))
    }

    /// A graph holding a single model, which is also the root.
    pub fn single(model: VarietyModel) -> Self {
        Self { root: model.id.clone(), models: alloc::vec![model] }
    }
}
