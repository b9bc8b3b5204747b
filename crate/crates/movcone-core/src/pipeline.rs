//! The equation set of a Fano model and its moving cone.
//!
//! For every K-negative small ray of the root, all maximal flip chains are
//! enumerated. Each model reached along a chain (intermediate or terminal,
//! but not the root) contributes its nef cone generators and the exceptional
//! divisors of its divisorial rays, pulled back to the root. Together with
//! the root's own nef generators and exceptional divisors these classes form
//! the equation set, and the moving cone is the set of curve classes pairing
//! non-negatively with all of them.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cone::Cone;
use crate::error::{Error, Result};
use crate::flip::{enumerate_pmc_sequences, flip_of, verify_flip, FlipStep};
use crate::linear::LinearMap;
use crate::model::{ModelGraph, RayKind, VarietyModel};
use crate::report::{Check, ValidationReport};
use crate::vector::RationalVector;

/// Where an equation class came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// A nef cone generator of `model`, reached from the root along `route`.
    Nef { model: String, route: Vec<FlipStep> },
    /// The exceptional divisor of divisorial ray `ray` of `model`.
    Exceptional { model: String, ray: String, route: Vec<FlipStep> },
}

impl Provenance {
    pub fn model(&self) -> &str {
        match self {
            Provenance::Nef { model, .. } | Provenance::Exceptional { model, .. } => model,
        }
    }

    pub fn route(&self) -> &[FlipStep] {
        match self {
            Provenance::Nef { route, .. } | Provenance::Exceptional { route, .. } => route,
        }
    }
}

impl core::fmt::Display for Provenance {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Provenance::Nef { model, .. } => write!(f, "nef of {model}")?,
            Provenance::Exceptional { model, ray, .. } => write!(f, "exceptional divisor of {model}/{ray}")?,
        }
        for (i, step) in self.route().iter().enumerate() {
            let sep = if i == 0 { " via " } else { ", " };
            write!(f, "{sep}{}:{}", step.model, step.ray)?;
        }
        Ok(())
    }
}

/// Primitive divisor classes on the root, deduplicated by ray and sorted.
/// The first provenance recorded for a ray is kept.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EquationSet {
    entries: BTreeMap<RationalVector, Provenance>,
}

impl EquationSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds the ray through `class`. Returns false if it was already present
    /// or if `class` is zero.
    pub fn insert(&mut self, class: &RationalVector, provenance: Provenance) -> bool {
        if class.is_zero() {
            return false;
        }
        let key = class.primitive();
        if self.entries.contains_key(&key) {
            return false;
        }
        self.entries.insert(key, provenance);
        true
    }

    pub fn merge(&mut self, other: EquationSet) {
        for (class, provenance) in other.entries {
            self.insert(&class, provenance);
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, class: &RationalVector) -> bool {
        self.entries.contains_key(&class.primitive())
    }

    /// Classes in lexicographic order.
    pub fn classes(&self) -> Vec<RationalVector> {
        self.entries.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&RationalVector, &Provenance)> {
        self.entries.iter()
    }
}

/// Composite divisor pullback to the start of `prefix`, and the model the
/// prefix ends at.
fn pullback_along<'g>(
    graph: &'g ModelGraph,
    prefix: &[FlipStep],
    model: &str,
) -> Result<(LinearMap, &'g VarietyModel)> {
    let end = graph.model(model)?;
    let Some(first) = prefix.first() else {
        return Ok((LinearMap::identity(end.picard_rank()), end));
    };
    let mut map = LinearMap::identity(graph.model(&first.model)?.picard_rank());
    let mut expected = first.model.as_str();
    for step in prefix {
        if step.model != expected {
            return Err(Error::InvalidPrefix(model.into()));
        }
        let flip = flip_of(graph.model(&step.model)?, &step.ray)?;
        map = map.compose(&flip.pushforward.inverse()?)?;
        expected = flip.target_model.as_str();
    }
    if expected != model {
        return Err(Error::InvalidPrefix(model.into()));
    }
    Ok((map, end))
}

/// Nef cone generators of `model`, pulled back along `prefix` to the model
/// the prefix starts at. An empty prefix means `model` itself.
pub fn eq_nef_of_model(graph: &ModelGraph, prefix: &[FlipStep], model: &str) -> Result<Vec<RationalVector>> {
    let (map, end) = pullback_along(graph, prefix, model)?;
    end.nef_cone()?.generators().iter().map(|g| map.apply(g).map(|d| d.primitive())).collect()
}

/// Exceptional divisors of the divisorial rays of `model`, pulled back along
/// `prefix`.
pub fn eq_div_of_model(graph: &ModelGraph, prefix: &[FlipStep], model: &str) -> Result<Vec<RationalVector>> {
    Ok(labelled_divisors(graph, prefix, model)?.into_iter().map(|(_, d)| d).collect())
}

fn labelled_divisors(graph: &ModelGraph, prefix: &[FlipStep], model: &str) -> Result<Vec<(String, RationalVector)>> {
    let (map, end) = pullback_along(graph, prefix, model)?;
    end.exceptional_divisors().into_iter().map(|(label, e)| Ok((label.into(), map.apply(e)?.primitive()))).collect()
}

fn add_model_classes(graph: &ModelGraph, prefix: &[FlipStep], model: &str, set: &mut EquationSet) -> Result<()> {
    for class in eq_nef_of_model(graph, prefix, model)? {
        set.insert(&class, Provenance::Nef { model: model.into(), route: prefix.to_vec() });
    }
    for (ray, class) in labelled_divisors(graph, prefix, model)? {
        set.insert(&class, Provenance::Exceptional { model: model.into(), ray, route: prefix.to_vec() });
    }
    Ok(())
}

/// Union of the pulled-back nef and exceptional classes over every model
/// reached by a flip chain starting with the small ray `ray` of `root`.
pub fn eq_for_ray(graph: &ModelGraph, root: &str, ray: &str) -> Result<EquationSet> {
    let mut set = EquationSet::new();
    for seq in enumerate_pmc_sequences(graph, root, Some(ray))? {
        let reached = seq.reached_models(graph)?;
        for (k, model) in reached.iter().enumerate() {
            add_model_classes(graph, &seq.steps[..=k], &model.id, &mut set)?;
        }
    }
    Ok(set)
}

/// The full equation set of a Fano root: its own nef generators and
/// exceptional divisors plus [`eq_for_ray`] for each K-negative small ray.
pub fn eq_for_variety(graph: &ModelGraph, root: &str) -> Result<EquationSet> {
    let model = graph.model(root)?;
    if !model.fano {
        return Err(Error::NotFano(root.into()));
    }
    let mut set = EquationSet::new();
    add_model_classes(graph, &[], root, &mut set)?;
    for ray in model.small_rays() {
        set.merge(eq_for_ray(graph, root, &ray.label)?);
    }
    Ok(set)
}

/// The cone of curve classes pairing non-negatively with every class of the
/// equation set.
pub fn moving_cone(graph: &ModelGraph, root: &str) -> Result<Cone> {
    let eq = eq_for_variety(graph, root)?;
    let rho = graph.model(root)?.picard_rank();
    let cone = Cone::from_inequalities(rho, &eq.classes())?;
    if !cone.is_pointed() {
        return Err(Error::NonPointedResult(root.into()));
    }
    Ok(cone)
}

/// Moving cone of a Fano threefold: nef generators and exceptional divisors
/// suffice because there are no small rays.
pub fn moving_cone_threefold(model: &VarietyModel) -> Result<Cone> {
    if model.dimension != 3 {
        return Err(Error::NotThreefold(model.id.clone()));
    }
    if let Some(r) = model.extremal_rays.iter().find(|r| r.kind == RayKind::Small) {
        return Err(Error::SmallRayPresent { model: model.id.clone(), ray: r.label.clone() });
    }
    let mut classes = model.nef_cone()?.generators();
    classes.extend(model.exceptional_divisors().into_iter().map(|(_, e)| e.clone()));
    let cone = Cone::from_inequalities(model.picard_rank(), &classes)?;
    if model.fano && !cone.is_pointed() {
        return Err(Error::NonPointedResult(model.id.clone()));
    }
    Ok(cone)
}

/// Compares the moving cone with the dual of the declared effective cone.
pub fn crosscheck_bdpp(graph: &ModelGraph, root: &str) -> Result<ValidationReport> {
    let model = graph.model(root)?;
    let eff = model.declared_eff_generators.as_ref().ok_or_else(|| Error::MissingEffData(root.into()))?;
    let eff_dual = Cone::from_generators(model.picard_rank(), eff)?.dual();
    let mov = moving_cone(graph, root)?;
    let mut report = ValidationReport::new();
    for g in mov.generators() {
        if !eff_dual.contains(&g)? {
            report.push(
                Check::Duality,
                root,
                format!("duals differ on test ray ({g}): in Mov but not in the dual of Eff"),
            );
        }
    }
    for g in eff_dual.generators() {
        if !mov.contains(&g)? {
            report.push(
                Check::Duality,
                root,
                format!("duals differ on test ray ({g}): in the dual of Eff but not in Mov"),
            );
        }
    }
    Ok(report)
}

/// Validates every model and verifies every declared flip of a K-negative
/// small ray against its target.
pub fn validate_graph(graph: &ModelGraph) -> ValidationReport {
    let mut report = ValidationReport::new();
    for model in graph.models() {
        report.extend(model.validate());
    }
    for model in graph.models() {
        for ray in model.small_rays() {
            let Some(flip) = &ray.flip else { continue };
            match graph.get(&flip.target_model) {
                Some(target) => report.extend(verify_flip(model, flip, target)),
                None => report.push(
                    Check::FlipShape,
                    &model.id,
                    format!("flip of {} targets undeclared model {}", ray.label, flip.target_model),
                ),
            }
        }
    }
    report
}
