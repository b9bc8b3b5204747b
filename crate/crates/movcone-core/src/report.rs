use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

/// Which rule an [`Issue`] violates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Check {
    /// Shape of the declared data: labels, dimension, vector lengths.
    Shape,
    /// Ray generators must be nonzero primitive vectors.
    Primitive,
    /// Ray kind and attached data (exceptional divisor, flip) disagree.
    RayData,
    /// A declared ray is not an extreme ray of the Mori cone.
    NotExtreme,
    /// K-negative extreme rays must each carry exactly one ray declaration.
    Classification,
    /// Fano models need `K_X` negative on every Mori extreme ray and a pointed cone.
    Fano,
    /// The K-nonnegative extreme rays must be exactly the declared curves.
    KNonnegative,
    /// Smooth threefolds have no K-negative small extremal rays.
    Threefold,
    /// Declared nef generators disagree with the dual of the Mori cone.
    DeclaredNef,
    /// Flip data: the target model or the matrix is unusable.
    FlipShape,
    /// Numerical pullback of the flipped curve must be minus the flipped ray.
    FlipPullback,
    /// `K·s = -1` on the source and `K·s⁺ = +1` on the target.
    FlipCanonical,
    /// The canonical class is carried to the canonical class.
    FlipCanonicalTransport,
    /// K-nonnegative curves of the target are the flipped curve plus the transported ones.
    FlipKNonnegative,
    /// Transported K-nonnegative curves pair to `+1` with the target canonical class.
    FlipTransportedDegree,
    /// Moving cone and the dual of the declared effective cone disagree.
    Duality,
}

impl Check {
    pub fn code(self) -> &'static str {
        match self {
            Check::Shape => "shape",
            Check::Primitive => "primitive",
            Check::RayData => "ray-data",
            Check::NotExtreme => "not-extreme",
            Check::Classification => "classification",
            Check::Fano => "fano",
            Check::KNonnegative => "k-nonnegative",
            Check::Threefold => "threefold",
            Check::DeclaredNef => "declared-nef",
            Check::FlipShape => "flip-shape",
            Check::FlipPullback => "flip-a",
            Check::FlipCanonical => "flip-b",
            Check::FlipCanonicalTransport => "flip-c",
            Check::FlipKNonnegative => "flip-d",
            Check::FlipTransportedDegree => "flip-e",
            Check::Duality => "duality",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Issue {
    pub check: Check,
    /// Model the issue was found in.
    pub model: String,
    pub message: String,
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.check.code(), self.model, self.message)
    }
}

/// Accumulated rule violations. Empty means the data passed every check.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    issues: Vec<Issue>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, check: Check, model: &str, message: String) {
        self.issues.push(Issue { check, model: model.into(), message });
    }

    pub fn extend(&mut self, other: ValidationReport) {
        self.issues.extend(other.issues);
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn len(&self) -> usize {
        self.issues.len()
    }

    pub fn issues(&self) -> &[Issue] {
        &self.issues
    }

    pub fn has(&self, check: Check) -> bool {
        self.issues.iter().any(|i| i.check == check)
    }

    pub fn mentions(&self, needle: &str) -> bool {
        self.issues.iter().any(|i| i.message.contains(needle))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for issue in &self.issues {
            writeln!(f, "{issue}")?;
        }
        Ok(())
    }
}
