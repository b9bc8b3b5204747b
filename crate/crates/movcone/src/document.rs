//! JSON model-graph documents.
//!
//! Rationals are written as strings (`"-3/2"`, `"4"`); plain JSON integers
//! are accepted on input as shorthand. Output always uses canonical strings.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use movcone_core::{
    ClassSpace, ExtremalRayData, FlipSpec, LinearMap, ModelGraph, Rational, RationalVector, RayKind, VarietyModel,
};
use num_bigint::BigInt;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub const FORMAT_VERSION: u32 = 1;
const MAX_SCHEMA_ERRORS: usize = 10;

#[derive(Debug, thiserror::Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column} (field `{field}`): {message}")]
    Parse { line: usize, column: usize, field: String, message: String },
    #[error("schema errors:\n  {}", .0.join("\n  "))]
    Schema(Vec<String>),
}

/// An exact rational as it appears in a document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Num(pub Rational);

#[derive(Debug, PartialEq, Eq)]
pub struct ParseRationalError(String);

impl fmt::Display for ParseRationalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseRationalError {}

/// Parses `p` or `p/q` with integer `p`, `q` and `q ≠ 0`.
pub fn parse_rational(s: &str) -> Result<Rational, ParseRationalError> {
    let s = s.trim();
    let int = |t: &str| {
        num_bigint_from_str(t.trim()).ok_or_else(|| ParseRationalError(format!("`{s}` is not a rational number")))
    };
    match s.split_once('/') {
        None => Ok(Rational::from_integer(int(s)?)),
        Some((p, q)) => {
            let (p, q) = (int(p)?, int(q)?);
            if q == 0.into() {
                return Err(ParseRationalError(format!("`{s}` has a zero denominator")));
            }
            Ok(Rational::new(p, q))
        }
    }
}

fn num_bigint_from_str(t: &str) -> Option<BigInt> {
    if t.is_empty() {
        return None;
    }
    BigInt::from_str(t).ok()
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(&RationalVector::new(vec![self.0.clone()]))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct NumVisitor;

        impl Visitor<'_> for NumVisitor {
            type Value = Num;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a rational string such as \"-3/2\"")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Num, E> {
                parse_rational(v).map(Num).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Num, E> {
                Ok(Num(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Num, E> {
                Ok(Num(Rational::from_integer(v.into())))
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<Num, E> {
                Err(E::custom(format!("floating-point value {v} is not exact; write it as a string \"p/q\"")))
            }
        }

        deserializer.deserialize_any(NumVisitor)
    }
}

type Vector = Vec<Num>;

fn to_vector(v: &[Num]) -> RationalVector {
    RationalVector::new(v.iter().map(|n| n.0.clone()).collect())
}

fn from_vector(v: &RationalVector) -> Vector {
    v.iter().cloned().map(Num).collect()
}

fn to_vectors(vs: &[Vector]) -> Vec<RationalVector> {
    vs.iter().map(|v| to_vector(v)).collect()
}

fn from_vectors(vs: &[RationalVector]) -> Vec<Vector> {
    vs.iter().map(from_vector).collect()
}

fn default_convention() -> String {
    ClassSpace::CURVE_CONVENTION.into()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentRecord {
    pub format_version: u32,
    pub root: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub models: Vec<ModelRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelRecord {
    pub id: String,
    pub dimension: u32,
    pub divisor_basis: Vec<String>,
    #[serde(default = "default_convention")]
    pub curve_coordinates: String,
    pub canonical_class: Vector,
    pub fano: bool,
    pub mori_generators: Vec<Vector>,
    pub extremal_rays: Vec<RayRecord>,
    #[serde(default)]
    pub k_nonneg_curves: Vec<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_nef_generators: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub declared_eff_generators: Option<Vec<Vector>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RayRecord {
    pub label: String,
    pub generator: Vector,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional_divisor: Option<Vector>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flip: Option<FlipRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlipRecord {
    pub target_model: String,
    pub pushforward_matrix: Vec<Vector>,
    pub flipped_curve: Vector,
}

/// A model graph together with free-form notes carried by the file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelGraphDocument {
    pub graph: ModelGraph,
    pub notes: Vec<String>,
}

impl DocumentRecord {
    fn schema_errors(&self) -> Vec<String> {
        let mut errors = Vec::new();
        if self.format_version != FORMAT_VERSION {
            errors.push(format!("unsupported format_version {} (expected {FORMAT_VERSION})", self.format_version));
        }
        let mut ids = BTreeSet::new();
        for m in &self.models {
            if !ids.insert(m.id.as_str()) {
                errors.push(format!("duplicate model id `{}`", m.id));
            }
        }
        if !ids.contains(self.root.as_str()) {
            errors.push(format!("root `{}` is not a declared model", self.root));
        }
        for m in &self.models {
            if m.curve_coordinates != ClassSpace::CURVE_CONVENTION {
                errors.push(format!(
                    "model `{}`: curve_coordinates must be `{}`, found `{}`",
                    m.id,
                    ClassSpace::CURVE_CONVENTION,
                    m.curve_coordinates
                ));
            }
            for r in &m.extremal_rays {
                if RayKind::parse(&r.kind).is_none() {
                    errors.push(format!(
                        "model `{}`, ray `{}`: unknown kind `{}` (expected fibre, divisorial or small)",
                        m.id, r.label, r.kind
                    ));
                }
                if let Some(f) = &r.flip {
                    if !ids.contains(f.target_model.as_str()) {
                        errors.push(format!(
                            "model `{}`, ray `{}`: flip target `{}` is not a declared model",
                            m.id, r.label, f.target_model
                        ));
                    }
                    let width = f.pushforward_matrix.first().map_or(0, Vec::len);
                    if f.pushforward_matrix.iter().any(|row| row.len() != width) {
                        errors.push(format!("model `{}`, ray `{}`: pushforward matrix is ragged", m.id, r.label));
                    }
                }
            }
        }
        errors.truncate(MAX_SCHEMA_ERRORS);
        errors
    }

    fn into_document(self) -> Result<ModelGraphDocument, LoadError> {
        let errors = self.schema_errors();
        if !errors.is_empty() {
            return Err(LoadError::Schema(errors));
        }
        let models = self.models.into_iter().map(ModelRecord::into_model).collect();
        let graph = ModelGraph::new(self.root, models).map_err(|e| LoadError::Schema(vec![e.to_string()]))?;
        Ok(ModelGraphDocument { graph, notes: self.notes })
    }

    pub fn from_document(doc: &ModelGraphDocument) -> Self {
        Self {
            format_version: FORMAT_VERSION,
            root: doc.graph.root().into(),
            notes: doc.notes.clone(),
            models: doc.graph.models().iter().map(ModelRecord::from_model).collect(),
        }
    }
}

impl ModelRecord {
    fn into_model(self) -> VarietyModel {
        VarietyModel {
            canonical_class: to_vector(&self.canonical_class),
            mori_generators: to_vectors(&self.mori_generators),
            extremal_rays: self
                .extremal_rays
                .into_iter()
                .map(|r| ExtremalRayData {
                    generator: to_vector(&r.generator),
                    kind: RayKind::parse(&r.kind).expect("checked by schema"),
                    exceptional_divisor: r.exceptional_divisor.as_deref().map(to_vector),
                    flip: r.flip.map(|f| FlipSpec {
                        source_ray: r.label.clone(),
                        target_model: f.target_model,
                        pushforward: LinearMap::from_rows(to_vectors(&f.pushforward_matrix))
                            .expect("checked by schema"),
                        flipped_curve: to_vector(&f.flipped_curve),
                    }),
                    label: r.label,
                })
                .collect(),
            k_nonneg_curves: to_vectors(&self.k_nonneg_curves),
            declared_nef_generators: self.declared_nef_generators.as_deref().map(to_vectors),
            declared_eff_generators: self.declared_eff_generators.as_deref().map(to_vectors),
            space: ClassSpace::new(self.divisor_basis),
            id: self.id,
            dimension: self.dimension,
            fano: self.fano,
        }
    }

    fn from_model(m: &VarietyModel) -> Self {
        Self {
            id: m.id.clone(),
            dimension: m.dimension,
            divisor_basis: m.space.divisor_basis_labels.clone(),
            curve_coordinates: default_convention(),
            canonical_class: from_vector(&m.canonical_class),
            fano: m.fano,
            mori_generators: from_vectors(&m.mori_generators),
            extremal_rays: m
                .extremal_rays
                .iter()
                .map(|r| RayRecord {
                    label: r.label.clone(),
                    generator: from_vector(&r.generator),
                    kind: r.kind.as_str().into(),
                    exceptional_divisor: r.exceptional_divisor.as_ref().map(from_vector),
                    flip: r.flip.as_ref().map(|f| FlipRecord {
                        target_model: f.target_model.clone(),
                        pushforward_matrix: from_vectors(&f.pushforward.row_vectors()),
                        flipped_curve: from_vector(&f.flipped_curve),
                    }),
                })
                .collect(),
            k_nonneg_curves: from_vectors(&m.k_nonneg_curves),
            declared_nef_generators: m.declared_nef_generators.as_deref().map(from_vectors),
            declared_eff_generators: m.declared_eff_generators.as_deref().map(from_vectors),
            notes: Vec::new(),
        }
    }
}

pub fn parse_document(text: &str) -> Result<ModelGraphDocument, LoadError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let record: DocumentRecord = serde_path_to_error::deserialize(&mut de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        LoadError::Parse {
            line: inner.line(),
            column: inner.column(),
            field,
            message: strip_position(&inner.to_string()),
        }
    })?;
    record.into_document()
}

/// serde_json appends " at line L column C"; the position is reported separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(i) => message[..i].to_string(),
        None => message.to_string(),
    }
}

pub fn parse_graph(text: &str) -> Result<ModelGraph, LoadError> {
    parse_document(text).map(|d| d.graph)
}

pub fn load_document(path: impl AsRef<Path>) -> Result<ModelGraphDocument, LoadError> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|source| LoadError::Io { path: path.display().to_string(), source })?;
    parse_document(&text)
}

pub fn load_graph(path: impl AsRef<Path>) -> Result<ModelGraph, LoadError> {
    load_document(path).map(|d| d.graph)
}

pub fn document_to_string(doc: &ModelGraphDocument) -> String {
    let mut out = serde_json::to_string_pretty(&DocumentRecord::from_document(doc)).expect("records serialize");
    out.push('\n');
    out
}

pub fn save_graph(graph: &ModelGraph) -> String {
    document_to_string(&ModelGraphDocument { graph: graph.clone(), notes: Vec::new() })
}
