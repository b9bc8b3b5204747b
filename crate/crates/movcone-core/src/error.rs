use alloc::string::String;
use alloc::vec::Vec;

/// Failures raised by cone, model and pipeline operations.
///
/// Problems with declared data that a user is expected to fix (wrong signs,
/// missing rays, inconsistent flip data) are not errors; they are collected
/// into a [`ValidationReport`](crate::report::ValidationReport) instead.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {rows}x{cols} matrix cannot act on a vector of length {len}")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
    #[error("matrix is not invertible")]
    SingularMatrix,
    #[error("unknown model `{0}`")]
    MissingModel(String),
    #[error("model id `{0}` declared twice")]
    DuplicateModel(String),
    #[error("model `{model}` has no extremal ray `{ray}`")]
    UnknownRay { model: String, ray: String },
    #[error("ray `{ray}` of model `{model}` is not a K-negative small ray")]
    NotSmallRay { model: String, ray: String },
    #[error("small ray `{ray}` of model `{model}` carries no flip data")]
    MissingFlipData { model: String, ray: String },
    #[error("flip sequence revisits model `{model}`: {}", chain.join(" -> "))]
    CycleDetected { model: String, chain: Vec<String> },
    #[error("flip prefix does not end at model `{0}`")]
    InvalidPrefix(String),
    #[error("model `{0}` is not declared Fano")]
    NotFano(String),
    #[error("model `{0}` is not a threefold")]
    NotThreefold(String),
    #[error("model `{model}` has small extremal ray `{ray}`")]
    SmallRayPresent { model: String, ray: String },
    #[error("moving cone of `{0}` is not pointed; the input data is inconsistent")]
    NonPointedResult(String),
    #[error("model `{0}` declares no effective generators")]
    MissingEffData(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
