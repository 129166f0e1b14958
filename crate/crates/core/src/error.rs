use thiserror::Error;

use crate::cartan::ValidationReport;

#[derive(Debug, Error)]
pub enum CrystalError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid Borcherds-Cartan datum: {} violation(s)", .0.violations.len())]
    InvalidDatum(ValidationReport),
    #[error("index {0} is out of range for a rank-{1} datum")]
    UnknownIndex(usize, usize),
    #[error("unknown index name {0:?}")]
    UnknownIndexName(String),
    #[error("element does not belong to this datum: {0}")]
    ForeignElement(String),
    #[error("a tensor product needs at least one factor")]
    EmptyTensor,
    #[error("weight {0} is not dominant")]
    NotDominant(String),
    #[error("invalid index sequence: {0}")]
    Sequence(String),
    #[error("malformed crystal graph: {0}")]
    MalformedGraph(String),
    #[error("morphism witness does not cover source nodes {0:?}")]
    Coverage(Vec<usize>),
    #[error("audit failed: {0}")]
    Audit(String),
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),
    #[error("{0}: {1}")]
    Io(String, #[source] std::io::Error),
}

pub type Result<T, E = CrystalError> = std::result::Result<T, E>;
