use thiserror::Error;

use crate::model::DivisorId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failures surfaced by the library. Validation findings are data
/// ([`crate::model::ValidationReport`]) and only become an error when an
/// operation requires a valid configuration.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("{operation}: unsupported dimension {dim}")]
    UnsupportedDimension { operation: &'static str, dim: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what}: cap of {cap} exceeded (estimated cost {estimated})")]
    Resource { what: String, cap: u128, estimated: u128 },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("configuration is not {m}-separating: cell {label_a}-{label_b} has multiplicity sum {m_sigma}")]
    NotSeparating { m: u64, a: DivisorId, b: DivisorId, label_a: String, label_b: String, m_sigma: u64 },

    #[error("missing cover data for divisors {0:?}")]
    MissingCoverData(Vec<DivisorId>),

    #[error("cover of divisor {0} is not combinatorially determined (genus > 0 and no supplied data)")]
    CoverNotDetermined(DivisorId),

    #[error("inconsistent configuration: {0}")]
    Inconsistent(String),

    #[error("not a resolution over a point cluster: exceptional intersection matrix is not negative definite")]
    NotNegativeDefinite,

    #[error("unknown divisor id {0}")]
    UnknownDivisor(DivisorId),

    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },
}
