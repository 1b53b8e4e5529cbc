use thiserror::Error;

use crate::tree::{VertexId, Violation};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Parse(String),

    #[error("tree has no vertices")]
    EmptyTree,
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("repeated edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph contains a cycle")]
    Cyclic,
    #[error("declared total weight {declared} differs from the vertex weight sum {actual}")]
    TotalWeightMismatch { declared: u32, actual: u32 },
    #[error("total weight {0} is below 3")]
    TotalWeightTooSmall(u32),

    #[error("tree is not stable: {}", describe_violations(.0))]
    Unstable(Vec<Violation>),
    #[error("edge {0}-{1} splits the total weight in half")]
    HalfWeightEdge(VertexId, VertexId),
    #[error("total weight {0} is odd; a double cover needs 2g+2 marks")]
    OddTotalWeight(u32),

    #[error("invalid binary form: {0}")]
    InvalidForm(String),
    #[error("degree {0} is below 3")]
    DegreeTooSmall(u32),

    #[error("invalid exponent vector: {0}")]
    InvalidExponents(String),
    #[error("exponent {exponent} exceeds 2g = {bound}; no central component survives")]
    ExponentTooLarge { exponent: u32, bound: u32 },
    #[error("blow-up chain needs an exponent >= 2, got {0}")]
    ChainExponent(u32),

    #[error("invalid stratum label {label} for genus {genus}")]
    InvalidStratum { label: String, genus: u32 },
    #[error("no image dimension formula for stratum {0}")]
    UnsupportedStratum(String),

    #[error("m = {m} is outside the enumeration range 3..={bound}")]
    OutOfBounds { m: u32, bound: u32 },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// True for invariant breaches inside the crate, as opposed to rejected input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Parse(_) => "parse",
            Error::EmptyTree
            | Error::DuplicateVertex(_)
            | Error::UnknownVertex(_)
            | Error::SelfLoop(_)
            | Error::DuplicateEdge(..)
            | Error::Disconnected
            | Error::Cyclic
            | Error::TotalWeightMismatch { .. }
            | Error::TotalWeightTooSmall(_) => "structure",
            Error::Unstable(_) => "unstable_tree",
            Error::HalfWeightEdge(..) => "half_weight_edge",
            Error::OddTotalWeight(_) => "odd_total_weight",
            Error::InvalidForm(_) | Error::DegreeTooSmall(_) => "form",
            Error::InvalidExponents(_) | Error::ExponentTooLarge { .. } | Error::ChainExponent(_) => "exponents",
            Error::InvalidStratum { .. } | Error::UnsupportedStratum(_) => "stratum",
            Error::OutOfBounds { .. } => "bounds",
            Error::Internal(_) => "internal",
        }
    }
}

fn describe_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(|v| format!("vertex {} has weight {} and degree {}", v.vertex, v.weight, v.degree))
        .collect::<Vec<_>>()
        .join("; ")
}
