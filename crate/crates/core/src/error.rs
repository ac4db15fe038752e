use thiserror::Error;

use crate::geometry::DiagramViolation;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("invalid diagram {diagram}: {}", format_violations(.violations))]
    InvalidDiagram {
        diagram: usize,
        violations: Vec<DiagramViolation>,
    },

    #[error("color index {index} out of range for {count} diagrams")]
    ColorOutOfRange { index: usize, count: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("malformed flow network: {0}")]
    MalformedNetwork(String),

    #[error("instance too large for exhaustive search: {work:.3e} > {limit:.0e}")]
    InstanceTooLarge { work: f64, limit: f64 },

    #[error("algorithm not applicable: {0}")]
    AlgorithmMismatch(String),
}

fn format_violations(violations: &[DiagramViolation]) -> String {
    violations
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join("; ")
}
