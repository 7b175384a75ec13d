//! Crate-wide error type.

use thiserror::Error;

use crate::domain::{PolygonDomain, ValidationReport};

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown letter token `{token}` for genus {genus}")]
    UnknownLetter { token: String, genus: usize },

    #[error("genus must be at least 1, got {0}")]
    InvalidGenus(usize),

    #[error("domain validation failed: {0}")]
    Validation(ValidationReport),

    #[error("the map does not preserve the boundary word")]
    BoundaryNotPreserved,

    #[error("move index {index} out of range 1..={max} for this domain")]
    InvalidMove { index: usize, max: usize },

    #[error("invalid cut-slide span {lo}..{hi}: {reason}")]
    InvalidSpan { lo: usize, hi: usize, reason: String },

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("reduction stuck on a non-standard domain: {reason}")]
    StuckDomain {
        domain: Box<PolygonDomain>,
        reason: String,
    },

    #[error("composed substitutions do not reproduce the input map")]
    CompositionMismatch,

    #[error("malformed triangulation: {0}")]
    MalformedTriangulation(String),

    #[error("arc {arc} is not flippable: {reason}")]
    NotFlippable { arc: usize, reason: String },

    #[error("arcs {arc1} and {arc2} do not span a pentagon: {reason}")]
    NotPentagonConfiguration {
        arc1: usize,
        arc2: usize,
        reason: String,
    },

    #[error("consecutive greedy polygons differ in {differing} arcs, expected at most one")]
    MultiArcDiscrepancy {
        before: Box<PolygonDomain>,
        after: Box<PolygonDomain>,
        differing: usize,
    },

    #[error("move sequence not applicable after {applied} moves: {source}")]
    InapplicableMove {
        applied: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("moves must have pairwise disjoint support: {0}")]
    OverlappingSupport(String),

    #[error("invalid chord slide at slot {slot}: {reason}")]
    InvalidSlide { slot: usize, reason: String },

    #[error("loop search budget exceeded: max length {requested} > {allowed} at genus {genus}")]
    SearchBudgetExceeded {
        requested: usize,
        allowed: usize,
        genus: usize,
    },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("malformed input file: {0}")]
    MalformedFile(String),
}

pub type Result<T> = std::result::Result<T, Error>;
