//! Exhaustive extremal searches, edge-bound verifiers and randomized checks
//! of the structural lemmas behind the split-graph extremal results.

mod bounds;
mod enumerate;
mod harness;
mod search;

pub use bounds::{verify_edge_bounds, verify_edge_bounds_with, BoundCheck, BoundKind, BoundOptions};
pub use enumerate::{enumerate_labeled, enumerate_unlabeled, isomorphism_classes, LabeledGraphs, ENUMERATE_MAX_VERTICES};
pub use harness::{
    harness_clique_completion, harness_lemma31, harness_rewire, run_harness, CheckTally, HarnessConfig,
    HarnessFailure, HarnessName, HarnessSummary,
};
pub use search::{
    merge_reports, predicted_extremal, search_extremal, search_extremal_weighted, SearchConfig, SearchReport,
    TheoremMatch, EXACT_TIE_MAX_VERTICES, TIE_TOLERANCE,
};

use thiserror::Error;

use crate::constructions::ConstructionError;
use crate::minor::MinorError;
use crate::spectral::SpectralError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExtremalError {
    #[error("built-in enumeration covers 1..={ENUMERATE_MAX_VERTICES} vertices, got {0}")]
    EnumerationCapacity(usize),
    #[error("{0}")]
    Range(String),
    #[error("corpus mixes orders: expected {expected} vertices, found {found}")]
    MixedOrder { expected: usize, found: usize },
    #[error("minor test failed on {graph6}: {source}")]
    Minor { graph6: String, source: MinorError },
    #[error("spectral radius failed on {graph6}: {source}")]
    Spectral { graph6: String, source: SpectralError },
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Pattern(#[from] ConstructionError),
}
