use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, Graph};

/// Branch sets witnessing `H ≼ G`, one per vertex of `H`, each sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinorModel {
    pub branch_sets: Vec<Vec<usize>>,
}

/// Why a model fails to certify `H ≼ G`.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ModelDefect {
    #[error("expected {expected} branch sets, got {got}")]
    SetCount { expected: usize, got: usize },
    #[error("branch set {set} is empty")]
    EmptySet { set: usize },
    #[error("branch set {set} names vertex {vertex}, outside the host graph")]
    VertexOutOfRange { set: usize, vertex: usize },
    #[error("vertex {vertex} appears in branch sets {first} and {second}")]
    Overlap { vertex: usize, first: usize, second: usize },
    #[error("branch set {set} does not induce a connected subgraph")]
    Disconnected { set: usize },
    #[error("no edge between branch sets {a} and {b}, which are adjacent in the pattern")]
    MissingEdge { a: usize, b: usize },
}

impl MinorModel {
    pub fn new(branch_sets: Vec<Vec<usize>>) -> Self {
        Self { branch_sets }
    }

    /// Branch sets as masks, rejecting malformed sets.
    fn masks(&self, g: &Graph) -> Result<Vec<u64>, ModelDefect> {
        let mut owner = vec![usize::MAX; g.n()];
        let mut masks = Vec::with_capacity(self.branch_sets.len());
        for (set, vs) in self.branch_sets.iter().enumerate() {
            if vs.is_empty() {
                return Err(ModelDefect::EmptySet { set });
            }
            let mut mask = 0u64;
            for &vertex in vs {
                if vertex >= g.n() {
                    return Err(ModelDefect::VertexOutOfRange { set, vertex });
                }
                if owner[vertex] != usize::MAX {
                    return Err(ModelDefect::Overlap {
                        vertex,
                        first: owner[vertex],
                        second: set,
                    });
                }
                owner[vertex] = set;
                mask |= bit(vertex);
            }
            masks.push(mask);
        }
        Ok(masks)
    }
}

/// Checks the three model conditions: disjoint nonempty sets, each connected in
/// `g`, and a `g`-edge between the sets of every edge of `h`.
pub fn check_model(g: &Graph, h: &Graph, m: &MinorModel) -> Result<(), ModelDefect> {
    if m.branch_sets.len() != h.n() {
        return Err(ModelDefect::SetCount {
            expected: h.n(),
            got: m.branch_sets.len(),
        });
    }
    let masks = m.masks(g)?;
    for (set, &mask) in masks.iter().enumerate() {
        if !g.is_connected_set(mask) {
            return Err(ModelDefect::Disconnected { set });
        }
    }
    for (a, b) in h.edges() {
        if neighborhood(g, masks[a]) & masks[b] == 0 {
            return Err(ModelDefect::MissingEdge { a, b });
        }
    }
    Ok(())
}

pub fn verify_model(g: &Graph, h: &Graph, m: &MinorModel) -> bool {
    check_model(g, h, m).is_ok()
}

/// Union of the neighborhoods of the vertices in `mask`.
#[inline]
pub(crate) fn neighborhood(g: &Graph, mask: u64) -> u64 {
    crate::graph::Bits(mask).fold(0, |acc, v| acc | g.neighbors(v))
}
