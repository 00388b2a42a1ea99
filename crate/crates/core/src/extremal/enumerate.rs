use std::collections::HashMap;

use rayon::prelude::*;

use super::ExtremalError;
use crate::canon::canonical_form;
use crate::graph::{bit, Graph};
use crate::graph6::to_graph6;

/// Largest order for built-in labeled enumeration.
pub const ENUMERATE_MAX_VERTICES: usize = 7;

/// All labeled graphs on `n` vertices. Bit `k` of the counter is the `k`-th
/// vertex pair in graph6 order `(0,1), (0,2), (1,2), (0,3), ...`.
#[derive(Debug, Clone)]
pub struct LabeledGraphs {
    pairs: Vec<(usize, usize)>,
    n: usize,
    next: u64,
    end: u64,
}

impl LabeledGraphs {
    pub fn len(&self) -> u64 {
        self.end - self.next
    }

    pub fn is_empty(&self) -> bool {
        self.next == self.end
    }

    /// The graph with counter value `code`.
    pub fn graph(&self, code: u64) -> Graph {
        let mut rows = vec![0u64; self.n];
        for (k, &(i, j)) in self.pairs.iter().enumerate() {
            if code >> k & 1 == 1 {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
        }
        Graph::from_rows_unchecked(rows)
    }
}

impl Iterator for LabeledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next == self.end {
            return None;
        }
        let g = self.graph(self.next);
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for LabeledGraphs {}

pub fn enumerate_labeled(n: usize) -> Result<LabeledGraphs, ExtremalError> {
    if n == 0 || n > ENUMERATE_MAX_VERTICES {
        return Err(ExtremalError::EnumerationCapacity(n));
    }
    let pairs: Vec<(usize, usize)> = (1..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    Ok(LabeledGraphs {
        end: 1u64 << pairs.len(),
        pairs,
        n,
        next: 0,
    })
}

/// One canonical representative per isomorphism class with the number of
/// labeled graphs in it, sorted by graph6.
pub fn isomorphism_classes(n: usize, connected_only: bool) -> Result<Vec<(Graph, u64)>, ExtremalError> {
    let all = enumerate_labeled(n)?;
    let total = all.len();
    let chunk = 1u64 << 12;
    let counts = (0..total.div_ceil(chunk))
        .into_par_iter()
        .fold(HashMap::new, |mut acc: HashMap<Graph, u64>, c| {
            for code in c * chunk..((c + 1) * chunk).min(total) {
                let g = all.graph(code);
                if !connected_only || g.is_connected() {
                    *acc.entry(canonical_form(&g)).or_default() += 1;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (g, k) in b {
                *a.entry(g).or_default() += k;
            }
            a
        });
    let mut classes: Vec<(String, Graph, u64)> =
        counts.into_iter().map(|(g, k)| (to_graph6(&g), g, k)).collect();
    classes.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(classes.into_iter().map(|(_, g, k)| (g, k)).collect())
}

/// One representative per isomorphism class.
pub fn enumerate_unlabeled(n: usize) -> Result<Vec<Graph>, ExtremalError> {
    Ok(isomorphism_classes(n, false)?.into_iter().map(|(g, _)| g).collect())
}
