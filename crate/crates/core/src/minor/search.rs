//! Branch-set search for minor models.
//!
//! Branch sets are chosen one pattern vertex at a time, in descending pattern
//! degree. Each set is a connected subset of the still-unused host vertices,
//! enumerated exactly once per root: the root is the first vertex of the set in
//! host order (descending degree) and growth only adds frontier vertices that
//! have not been excluded by an earlier sibling branch.
//!
//! Any model can be enlarged by absorbing unused vertices adjacent to a branch
//! set, so when a model exists there is one in which every host component is
//! either untouched or entirely covered. With `saturate` on, the search only
//! looks for such models: each unused piece next to a placed set must be
//! covered by the sets still to come, which bounds the number of such pieces
//! and, when the bound is tight, forces every remaining set to be one whole
//! piece.

use std::cmp::Reverse;

use super::model::{neighborhood, MinorModel};
use super::MinorError;
use crate::graph::{bit, Bits, Graph};

pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Pruning switches and the node budget. Every rule is sound on its own, so
/// any combination decides the same question.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Unused host vertices must cover one vertex per unplaced pattern vertex.
    pub counting: bool,
    /// A new set must touch the sets of its already placed pattern neighbors.
    pub frozen_edges: bool,
    /// Grow sets through frontier vertices only (otherwise every subset is
    /// tried and connectivity is checked afterwards).
    pub grow_connected: bool,
    /// Look only for models that cover every host component they touch.
    pub saturate: bool,
    /// Placed sets need enough unused neighbors for their unplaced pattern
    /// neighbors, and those neighbors need a common unused piece to live in.
    pub capacity: bool,
    /// Maximum number of search nodes before giving up.
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            counting: true,
            frozen_edges: true,
            grow_connected: true,
            saturate: true,
            capacity: true,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl SearchOptions {
    /// Plain exhaustive search with only connectivity-by-construction.
    pub fn unpruned() -> Self {
        Self {
            counting: false,
            frozen_edges: false,
            grow_connected: true,
            saturate: false,
            capacity: false,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub model: Option<MinorModel>,
    pub nodes: u64,
}

pub fn find_minor(g: &Graph, h: &Graph) -> Result<Option<MinorModel>, MinorError> {
    find_minor_with(g, h, &SearchOptions::default()).map(|o| o.model)
}

pub fn find_minor_with(g: &Graph, h: &Graph, opts: &SearchOptions) -> Result<SearchOutcome, MinorError> {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return Ok(SearchOutcome { model: None, nodes: 0 });
    }
    // host relabeled so that ascending bit order is descending degree
    let mut by_degree: Vec<usize> = (0..g.n()).collect();
    by_degree.sort_by_key(|&v| (Reverse(g.neighbors(v).count_ones()), v));
    let mut relabel = vec![0; g.n()];
    for (new, &old) in by_degree.iter().enumerate() {
        relabel[old] = new;
    }
    let host = g.relabel(&relabel).expect("sorting yields a permutation");

    let order = pattern_order(h);
    let unplaced_neighbors = (0..h.n()).map(|v| h.neighbors(v).count_ones()).collect();
    let mut search = Search {
        g: &host,
        h,
        order,
        opts,
        sets: vec![0; h.n()],
        set_neighbors: vec![0; h.n()],
        placed: 0,
        unplaced_neighbors,
        nodes: 0,
    };
    let found = search.place(0, host.vertex_mask())?;
    let model = found.then(|| {
        let sets: Vec<Vec<usize>> = search
            .sets
            .iter()
            .map(|&m| {
                let mut vs: Vec<usize> = Bits(m).map(|v| by_degree[v]).collect();
                vs.sort_unstable();
                vs
            })
            .collect();
        MinorModel::new(sets)
    });
    Ok(SearchOutcome {
        model,
        nodes: search.nodes,
    })
}

/// Descending degree; ties go to the vertex with more already-ordered neighbors.
fn pattern_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::with_capacity(h.n());
    let mut ordered = 0u64;
    for _ in 0..h.n() {
        let next = (0..h.n())
            .filter(|&v| ordered & bit(v) == 0)
            .max_by_key(|&v| {
                (
                    h.neighbors(v).count_ones(),
                    (h.neighbors(v) & ordered).count_ones(),
                    Reverse(v),
                )
            })
            .expect("unordered vertex remains");
        order.push(next);
        ordered |= bit(next);
    }
    order
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    order: Vec<usize>,
    opts: &'a SearchOptions,
    /// branch set per pattern vertex
    sets: Vec<u64>,
    set_neighbors: Vec<u64>,
    /// pattern vertices with a set
    placed: u64,
    unplaced_neighbors: Vec<u32>,
    nodes: u64,
}

impl Search<'_> {
    fn tick(&mut self) -> Result<(), MinorError> {
        self.nodes += 1;
        if self.nodes > self.opts.budget {
            return Err(MinorError::Budget { nodes: self.nodes });
        }
        Ok(())
    }

    /// Choose a set for `order[k]` from the unused host vertices `free`.
    fn place(&mut self, k: usize, free: u64) -> Result<bool, MinorError> {
        self.tick()?;
        let h = self.h;
        if k == h.n() {
            return Ok(h.edges().all(|(a, b)| self.set_neighbors[a] & self.sets[b] != 0));
        }
        let remaining = (h.n() - k) as u32;
        if self.opts.counting && free.count_ones() < remaining {
            return Ok(false);
        }
        let used = self.g.vertex_mask() & !free;
        let pieces = self.g.components_within(free);
        let mut forced = false;
        let mut touched = vec![false; pieces.len()];
        if self.opts.saturate {
            let used_neighbors = neighborhood(self.g, used);
            let mut count = 0;
            for (t, &piece) in touched.iter_mut().zip(&pieces) {
                *t = piece & used_neighbors != 0;
                count += u32::from(*t);
            }
            if count > remaining {
                return Ok(false);
            }
            forced = count == remaining;
        }
        if self.opts.capacity && !self.has_capacity(free, &pieces) {
            return Ok(false);
        }

        let j = self.order[k];
        let limit = if self.opts.counting {
            free.count_ones() - (remaining - 1)
        } else {
            u32::MAX
        };
        if !self.opts.grow_connected && !forced {
            // every nonempty subset of the unused vertices
            let mut s = free;
            while s != 0 {
                if s.count_ones() <= limit && self.try_set(k, free, s)? {
                    return Ok(true);
                }
                s = (s - 1) & free;
            }
            return Ok(false);
        }
        for (p, &piece) in pieces.iter().enumerate() {
            if forced && !touched[p] {
                continue;
            }
            if self.opts.frozen_edges && !self.reaches_placed_neighbors(j, piece) {
                continue;
            }
            if forced {
                if self.try_set(k, free, piece)? {
                    return Ok(true);
                }
                continue;
            }
            let mut excluded = 0u64;
            for root in Bits(piece) {
                if self.grow(k, free, piece, bit(root), excluded, self.g.neighbors(root), limit)? {
                    return Ok(true);
                }
                excluded |= bit(root);
            }
        }
        Ok(false)
    }

    /// Whether `mask` touches the set of every placed pattern neighbor of `j`.
    fn reaches_placed_neighbors(&self, j: usize, mask: u64) -> bool {
        Bits(self.h.neighbors(j) & self.placed).all(|i| self.set_neighbors[i] & mask != 0)
    }

    fn has_capacity(&self, free: u64, pieces: &[u64]) -> bool {
        for i in Bits(self.placed) {
            let need = self.unplaced_neighbors[i];
            if need > 0 && (self.set_neighbors[i] & free).count_ones() < need {
                return false;
            }
        }
        let all = self.h.vertex_mask();
        for u in Bits(all & !self.placed) {
            if self.h.neighbors(u) & self.placed != 0
                && !pieces.iter().any(|&piece| self.reaches_placed_neighbors(u, piece))
            {
                return false;
            }
        }
        true
    }

    /// Try `set` and every connected superset inside `piece` avoiding `excluded`.
    #[allow(clippy::too_many_arguments)]
    fn grow(
        &mut self,
        k: usize,
        free: u64,
        piece: u64,
        set: u64,
        excluded: u64,
        set_nbrs: u64,
        limit: u32,
    ) -> Result<bool, MinorError> {
        if self.try_set(k, free, set)? {
            return Ok(true);
        }
        if set.count_ones() >= limit {
            return Ok(false);
        }
        let mut excluded = excluded;
        for v in Bits(set_nbrs & piece & !set & !excluded) {
            let nbrs = set_nbrs | self.g.neighbors(v);
            if self.grow(k, free, piece, set | bit(v), excluded, nbrs, limit)? {
                return Ok(true);
            }
            excluded |= bit(v);
        }
        Ok(false)
    }

    fn try_set(&mut self, k: usize, free: u64, set: u64) -> Result<bool, MinorError> {
        self.tick()?;
        let j = self.order[k];
        if self.opts.frozen_edges && !self.reaches_placed_neighbors(j, set) {
            return Ok(false);
        }
        if !self.opts.grow_connected && !self.g.is_connected_set(set) {
            return Ok(false);
        }
        let nbrs = neighborhood(self.g, set);
        let rest = free & !set;
        if self.opts.capacity && (nbrs & rest).count_ones() < self.unplaced_neighbors[j] {
            return Ok(false);
        }
        self.sets[j] = set;
        self.set_neighbors[j] = nbrs;
        self.placed |= bit(j);
        for i in Bits(self.h.neighbors(j)) {
            self.unplaced_neighbors[i] -= 1;
        }
        let found = self.place(k + 1, rest)?;
        if found {
            return Ok(true);
        }
        for i in Bits(self.h.neighbors(j)) {
            self.unplaced_neighbors[i] += 1;
        }
        self.placed &= !bit(j);
        self.sets[j] = 0;
        self.set_neighbors[j] = 0;
        Ok(false)
    }
}
