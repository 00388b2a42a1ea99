//! Simple undirected graphs on at most 64 vertices, one `u64` adjacency row per vertex.
//!
//! Every operation returns a new graph; a [`Graph`] is never mutated after it is
//! handed out. Vertex removal (deletion or contraction) compacts the remaining
//! vertices in their original relative order.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..=64")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}: simple graphs have no loops")]
    Loop(usize),
    #[error("{{{0},{1}}} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("combined vertex count {0} exceeds 64")]
    Capacity(usize),
    #[error("vertex set must be nonempty")]
    EmptyVertexSet,
    #[error("adjacency rows disagree on pair {{{0},{1}}}")]
    Asymmetric(usize, usize),
    #[error("vertex map is not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("malformed graph6: {0}")]
    Graph6(String),
}

pub type Result<T> = std::result::Result<T, GraphError>;

#[inline]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the low `n` bits set.
#[inline]
pub const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
#[derive(Clone, Copy)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for Bits {}

/// A set of unordered vertex pairs, stored as `(i, j)` with `i < j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeList {
    edges: BTreeSet<(usize, usize)>,
}

impl EdgeList {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds an edge list, normalizing each pair to `(min, max)`.
    ///
    /// Repeated pairs collapse; loops are rejected.
    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Self::new();
        for (i, j) in pairs {
            list.insert(i, j)?;
        }
        Ok(list)
    }

    pub fn insert(&mut self, i: usize, j: usize) -> Result<bool> {
        if i == j {
            return Err(GraphError::Loop(i));
        }
        Ok(self.edges.insert((i.min(j), i.max(j))))
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// One more than the largest endpoint, or 0 for the empty list.
    pub fn vertex_bound(&self) -> usize {
        self.edges.iter().map(|&(_, j)| j + 1).max().unwrap_or(0)
    }

    /// Mask of all endpoints.
    pub fn vertex_mask(&self) -> u64 {
        self.edges.iter().fold(0, |m, &(i, j)| m | bit(i) | bit(j))
    }
}

impl FromIterator<(usize, usize)> for EdgeList {
    /// Panics on a loop; use [`EdgeList::from_pairs`] for untrusted input.
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        Self::from_pairs(iter).expect("edge list contains a loop")
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Box<[u64]>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges=[", self.n)?;
        for (k, (i, j)) in self.edges().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{i}-{j}")?;
        }
        write!(f, "])")
    }
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        Ok(Self {
            n,
            adj: vec![0; n].into_boxed_slice(),
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![0u64; Self::empty(n)?.n];
        for (i, j) in edges {
            check_pair(n, i, j)?;
            adj[i] |= bit(j);
            adj[j] |= bit(i);
        }
        Ok(Self {
            n,
            adj: adj.into_boxed_slice(),
        })
    }

    /// Builds a graph from adjacency rows, validating symmetry, loops and range.
    pub fn from_rows(rows: &[u64]) -> Result<Self> {
        let n = rows.len();
        Self::empty(n)?;
        let mask = low_mask(n);
        for (i, &row) in rows.iter().enumerate() {
            if row & !mask != 0 {
                let v = (row & !mask).trailing_zeros() as usize;
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
            if row & bit(i) != 0 {
                return Err(GraphError::Loop(i));
            }
            for j in Bits(row) {
                if rows[j] & bit(i) == 0 {
                    return Err(GraphError::Asymmetric(i, j));
                }
            }
        }
        Ok(Self {
            n,
            adj: rows.to_vec().into_boxed_slice(),
        })
    }

    /// Callers guarantee the row invariants.
    pub(crate) fn from_rows_unchecked(rows: Vec<u64>) -> Self {
        debug_assert!(Self::from_rows(&rows).is_ok());
        Self {
            n: rows.len(),
            adj: rows.into_boxed_slice(),
        }
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> u64 {
        self.adj[v]
    }

    /// Mask of all vertices.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && j < self.n && self.adj[i] & bit(j) != 0
    }

    pub fn degree(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self.adj[v].count_ones() as usize)
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(|r| r.count_ones() as usize).collect()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| Bits(self.adj[i] & !low_mask(i + 1)).map(move |j| (i, j)))
    }

    pub fn edge_list(&self) -> EdgeList {
        self.edges().collect()
    }

    pub fn add_edge(&self, i: usize, j: usize) -> Result<Self> {
        check_pair(self.n, i, j)?;
        let mut g = self.clone();
        g.adj[i] |= bit(j);
        g.adj[j] |= bit(i);
        Ok(g)
    }

    /// Removes `{i, j}` if present.
    pub fn delete_edge(&self, i: usize, j: usize) -> Result<Self> {
        check_pair(self.n, i, j)?;
        let mut g = self.clone();
        g.adj[i] &= !bit(j);
        g.adj[j] &= !bit(i);
        Ok(g)
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        self.check_vertex(v)?;
        if self.n == 1 {
            return Err(GraphError::VertexCount(0));
        }
        Ok(self.retain(self.vertex_mask() & !bit(v)))
    }

    /// Merges `i` and `j` into one vertex placed at `min(i, j)`'s position.
    ///
    /// Parallel edges merge and the loop disappears, so the result has
    /// `e - 1 - |N(i) ∩ N(j)|` edges.
    pub fn contract_edge(&self, i: usize, j: usize) -> Result<Self> {
        check_pair(self.n, i, j)?;
        if !self.has_edge(i, j) {
            return Err(GraphError::NotAnEdge(i, j));
        }
        let (keep, gone) = (i.min(j), i.max(j));
        let mut rows = self.adj.to_vec();
        let merged = (rows[keep] | rows[gone]) & !bit(keep) & !bit(gone);
        rows[keep] = merged;
        for u in Bits(merged) {
            rows[u] |= bit(keep);
        }
        let g = Self {
            n: self.n,
            adj: rows.into_boxed_slice(),
        };
        Ok(g.retain(self.vertex_mask() & !bit(gone)))
    }

    /// The subgraph induced by `mask`, renumbered in ascending order.
    pub fn induced(&self, mask: u64) -> Result<Self> {
        let mask = mask & self.vertex_mask();
        if mask == 0 {
            return Err(GraphError::EmptyVertexSet);
        }
        Ok(self.retain(mask))
    }

    pub fn induced_on(&self, vertices: &[usize]) -> Result<Self> {
        let mut mask = 0;
        for &v in vertices {
            self.check_vertex(v)?;
            mask |= bit(v);
        }
        self.induced(mask)
    }

    fn retain(&self, mask: u64) -> Self {
        let keep: Vec<usize> = Bits(mask).collect();
        let rows = keep
            .iter()
            .map(|&v| compress(self.adj[v] & mask, mask))
            .collect();
        Self::from_rows_unchecked(rows)
    }

    pub fn disjoint_union(&self, other: &Graph) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let shift = self.n;
        let mut rows: Vec<u64> = self.adj.to_vec();
        rows.extend(other.adj.iter().map(|&r| r << shift));
        Ok(Self::from_rows_unchecked(rows))
    }

    /// Disjoint union plus every edge between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Self> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::Capacity(n));
        }
        let left = low_mask(self.n);
        let right = low_mask(n) & !left;
        let mut rows: Vec<u64> = self.adj.iter().map(|&r| r | right).collect();
        rows.extend(other.adj.iter().map(|&r| (r << self.n) | left));
        Ok(Self::from_rows_unchecked(rows))
    }

    pub fn complement(&self) -> Self {
        let all = self.vertex_mask();
        let rows = (0..self.n).map(|v| all & !self.adj[v] & !bit(v)).collect();
        Self::from_rows_unchecked(rows)
    }

    /// Applies `perm` (old vertex `v` becomes `perm[v]`).
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(GraphError::VertexCount(perm.len()));
        }
        let mut seen = 0u64;
        for &p in perm {
            self.check_vertex(p)?;
            seen |= bit(p);
        }
        if seen != self.vertex_mask() {
            return Err(GraphError::NotAPermutation(self.n));
        }
        let mut rows = vec![0u64; self.n];
        for (i, j) in self.edges() {
            rows[perm[i]] |= bit(perm[j]);
            rows[perm[j]] |= bit(perm[i]);
        }
        Ok(Self::from_rows_unchecked(rows))
    }

    /// Vertices reachable from `v` inside `within`.
    pub fn reach(&self, v: usize, within: u64) -> u64 {
        let mut seen = bit(v) & within;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for u in Bits(frontier) {
                next |= self.adj[u];
            }
            next &= within & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`, ordered by minimum vertex.
    pub fn components_within(&self, within: u64) -> Vec<u64> {
        let mut rest = within & self.vertex_mask();
        let mut out = Vec::new();
        while rest != 0 {
            let c = self.reach(rest.trailing_zeros() as usize, rest);
            out.push(c);
            rest &= !c;
        }
        out
    }

    pub fn components(&self) -> Vec<u64> {
        self.components_within(self.vertex_mask())
    }

    /// Components as explicit vertex lists.
    pub fn component_sets(&self) -> Vec<Vec<usize>> {
        self.components().into_iter().map(|c| Bits(c).collect()).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, self.vertex_mask()) == self.vertex_mask()
    }

    /// Whether `mask` induces a nonempty connected subgraph.
    pub fn is_connected_set(&self, mask: u64) -> bool {
        mask != 0 && self.reach(mask.trailing_zeros() as usize, mask) == mask
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n: self.n });
        }
        Ok(())
    }
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    for v in [i, j] {
        if v >= n {
            return Err(GraphError::VertexOutOfRange { vertex: v, n });
        }
    }
    if i == j {
        return Err(GraphError::Loop(i));
    }
    Ok(())
}

/// Packs the bits of `row` selected by `mask` into the low bits, preserving order.
#[inline]
fn compress(row: u64, mask: u64) -> u64 {
    let mut out = 0;
    for (k, v) in Bits(mask).enumerate() {
        if row & bit(v) != 0 {
            out |= bit(k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn empty_bounds() {
        assert_eq!(Graph::empty(3).unwrap().edge_count(), 0);
        assert_eq!(Graph::empty(3).unwrap().n(), 3);
        assert_eq!(Graph::empty(1).unwrap(), k(1));
        assert_eq!(Graph::empty(64).unwrap().n(), 64);
        assert_eq!(Graph::empty(65), Err(GraphError::VertexCount(65)));
        assert_eq!(Graph::empty(0), Err(GraphError::VertexCount(0)));
    }

    #[test]
    fn edge_ops() {
        let g = Graph::empty(2).unwrap().add_edge(0, 1).unwrap();
        assert_eq!(g, k(2));
        assert_eq!(g.add_edge(1, 0).unwrap(), g);
        assert_eq!(k(3).delete_vertex(0).unwrap(), k(2));
        let p3 = k(3).delete_edge(0, 1).unwrap();
        // 0-2-1 is a path on three vertices.
        assert_eq!(p3.edge_count(), 2);
        assert_eq!(p3.degrees(), vec![1, 1, 2]);
        assert_eq!(g.add_edge(0, 0), Err(GraphError::Loop(0)));
        assert!(matches!(g.add_edge(0, 2), Err(GraphError::VertexOutOfRange { .. })));
        assert!(matches!(g.delete_vertex(2), Err(GraphError::VertexOutOfRange { .. })));
    }

    #[test]
    fn delete_vertex_compacts_in_order() {
        // path 0-1-2-3, drop 1: remaining 0,2,3 -> 0,1,2 with edge 2-3 -> 1-2
        let g = path(4).delete_vertex(1).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(1, 2)]);
    }

    #[test]
    fn contraction_examples() {
        let c4 = cycle(4);
        for (i, j) in c4.edges() {
            assert_eq!(c4.contract_edge(i, j).unwrap(), k(3));
        }
        for (i, j) in k(4).edges() {
            assert_eq!(k(4).contract_edge(i, j).unwrap(), k(3));
        }
        assert_eq!(path(4).contract_edge(1, 2).unwrap(), path(3));
        assert_eq!(k(2).contract_edge(0, 1).unwrap(), k(1));
        assert_eq!(
            path(4).contract_edge(0, 2),
            Err(GraphError::NotAnEdge(0, 2))
        );
    }

    #[test]
    fn join_and_union() {
        let star = k(1).join(&Graph::empty(3).unwrap()).unwrap();
        assert_eq!(star.degrees(), vec![3, 1, 1, 1]);
        let two_k2 = k(2).disjoint_union(&k(2)).unwrap();
        assert_eq!(two_k2.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
        assert!(!two_k2.is_connected());
        let s = k(2).join(&Graph::empty(8).unwrap()).unwrap();
        assert_eq!(s.edge_count(), 17);
        assert_eq!(s.degree(0).unwrap(), 9);
        assert_eq!(s.degree(5).unwrap(), 2);
        let big = Graph::empty(40).unwrap();
        assert_eq!(big.join(&big), Err(GraphError::Capacity(80)));
        assert_eq!(big.disjoint_union(&big), Err(GraphError::Capacity(80)));
    }

    #[test]
    fn components_and_induced() {
        let g = Graph::from_edges(6, [(0, 3), (1, 2), (3, 5)]).unwrap();
        assert_eq!(g.component_sets(), vec![vec![0, 3, 5], vec![1, 2], vec![4]]);
        assert_eq!(k(5).induced_on(&[0, 1, 2]).unwrap(), k(3));
        assert_eq!(k(5).induced(0), Err(GraphError::EmptyVertexSet));
        assert!(k(5).is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn from_rows_validates() {
        assert!(Graph::from_rows(&[0b10, 0b01]).is_ok());
        assert!(Graph::from_rows(&[0b10, 0b00]).is_err());
        assert!(Graph::from_rows(&[0b01, 0b00]).is_err());
        assert!(Graph::from_rows(&[0b100, 0b00]).is_err());
    }

    #[test]
    fn relabel_round_trip() {
        let g = path(4);
        let h = g.relabel(&[3, 2, 1, 0]).unwrap();
        assert_eq!(h, path(4));
        let h = g.relabel(&[1, 0, 2, 3]).unwrap();
        assert_eq!(h.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (2, 3)]);
        assert!(g.relabel(&[0, 0, 1, 2]).is_err());
    }
}
