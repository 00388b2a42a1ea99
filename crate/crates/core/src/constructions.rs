//! Named graph families: complete and complete bipartite graphs, complete split
//! graphs `S(n,t)`, split graphs with a matching `F(n,t)`, near-cliques
//! `K_r - E(paths)` / `K_r - M`, and the nineteen small patterns `F1..F19`.
//!
//! Layouts are fixed: clique vertices first, then matching pairs, then any
//! leftover vertex; deleted paths occupy consecutive vertices from 0.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeList, Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("split graph needs 1 <= t < n, got n = {n}, t = {t}")]
    SplitParameters { n: usize, t: usize },
    #[error("pattern clique order must be at least 3, got {0}")]
    CliqueOrder(usize),
    #[error("path on {0} vertices is not allowed; every deleted path needs at least 2 vertices")]
    PathTooShort(usize),
    #[error("deleted paths use {used} vertices but K_{r} has only {r}")]
    PathsTooLong { used: usize, r: usize },
    #[error("deleted edge ({0},{1}) is not an edge of K_{2}")]
    EdgeOutsideClique(usize, usize, usize),
    #[error("unknown catalog graph {0:?}")]
    UnknownCatalogName(String),
}

pub type Result<T> = std::result::Result<T, ConstructionError>;

/// Edges removed from `K_r` to form a pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Deletion {
    /// Vertex-disjoint paths with the given vertex counts.
    PathFamily(Vec<usize>),
    /// An explicit edge set `M`.
    ExplicitEdges(Vec<(usize, usize)>),
}

/// A minor pattern `K_r - E(P_{k_1} ∪ ... ∪ P_{k_l})` or `K_r - M`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PatternSpec {
    pub r: usize,
    pub deletion: Deletion,
}

impl PatternSpec {
    pub fn paths(r: usize, lengths: impl Into<Vec<usize>>) -> Result<Self> {
        let spec = Self {
            r,
            deletion: Deletion::PathFamily(lengths.into()),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn edges(r: usize, m: &EdgeList) -> Result<Self> {
        let spec = Self {
            r,
            deletion: Deletion::ExplicitEdges(m.iter().collect()),
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `K_r^-`: one edge removed.
    pub fn kr_minus(r: usize) -> Result<Self> {
        Self::paths(r, vec![2])
    }

    /// `K_r^=`: two incident edges removed.
    pub fn kr_double_minus(r: usize) -> Result<Self> {
        Self::paths(r, vec![3])
    }

    /// Plain `K_r`, nothing removed.
    pub fn clique(r: usize) -> Result<Self> {
        Self::paths(r, Vec::new())
    }

    pub fn validate(&self) -> Result<()> {
        if self.r < 3 {
            return Err(ConstructionError::CliqueOrder(self.r));
        }
        match &self.deletion {
            Deletion::PathFamily(ks) => {
                if let Some(&k) = ks.iter().find(|&&k| k < 2) {
                    return Err(ConstructionError::PathTooShort(k));
                }
                let used: usize = ks.iter().sum();
                if used > self.r {
                    return Err(ConstructionError::PathsTooLong { used, r: self.r });
                }
            }
            Deletion::ExplicitEdges(m) => {
                for &(i, j) in m {
                    if i == j || i >= self.r || j >= self.r {
                        return Err(ConstructionError::EdgeOutsideClique(i, j, self.r));
                    }
                }
            }
        }
        Ok(())
    }

    /// The deleted edge set `M`.
    pub fn deleted_edges(&self) -> Result<EdgeList> {
        self.validate()?;
        Ok(match &self.deletion {
            Deletion::PathFamily(ks) => {
                let mut m = EdgeList::new();
                let mut start = 0;
                for &k in ks {
                    for v in start + 1..start + k {
                        m.insert(v - 1, v)?;
                    }
                    start += k;
                }
                m
            }
            Deletion::ExplicitEdges(pairs) => EdgeList::from_pairs(pairs.iter().copied())?,
        })
    }

    /// Compact human-readable name, e.g. `K5-E(P3)` or `K4-{(0,1),(2,3)}`.
    pub fn label(&self) -> String {
        match &self.deletion {
            Deletion::PathFamily(ks) if ks.is_empty() => format!("K{}", self.r),
            Deletion::PathFamily(ks) => {
                let parts: Vec<String> = ks.iter().map(|k| format!("P{k}")).collect();
                format!("K{}-E({})", self.r, parts.join("+"))
            }
            Deletion::ExplicitEdges(m) => {
                let parts: Vec<String> = m.iter().map(|(i, j)| format!("({i},{j})")).collect();
                format!("K{}-{{{}}}", self.r, parts.join(","))
            }
        }
    }
}

/// How the deleted edge set `M` is shaped, which decides the predicted extremal graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PatternClass {
    /// `M` is a matching (including the empty set).
    Matching,
    /// `M` spans a connected, triangle-free graph and is not a matching.
    NonMatchingTriangleFreeConnected,
    Other,
}

pub fn classify_edges(m: &EdgeList) -> PatternClass {
    let mut seen = 0u64;
    let mut matching = true;
    for (i, j) in m.iter() {
        if seen & (1 << i | 1 << j) != 0 {
            matching = false;
        }
        seen |= 1 << i | 1 << j;
    }
    if matching {
        return PatternClass::Matching;
    }
    let n = m.vertex_bound();
    let g = Graph::from_edges(n, m.iter()).expect("edge list fits its own vertex bound");
    let support = m.vertex_mask();
    let connected = g.is_connected_set(support);
    let triangle = m
        .iter()
        .any(|(i, j)| g.neighbors(i) & g.neighbors(j) != 0);
    if connected && !triangle {
        PatternClass::NonMatchingTriangleFreeConnected
    } else {
        PatternClass::Other
    }
}

pub fn classify_deletion(spec: &PatternSpec) -> Result<PatternClass> {
    Ok(classify_edges(&spec.deleted_edges()?))
}

pub fn complete(r: usize) -> Result<Graph> {
    let g = Graph::empty(r)?;
    Ok(g.complement())
}

pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(GraphError::VertexCount(0).into());
    }
    if a + b > crate::graph::MAX_VERTICES {
        return Err(GraphError::Capacity(a + b).into());
    }
    Ok(Graph::empty(a)?.join(&Graph::empty(b)?)?)
}

/// `S(n,t)`: `K_t` joined to an independent set of `n - t` vertices.
pub fn split_graph(n: usize, t: usize) -> Result<Graph> {
    if t == 0 || t >= n {
        return Err(ConstructionError::SplitParameters { n, t });
    }
    Ok(complete(t)?.join(&Graph::empty(n - t)?)?)
}

/// `F(n,t)`: `K_t` joined to `p` disjoint edges plus `q` isolated vertices,
/// where `n - t = 2p + q` and `q ∈ {0, 1}`.
pub fn split_matching_graph(n: usize, t: usize) -> Result<Graph> {
    if t == 0 || t >= n {
        return Err(ConstructionError::SplitParameters { n, t });
    }
    let rest = n - t;
    let p = rest / 2;
    let outer = Graph::from_edges(rest, (0..p).map(|k| (2 * k, 2 * k + 1)))?;
    Ok(complete(t)?.join(&outer)?)
}

/// Matching edges of `split_matching_graph(n, t)` in its vertex layout.
pub fn split_matching_edges(n: usize, t: usize) -> Vec<(usize, usize)> {
    let p = n.saturating_sub(t) / 2;
    (0..p).map(|k| (t + 2 * k, t + 2 * k + 1)).collect()
}

pub fn pattern_graph(spec: &PatternSpec) -> Result<Graph> {
    let m = spec.deleted_edges()?;
    let mut rows = complete(spec.r)?.rows().to_vec();
    for (i, j) in m.iter() {
        rows[i] &= !(1 << j);
        rows[j] &= !(1 << i);
    }
    Ok(Graph::from_rows(&rows)?)
}

/// One entry of the small-pattern catalog.
#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub spec: PatternSpec,
    pub graph: Graph,
}

/// Deleted edge sets for F1..F19 (`K_4 - M` for F1..F6, `K_5 - M` for F7..F19).
type CatalogRow = (&'static str, usize, &'static [(usize, usize)]);

const CATALOG: [CatalogRow; 19] = [
    // one edge: diamond
    ("F1", 4, &[(2, 3)]),
    // perfect matching: 4-cycle 0-2-1-3
    ("F2", 4, &[(0, 1), (2, 3)]),
    // two edges at 2: triangle 0,1,3 with pendant 2 on 1
    ("F3", 4, &[(0, 2), (2, 3)]),
    // star at 2: triangle 0,1,3 plus isolated 2
    ("F4", 4, &[(0, 2), (1, 2), (2, 3)]),
    // path 2-0-3-1 deleted: leaves path 0-1-2-3
    ("F5", 4, &[(0, 2), (0, 3), (1, 3)]),
    // 4-cycle deleted: leaves edges 0-1, 2-3
    ("F6", 4, &[(0, 2), (0, 3), (1, 2), (1, 3)]),
    ("F7", 5, &[(0, 4)]),
    ("F8", 5, &[(0, 2), (1, 3)]),
    ("F9", 5, &[(0, 4), (3, 4)]),
    // star at 4
    ("F10", 5, &[(0, 4), (2, 4), (3, 4)]),
    // path 0-4-3 plus edge 1-2
    ("F11", 5, &[(0, 4), (3, 4), (1, 2)]),
    // path 1-3-4-0
    ("F12", 5, &[(1, 3), (3, 4), (0, 4)]),
    // star at 4 with all four edges: K4 plus isolated vertex
    ("F13", 5, &[(0, 4), (1, 4), (2, 4), (3, 4)]),
    // star at 4 on 0,2,3 plus edge 1-3
    ("F14", 5, &[(0, 4), (2, 4), (3, 4), (1, 3)]),
    // path 2-0-4-3-1
    ("F15", 5, &[(0, 2), (0, 4), (3, 4), (1, 3)]),
    // 4-cycle 0-2-3-1-0 deleted: bowtie centred at 4
    ("F16", 5, &[(0, 2), (2, 3), (1, 3), (0, 1)]),
    // K_{2,2} on {0,1}x{3,4} plus edge 2-4: leaves triangle 0,1,2 and path 2-3-4
    ("F17", 5, &[(0, 3), (0, 4), (1, 3), (1, 4), (2, 4)]),
    // complement of the 5-cycle 0-1-2-3-4-0
    ("F18", 5, &[(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]),
    // K_{2,3} between {0,1} and {2,3,4}: leaves edge 0-1 and triangle 2,3,4
    ("F19", 5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]),
];

pub fn figure1_catalog() -> Vec<CatalogEntry> {
    CATALOG
        .iter()
        .map(|&(name, r, m)| {
            let spec = PatternSpec {
                r,
                deletion: Deletion::ExplicitEdges(m.to_vec()),
            };
            let graph = pattern_graph(&spec).expect("catalog entries are valid");
            CatalogEntry { name, spec, graph }
        })
        .collect()
}

/// Looks up `"F1"`..`"F19"` (case-insensitive).
pub fn catalog_entry(name: &str) -> Result<CatalogEntry> {
    figure1_catalog()
        .into_iter()
        .find(|e| e.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| ConstructionError::UnknownCatalogName(name.to_string()))
}

/// Sorted degree sequence, largest first.
pub fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d = g.degrees();
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::are_isomorphic;

    fn path_graph(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn basic_families() {
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        assert_eq!(complete(1).unwrap().n(), 1);
        let k27 = complete_bipartite(2, 7).unwrap();
        assert_eq!(k27.edge_count(), 14);
        assert_eq!(degree_sequence(&k27), [vec![7, 7], vec![2; 7]].concat());
        assert!(complete_bipartite(0, 3).is_err());
        assert!(complete_bipartite(40, 30).is_err());
        assert!(complete(65).is_err());
    }

    #[test]
    fn split_graphs() {
        let s = split_graph(10, 2).unwrap();
        assert_eq!(s.edge_count(), 17);
        assert_eq!(s.degree(0).unwrap(), 9);
        assert_eq!(s.degree(9).unwrap(), 2);
        assert_eq!(split_graph(7, 6).unwrap(), complete(7).unwrap());
        assert!(are_isomorphic(&split_graph(4, 1).unwrap(), &complete_bipartite(1, 3).unwrap()));
        assert!(split_graph(5, 5).is_err());
        assert!(split_graph(5, 0).is_err());

        assert_eq!(split_matching_graph(10, 2).unwrap().edge_count(), 21);
        let f = split_matching_graph(9, 2).unwrap();
        // 1 + 2 * 7 + 3
        assert_eq!(f.edge_count(), 18);
        assert_eq!(split_matching_edges(9, 2), vec![(2, 3), (4, 5), (6, 7)]);
        assert_eq!(f.degree(8).unwrap(), 2, "leftover vertex only sees the clique");
    }

    #[test]
    fn split_graph_is_spanning_subgraph_of_matching_variant() {
        for n in 2..=20 {
            for t in 1..n {
                let s = split_graph(n, t).unwrap();
                let mut f = split_matching_graph(n, t).unwrap();
                assert_eq!(s.edge_count(), t * (t - 1) / 2 + t * (n - t));
                for (i, j) in s.edges() {
                    assert!(f.has_edge(i, j));
                }
                for (i, j) in split_matching_edges(n, t) {
                    f = f.delete_edge(i, j).unwrap();
                }
                assert_eq!(f, s);
            }
        }
    }

    #[test]
    fn pattern_examples() {
        let diamond = pattern_graph(&PatternSpec::kr_minus(4).unwrap()).unwrap();
        assert_eq!(diamond.edge_count(), 5);
        let k4eq = pattern_graph(&PatternSpec::kr_double_minus(4).unwrap()).unwrap();
        // K_1 joined to (K_1 ∪ K_2): triangle with a pendant vertex
        let expected = complete(1)
            .unwrap()
            .join(&Graph::empty(1).unwrap().disjoint_union(&complete(2).unwrap()).unwrap())
            .unwrap();
        assert!(are_isomorphic(&k4eq, &expected));
        let g = pattern_graph(&PatternSpec::paths(5, vec![2, 2]).unwrap()).unwrap();
        assert_eq!(g.edge_count(), 8);
        assert!(!g.has_edge(0, 1) && !g.has_edge(2, 3));
    }

    #[test]
    fn path_family_edge_counts() {
        for r in 3..=10 {
            for l in 0..=r / 2 {
                let spec = PatternSpec::paths(r, vec![2; l]).unwrap();
                assert_eq!(pattern_graph(&spec).unwrap().edge_count(), r * (r - 1) / 2 - l);
            }
        }
    }

    #[test]
    fn invalid_specs() {
        assert_eq!(PatternSpec::paths(4, vec![1]), Err(ConstructionError::PathTooShort(1)));
        assert!(matches!(
            PatternSpec::paths(4, vec![3, 2]),
            Err(ConstructionError::PathsTooLong { used: 5, r: 4 })
        ));
        assert_eq!(PatternSpec::paths(2, vec![]), Err(ConstructionError::CliqueOrder(2)));
        let m = EdgeList::from_pairs([(0, 5)]).unwrap();
        assert!(PatternSpec::edges(4, &m).is_err());
    }

    #[test]
    fn classification() {
        let m = |pairs: &[(usize, usize)]| EdgeList::from_pairs(pairs.iter().copied()).unwrap();
        assert_eq!(classify_edges(&m(&[(0, 1), (2, 3)])), PatternClass::Matching);
        assert_eq!(classify_edges(&m(&[])), PatternClass::Matching);
        assert_eq!(
            classify_edges(&m(&[(0, 1), (1, 2)])),
            PatternClass::NonMatchingTriangleFreeConnected
        );
        assert_eq!(classify_edges(&m(&[(0, 1), (1, 2), (0, 2)])), PatternClass::Other);
        // P3 plus a disjoint edge is not connected
        assert_eq!(classify_edges(&m(&[(0, 1), (1, 2), (3, 4)])), PatternClass::Other);
        assert_eq!(
            classify_deletion(&PatternSpec::kr_double_minus(5).unwrap()).unwrap(),
            PatternClass::NonMatchingTriangleFreeConnected
        );
        assert_eq!(
            classify_deletion(&PatternSpec::paths(6, vec![2, 2, 2]).unwrap()).unwrap(),
            PatternClass::Matching
        );
    }

    #[test]
    fn classification_ignores_labels() {
        let perms5: [&[usize]; 3] = [&[4, 3, 2, 1, 0], &[1, 3, 0, 4, 2], &[2, 0, 4, 1, 3]];
        let perms4: [&[usize]; 3] = [&[3, 2, 1, 0], &[1, 3, 0, 2], &[2, 0, 3, 1]];
        for entry in figure1_catalog() {
            let m = entry.spec.deleted_edges().unwrap();
            let class = classify_edges(&m);
            let perms = if entry.spec.r == 4 { &perms4 } else { &perms5 };
            for p in perms {
                let permuted: EdgeList = m.iter().map(|(i, j)| (p[i], p[j])).collect();
                assert_eq!(classify_edges(&permuted), class, "{}", entry.name);
            }
        }
    }

    #[test]
    fn catalog_shapes() {
        let cat = figure1_catalog();
        assert_eq!(cat.len(), 19);
        let get = |name: &str| catalog_entry(name).unwrap().graph;
        let k = |r| complete(r).unwrap();
        assert!(are_isomorphic(&get("F1"), &pattern_graph(&PatternSpec::kr_minus(4).unwrap()).unwrap()));
        assert!(are_isomorphic(&get("F2"), &cycle(4)));
        assert!(are_isomorphic(&get("F3"), &pattern_graph(&PatternSpec::kr_double_minus(4).unwrap()).unwrap()));
        assert!(are_isomorphic(&get("F4"), &k(3).disjoint_union(&k(1)).unwrap()));
        assert!(are_isomorphic(&get("F5"), &path_graph(4)));
        assert!(are_isomorphic(&get("F6"), &k(2).disjoint_union(&k(2)).unwrap()));
        assert!(are_isomorphic(&get("F7"), &pattern_graph(&PatternSpec::kr_minus(5).unwrap()).unwrap()));
        assert_eq!(get("F7").edge_count(), 9);
        assert!(are_isomorphic(&get("F8"), &pattern_graph(&PatternSpec::paths(5, vec![2, 2]).unwrap()).unwrap()));
        assert!(are_isomorphic(&get("F9"), &pattern_graph(&PatternSpec::kr_double_minus(5).unwrap()).unwrap()));
        assert!(are_isomorphic(&get("F13"), &k(4).disjoint_union(&k(1)).unwrap()));
        assert!(are_isomorphic(&get("F18"), &cycle(5)));
        assert!(are_isomorphic(&get("F19"), &k(2).disjoint_union(&k(3)).unwrap()));
        assert_eq!(get("F19").edge_count(), 4);
        assert!(catalog_entry("F20").is_err());
        assert_eq!(catalog_entry("f5").unwrap().name, "F5");
    }

    #[test]
    fn catalog_degree_sequences() {
        let expected: [&[usize]; 19] = [
            &[3, 3, 2, 2],
            &[2, 2, 2, 2],
            &[3, 2, 2, 1],
            &[2, 2, 2, 0],
            &[2, 2, 1, 1],
            &[1, 1, 1, 1],
            &[4, 4, 4, 3, 3],
            &[4, 3, 3, 3, 3],
            &[4, 4, 3, 3, 2],
            &[4, 3, 3, 3, 1],
            &[3, 3, 3, 3, 2],
            &[4, 3, 3, 2, 2],
            &[3, 3, 3, 3, 0],
            &[3, 3, 3, 2, 1],
            &[3, 3, 2, 2, 2],
            &[4, 2, 2, 2, 2],
            &[3, 2, 2, 2, 1],
            &[2, 2, 2, 2, 2],
            &[2, 2, 2, 1, 1],
        ];
        for (entry, want) in figure1_catalog().iter().zip(expected) {
            assert_eq!(degree_sequence(&entry.graph), want, "{}", entry.name);
        }
    }

    #[test]
    fn catalog_deleted_edge_counts_and_classes() {
        use PatternClass::*;
        let want = [
            (1, Matching),
            (2, Matching),
            (2, NonMatchingTriangleFreeConnected),
            (3, NonMatchingTriangleFreeConnected),
            (3, NonMatchingTriangleFreeConnected),
            (4, NonMatchingTriangleFreeConnected),
            (1, Matching),
            (2, Matching),
            (2, NonMatchingTriangleFreeConnected),
            (3, NonMatchingTriangleFreeConnected),
            (3, Other),
            (3, NonMatchingTriangleFreeConnected),
            (4, NonMatchingTriangleFreeConnected),
            (4, NonMatchingTriangleFreeConnected),
            (4, NonMatchingTriangleFreeConnected),
            (4, NonMatchingTriangleFreeConnected),
            (5, NonMatchingTriangleFreeConnected),
            (5, NonMatchingTriangleFreeConnected),
            (6, NonMatchingTriangleFreeConnected),
        ];
        for (entry, (size, class)) in figure1_catalog().iter().zip(want) {
            let m = entry.spec.deleted_edges().unwrap();
            assert_eq!(m.len(), size, "{}", entry.name);
            assert_eq!(classify_edges(&m), class, "{}", entry.name);
        }
    }
}
