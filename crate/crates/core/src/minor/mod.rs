//! Minor containment with branch-set witnesses, and an independent oracle.

mod model;
mod oracle;
mod search;

pub use model::{check_model, verify_model, MinorModel, ModelDefect};
pub use oracle::{find_subgraph, oracle_has_minor, ORACLE_MAX_VERTICES};
pub use search::{find_minor, find_minor_with, SearchOptions, SearchOutcome, DEFAULT_BUDGET};

use thiserror::Error;

use crate::constructions::{pattern_graph, ConstructionError, PatternSpec};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorError {
    #[error("search budget exhausted after {nodes} nodes")]
    Budget { nodes: u64 },
    #[error("oracle supports at most {ORACLE_MAX_VERTICES} host vertices, got {0}")]
    OracleCapacity(usize),
    #[error(transparent)]
    Pattern(#[from] ConstructionError),
}

pub fn is_minor_free(g: &Graph, spec: &PatternSpec) -> Result<bool, MinorError> {
    let h = pattern_graph(spec)?;
    Ok(find_minor(g, &h)?.is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{complete, complete_bipartite, split_graph};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }

    fn assert_found(g: &Graph, h: &Graph) -> MinorModel {
        let m = find_minor(g, h).unwrap().expect("model exists");
        check_model(g, h, &m).unwrap();
        m
    }

    #[test]
    fn documented_cases() {
        assert!(find_minor(&cycle(5), &complete(4).unwrap()).unwrap().is_none());
        let m = assert_found(&petersen(), &complete(5).unwrap());
        assert_eq!(m.branch_sets.len(), 5);
        let diamond = pattern_graph(&PatternSpec::kr_minus(4).unwrap()).unwrap();
        assert_found(&diamond, &diamond);
        assert!(find_minor(&complete(3).unwrap(), &complete(4).unwrap()).unwrap().is_none());
    }

    #[test]
    fn minor_freeness_of_named_graphs() {
        let k5m = PatternSpec::kr_minus(5).unwrap();
        let k5e = PatternSpec::kr_double_minus(5).unwrap();
        assert!(is_minor_free(&complete_bipartite(2, 7).unwrap(), &k5m).unwrap());
        assert!(is_minor_free(&split_graph(12, 2).unwrap(), &k5e).unwrap());
        assert!(!is_minor_free(&complete(6).unwrap(), &k5m).unwrap());
    }

    #[test]
    fn disconnected_patterns() {
        let two_k2 = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_found(&cycle(4), &two_k2);
        assert_found(&Graph::from_edges(5, [(0, 1), (3, 4)]).unwrap(), &two_k2);
        // a star has no two disjoint edges, and contraction cannot create them
        let star = Graph::from_edges(5, (1..5).map(|i| (0, i))).unwrap();
        assert!(find_minor(&star, &two_k2).unwrap().is_none());
        let isolated = Graph::empty(3).unwrap();
        assert_found(&cycle(3), &isolated);
        assert_found(&Graph::empty(4).unwrap(), &isolated);
    }

    #[test]
    fn budget_is_an_error_not_an_answer() {
        let opts = SearchOptions {
            budget: 10,
            ..SearchOptions::default()
        };
        let err = find_minor_with(&petersen(), &complete(5).unwrap(), &opts).unwrap_err();
        assert!(matches!(err, MinorError::Budget { .. }));
    }

    #[test]
    fn pruning_rules_agree() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let patterns = [
            complete(4).unwrap(),
            pattern_graph(&PatternSpec::kr_minus(4).unwrap()).unwrap(),
            Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap(),
            cycle(4),
        ];
        for _ in 0..150 {
            let n = rng.gen_range(4..=7);
            let p = rng.gen_range(0.2..0.7);
            let edges: Vec<_> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::from_edges(n, edges).unwrap();
            for h in &patterns {
                let expected = find_minor_with(&g, h, &SearchOptions::unpruned()).unwrap().model.is_some();
                for mask in 0u32..32 {
                    let opts = SearchOptions {
                        counting: mask & 1 != 0,
                        frozen_edges: mask & 2 != 0,
                        grow_connected: mask & 4 != 0,
                        saturate: mask & 8 != 0,
                        capacity: mask & 16 != 0,
                        budget: DEFAULT_BUDGET,
                    };
                    let out = find_minor_with(&g, h, &opts).unwrap();
                    assert_eq!(out.model.is_some(), expected, "{g:?} {h:?} {opts:?}");
                    if let Some(m) = out.model {
                        check_model(&g, h, &m).unwrap();
                    }
                }
            }
        }
    }
}
