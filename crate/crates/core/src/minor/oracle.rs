//! Minor testing straight from the definition, for cross-checking the search.
//!
//! Every minor is a subgraph of some graph obtained by edge contractions alone
//! (contract a spanning tree of each branch set, then delete what is left over),
//! so the oracle walks the contraction closure of `g` and runs a subgraph test
//! at each step. Visited graphs are remembered by canonical form.

use std::cmp::Reverse;
use std::collections::HashSet;

use super::MinorError;
use crate::canon::canonical_form;
use crate::graph::{bit, Bits, Graph};

pub const ORACLE_MAX_VERTICES: usize = 10;

pub fn oracle_has_minor(g: &Graph, h: &Graph) -> Result<bool, MinorError> {
    if g.n() > ORACLE_MAX_VERTICES {
        return Err(MinorError::OracleCapacity(g.n()));
    }
    let mut seen = HashSet::new();
    Ok(contracts_to(&canonical_form(g), h, &mut seen))
}

fn contracts_to(g: &Graph, h: &Graph, seen: &mut HashSet<Graph>) -> bool {
    if g.n() < h.n() || g.edge_count() < h.edge_count() || !seen.insert(g.clone()) {
        return false;
    }
    if find_subgraph(g, h).is_some() {
        return true;
    }
    g.edges().any(|(i, j)| {
        let c = g.contract_edge(i, j).expect("contracting an existing edge");
        contracts_to(&canonical_form(&c), h, seen)
    })
}

/// An injective map `phi` with `phi[u] phi[v]` an edge of `g` for every edge
/// `uv` of `h`, if one exists.
pub fn find_subgraph(g: &Graph, h: &Graph) -> Option<Vec<usize>> {
    if h.n() > g.n() || h.edge_count() > g.edge_count() {
        return None;
    }
    // pattern vertices in an order where each one has many mapped neighbors
    let mut order = Vec::with_capacity(h.n());
    let mut ordered = 0u64;
    for _ in 0..h.n() {
        let next = (0..h.n())
            .filter(|&v| ordered & bit(v) == 0)
            .max_by_key(|&v| {
                (
                    (h.neighbors(v) & ordered).count_ones(),
                    h.neighbors(v).count_ones(),
                    Reverse(v),
                )
            })
            .expect("unordered vertex remains");
        order.push(next);
        ordered |= bit(next);
    }
    let mut phi = vec![usize::MAX; h.n()];
    embed(g, h, &order, 0, 0, &mut phi).then_some(phi)
}

fn embed(g: &Graph, h: &Graph, order: &[usize], k: usize, used: u64, phi: &mut [usize]) -> bool {
    if k == order.len() {
        return true;
    }
    let u = order[k];
    let need = h.neighbors(u).count_ones();
    let mut candidates = g.vertex_mask() & !used;
    for w in Bits(h.neighbors(u)) {
        if phi[w] != usize::MAX {
            candidates &= g.neighbors(phi[w]);
        }
    }
    for v in Bits(candidates) {
        if g.neighbors(v).count_ones() < need {
            continue;
        }
        phi[u] = v;
        if embed(g, h, order, k + 1, used | bit(v), phi) {
            return true;
        }
    }
    phi[u] = usize::MAX;
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::empty(n).unwrap().complement()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn subgraph_embedding() {
        let phi = find_subgraph(&complete(5), &cycle(4)).unwrap();
        let c4 = cycle(4);
        for (a, b) in c4.edges() {
            assert!(complete(5).has_edge(phi[a], phi[b]));
        }
        assert!(find_subgraph(&cycle(5), &complete(3)).is_none());
        assert!(find_subgraph(&cycle(6), &Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap()).is_some());
    }

    #[test]
    fn small_cases() {
        assert!(!oracle_has_minor(&complete(3), &complete(4)).unwrap());
        assert!(oracle_has_minor(&cycle(4), &complete(3)).unwrap());
        assert!(!oracle_has_minor(&cycle(5), &complete(4)).unwrap());
        for n in 1..=5 {
            assert!(oracle_has_minor(&Graph::empty(n).unwrap(), &Graph::empty(1).unwrap()).unwrap());
        }
        assert!(matches!(
            oracle_has_minor(&Graph::empty(11).unwrap(), &complete(2)),
            Err(MinorError::OracleCapacity(11))
        ));
    }

    #[test]
    fn wheel_has_k4_but_not_k5() {
        // W5: hub 0 and rim 1..=5
        let mut edges: Vec<_> = (1..=5).map(|i| (0, i)).collect();
        edges.extend((1..=5).map(|i| (i, i % 5 + 1)));
        let w = Graph::from_edges(6, edges).unwrap();
        assert!(oracle_has_minor(&w, &complete(4)).unwrap());
        assert!(!oracle_has_minor(&w, &complete(5)).unwrap());
    }
}
