//! Brute-force canonical forms for small graphs.
//!
//! Vertices are first split into color classes by iterated degree refinement
//! (an isomorphism-invariant ordered partition). The canonical form is the
//! lexicographically smallest sequence of back-adjacency rows over all vertex
//! orders that list the classes in order. Two graphs get the same form iff they
//! are isomorphic. Work grows with the product of class-size factorials, so this
//! is meant for graphs of a dozen or so vertices.

use std::collections::BTreeMap;

use crate::graph::{bit, Bits, Graph};

/// Ordered color classes after refinement.
fn refined_cells(g: &Graph) -> Vec<u64> {
    let n = g.n();
    let mut color: Vec<usize> = g.degrees();
    let mut classes = count_distinct(&color);
    loop {
        let signatures: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = Bits(g.neighbors(v)).map(|u| color[u]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let ranks: BTreeMap<&(usize, Vec<usize>), usize> = {
            let mut sorted: Vec<&(usize, Vec<usize>)> = signatures.iter().collect();
            sorted.sort();
            sorted.dedup();
            sorted.into_iter().enumerate().map(|(k, s)| (s, k)).collect()
        };
        let next: Vec<usize> = signatures.iter().map(|s| ranks[s]).collect();
        let next_classes = count_distinct(&next);
        color = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let mut cells = vec![0u64; classes];
    for (v, &c) in color.iter().enumerate() {
        cells[c] |= bit(v);
    }
    cells
}

fn count_distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct Search<'a> {
    g: &'a Graph,
    /// cell mask for each output position
    slots: Vec<u64>,
    order: Vec<usize>,
    rows: Vec<u64>,
    best_rows: Vec<u64>,
    best_order: Vec<usize>,
    have_best: bool,
}

impl Search<'_> {
    fn run(&mut self, pos: usize, used: u64) {
        let n = self.g.n();
        if pos == n {
            if !self.have_best || self.rows < self.best_rows {
                self.best_rows.copy_from_slice(&self.rows);
                self.best_order.copy_from_slice(&self.order);
                self.have_best = true;
            }
            return;
        }
        let mut candidates = self.slots[pos] & !used;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            // vertices with the same neighborhood outside each other are interchangeable
            let nv = self.g.neighbors(v);
            let mut twins = 0;
            for u in Bits(candidates) {
                let nu = self.g.neighbors(u);
                if nu & !bit(v) == nv & !bit(u) {
                    twins |= bit(u);
                }
            }
            candidates &= !twins;

            let mut row = 0u64;
            for (k, &u) in self.order[..pos].iter().enumerate() {
                if nv & bit(u) != 0 {
                    row |= bit(k);
                }
            }
            self.order[pos] = v;
            self.rows[pos] = row;
            // the best can change while siblings are explored, so compare the whole prefix
            if self.have_best && self.rows[..=pos] > self.best_rows[..=pos] {
                continue;
            }
            self.run(pos + 1, used | bit(v));
        }
    }
}

/// `labeling[v]` is the position of vertex `v` in the canonical order.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let cells = refined_cells(g);
    let slots: Vec<u64> = cells
        .iter()
        .flat_map(|&c| std::iter::repeat_n(c, c.count_ones() as usize))
        .collect();
    let mut search = Search {
        g,
        slots,
        order: vec![0; n],
        rows: vec![0; n],
        best_rows: vec![0; n],
        best_order: vec![0; n],
        have_best: false,
    };
    search.run(0, 0);
    let mut labeling = vec![0; n];
    for (pos, &v) in search.best_order.iter().enumerate() {
        labeling[v] = pos;
    }
    labeling
}

/// The canonical representative of `g`'s isomorphism class.
pub fn canonical_form(g: &Graph) -> Graph {
    g.relabel(&canonical_labeling(g))
        .expect("canonical labeling is a permutation")
}

pub fn are_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.n() == h.n()
        && g.edge_count() == h.edge_count()
        && {
            let mut a = g.degrees();
            let mut b = h.degrees();
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }
        && canonical_form(g) == canonical_form(h)
}
