//! Exact minimum clique partitions of small graphs.
//!
//! The search always covers one uncovered edge next, picking the edge with
//! the fewest common neighbours, and branches over every clique of the
//! remaining graph that contains it. Values are memoised on the canonical
//! form of the remaining graph, so isomorphic residues are solved once.

use crate::error::{Error, Result};
use crate::graph::{canonical_form, Bits, CanonicalForm, Graph};
use std::collections::HashMap;

/// Default edge-count guardrail for [`cp_bruteforce`].
pub const DEFAULT_MAX_EDGES: usize = 48;

/// Exact minimum clique partition: size and one optimal partition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub size: usize,
    pub cliques: Vec<u64>,
}

/// `cp(g)`, the clique partition number.
pub fn cp_bruteforce(g: &Graph) -> Result<usize> {
    Ok(min_clique_partition(g, None, DEFAULT_MAX_EDGES)?.size)
}

/// Minimum partition into cliques of at most `max_clique` vertices (`None`
/// for unrestricted). Refuses graphs with more than `max_edges` edges.
pub fn min_clique_partition(
    g: &Graph,
    max_clique: Option<usize>,
    max_edges: usize,
) -> Result<OracleResult> {
    let e = g.edge_count();
    if e > max_edges {
        return Err(Error::Capacity {
            what: "clique partition oracle edge count",
            limit: max_edges,
            got: e,
        });
    }
    if let Some(r) = max_clique {
        if r < 2 && e > 0 {
            return Err(Error::Precondition(
                "clique size bound must be at least 2".into(),
            ));
        }
    }
    let mut solver = Oracle {
        max_clique: max_clique.unwrap_or(usize::MAX),
        memo: HashMap::new(),
    };
    let size = solver.solve(g);
    // Walk the memo to recover an optimal partition.
    let mut cliques = Vec::with_capacity(size);
    let mut rest = g.clone();
    while rest.edge_count() > 0 {
        let target = solver.solve(&rest);
        let (u, v) = branch_edge(&rest);
        let choice = solver
            .candidates(&rest, u, v)
            .into_iter()
            .find(|&c| 1 + solver.solve(&remove_clique(&rest, c)) == target)
            .expect("an optimal branch exists");
        rest = remove_clique(&rest, choice);
        cliques.push(choice);
    }
    Ok(OracleResult { size, cliques })
}

struct Oracle {
    max_clique: usize,
    memo: HashMap<CanonicalForm, usize>,
}

impl Oracle {
    fn solve(&mut self, g: &Graph) -> usize {
        let e = g.edge_count();
        if e <= 1 {
            return e;
        }
        let key = canonical_form(g);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let (u, v) = branch_edge(g);
        // ω ≤ Δ + 1, so at least ⌈e / binom(min(Δ+1, cap), 2)⌉ cliques are needed.
        let max_deg = (0..g.n()).map(|i| g.degree(i)).max().unwrap_or(0);
        let omega = (max_deg + 1).min(self.max_clique);
        let lower = e.div_ceil(omega * (omega - 1) / 2);
        let mut best = usize::MAX;
        for c in self.candidates(g, u, v) {
            let val = 1 + self.solve(&remove_clique(g, c));
            best = best.min(val);
            if best == lower {
                break;
            }
        }
        self.memo.insert(key, best);
        best
    }

    /// Cliques of `g` containing both `u` and `v`, largest first.
    fn candidates(&self, g: &Graph, u: usize, v: usize) -> Vec<u64> {
        let common = g.row(u) & g.row(v);
        let mut out = Vec::new();
        fn grow(g: &Graph, clique: u64, size: usize, cand: u64, cap: usize, out: &mut Vec<u64>) {
            out.push(clique);
            if size == cap {
                return;
            }
            for w in Bits(cand) {
                let higher = !((2u64 << w).wrapping_sub(1));
                grow(
                    g,
                    clique | 1 << w,
                    size + 1,
                    cand & g.row(w) & higher,
                    cap,
                    out,
                );
            }
        }
        grow(g, 1 << u | 1 << v, 2, common, self.max_clique, &mut out);
        out.sort_by_key(|c| std::cmp::Reverse(c.count_ones()));
        out
    }
}

/// The edge with fewest common neighbours, ties to the lexicographically first.
fn branch_edge(g: &Graph) -> (usize, usize) {
    g.edges()
        .min_by_key(|&(u, v)| (g.row(u) & g.row(v)).count_ones())
        .expect("graph has an edge")
}

fn remove_clique(g: &Graph, clique: u64) -> Graph {
    let mut h = g.clone();
    for u in Bits(clique) {
        for v in Bits(clique) {
            if u < v {
                h.remove_edge(u, v);
            }
        }
    }
    h
}
