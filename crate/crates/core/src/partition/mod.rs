//! Clique partitions: verification, an exact oracle, the constructive join
//! partition from an edge colouring, the `H_ℓ(G)` lower-bound family and the
//! bound formulas attached to it.

mod coloring;
mod formulas;
mod join;
mod oracle;

pub use coloring::{coloring_with, edge_coloring, EdgeColoring, EXACT_COLORING_MAX_EDGES};
pub use formulas::{
    h_coefficient_limit, h_lower_bound, optimize_h, y_lower_bound, y_profile_minimum, HOptimum,
};
pub use join::{build_h, build_y, join_partition, HPart, JoinGraph};
pub use oracle::{cp_bruteforce, min_clique_partition, OracleResult, DEFAULT_MAX_EDGES};

use crate::graph::{Bits, Graph};
use serde::{Deserialize, Serialize};

/// Cliques of a host graph that should cover every edge exactly once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliquePartition {
    pub host: Graph,
    pub cliques: Vec<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionReport {
    pub valid: bool,
    pub size: usize,
    pub uncovered: Vec<(usize, usize)>,
    pub overcovered: Vec<(usize, usize)>,
    /// Listed sets that are not cliques of the host (or have fewer than two vertices).
    pub bad_cliques: Vec<usize>,
}

pub fn verify_partition(g: &Graph, p: &CliquePartition) -> PartitionReport {
    let n = g.n();
    let mut count = vec![0u32; n * n];
    let mut report = PartitionReport {
        size: p.cliques.len(),
        ..Default::default()
    };
    for (idx, &c) in p.cliques.iter().enumerate() {
        if c.count_ones() < 2 || c & !g.vertex_mask() != 0 || !g.is_clique(c) {
            report.bad_cliques.push(idx);
            continue;
        }
        for u in Bits(c) {
            for v in Bits(c & !((2u64 << u).wrapping_sub(1))) {
                count[u * n + v] += 1;
            }
        }
    }
    for (u, v) in g.edges() {
        match count[u * n + v] {
            0 => report.uncovered.push((u, v)),
            1 => {}
            _ => report.overcovered.push((u, v)),
        }
    }
    report.valid = report.uncovered.is_empty()
        && report.overcovered.is_empty()
        && report.bad_cliques.is_empty();
    report
}

impl CliquePartition {
    /// JSON form: a list of sorted vertex lists.
    pub fn to_json(&self) -> serde_json::Value {
        let lists: Vec<Vec<usize>> = self.cliques.iter().map(|&c| Bits(c).collect()).collect();
        serde_json::json!(lists)
    }

    pub fn from_vertex_lists(host: Graph, lists: &[Vec<usize>]) -> Self {
        let cliques = lists
            .iter()
            .map(|l| l.iter().fold(0u64, |m, &v| m | 1 << v))
            .collect();
        CliquePartition { host, cliques }
    }
}
