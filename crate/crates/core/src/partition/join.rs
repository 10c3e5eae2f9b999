//! The join partition `G ≡ K̄_ℓ` from an edge colouring, and the lower-bound
//! family `H_ℓ(G)` with its split into `X_ℓ(G) = G ≡ K̄_{2ℓ}` and `Y_ℓ`.

use super::{edge_coloring, CliquePartition};
use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use serde::{Deserialize, Serialize};

/// Partition of `g ≡ K̄_ℓ` (with `g` on vertices `0..m` and the independent
/// set on `m..m+ℓ`) into `m·ℓ − e(g)` cliques.
///
/// Every colour class of `g` is matched with one independent vertex `w`; an
/// edge `xy` of colour `c` becomes the triangle `{x, y, w_c}`. Join edges not
/// used by a triangle are kept as single edges.
pub fn join_partition(g: &Graph, l: usize) -> Result<CliquePartition> {
    let coloring = edge_coloring(g);
    if coloring.num_colors > l {
        return Err(Error::Precondition(format!(
            "edge colouring uses {} colours but only {l} independent vertices are available",
            coloring.num_colors
        )));
    }
    let m = g.n();
    let host = g.join(&Graph::empty(l))?;
    let mut cliques = Vec::with_capacity(m * l);
    let mut used = vec![0u64; l];
    for (&(x, y), &c) in &coloring.colors {
        cliques.push(1u64 << x | 1 << y | 1 << (m + c));
        used[c] |= 1 << x | 1 << y;
    }
    for (c, &u) in used.iter().enumerate() {
        for v in (0..m).filter(|&v| u >> v & 1 == 0) {
            cliques.push(1u64 << v | 1 << (m + c));
        }
    }
    Ok(CliquePartition { host, cliques })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HPart {
    G,
    LeftIndependent,
    RightIndependent,
    LeftClique,
    RightClique,
}

/// `H_ℓ(G)` together with its vertex layout: `G` on `0..m`, then the two
/// independent sets, then the two cliques, each of size `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinGraph {
    pub graph: Graph,
    pub m: usize,
    pub l: usize,
}

impl JoinGraph {
    pub fn part(&self, v: usize) -> HPart {
        let (m, l) = (self.m, self.l);
        match v {
            _ if v < m => HPart::G,
            _ if v < m + l => HPart::LeftIndependent,
            _ if v < m + 2 * l => HPart::RightIndependent,
            _ if v < m + 3 * l => HPart::LeftClique,
            _ => HPart::RightClique,
        }
    }

    pub fn parts(&self) -> Vec<HPart> {
        (0..self.graph.n()).map(|v| self.part(v)).collect()
    }

    /// Edge-disjoint `(X, Y)` on the same vertex set: `X` holds `G` and its
    /// join to the independent sets, `Y` everything else.
    pub fn decompose(&self) -> (Graph, Graph) {
        let g_mask = u64::MAX.checked_shr(64 - self.m as u32).unwrap_or(0);
        let mut x = Graph::empty(self.graph.n());
        for (u, v) in self.graph.edges() {
            if g_mask >> u & 1 == 1 {
                x.add_edge(u, v);
            }
        }
        let y = self.graph.difference(&x);
        (x, y)
    }

    /// Sidecar describing the part of every vertex.
    pub fn sidecar_json(&self) -> serde_json::Value {
        serde_json::json!({ "m": self.m, "l": self.l, "parts": self.parts() })
    }
}

pub fn build_h(g: &Graph, l: usize) -> Result<JoinGraph> {
    let m = g.n();
    let n = m + 4 * l;
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            what: "H construction order",
            limit: MAX_VERTICES,
            got: n,
        });
    }
    let mut h = Graph::empty(n);
    for (u, v) in g.edges() {
        h.add_edge(u, v);
    }
    let (li, ri, lc, rc) = (m, m + l, m + 2 * l, m + 3 * l);
    for a in 0..l {
        for v in 0..m {
            h.add_edge(v, li + a);
            h.add_edge(v, ri + a);
        }
        for b in 0..l {
            h.add_edge(li + a, lc + b);
            h.add_edge(ri + a, rc + b);
            h.add_edge(lc + a, rc + b);
            if a < b {
                h.add_edge(lc + a, lc + b);
                h.add_edge(rc + a, rc + b);
            }
        }
    }
    Ok(JoinGraph { graph: h, m, l })
}

/// `Y_ℓ = K̄_ℓ ≡ K_ℓ ≡ K_ℓ ≡ K̄_ℓ` on its own `4ℓ` vertices.
pub fn build_y(l: usize) -> Result<Graph> {
    let (_, y) = build_h(&Graph::empty(0), l)?.decompose();
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::canonical_form;
    use crate::partition::verify_partition;

    #[test]
    fn join_sizes() {
        let k4 = Graph::complete(4);
        let p = join_partition(&k4, 4).unwrap();
        assert!(verify_partition(&p.host, &p).valid);
        assert_eq!(p.cliques.len(), 10);

        let e = join_partition(&Graph::empty(5), 3).unwrap();
        assert_eq!(e.cliques.len(), 15);
        assert!(e.cliques.iter().all(|c| c.count_ones() == 2));

        let err = join_partition(&Graph::complete(5), 4).unwrap_err();
        assert!(err.to_string().contains("5 colours"));
    }

    #[test]
    fn h_structure() {
        let c5 = Graph::cycle(5);
        let h = build_h(&c5, 2).unwrap();
        assert_eq!(h.graph.n(), 13);
        let (x, y) = h.decompose();
        assert_eq!(x.edge_count() + y.edge_count(), h.graph.edge_count());
        assert_eq!(x.edge_count(), 5 + 5 * 4);
        assert_eq!(
            canonical_form(&h.graph.complement()),
            canonical_form(&h.graph)
        );
        let g = Graph::path(3);
        assert_eq!(
            canonical_form(&build_h(&g, 3).unwrap().graph.complement()),
            canonical_form(&build_h(&g.complement(), 3).unwrap().graph)
        );
        assert_eq!(
            canonical_form(&build_y(1).unwrap()),
            canonical_form(&Graph::path(4))
        );
    }
}
