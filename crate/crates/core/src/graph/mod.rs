//! Dense graphs on at most 64 vertices, one `u64` adjacency row per vertex.

mod canon;
mod enumerate;
mod graph6;

pub use canon::{canonical_form, canonical_labeling, CanonicalForm};
pub use enumerate::{
    enumerate_cliques, enumerate_graphs, one_vertex_extensions, one_vertex_extensions_keyed,
    CliqueSet, MAX_ENUMERATION_ORDER,
};
pub use graph6::{graph6_decode, graph6_encode, read_graph6_list, write_graph6_list};

use crate::error::{Error, Result};
use std::fmt;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

#[inline]
fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in ascending order.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

/// Undirected simple graph. Row `i` has bit `j` set iff `{i, j}` is an edge.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    ///
    /// Panics if `n > 64`; use [`Graph::try_empty`] for a fallible variant.
    pub fn empty(n: usize) -> Self {
        Self::try_empty(n).expect("graph order exceeds 64")
    }

    pub fn try_empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "graph order",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        Ok(Graph {
            n,
            rows: vec![0; n],
        })
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        let all = low_mask(n);
        for (i, row) in g.rows.iter_mut().enumerate() {
            *row = all & !(1u64 << i);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j);
        }
        g
    }

    /// Builds a graph from raw adjacency rows, checking symmetry and loops.
    pub fn from_rows(rows: Vec<u64>) -> Result<Self> {
        let n = rows.len();
        if n > MAX_VERTICES {
            return Err(Error::Capacity {
                what: "graph order",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        let mask = low_mask(n);
        for (i, &row) in rows.iter().enumerate() {
            if row & !mask != 0 || row >> i & 1 == 1 {
                return Err(Error::InvalidGraph(format!(
                    "row {i} out of range or has a loop"
                )));
            }
            for j in Bits(row) {
                if rows[j] >> i & 1 == 0 {
                    return Err(Error::InvalidGraph(format!(
                        "edge {i}-{j} is not symmetric"
                    )));
                }
            }
        }
        Ok(Graph { n, rows })
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Self::empty(n);
        if n >= 3 {
            for i in 0..n {
                g.add_edge(i, (i + 1) % n);
            }
        } else if n == 2 {
            g.add_edge(0, 1);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 1..n {
            g.add_edge(i - 1, i);
        }
        g
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn row(&self, i: usize) -> u64 {
        self.rows[i]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    /// Mask with one bit per vertex.
    #[inline]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn add_edge(&mut self, i: usize, j: usize) {
        assert!(i < self.n && j < self.n && i != j, "bad edge {i}-{j}");
        self.rows[i] |= 1 << j;
        self.rows[j] |= 1 << i;
    }

    pub fn remove_edge(&mut self, i: usize, j: usize) {
        self.rows[i] &= !(1 << j);
        self.rows[j] &= !(1 << i);
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.rows[i].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.rows
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(i, j)` with `i < j`, ordered by `i` then `j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| Bits(self.rows[i] & !low_mask(i + 1)).map(move |j| (i, j)))
    }

    pub fn complement(&self) -> Graph {
        let all = self.vertex_mask();
        let rows = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, &r)| !r & all & !(1u64 << i))
            .collect();
        Graph { n: self.n, rows }
    }

    /// True if every pair of vertices in `mask` is adjacent.
    pub fn is_clique(&self, mask: u64) -> bool {
        Bits(mask).all(|v| mask & !(1u64 << v) & !self.rows[v] == 0)
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut rows = vec![0u64; self.n];
        for (v, &pv) in perm.iter().enumerate() {
            rows[pv] = Bits(self.rows[v]).fold(0u64, |acc, u| acc | 1 << perm[u]);
        }
        Graph { n: self.n, rows }
    }

    /// Subgraph induced on the vertices of `mask`, relabelled in ascending order.
    pub fn induced(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        let mut g = Graph::empty(verts.len());
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Appends one vertex adjacent to exactly the vertices in `neighbours`.
    pub fn with_vertex(&self, neighbours: u64) -> Result<Graph> {
        if self.n >= MAX_VERTICES {
            return Err(Error::Capacity {
                what: "graph order",
                limit: MAX_VERTICES,
                got: self.n + 1,
            });
        }
        let neighbours = neighbours & self.vertex_mask();
        let v = self.n;
        let mut rows = self.rows.clone();
        for u in Bits(neighbours) {
            rows[u] |= 1 << v;
        }
        rows.push(neighbours);
        Ok(Graph { n: v + 1, rows })
    }

    /// Disjoint union followed by all edges between the two parts (`self ≡ other`).
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut g = Graph::try_empty(n)?;
        let left = self.vertex_mask();
        let right = low_mask(n) & !left;
        for i in 0..self.n {
            g.rows[i] = self.rows[i] | right;
        }
        for j in 0..other.n {
            g.rows[self.n + j] = other.rows[j] << self.n | left;
        }
        Ok(g)
    }

    /// Graph with the same vertex set and only the edges of `self` not in `other`.
    pub fn difference(&self, other: &Graph) -> Graph {
        assert_eq!(self.n, other.n);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a & !b)
            .collect();
        Graph { n: self.n, rows }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({} {:?})", self.n, graph6_encode(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_complete_is_empty() {
        assert_eq!(Graph::complete(4).complement(), Graph::empty(4));
        assert_eq!(Graph::empty(7).complement(), Graph::complete(7));
    }

    #[test]
    fn complement_of_c5_is_c5() {
        let c5 = Graph::cycle(5);
        assert_eq!(canonical_form(&c5.complement()), canonical_form(&c5));
    }

    #[test]
    fn from_rows_rejects_asymmetry_and_loops() {
        assert!(Graph::from_rows(vec![0b10, 0b00]).is_err());
        assert!(Graph::from_rows(vec![0b01]).is_err());
        assert!(Graph::from_rows(vec![0b10, 0b01]).is_ok());
    }

    #[test]
    fn join_counts_edges() {
        let g = Graph::complete(3).join(&Graph::empty(2)).unwrap();
        assert_eq!(g.edge_count(), 3 + 6);
        assert!(!g.has_edge(3, 4));
    }

    #[test]
    fn edges_of_sixty_four_vertices() {
        let k = Graph::complete(64);
        assert_eq!(k.edge_count(), 64 * 63 / 2);
        assert!(k.complement().edge_count() == 0);
        assert!(Graph::try_empty(65).is_err());
    }

    #[test]
    fn induced_and_extension() {
        let p = Graph::path(4);
        assert_eq!(p.induced(0b0111), Graph::path(3));
        let q = Graph::path(3).with_vertex(0b100).unwrap();
        assert_eq!(q, p);
    }
}
