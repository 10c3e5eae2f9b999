use super::{canonical_form, Bits, CanonicalForm, Graph};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Largest order accepted by [`enumerate_graphs`].
pub const MAX_ENUMERATION_ORDER: usize = 8;

/// Cliques of a host graph with sizes in `min_size..=max_size`, as vertex masks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueSet {
    pub members: Vec<u64>,
    pub min_size: usize,
    pub max_size: usize,
}

impl CliqueSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// All vertex subsets of size `3..=r` that induce complete subgraphs.
pub fn enumerate_cliques(g: &Graph, r: usize) -> CliqueSet {
    let mut members = Vec::new();
    fn grow(g: &Graph, clique: u64, size: usize, cand: u64, r: usize, out: &mut Vec<u64>) {
        if size >= 3 {
            out.push(clique);
        }
        if size == r {
            return;
        }
        for v in Bits(cand) {
            let higher = !((2u64 << v).wrapping_sub(1));
            grow(
                g,
                clique | 1 << v,
                size + 1,
                cand & g.row(v) & higher,
                r,
                out,
            );
        }
    }
    if r >= 3 {
        for v in 0..g.n() {
            let higher = !((2u64 << v).wrapping_sub(1));
            grow(g, 1 << v, 1, g.row(v) & higher, r, &mut members);
        }
    }
    CliqueSet {
        members,
        min_size: 3,
        max_size: r,
    }
}

/// One-vertex extensions keyed by canonical form.
pub fn one_vertex_extensions_keyed(g: &Graph) -> Result<BTreeMap<CanonicalForm, Graph>> {
    let n = g.n();
    if n >= super::MAX_VERTICES {
        return Err(Error::Capacity {
            what: "graph order",
            limit: super::MAX_VERTICES,
            got: n + 1,
        });
    }
    let mut out = BTreeMap::new();
    // 2^n neighbourhoods; practical only for small n.
    for nb in 0..1u64 << n {
        let h = g.with_vertex(nb)?;
        let key = canonical_form(&h);
        out.entry(key).or_insert_with_key(|k| k.graph());
    }
    Ok(out)
}

/// Every graph obtained by appending a vertex with an arbitrary neighbourhood,
/// one canonical representative per isomorphism class, sorted by canonical bytes.
pub fn one_vertex_extensions(g: &Graph) -> Result<Vec<Graph>> {
    Ok(one_vertex_extensions_keyed(g)?.into_values().collect())
}

/// One representative per isomorphism class on `n` vertices, sorted by canonical bytes.
///
/// Built by iterated one-vertex extension from the single-vertex graph; every
/// graph on `k + 1` vertices extends its induced subgraph on the first `k`.
pub fn enumerate_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > MAX_ENUMERATION_ORDER {
        return Err(Error::Capacity {
            what: "exhaustive graph enumeration order",
            limit: MAX_ENUMERATION_ORDER,
            got: n,
        });
    }
    let mut level = vec![Graph::empty(0)];
    for _ in 0..n {
        let mut next = BTreeMap::new();
        for g in &level {
            next.extend(one_vertex_extensions_keyed(g)?);
        }
        level = next.into_values().collect();
    }
    Ok(level)
}
