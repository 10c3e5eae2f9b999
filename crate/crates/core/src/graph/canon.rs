//! Canonical labelling by partition refinement plus individualisation, with
//! automorphism pruning. The canonical graph is the relabelling whose row
//! sequence is lexicographically least among the leaves of the search tree.

use super::{graph6_encode, Bits, Graph};

/// Isomorphism-invariant fingerprint of a graph: the graph6 text of its
/// canonical relabelling.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct CanonicalForm {
    pub n: usize,
    pub bytes: Vec<u8>,
}

impl CanonicalForm {
    pub fn as_str(&self) -> &str {
        std::str::from_utf8(&self.bytes).expect("graph6 is ascii")
    }

    /// The canonical representative graph.
    pub fn graph(&self) -> Graph {
        super::graph6_decode(self.as_str()).expect("canonical bytes are valid graph6")
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let lab = canonical_labeling(g);
    let canon = relabel(g, &lab);
    CanonicalForm {
        n: g.n(),
        bytes: graph6_encode(&canon).into_bytes(),
    }
}

/// Returns `lab` such that canonical vertex `i` is vertex `lab[i]` of `g`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n <= 1 {
        return (0..n).collect();
    }
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
        path: Vec::with_capacity(n),
    };
    let mut cells = vec![g.vertex_mask()];
    refine(g, &mut cells);
    search.dfs(cells);
    search.best.expect("search reaches a leaf").lab
}

fn relabel(g: &Graph, lab: &[usize]) -> Graph {
    let mut perm = vec![0usize; lab.len()];
    for (i, &v) in lab.iter().enumerate() {
        perm[v] = i;
    }
    g.permuted(&perm)
}

/// Splits every cell by neighbour counts into every splitter cell until the
/// ordered partition is equitable. Sub-cells are ordered by count.
fn refine(g: &Graph, cells: &mut Vec<u64>) {
    let mut scratch: Vec<(u32, u64)> = Vec::with_capacity(64);
    loop {
        let mut changed = false;
        let mut w = 0;
        while w < cells.len() {
            let splitter = cells[w];
            let mut next = Vec::with_capacity(cells.len() + 2);
            for &cell in cells.iter() {
                if cell & (cell - 1) == 0 {
                    next.push(cell);
                    continue;
                }
                scratch.clear();
                for v in Bits(cell) {
                    let c = (g.row(v) & splitter).count_ones();
                    match scratch.iter_mut().find(|(k, _)| *k == c) {
                        Some(slot) => slot.1 |= 1 << v,
                        None => scratch.push((c, 1 << v)),
                    }
                }
                if scratch.len() > 1 {
                    changed = true;
                    scratch.sort_unstable_by_key(|&(k, _)| k);
                }
                next.extend(scratch.iter().map(|&(_, m)| m));
            }
            *cells = next;
            w += 1;
        }
        if !changed {
            break;
        }
    }
}

struct Leaf {
    lab: Vec<usize>,
    cert: Vec<u64>,
    path: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Automorphisms found so far, as vertex maps.
    autos: Vec<Vec<usize>>,
    path: Vec<usize>,
}

impl Search<'_> {
    /// Returns `Some(level)` to unwind to the node at depth `level`.
    fn dfs(&mut self, cells: Vec<u64>) -> Option<usize> {
        let target = match cells.iter().position(|c| c & (c - 1) != 0) {
            Some(t) => t,
            None => return self.leaf(&cells),
        };
        let depth = self.path.len();
        let cell = cells[target];
        let mut explored: Vec<usize> = Vec::new();
        let mut seen_autos = usize::MAX;
        let mut orbits: Vec<usize> = Vec::new();
        for v in Bits(cell) {
            if !explored.is_empty() {
                if seen_autos != self.autos.len() {
                    orbits = self.stabiliser_orbits();
                    seen_autos = self.autos.len();
                }
                if explored.iter().any(|&u| orbits[u] == orbits[v]) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1 << v);
            child.push(cell & !(1u64 << v));
            child.extend_from_slice(&cells[target + 1..]);
            refine(self.g, &mut child);
            self.path.push(v);
            let jump = self.dfs(child);
            self.path.pop();
            explored.push(v);
            if let Some(level) = jump {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }

    fn leaf(&mut self, cells: &[u64]) -> Option<usize> {
        let n = self.g.n();
        let lab: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut pos = vec![0usize; n];
        for (i, &v) in lab.iter().enumerate() {
            pos[v] = i;
        }
        let cert: Vec<u64> = lab
            .iter()
            .map(|&v| Bits(self.g.row(v)).fold(0u64, |acc, u| acc | 1 << pos[u]))
            .collect();
        let leaf = Leaf {
            lab,
            cert,
            path: self.path.clone(),
        };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                lab: leaf.lab.clone(),
                cert: leaf.cert.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if first.cert == leaf.cert {
            let level = common_prefix(&first.path, &leaf.path);
            self.autos.push(automorphism(&first.lab, &leaf.lab));
            return Some(level);
        }
        let best = self.best.as_ref().expect("best set with first");
        match leaf.cert.cmp(&best.cert) {
            std::cmp::Ordering::Equal => {
                let level = common_prefix(&best.path, &leaf.path);
                self.autos.push(automorphism(&best.lab, &leaf.lab));
                Some(level)
            }
            std::cmp::Ordering::Less => {
                self.best = Some(leaf);
                None
            }
            std::cmp::Ordering::Greater => None,
        }
    }

    /// Orbit representatives under the automorphisms that fix the current path pointwise.
    fn stabiliser_orbits(&self) -> Vec<usize> {
        let n = self.g.n();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for gamma in &self.autos {
            if self.path.iter().any(|&v| gamma[v] != v) {
                continue;
            }
            for (v, &w) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, w));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// Map sending `from[i]` to `to[i]` for every position `i`.
fn automorphism(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0usize; from.len()];
    for (&a, &b) in from.iter().zip(to) {
        gamma[a] = b;
    }
    gamma
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_automorphism(g: &Graph, gamma: &[usize]) -> bool {
        g.permuted(gamma) == *g
    }

    #[test]
    fn path_relabelled_has_same_form() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]);
        let b = Graph::from_edges(3, &[(1, 0), (0, 2)]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn cycle_and_path_differ() {
        assert_ne!(
            canonical_form(&Graph::cycle(5)),
            canonical_form(&Graph::path(5))
        );
    }

    #[test]
    fn symmetric_graphs_finish_quickly() {
        for n in [16, 32, 64] {
            let k = Graph::complete(n);
            assert_eq!(canonical_form(&k).graph(), k);
            assert_eq!(canonical_form(&Graph::empty(n)).graph(), Graph::empty(n));
        }
        // Petersen graph.
        let mut p = Graph::empty(10);
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5);
            p.add_edge(i, i + 5);
            p.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        let f = canonical_form(&p);
        let perm = [3, 7, 1, 9, 0, 2, 8, 4, 6, 5];
        assert_eq!(canonical_form(&p.permuted(&perm)), f);
    }

    #[test]
    fn recorded_automorphisms_are_genuine() {
        let g = Graph::cycle(8).join(&Graph::empty(3)).unwrap();
        let mut search = Search {
            g: &g,
            first: None,
            best: None,
            autos: Vec::new(),
            path: Vec::new(),
        };
        let mut cells = vec![g.vertex_mask()];
        refine(&g, &mut cells);
        search.dfs(cells);
        assert!(!search.autos.is_empty());
        assert!(search.autos.iter().all(|a| is_automorphism(&g, a)));
    }
}
