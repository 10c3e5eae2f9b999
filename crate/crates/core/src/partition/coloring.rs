//! Proper edge colourings with at most `n` colours.

use crate::graph::Graph;
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeColoring {
    /// Colour of every edge `(u, v)` with `u < v`.
    pub colors: BTreeMap<(usize, usize), usize>,
    pub num_colors: usize,
}

impl EdgeColoring {
    pub fn is_proper(&self) -> bool {
        let mut seen = BTreeMap::new();
        for (&(u, v), &c) in &self.colors {
            if c >= self.num_colors {
                return false;
            }
            for w in [u, v] {
                if seen.insert((w, c), ()).is_some() {
                    return false;
                }
            }
        }
        true
    }

    /// Edges grouped by colour.
    pub fn classes(&self) -> Vec<Vec<(usize, usize)>> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (&e, &c) in &self.colors {
            out[c].push(e);
        }
        out
    }
}

/// Largest edge count for which [`edge_coloring`] searches for a
/// `Δ`-colouring when both heuristics need more.
pub const EXACT_COLORING_MAX_EDGES: usize = 40;

/// Colours `g` by restricting the round-robin schedule of `K_n`, which never
/// needs more than `n` colours. Greedy first-fit is also tried and the
/// colouring with fewer colours wins, so sparse graphs such as matchings get
/// one colour. If both exceed the maximum degree `Δ` on a graph with at most
/// [`EXACT_COLORING_MAX_EDGES`] edges, a backtracking search settles whether
/// `Δ` colours suffice, so small graphs get exactly `χ'` colours.
pub fn edge_coloring(g: &Graph) -> EdgeColoring {
    let rr = round_robin(g);
    let greedy = first_fit(g);
    let best = if greedy.num_colors < rr.num_colors {
        greedy
    } else {
        rr
    };
    let delta = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
    if best.num_colors > delta && g.edge_count() <= EXACT_COLORING_MAX_EDGES {
        if let Some(c) = coloring_with(g, delta) {
            return c;
        }
    }
    best
}

/// A proper colouring with at most `k` colours, by backtracking.
pub fn coloring_with(g: &Graph, k: usize) -> Option<EdgeColoring> {
    let edges: Vec<(usize, usize)> = g.edges().collect();
    if k >= 128 {
        return None;
    }
    let mut used = vec![0u128; g.n()];
    let mut assigned = vec![0usize; edges.len()];
    fn go(
        i: usize,
        edges: &[(usize, usize)],
        k: usize,
        used: &mut [u128],
        assigned: &mut [usize],
        top: usize,
    ) -> bool {
        let Some(&(u, v)) = edges.get(i) else {
            return true;
        };
        // Colours above `top` are interchangeable, so only one new colour is tried.
        for c in 0..k.min(top + 1) {
            let bit = 1u128 << c;
            if (used[u] | used[v]) & bit != 0 {
                continue;
            }
            used[u] |= bit;
            used[v] |= bit;
            assigned[i] = c;
            if go(i + 1, edges, k, used, assigned, top.max(c + 1)) {
                return true;
            }
            used[u] &= !bit;
            used[v] &= !bit;
        }
        false
    }
    if !go(0, &edges, k, &mut used, &mut assigned, 0) {
        return None;
    }
    Some(compact(edges.into_iter().zip(assigned).collect()))
}

fn round_robin(g: &Graph) -> EdgeColoring {
    let n = g.n();
    // Odd n gets a phantom vertex; its partner in each round sits out.
    let teams = n + n % 2;
    let mut slot = BTreeMap::new();
    if teams >= 2 {
        let ring = teams - 1;
        for round in 0..ring {
            let mut pairs = vec![(round, teams - 1)];
            for i in 1..teams / 2 {
                pairs.push(((round + i) % ring, (round + ring - i) % ring));
            }
            for (a, b) in pairs {
                let (u, v) = (a.min(b), a.max(b));
                if v < n && g.has_edge(u, v) {
                    slot.insert((u, v), round);
                }
            }
        }
    }
    compact(slot)
}

fn first_fit(g: &Graph) -> EdgeColoring {
    let mut used = vec![0u128; g.n()];
    let mut colors = BTreeMap::new();
    for (u, v) in g.edges() {
        let c = (!(used[u] | used[v])).trailing_zeros() as usize;
        used[u] |= 1 << c;
        used[v] |= 1 << c;
        colors.insert((u, v), c);
    }
    compact(colors)
}

/// Renumbers the colours actually used to `0..k`, in order of first use.
fn compact(raw: BTreeMap<(usize, usize), usize>) -> EdgeColoring {
    let mut map = BTreeMap::new();
    let colors: BTreeMap<_, _> = raw
        .into_iter()
        .map(|(e, c)| {
            let next = map.len();
            (e, *map.entry(c).or_insert(next))
        })
        .collect();
    EdgeColoring {
        colors,
        num_colors: map.len(),
    }
}
