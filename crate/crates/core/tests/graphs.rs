use cliquepack::graph::{
    canonical_form, canonical_labeling, enumerate_cliques, enumerate_graphs, graph6_decode,
    graph6_encode, read_graph6_list, write_graph6_list,
};
use cliquepack::Graph;
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Number of isomorphism classes of graphs on `n` vertices by Burnside:
/// average over all permutations of 2^(cycles on vertex pairs).
fn burnside_count(n: usize) -> u128 {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for pos in 0..n {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }
    let all = perms(n);
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let index = |a: usize, b: usize| {
        pairs
            .iter()
            .position(|&p| p == (a.min(b), a.max(b)))
            .unwrap()
    };
    let mut total: u128 = 0;
    for p in &all {
        let mut seen = vec![false; pairs.len()];
        let mut cycles = 0;
        for start in 0..pairs.len() {
            if seen[start] {
                continue;
            }
            cycles += 1;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                let (a, b) = pairs[k];
                k = index(p[a], p[b]);
            }
        }
        total += 1u128 << cycles;
    }
    total / all.len() as u128
}

#[test]
fn class_counts_match_burnside() {
    for n in 1..=8 {
        assert_eq!(
            enumerate_graphs(n).unwrap().len() as u128,
            burnside_count(n),
            "n = {n}"
        );
    }
}

#[test]
fn labeled_graphs_collapse_to_the_classes() {
    // Canonical forms of all 2^15 labelled graphs on 6 vertices.
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
        .collect();
    let forms: BTreeSet<_> = (0u32..1 << pairs.len())
        .map(|mask| {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            canonical_form(&Graph::from_edges(6, &edges))
        })
        .collect();
    assert_eq!(forms.len(), 156);
    let listed: BTreeSet<_> = enumerate_graphs(6)
        .unwrap()
        .iter()
        .map(canonical_form)
        .collect();
    assert_eq!(forms, listed);
}

#[test]
fn enumeration_beyond_cap_is_refused() {
    assert!(enumerate_graphs(9).is_err());
}

#[test]
fn graph6_list_roundtrip() {
    let graphs = enumerate_graphs(5).unwrap();
    let mut buf = Vec::new();
    write_graph6_list(&mut buf, &graphs).unwrap();
    let back = read_graph6_list(buf.as_slice()).unwrap();
    assert_eq!(back, graphs);
}

#[test]
fn clique_counts_of_complete_graphs() {
    let k6 = Graph::complete(6);
    // Cliques with 3 or 4 vertices: 20 + 15.
    let cliques = enumerate_cliques(&k6, 4);
    assert_eq!(cliques.len(), 35);
    assert!(cliques
        .members
        .iter()
        .all(|c| (3..=4).contains(&c.count_ones())));
    assert!(enumerate_cliques(&Graph::cycle(5), 4).is_empty());
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[k] {
                        g.add_edge(u, v);
                    }
                    k += 1;
                }
            }
            g
        })
    })
}

fn arb_graph_with_perm(max_n: usize) -> impl Strategy<Value = (Graph, Vec<usize>)> {
    arb_graph(max_n).prop_flat_map(|g| {
        let n = g.n();
        (Just(g), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
    })
}

proptest! {
    #[test]
    fn canonical_form_is_isomorphism_invariant((g, perm) in arb_graph_with_perm(12)) {
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&perm)));
    }

    #[test]
    fn canonical_labeling_realises_the_form(g in arb_graph(10)) {
        // lab[i] is the original vertex placed at canonical position i.
        let lab = canonical_labeling(&g);
        let mut inverse = vec![0; lab.len()];
        for (i, &v) in lab.iter().enumerate() {
            inverse[v] = i;
        }
        prop_assert_eq!(canonical_form(&g).graph(), g.permuted(&inverse));
    }

    #[test]
    fn complement_is_an_involution(g in arb_graph(16)) {
        prop_assert_eq!(g.complement().complement(), g.clone());
        let n = g.n();
        prop_assert_eq!(g.edge_count() + g.complement().edge_count(), n * (n - 1) / 2);
    }

    #[test]
    fn graph6_roundtrip(g in arb_graph(40)) {
        prop_assert_eq!(graph6_decode(&graph6_encode(&g)).unwrap(), g);
    }

    #[test]
    fn edge_swap_changes_nothing_up_to_isomorphism(g in arb_graph(9)) {
        // Relabelling by a transposition keeps the class.
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(0, n - 1);
        prop_assert_eq!(canonical_form(&g), canonical_form(&g.permuted(&perm)));
    }
}
