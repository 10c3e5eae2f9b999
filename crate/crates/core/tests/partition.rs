use cliquepack::graph::{canonical_form, enumerate_graphs};
use cliquepack::partition::{
    build_h, build_y, cp_bruteforce, edge_coloring, h_lower_bound, join_partition,
    min_clique_partition, verify_partition, y_lower_bound, y_profile_minimum, CliquePartition,
    HPart,
};
use cliquepack::{Graph, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            for ((u, v), on) in pairs.zip(bits) {
                if on {
                    g.add_edge(u, v);
                }
            }
            g
        })
    })
}

#[test]
fn y_closed_form_matches_profile_minimum() {
    for l in 1..=8u64 {
        let profile = y_profile_minimum(l);
        let closed = 2 * l * l - l * (l - 1) + profile;
        assert_eq!(
            y_lower_bound(l).unwrap(),
            Rational::from_integer(BigInt::from(closed))
        );
        assert_eq!(profile, (3 * l * l).div_ceil(4));
    }
}

#[test]
fn y_bound_holds_on_small_y() {
    // Y_1 is P_4 (cp 3); Y_2 has 8 vertices and 20 edges.
    for l in 1..=2 {
        let y = build_y(l).unwrap();
        let cp = cp_bruteforce(&y).unwrap() as i64;
        assert!(
            Rational::from_integer(cp.into()) >= y_lower_bound(l as u64).unwrap(),
            "l = {l}"
        );
    }
}

#[test]
fn oracle_agrees_with_restricted_sizes_on_five_vertices() {
    for g in enumerate_graphs(5).unwrap() {
        let free = min_clique_partition(&g, None, 48).unwrap();
        let capped = min_clique_partition(&g, Some(5), 48).unwrap();
        assert_eq!(free.size, capped.size);
        let p = CliquePartition {
            host: g.clone(),
            cliques: free.cliques,
        };
        assert!(verify_partition(&g, &p).valid);
    }
}

#[test]
fn h_construction_on_small_graphs() {
    for g in enumerate_graphs(4).unwrap() {
        let l = 2;
        let h = build_h(&g, l).unwrap();
        let (x, y) = h.decompose();
        assert_eq!(x.edge_count() + y.edge_count(), h.graph.edge_count());
        // X lives on G and the independent sets, Y on the last 4ℓ vertices.
        let (m, n) = (g.n(), h.graph.n());
        let x_part = (1u64 << (m + 2 * l)) - 1;
        let y_part = ((1u64 << n) - 1) & !((1u64 << m) - 1);
        assert_eq!(
            canonical_form(&x.induced(x_part)),
            canonical_form(&g.join(&Graph::empty(2 * l)).unwrap())
        );
        assert_eq!(
            canonical_form(&y.induced(y_part)),
            canonical_form(&build_y(l).unwrap())
        );
        assert_eq!(h.parts().iter().filter(|p| **p == HPart::G).count(), g.n());
        // H_ℓ(Ḡ) is the complement of H_ℓ(G) up to isomorphism.
        let hc = build_h(&g.complement(), l).unwrap();
        assert_eq!(
            canonical_form(&hc.graph),
            canonical_form(&h.graph.complement())
        );
        assert!(h_lower_bound(g.n() as u64, l as u64).is_ok());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn join_partition_has_the_predicted_size(g in arb_graph(10), extra in 0usize..3) {
        let l = edge_coloring(&g).num_colors.max(1) + extra;
        let p = join_partition(&g, l).unwrap();
        let report = verify_partition(&p.host, &p);
        prop_assert!(report.valid);
        prop_assert_eq!(report.size, g.n() * l - g.edge_count());
    }

    #[test]
    fn edge_colourings_are_proper_and_within_vizing(g in arb_graph(14)) {
        let c = edge_coloring(&g);
        prop_assert!(c.is_proper());
        let delta = (0..g.n()).map(|v| g.degree(v)).max().unwrap_or(0);
        prop_assert!(c.num_colors <= g.n());
        prop_assert!(c.num_colors >= delta);
        prop_assert_eq!(c.colors.len(), g.edge_count());
    }

    #[test]
    fn oracle_is_sandwiched(g in arb_graph(7)) {
        let cp = cp_bruteforce(&g).unwrap();
        prop_assert!(cp <= g.edge_count());
        let omega = (1..=g.n()).rev().find(|&k| {
            (0u64..1 << g.n()).any(|m| m.count_ones() as usize == k && g.is_clique(m))
        }).unwrap_or(1);
        let per = (omega * omega.saturating_sub(1) / 2).max(1);
        prop_assert!(cp * per >= g.edge_count());
    }
}
