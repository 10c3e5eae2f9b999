use cliquepack::biclique::{
    alon_12_cover, graham_pollak_cover, k_cover, k_cover_size_bound, verify_cover, Biclique,
    BicliqueCover,
};
use cliquepack::designs::{
    build_design, ceil_root, universe_lower_bound, universe_sanity_bound, verify_design,
};
use proptest::prelude::*;
use std::collections::BTreeSet;
use std::io::BufReader;

fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Direct pair count over all sets, the slow way.
fn max_pairwise_intersection(sets: &[Vec<usize>]) -> usize {
    let mut worst = 0;
    for i in 0..sets.len() {
        let a: BTreeSet<_> = sets[i].iter().collect();
        for b in &sets[i + 1..] {
            worst = worst.max(b.iter().filter(|x| a.contains(x)).count());
        }
    }
    worst
}

#[test]
fn graham_pollak_is_a_star_decomposition() {
    for n in 2..30 {
        let c = graham_pollak_cover(n);
        assert_eq!(c.len(), n - 1);
        assert!(verify_cover(&c, &BTreeSet::from([1])).pass);
    }
}

#[test]
fn one_two_cover_on_a_partial_grid() {
    // 12 vertices in a 4-wide grid: 3 full rows, 4 columns of height 3.
    let verts: Vec<u32> = (100..112).collect();
    let c = alon_12_cover(&verts);
    assert_eq!(c.n, 112);
    let report = verify_cover(&c, &BTreeSet::from([0, 1, 2]));
    assert!(report.pass);
    let same_line = 3 * 6 + 4 * 3;
    assert_eq!(report.histogram.get(&1), Some(&same_line));
    assert_eq!(report.histogram.get(&2), Some(&(66 - same_line)));
    assert!(
        verify_cover(
            &alon_12_cover(&(0..9).collect::<Vec<_>>()),
            &BTreeSet::from([1, 2])
        )
        .pass
    );
}

#[test]
fn biclique_rejects_overlap() {
    assert!(Biclique::new(vec![1, 2], vec![2, 3]).is_err());
    assert!(Biclique::new(vec![], vec![1]).is_err());
}

#[test]
fn wrong_target_is_reported() {
    let c = k_cover(30, 2).unwrap();
    let r = verify_cover(&c, &BTreeSet::from([1]));
    assert!(!r.pass);
    assert_eq!(r.offending.len(), 435);
}

#[test]
fn jsonl_roundtrip() {
    let c = k_cover(60, 4).unwrap();
    let mut buf = Vec::new();
    c.write_jsonl(&mut buf).unwrap();
    let back = BicliqueCover::read_jsonl(60, BufReader::new(buf.as_slice())).unwrap();
    assert_eq!(back.bicliques, c.bicliques);
}

#[test]
fn degenerate_requests_fail() {
    assert!(k_cover(1, 1).is_err());
    assert!(k_cover(10, 0).is_err());
    assert!(universe_lower_bound(10, 1, 1).is_err());
}

#[test]
fn design_size_matches_prime_sum() {
    let d = build_design(25, 1, 2).unwrap();
    assert_eq!(d.primes, vec![5, 7]);
    assert_eq!(d.d, 12);
    assert_eq!(ceil_root(25, 2), 5);
    assert_eq!(ceil_root(26, 2), 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn designs_are_valid(n in 1usize..400, m in 1usize..6) {
        let d = build_design(n, 1, m).unwrap();
        prop_assert!(verify_design(&d).pass);
        prop_assert_eq!(d.sets.len(), n);
        prop_assert!(d.sets.iter().all(|s| s.len() == m && s.iter().all(|&x| x < d.d)));
        prop_assert!(max_pairwise_intersection(&d.sets) <= 1);
        prop_assert_eq!(d.primes.len(), m);
        prop_assert!(d.primes.iter().all(|&p| is_prime(p) && p * p >= n));
        prop_assert_eq!(d.primes.iter().sum::<usize>(), d.d);
        prop_assert!(d.d as f64 >= universe_sanity_bound(n, 1, m));
        if m >= 2 {
            prop_assert!(d.d >= universe_lower_bound(n, 1, m).unwrap());
        }
    }

    #[test]
    fn covers_are_exact(n in 2usize..160, k in 1usize..7) {
        let c = k_cover(n, k).unwrap();
        let r = verify_cover(&c, &BTreeSet::from([k as u32]));
        prop_assert!(r.pass);
        prop_assert_eq!(r.histogram.get(&(k as u32)).copied(), Some((n * (n - 1) / 2) as u64));
        if !c.design_breach {
            prop_assert!(c.len() as f64 <= k_cover_size_bound(n, k));
        }
        for b in &c.bicliques {
            prop_assert!(b.left.iter().all(|x| !b.right.contains(x)));
            prop_assert!(b.left.iter().chain(&b.right).all(|&x| (x as usize) < n));
        }
    }
}
