//! Set families with bounded pairwise intersections built from residues
//! modulo distinct primes.
//!
//! Set `S_i` takes, in the block of prime `p_k`, the element `i mod p_k`. Two
//! sets meeting in `t + 1` blocks would force the product of `t + 1` primes,
//! each at least `n^{1/(t+1)}`, to divide `i − j`, which is impossible for
//! `0 ≤ i < j < n`.

use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Design {
    pub n: usize,
    pub d: usize,
    pub t: usize,
    pub m: usize,
    pub primes: Vec<usize>,
    /// Sorted universe elements of each set.
    pub sets: Vec<Vec<usize>>,
    /// Set when `d > 2m·n^{1/(t+1)}`, i.e. the size guarantee does not hold at this `n`.
    #[serde(default)]
    pub size_bound_breached: bool,
}

impl Design {
    /// Offset of each prime's block in the universe.
    pub fn block_offsets(&self) -> Vec<usize> {
        self.primes
            .iter()
            .scan(0, |acc, &p| {
                let start = *acc;
                *acc += p;
                Some(start)
            })
            .collect()
    }

    /// `(block, residue)` of a universe element.
    pub fn locate(&self, element: usize) -> Option<(usize, usize)> {
        let mut start = 0;
        for (k, &p) in self.primes.iter().enumerate() {
            if element < start + p {
                return Some((k, element - start));
            }
            start += p;
        }
        None
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "d": self.d,
            "t": self.t,
            "m": self.m,
            "primes": self.primes,
            "sets": self.sets,
        })
    }
}

/// Least `x` with `x^k ≥ n`.
pub fn ceil_root(n: usize, k: u32) -> usize {
    if n <= 1 || k == 1 {
        return n;
    }
    let mut x = (n as f64).powf(1.0 / k as f64).round() as usize;
    while pow_ge(x, k, n) && x > 0 && pow_ge(x - 1, k, n) {
        x -= 1;
    }
    while !pow_ge(x, k, n) {
        x += 1;
    }
    x
}

fn pow_ge(x: usize, k: u32, n: usize) -> bool {
    (x as u128).checked_pow(k).is_none_or(|v| v >= n as u128)
}

fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

pub fn build_design(n: usize, t: usize, m: usize) -> Result<Design> {
    if t == 0 {
        return Err(Error::Precondition(
            "intersection bound t must be at least 1".into(),
        ));
    }
    let root = ceil_root(n, (t + 1) as u32);
    let ceiling = 16 * m * root.max(1);
    let primes: Vec<usize> = (root.max(2)..=ceiling)
        .filter(|&p| is_prime(p))
        .take(m)
        .collect();
    if primes.len() < m {
        return Err(Error::Design(format!(
            "only {} primes in [{}, {ceiling}], need {m}",
            primes.len(),
            root.max(2)
        )));
    }
    let d: usize = primes.iter().sum();
    let offsets: Vec<usize> = primes
        .iter()
        .scan(0, |acc, &p| {
            let s = *acc;
            *acc += p;
            Some(s)
        })
        .collect();
    let sets = (0..n)
        .map(|i| {
            primes
                .iter()
                .zip(&offsets)
                .map(|(&p, &o)| o + i % p)
                .collect()
        })
        .collect();
    // d > 2m·n^{1/(t+1)}  ⟺  d^{t+1} > (2m)^{t+1}·n
    let e = (t + 1) as u32;
    let breached =
        m > 0 && BigUint::from(d).pow(e) > BigUint::from(2 * m).pow(e) * BigUint::from(n);
    Ok(Design {
        n,
        d,
        t,
        m,
        primes,
        sets,
        size_bound_breached: breached,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignReport {
    pub pass: bool,
    pub max_intersection: usize,
    pub min_size: usize,
    pub max_size: usize,
    /// First pair found with intersection above `t`, if any.
    pub violation: Option<(usize, usize)>,
}

/// Checks every pair of sets by brute force.
pub fn verify_design(design: &Design) -> DesignReport {
    let sizes = design.sets.iter().map(Vec::len);
    let min_size = sizes.clone().min().unwrap_or(0);
    let max_size = sizes.max().unwrap_or(0);
    let in_range = design.sets.iter().flatten().all(|&x| x < design.d);
    // One bitset row per set over the universe; pair intersections are popcounts.
    let words = design.d.div_ceil(64).max(1);
    let mut bits = vec![0u64; design.sets.len() * words];
    for (i, set) in design.sets.iter().enumerate() {
        for &x in set.iter().filter(|&&x| x < design.d) {
            bits[i * words + x / 64] |= 1 << (x % 64);
        }
    }
    let row = |i: usize| &bits[i * words..(i + 1) * words];
    let per_row: Vec<(usize, Option<(usize, usize)>)> = (0..design.sets.len())
        .into_par_iter()
        .map(|i| {
            let a = row(i);
            let mut worst = 0;
            let mut bad = None;
            for j in i + 1..design.sets.len() {
                let c: u32 = a
                    .iter()
                    .zip(row(j))
                    .map(|(x, y)| (x & y).count_ones())
                    .sum();
                let c = c as usize;
                worst = worst.max(c);
                if c > design.t && bad.is_none() {
                    bad = Some((i, j));
                }
            }
            (worst, bad)
        })
        .collect();
    let max_intersection = per_row.iter().map(|r| r.0).max().unwrap_or(0);
    let violation = per_row.iter().find_map(|r| r.1);
    DesignReport {
        pass: violation.is_none()
            && in_range
            && (design.sets.is_empty() || (min_size == design.m && max_size == design.m)),
        max_intersection,
        min_size,
        max_size,
        violation,
    }
}

/// Least `d` with `binom(d, t+1) ≥ n·binom(m, t+1)`: counting `(t+1)`-subsets,
/// each lies in at most one set.
pub fn universe_lower_bound(n: usize, t: usize, m: usize) -> Result<usize> {
    if m < t + 1 {
        return Err(Error::Precondition(format!(
            "need m ≥ t + 1, got m = {m}, t = {t}"
        )));
    }
    let target = BigUint::from(n) * binom(m, t + 1);
    let mut d = m;
    while binom(d, t + 1) < target {
        d += 1;
    }
    Ok(d)
}

/// Companion estimate `n^{1/(t+1)}·m / e`, which every valid design exceeds.
pub fn universe_sanity_bound(n: usize, t: usize, m: usize) -> f64 {
    (n as f64).powf(1.0 / (t + 1) as f64) * m as f64 / std::f64::consts::E
}

fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    (0..k).fold(BigUint::one(), |acc, i| {
        acc * BigUint::from(n - i) / BigUint::from(i + 1)
    })
}
