//! Closed-form lower bounds for `cp(Y_ℓ)` and `cp(H_ℓ(G)) + cp(H̄_ℓ(G))`.

use crate::error::{Error, Result};
use crate::Rational;
use num_traits::{One, Zero};

fn binom2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Certified integer lower bound `2ℓ² − 2·C(ℓ,2) + ⌈3ℓ²/4⌉` on `cp(Y_ℓ)`.
pub fn y_lower_bound(l: u64) -> Result<Rational> {
    if l == 0 {
        return Err(Error::Precondition("ℓ must be at least 1".into()));
    }
    let v = 2 * l * l - 2 * binom2(l) + (3 * l * l).div_ceil(4);
    Ok(Rational::from_integer(v.into()))
}

/// Minimum of `Σ (C(a_i,2) + C(b_i,2) + 1)` over block profiles with
/// `1 ≤ a_i, b_i ≤ ℓ` and `Σ a_i·b_i = ℓ²`, by an unbounded knapsack over
/// the covered area.
pub fn y_profile_minimum(l: u64) -> u64 {
    let area = (l * l) as usize;
    let blocks: Vec<(usize, u64)> = (1..=l)
        .flat_map(|a| (1..=l).map(move |b| ((a * b) as usize, binom2(a) + binom2(b) + 1)))
        .collect();
    let mut best = vec![u64::MAX; area + 1];
    best[0] = 0;
    for s in 1..=area {
        for &(w, cost) in &blocks {
            if w <= s && best[s - w] != u64::MAX {
                best[s] = best[s].min(best[s - w] + cost);
            }
        }
    }
    best[area]
}

/// `4mℓ − C(m,2) + 7/2·ℓ²`, a lower bound on `cp(H) + cp(H̄)` for
/// `H = H_ℓ(G)` with `G` on `m ≤ 2ℓ` vertices.
pub fn h_lower_bound(m: u64, l: u64) -> Result<Rational> {
    if m > 2 * l {
        return Err(Error::Precondition(format!(
            "bound needs m ≤ 2ℓ, got m = {m}, ℓ = {l}"
        )));
    }
    let base = (4 * m * l) as i64 - binom2(m) as i64;
    Ok(Rational::from_integer(base.into()) + rat(7, 2) * Rational::from_integer((l * l).into()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HOptimum {
    pub n: u64,
    pub m: u64,
    pub l: u64,
    pub bound: Rational,
}

impl HOptimum {
    /// `bound / n²`.
    pub fn coefficient(&self) -> Rational {
        self.bound.clone() / Rational::from_integer((self.n * self.n).into())
    }
}

/// Best integer split `n = m + 4ℓ` with `ℓ ≥ 1`, `m ≤ 2ℓ`; ties go to the smaller `m`.
pub fn optimize_h(n: u64) -> Option<HOptimum> {
    let mut best: Option<HOptimum> = None;
    for m in (n % 4..=n).step_by(4) {
        let l = (n - m) / 4;
        if l == 0 || m > 2 * l {
            continue;
        }
        let bound = h_lower_bound(m, l).expect("m ≤ 2ℓ checked");
        if best.as_ref().is_none_or(|b| bound > b.bound) {
            best = Some(HOptimum { n, m, l, bound });
        }
    }
    best
}

/// Exact limit of `bound / n²` as `n → ∞`, maximising the quadratic in the
/// fraction `μ = m/n` (with `ℓ = (1−μ)n/4`).
pub fn h_coefficient_limit() -> Rational {
    // μ(1−μ) − μ²/2 + 7/32·(1−μ)² = Aμ² + Bμ + C
    let a = rat(-1, 1) - rat(1, 2) + rat(7, 32);
    let b = Rational::one() - rat(7, 16);
    let c = rat(7, 32);
    let mu = -b.clone() / (rat(2, 1) * a.clone());
    debug_assert!(mu > Rational::zero() && mu < Rational::one());
    a * mu.clone() * mu.clone() + b * mu + c
}
