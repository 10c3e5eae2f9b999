//! Propagating lower bounds on `f_r(n)` to the limits `c_r` and to the
//! coefficient `α = 1/2 − c_r` of `max cp(G) + cp(Ḡ)`.
//!
//! Every recursion is stored in N-units: `f_r(N) ≥ s²·f_r(N/s) + a·N + b`
//! where `N` is the order on the left-hand side.

use crate::error::{Error, Result};
use crate::graph::{Bits, Graph};
use crate::ratio;
use crate::Rational;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;

fn int(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// `f_r(s·n) ≥ s²·f_r(n) + a·(s·n) + b`, valid for `n ≥ floor`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recursion {
    pub name: String,
    pub r: usize,
    pub s: usize,
    #[serde(with = "ratio::serde_text")]
    pub a: Rational,
    #[serde(with = "ratio::serde_text")]
    pub b: Rational,
    /// Smallest base order `n` the recursion is proved for.
    pub floor: usize,
    /// The right-hand side as originally written, in terms of the base order `n`.
    pub source_form: String,
}

impl Recursion {
    fn new(name: &str, r: usize, a: Rational, b: i64, floor: usize, source: &str) -> Self {
        Recursion {
            name: name.into(),
            r,
            s: r,
            a,
            b: int(b),
            floor,
            source_form: source.into(),
        }
    }

    /// Triangles: `f_3(3n) ≥ 9f_3(n) + 2(n−1)`.
    pub fn triangles() -> Self {
        Self::new("r3", 3, frac(2, 3), -2, 2, "9f(n) + 2(n-1)")
    }

    /// `f_4(4n) ≥ 16f_4(n) + 5(n−4) + 8`.
    pub fn k4_basic() -> Self {
        Self::new("r4", 4, frac(5, 4), -12, 4, "16f(n) + 5(n-4) + 8")
    }

    /// `f_4(4n) ≥ 16f_4(n) + 5n − 9` for `n ≥ 12`, using two disjoint
    /// monochromatic `K_4` in any colouring of `K_20` with a monochromatic `K_5`.
    pub fn k4_improved() -> Self {
        Self::new("r4+", 4, frac(5, 4), -9, 12, "16f(n) + 5n - 9")
    }

    /// `f_5(5n) ≥ 25f_5(n) + 9(n−9) + 37`.
    pub fn k5() -> Self {
        Self::new("r5", 5, frac(9, 5), -44, 9, "25f(n) + 9(n-9) + 37")
    }

    /// `f_6(6n) ≥ 36f_6(n) + 14n − 151`.
    pub fn k6() -> Self {
        Self::new("r6", 6, frac(7, 3), -151, 27, "36f(n) + 14n - 151")
    }

    /// `f_7(7n) ≥ 49f_7(n) + 20n − 532`.
    pub fn k7() -> Self {
        Self::new("r7", 7, frac(20, 7), -532, 77, "49f(n) + 20n - 532")
    }

    pub fn all() -> Vec<Recursion> {
        vec![
            Self::triangles(),
            Self::k4_basic(),
            Self::k4_improved(),
            Self::k5(),
            Self::k6(),
            Self::k7(),
        ]
    }

    fn check_floor(&self, n: usize) -> Result<()> {
        if n < self.floor {
            return Err(Error::Precondition(format!(
                "recursion {} needs base order ≥ {}, got {n}",
                self.name, self.floor
            )));
        }
        Ok(())
    }

    /// One application: a lower bound on `f(s·n)` from one on `f(n)`.
    pub fn step(&self, n: usize, f: &Rational) -> Result<Rational> {
        self.check_floor(n)?;
        let s = int(self.s as i64);
        let big_n = int((self.s * n) as i64);
        Ok(&s * &s * f + &self.a * big_n + &self.b)
    }
}

/// `f_lb / (n(n−1))`, a lower bound on `c_r` because `f_r(n)/(n(n−1))`
/// increases with `n`.
pub fn c_from_f(n: usize, f_lb: &Rational) -> Result<Rational> {
    if n < 2 {
        return Err(Error::Precondition("need n ≥ 2".into()));
    }
    Ok(f_lb / int((n * (n - 1)) as i64))
}

/// Iterating `rec` from `(n, f)` forever: `lim f(s^k n)/(s^k n)²`, which is
/// `[f + a·n/(s−1) + b/(s²−1)] / n²`.
pub fn recursion_limit(rec: &Recursion, base_n: usize, base_f: &Rational) -> Result<Rational> {
    rec.check_floor(base_n)?;
    let s = int(rec.s as i64);
    let n = int(base_n as i64);
    let one = Rational::one();
    Ok((base_f + &rec.a * &n / (&s - &one) + &rec.b / (&s * &s - &one)) / (&n * &n))
}

/// `(k, N_k, f(N_k)/N_k²)` for `k = 0..=steps`, by direct iteration.
pub fn recursion_iterates(
    rec: &Recursion,
    base_n: usize,
    base_f: &Rational,
    steps: usize,
) -> Result<Vec<(usize, Rational, Rational)>> {
    rec.check_floor(base_n)?;
    let s = int(rec.s as i64);
    let mut big_n = int(base_n as i64);
    let mut f = base_f.clone();
    let mut out = vec![(0, big_n.clone(), &f / (&big_n * &big_n))];
    for k in 1..=steps {
        big_n = &big_n * &s;
        f = &s * &s * &f + &rec.a * &big_n + &rec.b;
        out.push((k, big_n.clone(), &f / (&big_n * &big_n)));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactKind {
    /// `f_r(n) ≥ value`.
    FValue,
    /// `c_r ≥ value`.
    CLower,
    /// `α ≤ value`.
    AlphaUpper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fact {
    pub id: usize,
    pub kind: FactKind,
    pub r: usize,
    pub n: Option<usize>,
    #[serde(with = "ratio::serde_text")]
    pub value: Rational,
    pub provenance: String,
    /// Ids of the facts this one is derived from.
    pub inputs: Vec<usize>,
}

/// Named rational facts, each derived only from earlier ones.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsLedger {
    pub facts: Vec<Fact>,
    pub recursions: Vec<Recursion>,
}

impl BoundsLedger {
    pub fn new() -> Self {
        BoundsLedger {
            facts: Vec::new(),
            recursions: Recursion::all(),
        }
    }

    pub fn push(
        &mut self,
        kind: FactKind,
        r: usize,
        n: Option<usize>,
        value: Rational,
        provenance: impl Into<String>,
        inputs: Vec<usize>,
    ) -> usize {
        let id = self.facts.len();
        self.facts.push(Fact {
            id,
            kind,
            r,
            n,
            value,
            provenance: provenance.into(),
            inputs,
        });
        id
    }

    pub fn fact(&self, id: usize) -> &Fact {
        &self.facts[id]
    }

    /// Strongest `c_r` lower bound recorded for `r`.
    pub fn best_c(&self, r: usize) -> Option<&Fact> {
        self.facts
            .iter()
            .filter(|f| f.kind == FactKind::CLower && f.r == r)
            .max_by(|a, b| a.value.cmp(&b.value))
    }

    /// Strongest `α` upper bound.
    pub fn best_alpha(&self) -> Option<&Fact> {
        self.facts
            .iter()
            .filter(|f| f.kind == FactKind::AlphaUpper)
            .min_by(|a, b| a.value.cmp(&b.value))
    }

    /// Every input refers to an earlier fact.
    pub fn is_dag(&self) -> bool {
        self.facts
            .iter()
            .enumerate()
            .all(|(i, f)| f.id == i && f.inputs.iter().all(|&j| j < i))
    }

    /// Best `c_r` per `r` never decreases as `r` grows.
    pub fn c_monotone_in_r(&self) -> bool {
        let best: BTreeMap<usize, &Rational> = self
            .facts
            .iter()
            .filter(|f| f.kind == FactKind::CLower)
            .fold(BTreeMap::new(), |mut m, f| {
                let e = m.entry(f.r).or_insert(&f.value);
                if f.value > **e {
                    *e = &f.value;
                }
                m
            });
        best.values()
            .collect::<Vec<_>>()
            .windows(2)
            .all(|w| w[0] <= w[1])
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    /// Indented derivation of fact `id`, inputs first.
    pub fn derivation_tree(&self, id: usize) -> String {
        let mut out = String::new();
        self.write_tree(id, 0, &mut out);
        out
    }

    fn write_tree(&self, id: usize, depth: usize, out: &mut String) {
        let f = &self.facts[id];
        let what = match (f.kind, f.n) {
            (FactKind::FValue, Some(n)) => format!("f_{}({n}) >=", f.r),
            (FactKind::FValue, None) => format!("f_{} >=", f.r),
            (FactKind::CLower, _) => format!("c_{} >=", f.r),
            (FactKind::AlphaUpper, _) => "alpha <=".to_string(),
        };
        let _ = writeln!(
            out,
            "{:indent$}[{}] {what} {} ({})  <- {}",
            "",
            f.id,
            ratio::to_text(&f.value),
            ratio::to_decimal(&f.value, 10),
            f.provenance,
            indent = 2 * depth
        );
        for &i in &f.inputs {
            self.write_tree(i, depth + 1, out);
        }
    }
}

/// Recursion steps applied at `r = 4, 5, 6` before lifting to the next
/// `r`; the final `r = 7` recursion is taken to its limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainPlan {
    pub steps: [usize; 3],
}

/// Derives `c_4, …, c_7` and `α` from a seed `f_4(seed_n) ≥ seed_f`.
///
/// At each `r` the current bound on `f_r` is pushed through the `r`
/// recursion for the planned number of steps, then lifted to `f_{r+1}`
/// (cliques of size at most `r` are also cliques of size at most `r + 1`).
/// Each `c_r` is the recursion limit at the base reached for `r`.
pub fn chain_bound_with(seed_n: usize, seed_f: &Rational, plan: ChainPlan) -> Result<BoundsLedger> {
    let mut ledger = BoundsLedger::new();
    let seed = ledger.push(
        FactKind::FValue,
        4,
        Some(seed_n),
        seed_f.clone(),
        "seed",
        vec![],
    );
    ledger.push(
        FactKind::CLower,
        4,
        None,
        c_from_f(seed_n, seed_f)?,
        format!("f_4({seed_n}) / ({seed_n}*{})", seed_n - 1),
        vec![seed],
    );
    let recs = [
        Recursion::k4_improved(),
        Recursion::k5(),
        Recursion::k6(),
        Recursion::k7(),
    ];
    let (mut n, mut f, mut fid) = (seed_n, seed_f.clone(), seed);
    let mut last_c = None;
    for (idx, rec) in recs.iter().enumerate() {
        let r = rec.r;
        if idx > 0 {
            fid = ledger.push(
                FactKind::FValue,
                r,
                Some(n),
                f.clone(),
                format!("f_{r} >= f_{} (more clique sizes)", r - 1),
                vec![fid],
            );
        }
        let limit = recursion_limit(rec, n, &f)?;
        let c = ledger.push(
            FactKind::CLower,
            r,
            None,
            limit,
            format!("limit of {} from n = {n}", rec.name),
            vec![fid],
        );
        last_c = Some(c);
        let steps = plan.steps.get(idx).copied().unwrap_or(0);
        for _ in 0..steps {
            f = rec.step(n, &f)?;
            n *= rec.s;
            fid = ledger.push(
                FactKind::FValue,
                r,
                Some(n),
                f.clone(),
                format!("{} step: {}", rec.name, rec.source_form),
                vec![fid],
            );
        }
    }
    let c7 = last_c.expect("four recursions");
    let alpha = frac(1, 2) - &ledger.fact(c7).value;
    ledger.push(FactKind::AlphaUpper, 7, None, alpha, "1/2 - c_7", vec![c7]);
    Ok(ledger)
}

/// Plan maximising the final `c_7` among up to `max_steps` steps per stage.
pub fn best_chain_plan(seed_n: usize, seed_f: &Rational, max_steps: usize) -> Result<ChainPlan> {
    let mut best: Option<(Rational, ChainPlan)> = None;
    for a in 0..=max_steps {
        for b in 0..=max_steps {
            for c in 0..=max_steps {
                let plan = ChainPlan { steps: [a, b, c] };
                let Ok(ledger) = chain_bound_with(seed_n, seed_f, plan) else {
                    continue;
                };
                let c7 = ledger.best_c(7).expect("chain records c_7").value.clone();
                if best.as_ref().is_none_or(|(v, _)| c7 > *v) {
                    best = Some((c7, plan));
                }
            }
        }
    }
    best.map(|(_, p)| p)
        .ok_or_else(|| Error::Precondition("no plan satisfies the recursion floors".into()))
}

/// The default chain from `f_4(20) ≥ 64725/1000`, with the best plan.
pub fn chain_bound() -> Result<BoundsLedger> {
    chain_bound_from(20, &frac(64725, 1000))
}

pub fn chain_bound_from(seed_n: usize, seed_f: &Rational) -> Result<BoundsLedger> {
    let plan = best_chain_plan(seed_n, seed_f, 3)?;
    chain_bound_with(seed_n, seed_f, plan)
}

/// `α ≤ 1/2 − f_r(n)/(n(n−1))` from a single value, no recursions.
pub fn averaging_bound(r: usize, n: usize, f: &Rational) -> Result<BoundsLedger> {
    let mut ledger = BoundsLedger::new();
    let seed = ledger.push(FactKind::FValue, r, Some(n), f.clone(), "seed", vec![]);
    let c = ledger.push(
        FactKind::CLower,
        r,
        None,
        c_from_f(n, f)?,
        format!("f_{r}({n}) / ({n}*{})", n - 1),
        vec![seed],
    );
    let alpha = frac(1, 2) - &ledger.fact(c).value;
    ledger.push(
        FactKind::AlphaUpper,
        r,
        None,
        alpha,
        format!("1/2 - c_{r}"),
        vec![c],
    );
    Ok(ledger)
}

/// Upper bounds on diagonal Ramsey numbers used by the recursions above.
pub fn ramsey_upper_defaults() -> BTreeMap<usize, u64> {
    BTreeMap::from([(3, 6), (4, 18), (5, 48), (6, 165), (7, 540)])
}

/// Coefficient of the greedy bound `cp(G) + cp(Ḡ) ≤ (…)·n²` that removes
/// disjoint monochromatic `K_r`, then `K_{r−1}`, …, then triangles:
/// `ξ_3 + Σ_{k=4..r} (ξ_k − ξ_{k−1})/C(k−1,2) + (1/2 − ξ_r)/C(r,2)`
/// with `ξ_k = 1/2 − 1/(2R(k,k) − 2)`.
pub fn ramsey_chain(r: usize, ramsey_upper: &BTreeMap<usize, u64>) -> Result<Rational> {
    if r < 3 {
        return Err(Error::Precondition("chain starts at r = 3".into()));
    }
    let xi = |k: usize| -> Result<Rational> {
        let rk = *ramsey_upper
            .get(&k)
            .ok_or_else(|| Error::Precondition(format!("missing R({k},{k}) bound")))?;
        if rk < 2 {
            return Err(Error::Precondition(format!("R({k},{k}) bound must be ≥ 2")));
        }
        Ok(frac(1, 2) - frac(1, 2 * rk as i64 - 2))
    };
    let binom2 = |k: usize| int((k * (k - 1) / 2) as i64);
    let mut total = xi(3)?;
    for k in 4..=r {
        total += (xi(k)? - xi(k - 1)?) / binom2(k - 1);
    }
    total += (frac(1, 2) - xi(r)?) / binom2(r);
    Ok(total)
}

/// Two-colouring of `K_n`: edges of `red` are red, all others blue.
pub type Coloring = Graph;

/// Monochromatic 4-sets of a colouring, in lexicographic order of their sorted vertices.
pub fn monochromatic_k4s(red: &Coloring) -> Vec<u64> {
    let blue = red.complement();
    let n = red.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    let q = 1u64 << a | 1 << b | 1 << c | 1 << d;
                    if red.is_clique(q) || blue.is_clique(q) {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

/// Whether the colouring has a monochromatic `K_5`.
pub fn has_monochromatic_k5(red: &Coloring) -> bool {
    fn has_k5(g: &Graph) -> bool {
        fn grow(g: &Graph, size: usize, cand: u64) -> bool {
            if size == 5 {
                return true;
            }
            Bits(cand).any(|v| grow(g, size + 1, cand & g.row(v) & !((2u64 << v) - 1)))
        }
        grow(g, 0, g.vertex_mask())
    }
    has_k5(red) || has_k5(&red.complement())
}

/// Lexicographically least pair of vertex-disjoint monochromatic `K_4`
/// (by position in [`monochromatic_k4s`]), checked before it is returned.
pub fn find_disjoint_mono_k4(red: &Coloring) -> Result<Option<(Vec<usize>, Vec<usize>)>> {
    if red.n() != 20 {
        return Err(Error::Precondition(format!(
            "expected a colouring of K_20, got K_{}",
            red.n()
        )));
    }
    let quads = monochromatic_k4s(red);
    let found = (0..quads.len()).into_par_iter().find_map_first(|i| {
        quads[i + 1..]
            .iter()
            .find(|&&q| q & quads[i] == 0)
            .map(|&q| (quads[i], q))
    });
    let Some((a, b)) = found else {
        return Ok(None);
    };
    let blue = red.complement();
    let mono = |q: u64| q.count_ones() == 4 && (red.is_clique(q) || blue.is_clique(q));
    assert!(
        mono(a) && mono(b) && a & b == 0,
        "witness failed verification"
    );
    Ok(Some((Bits(a).collect(), Bits(b).collect())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recursion_forms() {
        // The stored N-unit constants reproduce the source right-hand sides.
        for n in [12usize, 20, 100] {
            let f = int(7);
            let nn = int(n as i64);
            let r = Recursion::k4_improved();
            assert_eq!(r.step(n, &f).unwrap(), int(16) * &f + int(5) * &nn - int(9));
            let r = Recursion::k4_basic();
            assert_eq!(
                r.step(n, &f).unwrap(),
                int(16) * &f + int(5) * (&nn - int(4)) + int(8)
            );
            let r = Recursion::k5();
            assert_eq!(
                r.step(n, &f).unwrap(),
                int(25) * &f + int(9) * (&nn - int(9)) + int(37)
            );
            let r = Recursion::triangles();
            assert_eq!(
                r.step(n, &f).unwrap(),
                int(9) * &f + int(2) * (&nn - int(1))
            );
        }
        assert!(Recursion::k4_improved().step(11, &int(1)).is_err());
    }

    #[test]
    fn limits() {
        let zero = Recursion {
            a: int(0),
            b: int(0),
            ..Recursion::k5()
        };
        assert_eq!(recursion_limit(&zero, 10, &int(7)).unwrap(), frac(7, 100));
        assert_eq!(
            recursion_limit(&Recursion::triangles(), 5, &int(0)).unwrap(),
            (frac(5, 3) - frac(2, 8)) / int(25)
        );
        // Without the constant term the triangle recursion gives 1/(3n).
        let linear = Recursion {
            b: int(0),
            ..Recursion::triangles()
        };
        assert_eq!(recursion_limit(&linear, 5, &int(0)).unwrap(), frac(1, 15));
    }

    #[test]
    fn ramsey() {
        let r = ramsey_upper_defaults();
        assert_eq!(ramsey_chain(3, &r).unwrap(), frac(13, 30));
    }

    #[test]
    fn witnesses() {
        let all_red = Graph::complete(20);
        let (a, b) = find_disjoint_mono_k4(&all_red).unwrap().unwrap();
        assert_eq!(a, vec![0, 1, 2, 3]);
        assert_eq!(b, vec![4, 5, 6, 7]);
        assert!(find_disjoint_mono_k4(&Graph::complete(19)).is_err());
    }
}
