//! Fractional clique packings: one variable per clique of size `3..=r`, one
//! `≤ 1` constraint per edge covered by some clique.

use crate::error::Result;
use crate::graph::{
    canonical_form, enumerate_cliques, enumerate_graphs, graph6_encode, Bits, CanonicalForm, Graph,
};
use crate::lp::certify_basis;
use crate::lp::{LinearProgram, LpScalar, PivotRule, Simplex};
use crate::partition::{min_clique_partition, DEFAULT_MAX_EDGES};
use crate::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::fmt::Write as _;

/// Objective coefficient per clique size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectiveWeights {
    by_size: BTreeMap<usize, Rational>,
}

impl ObjectiveWeights {
    /// `binom(i, 2) - 1` for `i = 3..=r`: edges saved by using a `K_i`
    /// instead of `binom(i, 2)` single edges.
    pub fn clique_savings(r: usize) -> Self {
        let by_size = (3..=r)
            .map(|i| (i, Rational::from_integer(BigInt::from(i * (i - 1) / 2 - 1))))
            .collect();
        ObjectiveWeights { by_size }
    }

    pub fn from_map(by_size: BTreeMap<usize, Rational>) -> Self {
        ObjectiveWeights { by_size }
    }

    pub fn weight(&self, size: usize) -> Rational {
        self.by_size
            .get(&size)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn max_size(&self) -> usize {
        self.by_size.keys().next_back().copied().unwrap_or(0)
    }

    pub fn scaled(&self, factor: &Rational) -> Self {
        ObjectiveWeights {
            by_size: self.by_size.iter().map(|(&k, v)| (k, v * factor)).collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Rational)> {
        self.by_size.iter().map(|(&k, v)| (k, v))
    }

    /// Size → `p/q` text, for manifests and reports.
    pub fn to_text_map(&self) -> BTreeMap<usize, String> {
        self.iter()
            .map(|(k, v)| (k, crate::ratio::to_text(v)))
            .collect()
    }

    pub fn from_text_map(map: &BTreeMap<usize, String>) -> Result<Self> {
        let by_size = map
            .iter()
            .map(|(&k, v)| Ok((k, crate::ratio::parse(v)?)))
            .collect::<Result<_>>()?;
        Ok(ObjectiveWeights { by_size })
    }
}

/// Packing LP over a host graph.
#[derive(Clone, Debug)]
pub struct PackingLp {
    /// Edges that appear in at least one clique; row `i` is `edges[i]`.
    edges: Vec<(usize, usize)>,
    cliques: Vec<u64>,
    /// Row indices per clique.
    columns: Vec<Vec<usize>>,
    objective: Vec<Rational>,
}

/// Exact optimum with primal weights per clique and dual prices per edge row.
#[derive(Clone, Debug, PartialEq)]
pub struct LpCertificate {
    pub value: Rational,
    pub primal: Vec<Rational>,
    pub dual: Vec<Rational>,
}

impl PackingLp {
    /// Builds the LP for cliques of size `3..=r` weighted by `weights`.
    /// Cliques with nonpositive weight never enter an optimum and are dropped.
    pub fn new(g: &Graph, r: usize, weights: &ObjectiveWeights) -> Self {
        let set = enumerate_cliques(g, r);
        let mut edge_index = vec![usize::MAX; g.n() * g.n()];
        let mut edges = Vec::new();
        let mut cliques = Vec::new();
        let mut columns = Vec::new();
        let mut objective = Vec::new();
        for &clique in &set.members {
            let w = weights.weight(clique.count_ones() as usize);
            if !w.is_positive() {
                continue;
            }
            let mut col = Vec::new();
            for u in Bits(clique) {
                for v in Bits(clique & !((2u64 << u).wrapping_sub(1))) {
                    let slot = &mut edge_index[u * g.n() + v];
                    if *slot == usize::MAX {
                        *slot = edges.len();
                        edges.push((u, v));
                    }
                    col.push(*slot);
                }
            }
            cliques.push(clique);
            columns.push(col);
            objective.push(w);
        }
        PackingLp {
            edges,
            cliques,
            columns,
            objective,
        }
    }

    pub fn rows(&self) -> usize {
        self.edges.len()
    }

    pub fn cols(&self) -> usize {
        self.cliques.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cliques(&self) -> &[u64] {
        &self.cliques
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn objective(&self) -> &[Rational] {
        &self.objective
    }

    /// Dense copy of the LP over an arbitrary scalar.
    pub fn to_dense<T: LpScalar>(&self) -> LinearProgram<T> {
        let mut a = vec![vec![T::zero(); self.cols()]; self.rows()];
        for (j, col) in self.columns.iter().enumerate() {
            for &e in col {
                a[e][j] = T::one();
            }
        }
        LinearProgram {
            a,
            b: vec![T::one(); self.rows()],
            c: self.objective.iter().map(T::from_rational).collect(),
        }
    }

    /// Exact optimum. A floating-point simplex proposes a basis, which is then
    /// certified in exact integer arithmetic; if certification fails the exact
    /// rational simplex solves the LP from scratch.
    pub fn solve(&self) -> LpCertificate {
        if self.cols() == 0 {
            return self.zero_certificate();
        }
        if let Some(cert) = self.solve_float_certified() {
            return cert;
        }
        self.solve_exact_simplex()
    }

    /// Float simplex plus exact certification; `None` if the float basis fails.
    pub fn solve_float_certified(&self) -> Option<LpCertificate> {
        if self.cols() == 0 {
            return Some(self.zero_certificate());
        }
        let (scaled, scale) = self.integer_objective()?;
        let sol = Simplex::new(&self.to_dense::<f64>())
            .ok()?
            .solve(PivotRule::Dantzig)
            .ok()?;
        certify_basis(self, &scaled, scale, &sol.basis)
    }

    /// Pure exact rational simplex under Bland's rule.
    pub fn solve_exact_simplex(&self) -> LpCertificate {
        if self.cols() == 0 {
            return self.zero_certificate();
        }
        let sol = Simplex::new(&self.to_dense::<Rational>())
            .expect("packing rhs is nonnegative")
            .solve(PivotRule::Bland)
            .expect("packing LPs are bounded");
        LpCertificate {
            value: sol.value,
            primal: sol.primal,
            dual: sol.dual,
        }
    }

    fn zero_certificate(&self) -> LpCertificate {
        LpCertificate {
            value: Rational::zero(),
            primal: vec![Rational::zero(); self.cols()],
            dual: vec![Rational::zero(); self.rows()],
        }
    }

    /// Objective scaled to integers, with the common denominator.
    fn integer_objective(&self) -> Option<(Vec<i128>, i128)> {
        let mut den = BigInt::one();
        for c in &self.objective {
            den = den.lcm(c.denom());
        }
        let scaled = self
            .objective
            .iter()
            .map(|c| (c.numer() * (&den / c.denom())).to_i128())
            .collect::<Option<Vec<_>>>()?;
        Some((scaled, den.to_i128()?))
    }

    /// Checks primal feasibility, dual feasibility and zero duality gap exactly.
    pub fn verify(&self, cert: &LpCertificate) -> bool {
        if cert.primal.len() != self.cols() || cert.dual.len() != self.rows() {
            return false;
        }
        if cert
            .primal
            .iter()
            .chain(&cert.dual)
            .any(|v| v.is_negative())
        {
            return false;
        }
        let mut load = vec![Rational::zero(); self.rows()];
        for (x, col) in cert.primal.iter().zip(&self.columns) {
            for &e in col {
                load[e] += x;
            }
        }
        if load.iter().any(|l| *l > Rational::one()) {
            return false;
        }
        for (col, c) in self.columns.iter().zip(&self.objective) {
            let price: Rational = col.iter().map(|&e| &cert.dual[e]).sum();
            if price < *c {
                return false;
            }
        }
        let primal: Rational = cert
            .primal
            .iter()
            .zip(&self.objective)
            .map(|(x, c)| x * c)
            .sum();
        let dual: Rational = cert.dual.iter().sum();
        primal == dual && primal == cert.value
    }

    /// CPLEX LP text format.
    pub fn to_lp_format(&self) -> String {
        let mut s = String::from("\\ fractional clique packing\nMaximize\n obj:");
        if self.cols() == 0 {
            s.push_str(" 0");
        }
        for (j, c) in self.objective.iter().enumerate() {
            let _ = write!(s, " {} {} x{j}", if j == 0 { "" } else { "+" }, decimal(c));
        }
        s.push_str("\nSubject To\n");
        let mut rows: Vec<Vec<usize>> = vec![Vec::new(); self.rows()];
        for (j, col) in self.columns.iter().enumerate() {
            for &e in col {
                rows[e].push(j);
            }
        }
        for (e, vars) in rows.iter().enumerate() {
            let (u, v) = self.edges[e];
            let terms: Vec<String> = vars.iter().map(|j| format!("x{j}")).collect();
            let _ = writeln!(s, " e{u}_{v}: {} <= 1", terms.join(" + "));
        }
        s.push_str("Bounds\n");
        for j in 0..self.cols() {
            let _ = writeln!(s, " x{j} >= 0");
        }
        s.push_str("End\n");
        s
    }

    /// Packing weights keyed by clique vertex mask, zero weights omitted.
    pub fn packing(&self, host: &Graph, cert: &LpCertificate) -> FractionalPacking {
        let weights = self
            .cliques
            .iter()
            .zip(&cert.primal)
            .filter(|(_, w)| !w.is_zero())
            .map(|(&c, w)| (c, w.clone()))
            .collect();
        FractionalPacking {
            host: host.clone(),
            weights,
        }
    }
}

fn decimal(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{:.17}", ToPrimitive::to_f64(r).unwrap_or(f64::NAN))
    }
}

/// Nonnegative clique weights with total weight at most 1 on every edge.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalPacking {
    pub host: Graph,
    pub weights: BTreeMap<u64, Rational>,
}

impl FractionalPacking {
    /// True if every weighted set is a clique of the host, weights are
    /// nonnegative and no edge is loaded above 1.
    pub fn is_feasible(&self) -> bool {
        let n = self.host.n();
        let mut load = vec![Rational::zero(); n * n];
        for (&c, w) in &self.weights {
            if w.is_negative() || !self.host.is_clique(c) || c & !self.host.vertex_mask() != 0 {
                return false;
            }
            for u in Bits(c) {
                for v in Bits(c & !((2u64 << u).wrapping_sub(1))) {
                    load[u * n + v] += w;
                }
            }
        }
        load.iter().all(|l| *l <= Rational::one())
    }

    pub fn objective(&self, weights: &ObjectiveWeights) -> Rational {
        self.weights
            .iter()
            .map(|(&c, w)| w * weights.weight(c.count_ones() as usize))
            .sum()
    }
}

/// `ν_r(g)` under objective `weights`, exact.
pub fn nu(g: &Graph, r: usize, weights: &ObjectiveWeights) -> Rational {
    PackingLp::new(g, r, weights).solve().value
}

/// `ν(g) + ν(ḡ)`.
pub fn nu_pair(g: &Graph, r: usize, weights: &ObjectiveWeights) -> Rational {
    nu(g, r, weights) + nu(&g.complement(), r, weights)
}

/// Result record `{graph, nu}` with the value as `p/q`.
pub fn nu_json(g: &Graph, value: &Rational) -> serde_json::Value {
    serde_json::json!({ "graph": graph6_encode(g), "nu": crate::ratio::to_text(value) })
}

/// Minimum of `ν(g) + ν(ḡ)` over all graphs of one order, with every minimiser.
#[derive(Clone, Debug, PartialEq)]
pub struct Exhaustive {
    pub n: usize,
    pub value: Rational,
    pub minimizers: Vec<CanonicalForm>,
}

/// `f_r(n)` by sweeping one representative of every isomorphism class.
///
/// `ν` is solved once per class; the complement's value is looked up by its
/// canonical form.
pub fn f_exhaustive(n: usize, r: usize, weights: &ObjectiveWeights) -> Result<Exhaustive> {
    let graphs = enumerate_graphs(n)?;
    let values: BTreeMap<CanonicalForm, Rational> = graphs
        .par_iter()
        .map(|g| (canonical_form(g), nu(g, r, weights)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let mut best: Option<Rational> = None;
    let mut minimizers = Vec::new();
    for (key, v) in &values {
        let co = canonical_form(&key.graph().complement());
        let total = v + &values[&co];
        match &best {
            Some(b) if total > *b => {}
            Some(b) if total == *b => minimizers.push(key.clone()),
            _ => {
                best = Some(total);
                minimizers = vec![key.clone()];
            }
        }
    }
    Ok(Exhaustive {
        n,
        value: best.unwrap_or_else(Rational::zero),
        minimizers,
    })
}

/// `v_r(g)`: the largest `Σ (binom(|C|,2) − 1)` over partitions of `E(g)`
/// into cliques of at most `r` vertices, so that `cp(g, r) = |E| − v_r(g)`.
pub fn v_integer(g: &Graph, r: usize) -> Result<usize> {
    let best = min_clique_partition(g, Some(r.max(2)), DEFAULT_MAX_EDGES)?;
    Ok(g.edge_count() - best.size)
}
