//! Biclique covers of `K_n` with exact per-edge multiplicities.
//!
//! The `k`-cover is built in stages. Design bicliques cover every edge
//! `2⌊k/2⌋` times, except pairs whose sets share an element ("triple
//! edges"), which fall two short. For odd `k` those pairs are grouped into
//! residue cliques, and each clique receives a {1,2}-cover. Stars then
//! pad every edge up to exactly `k`.

use crate::designs::{build_design, Design};
use crate::error::{Error, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::io::{BufRead, Write};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Design,
    List12,
    Padding,
    Star,
}

/// Complete bipartite graph between two disjoint, sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Biclique {
    pub left: Vec<u32>,
    pub right: Vec<u32>,
}

impl Biclique {
    pub fn new(mut left: Vec<u32>, mut right: Vec<u32>) -> Result<Self> {
        left.sort_unstable();
        right.sort_unstable();
        if left.is_empty() || right.is_empty() {
            return Err(Error::Precondition(
                "biclique sides must be nonempty".into(),
            ));
        }
        let (mut i, mut j) = (0, 0);
        while i < left.len() && j < right.len() {
            match left[i].cmp(&right[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    return Err(Error::Precondition(format!(
                        "vertex {} on both sides of a biclique",
                        left[i]
                    )))
                }
            }
        }
        Ok(Biclique { left, right })
    }

    /// `None` when a side is empty.
    fn nonempty(left: Vec<u32>, right: Vec<u32>) -> Option<Self> {
        (!left.is_empty() && !right.is_empty()).then_some(Biclique { left, right })
    }

    pub fn edge_count(&self) -> usize {
        self.left.len() * self.right.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BicliqueCover {
    pub n: usize,
    pub bicliques: Vec<Biclique>,
    pub stages: Vec<Stage>,
    /// The design behind the cover missed its size guarantee at this `n`.
    pub design_breach: bool,
}

impl BicliqueCover {
    pub fn empty(n: usize) -> Self {
        BicliqueCover {
            n,
            ..Default::default()
        }
    }

    pub fn len(&self) -> usize {
        self.bicliques.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bicliques.is_empty()
    }

    fn push(&mut self, b: Option<Biclique>, stage: Stage) {
        if let Some(b) = b {
            self.bicliques.push(b);
            self.stages.push(stage);
        }
    }

    pub fn stage_counts(&self) -> BTreeMap<Stage, usize> {
        let mut out = BTreeMap::new();
        for &s in &self.stages {
            *out.entry(s).or_insert(0) += 1;
        }
        out
    }

    /// One JSON object per line: `{"left":[..],"right":[..],"stage":".."}`.
    pub fn write_jsonl<W: Write>(&self, mut w: W) -> Result<()> {
        for (b, s) in self.bicliques.iter().zip(&self.stages) {
            let line = serde_json::json!({ "left": b.left, "right": b.right, "stage": s });
            writeln!(w, "{line}")?;
        }
        Ok(())
    }

    /// Reads the JSON-lines format; `n` is the host order.
    pub fn read_jsonl<R: BufRead>(n: usize, r: R) -> Result<Self> {
        #[derive(Deserialize)]
        struct Line {
            left: Vec<u32>,
            right: Vec<u32>,
            stage: Stage,
        }
        let mut cover = BicliqueCover::empty(n);
        for line in r.lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let l: Line = serde_json::from_str(&line)?;
            if l.left.iter().chain(&l.right).any(|&v| v as usize >= n) {
                return Err(Error::Parse(format!("vertex out of range in {line}")));
            }
            cover.bicliques.push(Biclique::new(l.left, l.right)?);
            cover.stages.push(l.stage);
        }
        Ok(cover)
    }
}

/// Stars `({i}, {0..i})` for `i = 1..n`: every edge once, `n − 1` bicliques.
pub fn graham_pollak_cover(n: usize) -> BicliqueCover {
    let mut cover = BicliqueCover::empty(n);
    for i in 1..n as u32 {
        cover.push(Biclique::nonempty(vec![i], (0..i).collect()), Stage::Star);
    }
    cover
}

/// Bicliques covering every pair inside `vertices` once or twice.
///
/// Vertices fill a `q × q` grid row by row, `q = ⌈√s⌉`. Row `i` is joined to
/// all later rows and column `j` to all later columns, so a pair sharing a
/// row or column is covered once and any other pair twice.
pub fn alon_12_bicliques(vertices: &[u32]) -> Vec<Biclique> {
    let s = vertices.len();
    let q = (1..).find(|q| q * q >= s).unwrap_or(0);
    let cell = |r: usize, c: usize| vertices.get(r * q + c).copied();
    let row = |r: usize| (0..q).filter_map(|c| cell(r, c)).collect::<Vec<_>>();
    let col = |c: usize| (0..q).filter_map(|r| cell(r, c)).collect::<Vec<_>>();
    let mut out = Vec::new();
    for i in 0..q.saturating_sub(1) {
        out.extend(Biclique::nonempty(
            row(i),
            (i + 1..q).flat_map(row).collect(),
        ));
    }
    for j in 0..q.saturating_sub(1) {
        out.extend(Biclique::nonempty(
            col(j),
            (j + 1..q).flat_map(col).collect(),
        ));
    }
    out
}

/// [`alon_12_bicliques`] as a cover of `K_{max+1}`.
pub fn alon_12_cover(vertices: &[u32]) -> BicliqueCover {
    let n = vertices.iter().max().map_or(0, |&v| v as usize + 1);
    let mut cover = BicliqueCover::empty(n);
    for b in alon_12_bicliques(vertices) {
        cover.push(Some(b), Stage::List12);
    }
    cover
}

/// `n + 2k·n^{3/4} + k·√n`, the size the staged construction stays within
/// whenever its design meets the size guarantee.
pub fn k_cover_size_bound(n: usize, k: usize) -> f64 {
    let n = n as f64;
    let k = k as f64;
    n + 2.0 * k * n.powf(0.75) + k * n.sqrt()
}

/// Dense multiplicity table over the pairs `i < j < n`.
struct Counts {
    n: usize,
    data: Vec<u16>,
}

impl Counts {
    fn new(n: usize) -> Self {
        Counts {
            n,
            data: vec![0; n * n.saturating_sub(1) / 2],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        // Row i starts after rows 0..i, which hold (n−1) + … + (n−i) pairs.
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    fn get(&self, i: usize, j: usize) -> u16 {
        self.data[self.idx(i, j)]
    }

    fn add(&mut self, b: &Biclique) {
        for &u in &b.left {
            for &v in &b.right {
                let k = self.idx(u as usize, v as usize);
                self.data[k] = self.data[k].saturating_add(1);
            }
        }
    }
}

/// Builds a cover of `K_n` with every edge covered exactly `k` times.
pub fn k_cover(n: usize, k: usize) -> Result<BicliqueCover> {
    if n < 2 || k < 1 {
        return Err(Error::Precondition(format!(
            "need n ≥ 2 and k ≥ 1, got n = {n}, k = {k}"
        )));
    }
    let design = build_design(n, 1, k / 2)?;
    let mut cover = BicliqueCover::empty(n);
    cover.design_breach = design.size_bound_breached;
    let mut counts = Counts::new(n);

    for b in design_bicliques(&design) {
        counts.add(&b);
        cover.push(Some(b), Stage::Design);
    }
    if k % 2 == 1 {
        for &p in &design.primes {
            for r in 0..p {
                let class: Vec<u32> = (r..n).step_by(p).map(|v| v as u32).collect();
                for b in alon_12_bicliques(&class) {
                    counts.add(&b);
                    cover.push(Some(b), Stage::List12);
                }
            }
        }
    }
    // Padding stars use the deficiencies left after the first two stages.
    let target = k as u16;
    let mut stars = Vec::with_capacity(n);
    for i in 0..n {
        let mut leaves = Vec::new();
        for j in 0..n {
            if j == i {
                continue;
            }
            let have = counts.get(i, j);
            let need = target.checked_sub(have).ok_or_else(|| {
                Error::Precondition(format!("edge {i}-{j} already covered {have} > {k} times"))
            })?;
            match need {
                0 => {}
                1 if j < i => leaves.push(j as u32),
                2 => leaves.push(j as u32),
                1 => {}
                _ => {
                    return Err(Error::Precondition(format!(
                        "edge {i}-{j} short by {need}, padding covers at most 2"
                    )))
                }
            }
        }
        stars.push(Biclique::nonempty(vec![i as u32], leaves));
    }
    for s in stars {
        cover.push(s, if k == 1 { Stage::Star } else { Stage::Padding });
    }
    Ok(cover)
}

/// `B_x = ({j : x ∈ S_j}, {j : x ∉ S_j})` for every universe element `x`.
fn design_bicliques(design: &Design) -> Vec<Biclique> {
    let n = design.n;
    let mut out = Vec::new();
    for &p in &design.primes {
        for r in 0..p {
            let left: Vec<u32> = (r..n).step_by(p).map(|v| v as u32).collect();
            let right: Vec<u32> = (0..n).filter(|v| v % p != r).map(|v| v as u32).collect();
            out.extend(Biclique::nonempty(left, right));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub pass: bool,
    pub size: usize,
    /// Multiplicity → number of edges with that multiplicity.
    pub histogram: BTreeMap<u32, u64>,
    /// `(i, j, count)` for edges whose count is outside the target set.
    pub offending: Vec<(u32, u32, u32)>,
    pub design_breach: bool,
}

impl CoverageReport {
    pub fn histogram_csv(&self) -> String {
        let mut s = String::from("multiplicity,edges\n");
        for (m, c) in &self.histogram {
            s.push_str(&format!("{m},{c}\n"));
        }
        s
    }
}

/// Counts every edge of `K_n` exactly; passes iff every count lies in `target`.
pub fn verify_cover(cover: &BicliqueCover, target: &BTreeSet<u32>) -> CoverageReport {
    let n = cover.n;
    let mut counts = Counts::new(n);
    for b in &cover.bicliques {
        counts.add(b);
    }
    let counts = &counts;
    type Row = (BTreeMap<u32, u64>, Vec<(u32, u32, u32)>);
    let rows: Vec<Row> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut hist = BTreeMap::new();
            let mut bad = Vec::new();
            for j in i + 1..n {
                let c = counts.get(i, j) as u32;
                *hist.entry(c).or_insert(0) += 1;
                if !target.contains(&c) {
                    bad.push((i as u32, j as u32, c));
                }
            }
            (hist, bad)
        })
        .collect();
    let mut histogram = BTreeMap::new();
    let mut offending = Vec::new();
    for (h, b) in rows {
        for (c, k) in h {
            *histogram.entry(c).or_insert(0) += k;
        }
        offending.extend(b);
    }
    CoverageReport {
        pass: offending.is_empty(),
        size: cover.len(),
        histogram,
        offending,
        design_breach: cover.design_breach,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn only(k: u32) -> BTreeSet<u32> {
        BTreeSet::from([k])
    }

    #[test]
    fn stars() {
        let c = graham_pollak_cover(2);
        assert_eq!(
            c.bicliques,
            vec![Biclique {
                left: vec![1],
                right: vec![0]
            }]
        );
        let c = graham_pollak_cover(5);
        let r = verify_cover(&c, &only(1));
        assert!(r.pass);
        assert_eq!(r.histogram, BTreeMap::from([(1, 10)]));
        assert_eq!(r.size, 4);
    }

    #[test]
    fn grid_cover() {
        let c = alon_12_cover(&[0, 1, 2, 3]);
        assert_eq!(c.len(), 2);
        let r = verify_cover(&c, &BTreeSet::from([1, 2]));
        assert_eq!(r.histogram, BTreeMap::from([(1, 4), (2, 2)]));
        assert!(alon_12_cover(&[0]).is_empty());
        let c = alon_12_cover(&(0..9).collect::<Vec<_>>());
        assert_eq!(c.len(), 4);
        assert!(verify_cover(&c, &BTreeSet::from([1, 2])).pass);
    }

    #[test]
    fn empty_cover_fails() {
        let r = verify_cover(&BicliqueCover::empty(3), &only(1));
        assert!(!r.pass);
        assert_eq!(r.offending.len(), 3);
    }

    #[test]
    fn k_covers() {
        assert_eq!(
            k_cover(7, 1).unwrap().bicliques,
            graham_pollak_cover(7).bicliques
        );
        for (n, k) in [(50, 2), (100, 3), (30, 4), (31, 5)] {
            let c = k_cover(n, k).unwrap();
            assert!(verify_cover(&c, &only(k as u32)).pass, "n={n} k={k}");
        }
    }

    #[test]
    fn jsonl_round_trip() {
        let c = k_cover(12, 3).unwrap();
        let mut buf = Vec::new();
        c.write_jsonl(&mut buf).unwrap();
        let back = BicliqueCover::read_jsonl(12, buf.as_slice()).unwrap();
        assert_eq!(back.bicliques, c.bicliques);
        assert_eq!(back.stages, c.stages);
        assert!(Biclique::new(vec![1, 2], vec![2]).is_err());
    }
}
