//! Dense tableau simplex for `max c·x  s.t.  A x ≤ b, x ≥ 0` with `b ≥ 0`,
//! so the slack basis is feasible from the start.

use super::LpScalar;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotRule {
    /// Smallest-index entering and leaving variables; never cycles.
    Bland,
    /// Largest reduced cost, switching to Bland after a run of degenerate pivots.
    Dantzig,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimplexError {
    Unbounded { column: usize },
    NegativeRhs { row: usize },
    IterationLimit(usize),
}

impl fmt::Display for SimplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimplexError::Unbounded { column } => write!(f, "unbounded along column {column}"),
            SimplexError::NegativeRhs { row } => {
                write!(f, "row {row} has a negative right-hand side")
            }
            SimplexError::IterationLimit(k) => write!(f, "no optimum after {k} pivots"),
        }
    }
}

impl std::error::Error for SimplexError {}

#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    /// Row-major constraint matrix, `rows × cols`.
    pub a: Vec<Vec<T>>,
    pub b: Vec<T>,
    pub c: Vec<T>,
}

#[derive(Clone, Debug)]
pub struct SimplexSolution<T> {
    pub value: T,
    pub primal: Vec<T>,
    pub dual: Vec<T>,
    /// Basic variable per row; indices `>= cols` are slacks.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

/// Dense simplex generic over the scalar field.
pub struct Simplex<T> {
    rows: usize,
    cols: usize,
    /// `rows` constraint rows then the reduced-cost row; last column is the rhs.
    tab: Vec<Vec<T>>,
    basis: Vec<usize>,
}

impl<T: LpScalar> Simplex<T> {
    pub fn new(lp: &LinearProgram<T>) -> Result<Self, SimplexError> {
        let rows = lp.b.len();
        let cols = lp.c.len();
        let width = cols + rows + 1;
        let mut tab = Vec::with_capacity(rows + 1);
        for (i, (row, bi)) in lp.a.iter().zip(&lp.b).enumerate() {
            if bi.is_negative() {
                return Err(SimplexError::NegativeRhs { row: i });
            }
            let mut t = Vec::with_capacity(width);
            t.extend(row.iter().cloned());
            t.extend((0..rows).map(|k| if k == i { T::one() } else { T::zero() }));
            t.push(bi.clone());
            tab.push(t);
        }
        let mut obj = Vec::with_capacity(width);
        obj.extend(lp.c.iter().cloned());
        obj.extend((0..=rows).map(|_| T::zero()));
        tab.push(obj);
        Ok(Simplex {
            rows,
            cols,
            tab,
            basis: (cols..cols + rows).collect(),
        })
    }

    pub fn solve(mut self, rule: PivotRule) -> Result<SimplexSolution<T>, SimplexError> {
        let total = self.cols + self.rows;
        let limit = 50 * (total + 10) * (self.rows + 1);
        let mut bland = rule == PivotRule::Bland;
        let mut degenerate_run = 0usize;
        let mut pivots = 0usize;
        while let Some(enter) = self.entering(bland) {
            let leave = self
                .leaving(enter)
                .ok_or(SimplexError::Unbounded { column: enter })?;
            if !self.tab[leave][total].is_positive_tol() {
                degenerate_run += 1;
                if degenerate_run > total {
                    bland = true;
                }
            } else {
                degenerate_run = 0;
            }
            self.pivot(leave, enter);
            pivots += 1;
            if pivots > limit {
                return Err(SimplexError::IterationLimit(pivots));
            }
        }
        Ok(self.extract(pivots))
    }

    fn entering(&self, bland: bool) -> Option<usize> {
        let obj = &self.tab[self.rows];
        let total = self.cols + self.rows;
        if bland {
            return (0..total).find(|&j| obj[j].is_positive_tol());
        }
        let mut best: Option<usize> = None;
        for j in 0..total {
            if obj[j].is_positive_tol() && best.is_none_or(|b| obj[j] > obj[b]) {
                best = Some(j);
            }
        }
        best
    }

    fn leaving(&self, enter: usize) -> Option<usize> {
        let rhs = self.cols + self.rows;
        let mut best: Option<(usize, T)> = None;
        for i in 0..self.rows {
            let a = &self.tab[i][enter];
            if !a.is_positive_tol() {
                continue;
            }
            let ratio = self.tab[i][rhs].clone() / a.clone();
            let better = match &best {
                None => true,
                Some((bi, br)) => {
                    // Ties within tolerance go to the smaller basic index.
                    let tie = br.clone() >= ratio.clone() - T::tolerance();
                    ratio < br.clone() - T::tolerance() || (tie && self.basis[i] < self.basis[*bi])
                }
            };
            if better {
                best = Some((i, ratio));
            }
        }
        best.map(|(i, _)| i)
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let p = self.tab[row][col].clone();
        for v in self.tab[row].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.tab[row].clone();
        for (i, r) in self.tab.iter_mut().enumerate() {
            if i == row {
                continue;
            }
            let f = r[col].clone();
            if f.is_zero() {
                continue;
            }
            for (v, pv) in r.iter_mut().zip(&pivot_row) {
                if !pv.is_zero() {
                    *v = v.clone() - f.clone() * pv.clone();
                }
            }
        }
        self.basis[row] = col;
    }

    fn extract(self, pivots: usize) -> SimplexSolution<T> {
        let rhs = self.cols + self.rows;
        let mut primal = vec![T::zero(); self.cols];
        for (i, &bv) in self.basis.iter().enumerate() {
            if bv < self.cols {
                primal[bv] = self.tab[i][rhs].clone();
            }
        }
        let obj = &self.tab[self.rows];
        let dual = (0..self.rows)
            .map(|i| -obj[self.cols + i].clone())
            .collect();
        SimplexSolution {
            value: -obj[rhs].clone(),
            primal,
            dual,
            basis: self.basis,
            pivots,
        }
    }
}
