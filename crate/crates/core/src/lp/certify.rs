//! Exact verification of a candidate optimal basis for a packing LP, using
//! fraction-free (Bareiss) elimination over checked `i128`.

use crate::packing::{LpCertificate, PackingLp};
use crate::Rational;
use num_bigint::BigInt;

/// Solves `m · x = rhs` for a square integer matrix. Returns `(det, num)` with
/// `x_i = num_i / det` and `det > 0`, or `None` if singular or on overflow.
pub(crate) fn bareiss_solve(m: &[Vec<i128>], rhs: &[i128]) -> Option<(i128, Vec<i128>)> {
    let k = m.len();
    if k == 0 {
        return Some((1, Vec::new()));
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .zip(rhs)
        .map(|(row, &r)| {
            let mut v = row.clone();
            v.push(r);
            v
        })
        .collect();
    let mut prev = 1i128;
    for p in 0..k {
        let pr = (p..k).find(|&i| a[i][p] != 0)?;
        a.swap(p, pr);
        for i in p + 1..k {
            for j in p + 1..=k {
                let v = a[i][j]
                    .checked_mul(a[p][p])?
                    .checked_sub(a[i][p].checked_mul(a[p][j])?)?;
                a[i][j] = v / prev;
            }
            a[i][p] = 0;
        }
        prev = a[p][p];
    }
    let det = a[k - 1][k - 1];
    let mut num = vec![0i128; k];
    for i in (0..k).rev() {
        let mut acc = det.checked_mul(a[i][k])?;
        for j in i + 1..k {
            acc = acc.checked_sub(a[i][j].checked_mul(num[j])?)?;
        }
        if acc % a[i][i] != 0 {
            return None;
        }
        num[i] = acc / a[i][i];
    }
    if det < 0 {
        for v in num.iter_mut() {
            *v = v.checked_neg()?;
        }
        Some((-det, num))
    } else {
        Some((det, num))
    }
}

/// Checks that `basis` (one basic variable per row, slacks indexed from
/// `lp.cols()`) is primal and dual feasible, and returns the exact certificate.
pub(crate) fn certify_basis(
    lp: &PackingLp,
    scaled_obj: &[i128],
    scale: i128,
    basis: &[usize],
) -> Option<LpCertificate> {
    let rows = lp.rows();
    let cols = lp.cols();
    let structural: Vec<usize> = basis.iter().copied().filter(|&j| j < cols).collect();
    let mut slack_basic = vec![false; rows];
    for &j in basis.iter().filter(|&&j| j >= cols) {
        slack_basic[j - cols] = true;
    }
    let tight: Vec<usize> = (0..rows).filter(|&i| !slack_basic[i]).collect();
    if tight.len() != structural.len() {
        return None;
    }
    let k = tight.len();
    let mut row_pos = vec![usize::MAX; rows];
    for (p, &i) in tight.iter().enumerate() {
        row_pos[i] = p;
    }
    // m[p][q] = A[tight[p]][structural[q]]
    let mut m = vec![vec![0i128; k]; k];
    for (q, &j) in structural.iter().enumerate() {
        for &e in lp.column(j) {
            if row_pos[e] != usize::MAX {
                m[row_pos[e]][q] = 1;
            }
        }
    }
    let (det, x) = bareiss_solve(&m, &vec![1; k])?;
    if x.iter().any(|&v| v < 0) {
        return None;
    }
    // Slack rows: det - A_t · x ≥ 0.
    let mut load = vec![0i128; rows];
    for (q, &j) in structural.iter().enumerate() {
        for &e in lp.column(j) {
            load[e] = load[e].checked_add(x[q])?;
        }
    }
    if load.iter().any(|&l| l > det) {
        return None;
    }
    let mt: Vec<Vec<i128>> = (0..k).map(|p| (0..k).map(|q| m[q][p]).collect()).collect();
    let c_s: Vec<i128> = structural.iter().map(|&j| scaled_obj[j]).collect();
    let (det2, y) = bareiss_solve(&mt, &c_s)?;
    if y.iter().any(|&v| v < 0) {
        return None;
    }
    // Reduced costs: Σ_{e ∈ H} y_e ≥ c_H for every column.
    for (j, obj) in scaled_obj.iter().enumerate().take(cols) {
        let mut s = 0i128;
        for &e in lp.column(j) {
            if row_pos[e] != usize::MAX {
                s = s.checked_add(y[row_pos[e]])?;
            }
        }
        if s < obj.checked_mul(det2)? {
            return None;
        }
    }
    let xden = BigInt::from(det);
    let yden = BigInt::from(det2) * BigInt::from(scale);
    let mut primal = vec![Rational::from_integer(0.into()); cols];
    for (q, &j) in structural.iter().enumerate() {
        primal[j] = Rational::new(x[q].into(), xden.clone());
    }
    let mut dual = vec![Rational::from_integer(0.into()); rows];
    for (p, &i) in tight.iter().enumerate() {
        dual[i] = Rational::new(y[p].into(), yden.clone());
    }
    let value: Rational = dual.iter().sum();
    let primal_value: Rational = primal.iter().zip(lp.objective()).map(|(x, c)| x * c).sum();
    if primal_value != value {
        return None;
    }
    Some(LpCertificate {
        value,
        primal,
        dual,
    })
}
