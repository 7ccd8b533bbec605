//! Fraction-free Gaussian elimination over the integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Row;
use crate::algebra::Scalar;

pub(crate) enum BareissOutcome {
    Solved(Vec<Scalar>),
    Deficient { pivots: Vec<bool> },
    /// Original index of a row reducing to `0 = nonzero`.
    Inconsistent { row: usize },
}

/// Bareiss elimination with the first nonzero entry (row-major) as pivot.
pub(crate) fn solve(rows: &[Row], n: usize) -> BareissOutcome {
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut dense = vec![BigInt::zero(); n + 1];
            for (c, v) in &row.coeffs {
                dense[*c] = v.clone();
            }
            dense[n] = row.rhs.clone();
            dense
        })
        .collect();
    let mut origin: Vec<usize> = (0..rows.len()).collect();
    let mut prev = BigInt::one();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        origin.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..=n {
                let v = &pivot_row[c] * &row[j] - &f * &pivot_row[j];
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = m[r][c].clone();
        pivot_cols.push(c);
        r += 1;
    }
    if let Some(i) = (r..m.len()).find(|&i| !m[i][n].is_zero()) {
        return BareissOutcome::Inconsistent { row: origin[i] };
    }
    if r < n {
        let mut pivots = vec![false; n];
        for c in pivot_cols {
            pivots[c] = true;
        }
        return BareissOutcome::Deficient { pivots };
    }
    let mut x = vec![Scalar::zero(); n];
    for (i, &c) in pivot_cols.iter().enumerate().rev() {
        let mut acc = Scalar::from_integer(m[i][n].clone());
        for j in c + 1..n {
            if !m[i][j].is_zero() {
                acc -= Scalar::from_integer(m[i][j].clone()) * &x[j];
            }
        }
        x[c] = acc / Scalar::from_integer(m[i][c].clone());
    }
    BareissOutcome::Solved(x)
}
