//! Exact Gaussian elimination over the rationals.

use crate::ratpoly::Rational;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveError {
    /// Columns are linearly dependent; the solution is not unique.
    Singular,
    /// The right-hand side is outside the column span.
    Inconsistent,
}

/// Solves `a * x = b` for a matrix with at least as many rows as columns,
/// requiring a unique solution.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>, SolveError> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut pivot_row = 0;
    let mut pivots = Vec::with_capacity(cols);
    for c in 0..cols {
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][c].is_zero()) else {
            return Err(SolveError::Singular);
        };
        a.swap(pivot_row, p);
        b.swap(pivot_row, p);
        let inv = a[pivot_row][c].recip();
        for v in a[pivot_row][c..].iter_mut() {
            *v *= &inv;
        }
        b[pivot_row] *= &inv;
        let prow = a[pivot_row].clone();
        let pb = b[pivot_row].clone();
        for r in 0..rows {
            if r == pivot_row || a[r][c].is_zero() {
                continue;
            }
            let f = a[r][c].clone();
            for (v, pv) in a[r][c..].iter_mut().zip(&prow[c..]) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
            b[r] -= &f * &pb;
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    if b[pivot_row..].iter().any(|v| !v.is_zero()) {
        return Err(SolveError::Inconsistent);
    }
    Ok(pivots.into_iter().map(|r| b[r].clone()).collect())
}
