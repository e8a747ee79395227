//! Exact linear solves over Q.

use num_traits::{One, Zero};

use crate::exactpoly::Rational;

/// Outcome of solving `sum_j x_j columns[j] = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Solution {
    /// One solution (free variables set to zero).
    Solved(Vec<Rational>),
    /// A row functional `y` with `y . columns[j] = 0` for all `j` and `y . target != 0`.
    Inconsistent(Vec<Rational>),
}

/// Gauss-Jordan elimination on `[A | b | I]`; the identity block tracks row
/// operations so that an inconsistent row yields its witness directly.
pub fn solve(columns: &[Vec<Rational>], target: &[Rational]) -> Solution {
    let rows = target.len();
    let ncols = columns.len();
    assert!(
        columns.iter().all(|c| c.len() == rows),
        "column length mismatch"
    );
    let width = ncols + 1 + rows;
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let mut row = Vec::with_capacity(width);
            row.extend(columns.iter().map(|c| c[i].clone()));
            row.push(target[i].clone());
            row.extend((0..rows).map(|j| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            }));
            row
        })
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..width {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }

    for row in m.iter().skip(r) {
        if !row[ncols].is_zero() {
            return Solution::Inconsistent(row[ncols + 1..].to_vec());
        }
    }
    let mut x = vec![Rational::zero(); ncols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = m[i][ncols].clone();
    }
    Solution::Solved(x)
}
