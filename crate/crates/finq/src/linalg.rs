//! Exact Gauss–Jordan elimination over any field implementation.

use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Minimal field interface needed by the exact solvers.
pub trait Field:
    Clone
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn try_inv(&self) -> Option<Self>;
}

impl Field for BigRational {
    fn try_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Outcome of solving `A x = b`.
#[derive(Debug, Clone, PartialEq)]
pub enum Solution<F> {
    Unique(Vec<F>),
    Inconsistent,
    Underdetermined,
}

/// Solves `a · x = b` for a rectangular system (rows = equations).
pub fn solve<F: Field>(a: &[Vec<F>], b: &[F]) -> Solution<F> {
    let rows = a.len();
    assert_eq!(rows, b.len(), "row count of a and b differ");
    let cols = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<F>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), cols, "ragged matrix");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].try_inv().expect("nonzero pivot is invertible");
        for entry in m[r].iter_mut() {
            *entry = entry.clone() * inv.clone();
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=cols {
                    let delta = f.clone() * m[r][j].clone();
                    m[i][j] = m[i][j].clone() - delta;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if m[r..].iter().any(|row| !row[cols].is_zero()) {
        return Solution::Inconsistent;
    }
    if pivot_cols.len() < cols {
        return Solution::Underdetermined;
    }
    let mut x = vec![F::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        x[c] = m[i][cols].clone();
    }
    Solution::Unique(x)
}

/// Exact square matrix product.
pub fn mat_mul<F: Field>(a: &[Vec<F>], b: &[Vec<F>]) -> Vec<Vec<F>> {
    let n = a.len();
    let k = b.len();
    let m = b.first().map_or(0, Vec::len);
    let mut out = vec![vec![F::zero(); m]; n];
    for i in 0..n {
        for l in 0..k {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[l][j].is_zero() {
                    out[i][j] = out[i][j].clone() + a[i][l].clone() * b[l][j].clone();
                }
            }
        }
    }
    out
}
