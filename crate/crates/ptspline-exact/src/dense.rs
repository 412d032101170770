//! Fraction-free Gauss-Jordan elimination on small dense rational matrices.
//!
//! Rows are kept as primitive integer vectors during elimination; the result
//! is the unique reduced row echelon form, so every output is independent of
//! row order and of the platform.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{primitive_integer_vector, Rational};

/// Reduced row echelon form of a rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    /// Nonzero rows, each with a 1 in its pivot column.
    pub rows: Vec<Vec<Rational>>,
    /// Pivot column of each row, strictly increasing.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Columns without a pivot, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }
}

fn primitive(row: &mut [BigInt]) {
    let g = row
        .iter()
        .fold(BigInt::zero(), |g, v| num_integer::Integer::gcd(&g, v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Reduced row echelon form. Every row of `matrix` must have `ncols` entries.
pub fn rref(matrix: &[Vec<Rational>], ncols: usize) -> Rref {
    let mut rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            primitive_integer_vector(r)
        })
        .filter(|r| r.iter().any(|v| !v.is_zero()))
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..ncols {
        let Some(found) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, found);
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, tail) = tail.split_first_mut().expect("pivot row exists");
        let pv = pivot_row[c].clone();
        for other in head.iter_mut().chain(tail.iter_mut()) {
            if other[c].is_zero() {
                continue;
            }
            let f = other[c].clone();
            for (o, p) in other.iter_mut().zip(pivot_row.iter()) {
                *o = &*o * &pv - &f * p;
            }
            primitive(other);
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    let rows = rows
        .into_iter()
        .zip(&pivots)
        .map(|(row, &p)| {
            let pv = row[p].clone();
            row.into_iter()
                .map(|v| Rational::new(v, pv.clone()))
                .collect()
        })
        .collect();
    Rref {
        rows,
        pivots,
        ncols,
    }
}

pub fn rank(matrix: &[Vec<Rational>], ncols: usize) -> usize {
    rref(matrix, ncols).rank()
}

/// Kernel basis in reduced form: one vector per free column `f`, with a 1 at
/// `f`, zeros at the other free columns.
pub fn nullspace_rational(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let r = rref(matrix, ncols);
    r.free_columns()
        .into_iter()
        .map(|f| {
            let mut v = vec![Rational::zero(); ncols];
            v[f] = Rational::one();
            for (row, &p) in r.rows.iter().zip(&r.pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Canonical kernel basis: the reduced vectors of [`nullspace_rational`],
/// each scaled by a positive factor to coprime integers.
pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    nullspace_rational(matrix, ncols)
        .iter()
        .map(|v| primitive_integer_vector(v))
        .collect()
}

/// `matrix * v` in exact arithmetic.
pub fn mat_vec(matrix: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    matrix
        .iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
        })
        .collect()
}

/// True when the leading nonzero entry is positive (or the vector is zero).
pub fn leads_positive(v: &[BigInt]) -> bool {
    v.iter()
        .find(|x| !x.is_zero())
        .is_none_or(|x| x.is_positive())
}
