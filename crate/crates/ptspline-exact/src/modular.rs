//! Sparse elimination modulo 62-bit primes.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::Rational;

/// The largest primes below 2^62.
pub const PRIMES: [u64; 6] = [
    4611686018427387847,
    4611686018427387817,
    4611686018427387787,
    4611686018427387761,
    4611686018427387751,
    4611686018427387737,
];

#[inline]
pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, p - 2, p)
}

pub fn reduce_int(n: &BigInt, p: u64) -> u64 {
    let r = n % BigInt::from(p);
    let r = if r.is_negative() { r + p } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// Image of `q` in F_p, or `None` when `p` divides the denominator.
pub fn reduce(q: &Rational, p: u64) -> Option<u64> {
    let d = reduce_int(q.denom(), p);
    if d == 0 {
        return None;
    }
    Some(mul(reduce_int(q.numer(), p), inv(d, p), p))
}

/// Sparse row: strictly increasing column indices with nonzero residues.
pub type SparseRow = Vec<(usize, u64)>;

/// Reduces a sparse rational row modulo `p`; `None` if a denominator vanishes.
pub fn reduce_row(row: &[(usize, Rational)], p: u64) -> Option<SparseRow> {
    let mut out = Vec::with_capacity(row.len());
    for (c, q) in row {
        if q.is_zero() {
            continue;
        }
        let v = reduce(q, p)?;
        if v != 0 {
            out.push((*c, v));
        }
    }
    out.sort_unstable_by_key(|e| e.0);
    Some(out)
}

/// `a - f * b` for sparse rows.
fn axpy(a: &[(usize, u64)], f: u64, b: &[(usize, u64)], p: u64) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            let v = sub(0, mul(f, b[j].1, p), p);
            if v != 0 {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = sub(a[i].1, mul(f, b[j].1, p), p);
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Incrementally built echelon basis of a row space over F_p.
///
/// Each stored row has a distinct leading column with leading entry 1.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: u64,
    pivots: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new(p: u64) -> Self {
        Echelon {
            p,
            pivots: BTreeMap::new(),
        }
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces `row` against the stored basis on its leading entries.
    /// Returns the residue (empty when `row` is in the span).
    pub fn residue(&self, mut row: SparseRow) -> SparseRow {
        while let Some(&(c, v)) = row.first() {
            match self.pivots.get(&c) {
                Some(piv) => row = axpy(&row, v, piv, self.p),
                None => break,
            }
        }
        row
    }

    /// True if `row` is independent of the rows inserted so far.
    pub fn is_independent(&self, row: SparseRow) -> bool {
        !self.residue(row).is_empty()
    }

    /// Inserts `row`; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let mut row = self.residue(row);
        let Some(&(c, v)) = row.first() else {
            return false;
        };
        if v != 1 {
            let iv = inv(v, self.p);
            for e in row.iter_mut() {
                e.1 = mul(e.1, iv, self.p);
            }
        }
        self.pivots.insert(c, row);
        true
    }

    /// Fully reduced form: every stored row has zeros in all other pivot
    /// columns. Returns `(pivot column, row)` pairs by increasing column.
    pub fn into_reduced(self) -> Vec<(usize, SparseRow)> {
        let p = self.p;
        let mut done: BTreeMap<usize, SparseRow> = BTreeMap::new();
        for (c, row) in self.pivots.into_iter().rev() {
            // Entries to the right that sit in pivot columns are eliminated
            // with the already reduced rows, so no new pivot entries appear.
            let mut out: SparseRow = Vec::with_capacity(row.len());
            let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
            for &(col, v) in &row {
                if col != c {
                    if let Some(piv) = done.get(&col) {
                        for &(pc, pv) in piv {
                            if pc != col {
                                let e = acc.entry(pc).or_insert(0);
                                *e = sub(*e, mul(v, pv, p), p);
                            }
                        }
                        continue;
                    }
                }
                let e = acc.entry(col).or_insert(0);
                *e = add(*e, v, p);
            }
            out.extend(acc.into_iter().filter(|e| e.1 != 0));
            done.insert(c, out);
        }
        done.into_iter().collect()
    }
}

/// Rank modulo `p` of sparse rational rows; `None` if some denominator
/// vanishes modulo `p`.
pub fn rank_mod(rows: &[Vec<(usize, Rational)>], p: u64) -> Option<usize> {
    let mut ech = Echelon::new(p);
    for r in rows {
        ech.insert(reduce_row(r, p)?);
    }
    Some(ech.rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{dense, frac, int};
    use proptest::prelude::*;

    fn is_prime(n: u64) -> bool {
        // Deterministic Miller-Rabin bases for 64-bit integers.
        if n < 2 {
            return false;
        }
        for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if n % q == 0 {
                return n == q;
            }
        }
        let mut d = n - 1;
        let mut s = 0;
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = pow(a, d, n);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 1..s {
                x = mul(x, x, n);
                if x == n - 1 {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    #[test]
    fn primes_are_prime() {
        for p in PRIMES {
            assert!(is_prime(p), "{p}");
        }
    }

    #[test]
    fn reduce_respects_field_ops() {
        let p = PRIMES[0];
        let a = reduce(&frac(-3, 7), p).unwrap();
        assert_eq!(mul(a, 7, p), sub(0, 3, p));
        assert_eq!(reduce(&int(5), p), Some(5));
    }

    #[test]
    fn echelon_detects_dependence() {
        let p = PRIMES[1];
        let mut e = Echelon::new(p);
        assert!(e.insert(vec![(0, 1), (2, 3)]));
        assert!(e.insert(vec![(1, 2), (2, 1)]));
        assert!(!e.insert(vec![(0, 2), (1, 4), (2, 8)]));
        assert!(e.insert(vec![(2, 5)]));
        assert_eq!(e.rank(), 3);
    }

    proptest! {
        #[test]
        fn modular_rank_matches_exact(
            m in prop::collection::vec(prop::collection::vec((-4i64..5, 1i64..5), 5), 1..6)
        ) {
            let dense_m: Vec<Vec<Rational>> = m.iter()
                .map(|r| r.iter().map(|&(n, d)| frac(n, d)).collect())
                .collect();
            let sparse: Vec<Vec<(usize, Rational)>> = dense_m.iter()
                .map(|r| r.iter().cloned().enumerate().collect())
                .collect();
            prop_assert_eq!(rank_mod(&sparse, PRIMES[2]).unwrap(), dense::rank(&dense_m, 5));
        }

        #[test]
        fn reduced_rows_have_clean_pivot_columns(
            m in prop::collection::vec(prop::collection::vec(0u64..4, 6), 1..6)
        ) {
            let p = PRIMES[0];
            let mut e = Echelon::new(p);
            for r in &m {
                let row: SparseRow = r.iter().enumerate()
                    .filter(|(_, &v)| v != 0).map(|(c, &v)| (c, v)).collect();
                e.insert(row);
            }
            let red = e.into_reduced();
            let cols: Vec<usize> = red.iter().map(|r| r.0).collect();
            for (c, row) in &red {
                prop_assert_eq!(row[0], (*c, 1));
                for &(col, _) in &row[1..] {
                    prop_assert!(!cols.contains(&col));
                }
            }
        }
    }
}
