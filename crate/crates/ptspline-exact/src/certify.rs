//! Exact nullity of large sparse rational systems.
//!
//! The rank modulo a prime never exceeds the rank over the rationals, so
//! `ncols - rank_p` is an upper bound on the nullity. It becomes exact once
//! that many kernel vectors are exhibited over the rationals: they are
//! reconstructed from the modular reduced echelon form by Chinese remaindering
//! and rational reconstruction, then checked with an exact residual.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::modular::{self, Echelon, SparseRow, PRIMES};
use crate::{common_denominator, Rational};

/// How a nullity was established.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Modular rank plus verified rational kernel from this many primes.
    Reconstructed { primes: usize },
    /// Exact sparse elimination over the rationals.
    ExactElimination,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Nullity {
    pub nullity: usize,
    pub rank: usize,
    pub certificate: Certificate,
}

struct ModularImage {
    p: u64,
    pivots: Vec<usize>,
    /// Pivot column -> entries in free columns.
    rows: HashMap<usize, HashMap<usize, u64>>,
}

fn modular_image(rows: &[Vec<(usize, Rational)>], p: u64) -> Option<ModularImage> {
    let mut ech = Echelon::new(p);
    for r in rows {
        ech.insert(modular::reduce_row(r, p)?);
    }
    let reduced = ech.into_reduced();
    let pivots = reduced.iter().map(|r| r.0).collect();
    let rows = reduced
        .into_iter()
        .map(|(c, row): (usize, SparseRow)| (c, row.into_iter().filter(|e| e.0 != c).collect()))
        .collect();
    Some(ModularImage { p, pivots, rows })
}

/// Smallest `|r|/s` congruent to `a` modulo `m` with `|r|, s <= sqrt(m/2)`.
pub fn rational_reconstruction(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

fn crt_combine(images: &[&ModularImage]) -> (BigInt, HashMap<(usize, usize), BigInt>) {
    let mut modulus = BigInt::one();
    let mut acc: HashMap<(usize, usize), BigInt> = HashMap::new();
    for (k, img) in images.iter().enumerate() {
        let p = img.p;
        let m_inv = if k == 0 {
            0
        } else {
            modular::inv(modular::reduce_int(&modulus, p), p)
        };
        let mut keys: Vec<(usize, usize)> = acc.keys().copied().collect();
        for (&c, row) in &img.rows {
            for &f in row.keys() {
                if !acc.contains_key(&(c, f)) {
                    keys.push((c, f));
                }
            }
        }
        for key in keys {
            let r = img.rows[&key.0].get(&key.1).copied().unwrap_or(0);
            let x = acc.entry(key).or_insert_with(BigInt::zero);
            if k == 0 {
                *x = BigInt::from(r);
            } else {
                let xr = modular::reduce_int(x, p);
                let t = modular::mul(modular::sub(r, xr, p), m_inv, p);
                *x += &modulus * BigInt::from(t);
            }
        }
        modulus *= BigInt::from(p);
    }
    (modulus, acc)
}

/// Integer image of each row, scaled by the lcm of its denominators.
fn integer_rows(rows: &[Vec<(usize, Rational)>]) -> Vec<Vec<(usize, BigInt)>> {
    rows.iter()
        .map(|r| {
            let den = common_denominator(r.iter().map(|e| &e.1));
            r.iter()
                .filter(|e| !e.1.is_zero())
                .map(|(c, q)| (*c, q.numer() * (&den / q.denom())))
                .collect()
        })
        .collect()
}

fn verify_kernel(
    int_rows: &[Vec<(usize, BigInt)>],
    pivots: &[usize],
    free: &[usize],
    entries: &HashMap<(usize, usize), Rational>,
) -> bool {
    for &f in free {
        // v[f] = 1, v[c] = -R[c][f]; scale to integers.
        let mut v: HashMap<usize, Rational> = HashMap::new();
        v.insert(f, Rational::one());
        for &c in pivots {
            if let Some(q) = entries.get(&(c, f)) {
                if !q.is_zero() {
                    v.insert(c, -q.clone());
                }
            }
        }
        let den = common_denominator(v.values());
        let w: HashMap<usize, BigInt> = v
            .into_iter()
            .map(|(c, q)| (c, q.numer() * (&den / q.denom())))
            .collect();
        for row in int_rows {
            let mut s = BigInt::zero();
            for (c, a) in row {
                if let Some(x) = w.get(c) {
                    s += a * x;
                }
            }
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

/// Exact nullity of the matrix whose sparse rows are `rows`.
pub fn nullity(rows: &[Vec<(usize, Rational)>], ncols: usize) -> Nullity {
    let images: Vec<ModularImage> = PRIMES
        .iter()
        .filter_map(|&p| modular_image(rows, p))
        .collect();
    let best = images.iter().map(|i| i.pivots.len()).max();
    if let Some(best) = best {
        let lead = images
            .iter()
            .find(|i| i.pivots.len() == best)
            .expect("best exists");
        let agreeing: Vec<&ModularImage> =
            images.iter().filter(|i| i.pivots == lead.pivots).collect();
        let pivots = lead.pivots.clone();
        let mut is_pivot = vec![false; ncols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..ncols).filter(|&c| !is_pivot[c]).collect();
        let int_rows = integer_rows(rows);
        for k in 1..=agreeing.len() {
            let (m, combined) = crt_combine(&agreeing[..k]);
            let mut entries = HashMap::with_capacity(combined.len());
            let ok = combined
                .iter()
                .all(|(key, x)| match rational_reconstruction(x, &m) {
                    Some(q) => {
                        entries.insert(*key, q);
                        true
                    }
                    None => false,
                });
            if ok && verify_kernel(&int_rows, &pivots, &free, &entries) {
                return Nullity {
                    nullity: free.len(),
                    rank: best,
                    certificate: Certificate::Reconstructed { primes: k },
                };
            }
        }
    }
    let rank = exact_sparse_rank(rows);
    Nullity {
        nullity: ncols - rank,
        rank,
        certificate: Certificate::ExactElimination,
    }
}

/// Rank by sparse elimination over the rationals. Slow; used only when the
/// modular route cannot certify.
pub fn exact_sparse_rank(rows: &[Vec<(usize, Rational)>]) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, Rational)>> = BTreeMap::new();
    for r in rows {
        let mut row: Vec<(usize, Rational)> =
            r.iter().filter(|e| !e.1.is_zero()).cloned().collect();
        row.sort_by_key(|e| e.0);
        loop {
            let Some((c, v)) = row.first().cloned() else {
                break;
            };
            match pivots.get(&c) {
                Some(piv) => {
                    let mut acc: BTreeMap<usize, Rational> = row.into_iter().collect();
                    for (pc, pv) in piv {
                        let e = acc.entry(*pc).or_insert_with(Rational::zero);
                        *e -= &v * pv;
                    }
                    row = acc.into_iter().filter(|e| !e.1.is_zero()).collect();
                }
                None => {
                    let row = row.into_iter().map(|(col, x)| (col, x / &v)).collect();
                    pivots.insert(c, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{dense, frac, int};
    use proptest::prelude::*;

    #[test]
    fn reconstruction_recovers_small_fractions() {
        let m = BigInt::from(PRIMES[0]);
        for q in [frac(-7, 9), frac(130, 651), int(0), int(-5)] {
            let a = BigInt::from(modular::reduce(&q, PRIMES[0]).unwrap());
            assert_eq!(rational_reconstruction(&a, &m), Some(q));
        }
    }

    #[test]
    fn large_entries_need_several_primes() {
        // Kernel of [b, -a] is (a, b) with a, b far beyond one prime.
        let a = Rational::from_integer(BigInt::from(3u32).pow(60));
        let b = Rational::from_integer(BigInt::from(7u32).pow(45) + 1);
        let rows = vec![vec![(0, b.clone()), (1, -a.clone())]];
        let n = nullity(&rows, 2);
        assert_eq!(n.nullity, 1);
        assert!(matches!(n.certificate, Certificate::Reconstructed { primes } if primes > 1));
    }

    proptest! {
        #[test]
        fn nullity_matches_dense(
            m in prop::collection::vec(prop::collection::vec((-3i64..4, 1i64..6), 7), 1..7)
        ) {
            let dense_m: Vec<Vec<Rational>> = m.iter()
                .map(|r| r.iter().map(|&(n, d)| frac(n, d)).collect())
                .collect();
            let sparse: Vec<Vec<(usize, Rational)>> = dense_m.iter()
                .map(|r| r.iter().cloned().enumerate().collect())
                .collect();
            let n = nullity(&sparse, 7);
            prop_assert_eq!(n.nullity, 7 - dense::rank(&dense_m, 7));
            prop_assert_eq!(exact_sparse_rank(&sparse), dense::rank(&dense_m, 7));
        }
    }
}
