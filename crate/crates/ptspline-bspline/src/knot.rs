//! Univariate B-splines with exact piecewise-polynomial representation.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_traits::{One, Zero};

use ptspline_exact::{format_rational, int, Rational};

use crate::poly::UniPoly;
use crate::BSplineError;

/// A polynomial piece on `[lo, hi)` written in `x - lo`.
#[derive(Debug, Clone)]
pub struct Piece {
    pub lo: Rational,
    pub hi: Rational,
    pub poly: UniPoly,
}

/// Local knot vector of a single B-spline of the given degree.
///
/// Equality, ordering and hashing look at the knots only.
#[derive(Clone)]
pub struct KnotVector {
    knots: Vec<Rational>,
    pieces: Vec<Piece>,
}

impl KnotVector {
    pub fn new(knots: Vec<Rational>) -> Result<Self, BSplineError> {
        if knots.len() < 2 {
            return Err(BSplineError::TooFewKnots(knots.len()));
        }
        if knots.windows(2).any(|w| w[0] > w[1]) {
            return Err(BSplineError::Decreasing);
        }
        if knots.first() == knots.last() {
            return Err(BSplineError::EmptySupport);
        }
        let pieces = cox_de_boor(&knots);
        Ok(KnotVector { knots, pieces })
    }

    pub fn from_ints(knots: &[i64]) -> Result<Self, BSplineError> {
        KnotVector::new(knots.iter().map(|&k| int(k)).collect())
    }

    pub fn degree(&self) -> usize {
        self.knots.len() - 2
    }

    pub fn knots(&self) -> &[Rational] {
        &self.knots
    }

    pub fn start(&self) -> &Rational {
        &self.knots[0]
    }

    pub fn end(&self) -> &Rational {
        self.knots.last().unwrap()
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Multiplicity of `t` among the knots.
    pub fn multiplicity(&self, t: &Rational) -> usize {
        self.knots.iter().filter(|k| *k == t).count()
    }

    /// Polynomial on `[a, b]` in `x - a`. Zero outside the support; an
    /// error when a knot lies strictly inside `(a, b)` within the support.
    pub fn poly_on(&self, a: &Rational, b: &Rational) -> Result<UniPoly, BSplineError> {
        let len = self.degree() + 1;
        if b <= self.start() || a >= self.end() {
            return Ok(UniPoly::zero(len));
        }
        match self.pieces.iter().find(|p| &p.lo <= a && b <= &p.hi) {
            Some(p) => Ok(p.poly.shift(&(a - &p.lo))),
            None => Err(BSplineError::KnotInside {
                lo: a.clone(),
                hi: b.clone(),
            }),
        }
    }

    /// Right-continuous value; at the right end of the support the left limit.
    pub fn eval(&self, x: &Rational) -> Rational {
        if x < self.start() || x > self.end() {
            return Rational::zero();
        }
        if x == self.end() {
            let last = self.pieces.last().unwrap();
            return last.poly.eval(&(x - &last.lo));
        }
        self.eval_right(x, 0)
    }

    fn eval_right(&self, x: &Rational, k: usize) -> Rational {
        match self.pieces.iter().find(|p| &p.lo <= x && x < &p.hi) {
            Some(p) => p.poly.derivative(k).eval(&(x - &p.lo)),
            None => Rational::zero(),
        }
    }

    fn eval_left(&self, x: &Rational, k: usize) -> Rational {
        match self.pieces.iter().find(|p| &p.lo < x && x <= &p.hi) {
            Some(p) => p.poly.derivative(k).eval(&(x - &p.lo)),
            None => Rational::zero(),
        }
    }

    /// `k`-th derivative from the right.
    pub fn derivative_right(&self, x: &Rational, k: usize) -> Rational {
        self.eval_right(x, k)
    }

    /// `k`-th derivative from the left.
    pub fn derivative_left(&self, x: &Rational, k: usize) -> Rational {
        self.eval_left(x, k)
    }

    /// Jump `D+ - D-` of the `k`-th derivative at `x`.
    pub fn jump(&self, x: &Rational, k: usize) -> Rational {
        self.eval_right(x, k) - self.eval_left(x, k)
    }
}

/// Runs the recursion separately on each nonempty knot interval with the
/// basis functions as polynomials in `x - t_j`.
fn cox_de_boor(t: &[Rational]) -> Vec<Piece> {
    let d = t.len() - 2;
    let len = d + 1;
    let mut pieces = Vec::new();
    for j in 0..=d {
        if t[j] == t[j + 1] {
            continue;
        }
        let mut level: Vec<UniPoly> = (0..=d)
            .map(|i| {
                if i == j {
                    UniPoly::constant(Rational::one(), len)
                } else {
                    UniPoly::zero(len)
                }
            })
            .collect();
        for p in 1..=d {
            let mut next = Vec::with_capacity(d + 1 - p);
            for i in 0..=d - p {
                let mut acc = UniPoly::zero(len);
                let den = &t[i + p] - &t[i];
                if !den.is_zero() && !level[i].is_zero() {
                    // (x - t_i) = s + (t_j - t_i)
                    let f = level[i].mul_linear(&(&t[j] - &t[i])).resized(len);
                    acc = acc.add(&f.scale(&den.recip()));
                }
                let den = &t[i + p + 1] - &t[i + 1];
                if !den.is_zero() && !level[i + 1].is_zero() {
                    // (t_{i+p+1} - x) = -(s + t_j - t_{i+p+1})
                    let f = level[i + 1]
                        .mul_linear(&(&t[j] - &t[i + p + 1]))
                        .resized(len);
                    acc = acc.add(&f.scale(&(-den.recip())));
                }
                next.push(acc);
            }
            level = next;
        }
        pieces.push(Piece {
            lo: t[j].clone(),
            hi: t[j + 1].clone(),
            poly: level.swap_remove(0),
        });
    }
    pieces
}

impl PartialEq for KnotVector {
    fn eq(&self, other: &Self) -> bool {
        self.knots == other.knots
    }
}

impl Eq for KnotVector {}

impl Hash for KnotVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.knots.hash(state);
    }
}

impl PartialOrd for KnotVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for KnotVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.knots.cmp(&other.knots)
    }
}

impl fmt::Debug for KnotVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KnotVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.knots.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptspline_exact::frac;

    fn integral(k: &KnotVector) -> Rational {
        k.pieces()
            .iter()
            .map(|p| {
                let h = &p.hi - &p.lo;
                let mut hp = h.clone();
                let mut acc = Rational::zero();
                for (i, c) in p.poly.coeffs.iter().enumerate() {
                    acc += c * &hp / int(i as i64 + 1);
                    hp *= &h;
                }
                acc
            })
            .sum()
    }

    #[test]
    fn low_degree_values() {
        let n0 = KnotVector::from_ints(&[0, 1]).unwrap();
        assert_eq!(n0.eval(&frac(1, 2)), int(1));
        assert_eq!(n0.eval(&int(2)), int(0));
        let n2 = KnotVector::from_ints(&[0, 0, 0, 1]).unwrap();
        assert_eq!(n2.eval(&frac(1, 2)), frac(1, 4));
        let hat = KnotVector::from_ints(&[0, 1, 2]).unwrap();
        assert_eq!(hat.eval(&int(1)), int(1));
        assert_eq!(hat.eval(&frac(3, 2)), frac(1, 2));
    }

    #[test]
    fn integral_is_support_over_order() {
        for ks in [
            vec![int(0), int(1), int(3), int(4)],
            vec![int(0), int(0), frac(5, 2), int(4)],
            vec![int(1), int(2), int(4), int(7), int(8)],
            vec![int(0), int(0), int(0), int(1), int(1)],
        ] {
            let k = KnotVector::new(ks.clone()).unwrap();
            let expect = (ks.last().unwrap() - &ks[0]) / int(ks.len() as i64 - 1);
            assert_eq!(integral(&k), expect);
        }
    }

    #[test]
    fn smoothness_at_simple_knots() {
        let k = KnotVector::new(vec![int(0), int(1), frac(5, 2), int(3), int(5)]).unwrap();
        for t in k.knots().to_vec() {
            for order in 0..k.degree() {
                assert_eq!(k.jump(&t, order), int(0), "order {order} at {t}");
            }
            assert_ne!(k.jump(&t, k.degree()), int(0));
        }
    }

    #[test]
    fn rejects_bad_knots() {
        assert!(KnotVector::from_ints(&[1]).is_err());
        assert!(KnotVector::from_ints(&[2, 1, 3]).is_err());
        assert!(KnotVector::from_ints(&[2, 2, 2]).is_err());
    }

    #[test]
    fn poly_on_rejects_straddling_interval() {
        let k = KnotVector::from_ints(&[0, 1, 2, 3]).unwrap();
        assert!(k.poly_on(&int(0), &int(2)).is_err());
        let p = k.poly_on(&frac(1, 2), &int(1)).unwrap();
        assert_eq!(p.eval(&int(0)), k.eval(&frac(1, 2)));
        assert!(k.poly_on(&int(3), &int(4)).unwrap().is_zero());
    }
}
