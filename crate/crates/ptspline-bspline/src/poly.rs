//! Power-basis polynomials in a shifted variable.

use num_traits::{One, Zero};

use ptspline_exact::{int, Rational};

/// Univariate polynomial `sum c[i] s^i`, where `s` is the distance from some
/// origin the caller keeps track of.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    pub coeffs: Vec<Rational>,
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r = r * int((n - i) as i64) / int((i + 1) as i64);
    }
    r
}

fn factorial(n: usize) -> Rational {
    (1..=n).fold(Rational::one(), |acc, k| acc * int(k as i64))
}

impl UniPoly {
    pub fn zero(len: usize) -> Self {
        UniPoly {
            coeffs: vec![Rational::zero(); len],
        }
    }

    pub fn constant(c: Rational, len: usize) -> Self {
        let mut p = UniPoly::zero(len.max(1));
        p.coeffs[0] = c;
        p
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * s + c)
    }

    /// `k`-th derivative, same storage length.
    pub fn derivative(&self, k: usize) -> UniPoly {
        let n = self.coeffs.len();
        let mut out = UniPoly::zero(n);
        for i in k..n {
            let mut f = Rational::one();
            for j in 0..k {
                f *= int((i - j) as i64);
            }
            out.coeffs[i - k] = &self.coeffs[i] * f;
        }
        out
    }

    /// Value of the `k`-th derivative at `s = 0`.
    pub fn derivative_at_origin(&self, k: usize) -> Rational {
        match self.coeffs.get(k) {
            Some(c) => c * factorial(k),
            None => Rational::zero(),
        }
    }

    /// Re-expands around a new origin: returns `q(s) = p(s + h)`.
    pub fn shift(&self, h: &Rational) -> UniPoly {
        if h.is_zero() {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut out = UniPoly::zero(n);
        // Powers of h reused across coefficients.
        let mut hp = vec![Rational::one(); n];
        for i in 1..n {
            hp[i] = &hp[i - 1] * h;
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for k in 0..=i {
                out.coeffs[k] += c * binomial(i, k) * &hp[i - k];
            }
        }
        out
    }

    /// `(s + a) * p(s)`, growing the storage by one if the top coefficient
    /// would overflow.
    pub fn mul_linear(&self, a: &Rational) -> UniPoly {
        let n = self.coeffs.len();
        let mut out = UniPoly::zero(n + 1);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i + 1] += c;
            out.coeffs[i] += c * a;
        }
        out
    }

    pub fn scale(&self, f: &Rational) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| c * f).collect(),
        }
    }

    /// Coefficient-wise sum; the shorter operand is padded with zeros.
    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = UniPoly::zero(n);
        for (i, c) in self.coeffs.iter().enumerate() {
            out.coeffs[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            out.coeffs[i] += c;
        }
        out
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&int(-1)))
    }

    /// Pads or truncates to `len` coefficients; truncation must drop zeros.
    pub fn resized(mut self, len: usize) -> UniPoly {
        debug_assert!(self.coeffs.iter().skip(len).all(|c| c.is_zero()));
        self.coeffs.resize(len, Rational::zero());
        self
    }

    /// Bernstein coefficients of degree `len - 1` on `s in [0, h]`.
    pub fn bernstein(&self, h: &Rational) -> Vec<Rational> {
        let n = self.coeffs.len();
        if n == 0 {
            return Vec::new();
        }
        let deg = n - 1;
        let mut scaled = Vec::with_capacity(n);
        let mut hp = Rational::one();
        for c in &self.coeffs {
            scaled.push(c * &hp);
            hp *= h;
        }
        (0..n)
            .map(|k| {
                (0..=k).fold(Rational::zero(), |acc, i| {
                    acc + &scaled[i] * binomial(k, i) / binomial(deg, i)
                })
            })
            .collect()
    }
}

/// Bivariate polynomial `sum c[i][j] s^i t^j` in shifted variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BiPoly {
    /// `coeffs[i][j]` multiplies `s^i t^j`; `d1 + 1` rows of `d2 + 1`.
    pub coeffs: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn zero(d1: usize, d2: usize) -> Self {
        BiPoly {
            coeffs: vec![vec![Rational::zero(); d2 + 1]; d1 + 1],
        }
    }

    /// Product `p(s) q(t)`.
    pub fn outer(p: &UniPoly, q: &UniPoly) -> Self {
        BiPoly {
            coeffs: p
                .coeffs
                .iter()
                .map(|a| q.coeffs.iter().map(|b| a * b).collect())
                .collect(),
        }
    }

    pub fn degrees(&self) -> (usize, usize) {
        (
            self.coeffs.len().saturating_sub(1),
            self.coeffs.first().map_or(0, |r| r.len().saturating_sub(1)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().flatten().all(|c| c.is_zero())
    }

    pub fn eval(&self, s: &Rational, t: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, row| {
            let inner = row.iter().rev().fold(Rational::zero(), |a, c| a * t + c);
            acc * s + inner
        })
    }

    pub fn add_scaled(&mut self, other: &BiPoly, f: &Rational) {
        for (r, o) in self.coeffs.iter_mut().zip(&other.coeffs) {
            for (c, v) in r.iter_mut().zip(o) {
                if !v.is_zero() {
                    *c += v * f;
                }
            }
        }
    }

    /// Coefficients flattened row-major (`s` power major).
    pub fn flatten(&self) -> impl Iterator<Item = &Rational> {
        self.coeffs.iter().flatten()
    }

    /// Re-expands around `(s, t) = (hs, ht)`.
    pub fn shift(&self, hs: &Rational, ht: &Rational) -> BiPoly {
        let rows: Vec<UniPoly> = self
            .coeffs
            .iter()
            .map(|r| UniPoly { coeffs: r.clone() }.shift(ht))
            .collect();
        let ncol = rows.first().map_or(0, |r| r.len());
        let mut out = BiPoly {
            coeffs: vec![vec![Rational::zero(); ncol]; rows.len()],
        };
        for j in 0..ncol {
            let col = UniPoly {
                coeffs: rows.iter().map(|r| r.coeffs[j].clone()).collect(),
            }
            .shift(hs);
            for (i, c) in col.coeffs.into_iter().enumerate() {
                out.coeffs[i][j] = c;
            }
        }
        out
    }

    /// Restriction `t = t0` as a polynomial in `s`, after `k` derivatives in `t`.
    pub fn trace_t(&self, t0: &Rational, k: usize) -> UniPoly {
        UniPoly {
            coeffs: self
                .coeffs
                .iter()
                .map(|r| UniPoly { coeffs: r.clone() }.derivative(k).eval(t0))
                .collect(),
        }
    }

    /// Restriction `s = s0` as a polynomial in `t`, after `k` derivatives in `s`.
    pub fn trace_s(&self, s0: &Rational, k: usize) -> UniPoly {
        let ncol = self.coeffs.first().map_or(0, |r| r.len());
        UniPoly {
            coeffs: (0..ncol)
                .map(|j| {
                    UniPoly {
                        coeffs: self.coeffs.iter().map(|r| r[j].clone()).collect(),
                    }
                    .derivative(k)
                    .eval(s0)
                })
                .collect(),
        }
    }

    /// Bernstein coefficients on `[0, w] x [0, h]`.
    pub fn bernstein(&self, w: &Rational, h: &Rational) -> Vec<Vec<Rational>> {
        let rows: Vec<Vec<Rational>> = self
            .coeffs
            .iter()
            .map(|r| UniPoly { coeffs: r.clone() }.bernstein(h))
            .collect();
        let ncol = rows.first().map_or(0, |r| r.len());
        let mut out = vec![vec![Rational::zero(); ncol]; rows.len()];
        for j in 0..ncol {
            let col = UniPoly {
                coeffs: rows.iter().map(|r| r[j].clone()).collect(),
            }
            .bernstein(w);
            for (i, c) in col.into_iter().enumerate() {
                out[i][j] = c;
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptspline_exact::frac;

    fn p(v: &[i64]) -> UniPoly {
        UniPoly {
            coeffs: v.iter().map(|&x| int(x)).collect(),
        }
    }

    #[test]
    fn shift_matches_evaluation() {
        let q = p(&[1, -2, 3]);
        let h = frac(5, 2);
        let r = q.shift(&h);
        for s in [int(0), int(1), frac(-3, 4)] {
            assert_eq!(r.eval(&s), q.eval(&(&s + &h)));
        }
    }

    #[test]
    fn derivative_and_linear_product() {
        assert_eq!(p(&[1, 2, 3]).derivative(1), p(&[2, 6, 0]));
        assert_eq!(p(&[1, 2, 3]).derivative(2), p(&[6, 0, 0]));
        assert_eq!(p(&[1, 1]).mul_linear(&int(-1)), p(&[-1, 0, 1]));
        assert_eq!(p(&[0, 0, 5]).derivative_at_origin(2), int(10));
    }

    #[test]
    fn bernstein_of_square() {
        // s^2 on [0, 2]: (2u)^2 = 4u^2 has Bernstein coefficients (0, 0, 4).
        assert_eq!(
            p(&[0, 0, 1]).bernstein(&int(2)),
            vec![int(0), int(0), int(4)]
        );
        // 1 has all coefficients 1.
        assert_eq!(p(&[1, 0, 0]).bernstein(&int(3)), vec![int(1); 3]);
    }

    #[test]
    fn bivariate_traces() {
        let b = BiPoly::outer(&p(&[1, 1]), &p(&[0, 0, 1]));
        assert_eq!(b.eval(&int(2), &int(3)), int(27));
        assert_eq!(b.trace_t(&int(2), 0), p(&[4, 4]));
        assert_eq!(b.trace_t(&int(0), 2), p(&[2, 2]));
        assert_eq!(b.trace_s(&int(1), 1), p(&[0, 0, 1]));
        let sh = b.shift(&int(1), &int(-1));
        assert_eq!(sh.eval(&int(0), &int(0)), b.eval(&int(1), &int(-1)));
    }
}
