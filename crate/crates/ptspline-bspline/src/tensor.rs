//! Tensor-product B-splines and finite linear combinations of them.

use std::fmt;

use num_traits::Zero;

use ptspline_exact::{format_rational, Rational};
use ptspline_mesh::Orientation;

use crate::knot::KnotVector;
use crate::poly::{BiPoly, UniPoly};
use crate::BSplineError;

/// Where a basis function came from during construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SplineTag {
    Cross,
    /// Associated with the T l-edge of this id.
    TLedge(usize),
    /// Associated with the ray of this id.
    Ray(usize),
}

impl fmt::Display for SplineTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SplineTag::Cross => f.write_str("cross"),
            SplineTag::TLedge(id) => write!(f, "tledge:{id}"),
            SplineTag::Ray(id) => write!(f, "ray:{id}"),
        }
    }
}

/// An axis-parallel edge `{fixed} x [lo, hi]` or `[lo, hi] x {fixed}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub orientation: Orientation,
    pub fixed: Rational,
    pub lo: Rational,
    pub hi: Rational,
}

impl Edge {
    pub fn new(orientation: Orientation, fixed: Rational, lo: Rational, hi: Rational) -> Self {
        Edge {
            orientation,
            fixed,
            lo,
            hi,
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, lo, hi) = (
            format_rational(&self.fixed),
            format_rational(&self.lo),
            format_rational(&self.hi),
        );
        match self.orientation {
            Orientation::Horizontal => write!(f, "[{lo},{hi}]x{{{a}}}"),
            Orientation::Vertical => write!(f, "{{{a}}}x[{lo},{hi}]"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorBSpline {
    pub x: KnotVector,
    pub y: KnotVector,
    pub tag: SplineTag,
}

impl TensorBSpline {
    pub fn new(x: KnotVector, y: KnotVector, tag: SplineTag) -> Self {
        TensorBSpline { x, y, tag }
    }

    pub fn from_ints(x: &[i64], y: &[i64], tag: SplineTag) -> Result<Self, BSplineError> {
        Ok(TensorBSpline::new(
            KnotVector::from_ints(x)?,
            KnotVector::from_ints(y)?,
            tag,
        ))
    }

    pub fn degrees(&self) -> (usize, usize) {
        (self.x.degree(), self.y.degree())
    }

    /// Identity ignoring the tag.
    pub fn same_knots(&self, other: &TensorBSpline) -> bool {
        self.x == other.x && self.y == other.y
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let a = self.x.eval(x);
        if a.is_zero() {
            return a;
        }
        a * self.y.eval(y)
    }

    /// Whether the open support meets the open rectangle.
    pub fn overlaps(&self, x0: &Rational, x1: &Rational, y0: &Rational, y1: &Rational) -> bool {
        self.x.start() < x1 && x0 < self.x.end() && self.y.start() < y1 && y0 < self.y.end()
    }

    /// Polynomial on the cell `[x0, x1] x [y0, y1]` in `(x - x0, y - y0)`.
    pub fn cell_polynomial(
        &self,
        x0: &Rational,
        x1: &Rational,
        y0: &Rational,
        y1: &Rational,
    ) -> Result<BiPoly, BSplineError> {
        let p = self.x.poly_on(x0, x1)?;
        let q = self.y.poly_on(y0, y1)?;
        Ok(BiPoly::outer(&p, &q))
    }

    /// Jump of the `order`-th normal derivative across `edge`, as a
    /// polynomial in the tangential variable minus `edge.lo`.
    pub fn jump_on_edge(&self, edge: &Edge, order: usize) -> Result<UniPoly, BSplineError> {
        let (normal, tangential) = match edge.orientation {
            Orientation::Horizontal => (&self.y, &self.x),
            Orientation::Vertical => (&self.x, &self.y),
        };
        let len = tangential.degree() + 1;
        let j = normal.jump(&edge.fixed, order);
        if j.is_zero() {
            return Ok(UniPoly::zero(len));
        }
        Ok(tangential.poly_on(&edge.lo, &edge.hi)?.scale(&j))
    }

    /// Jump of the derivative of full normal degree across `edge`.
    pub fn derivative_jump(&self, edge: &Edge) -> Result<UniPoly, BSplineError> {
        let order = match edge.orientation {
            Orientation::Horizontal => self.y.degree(),
            Orientation::Vertical => self.x.degree(),
        };
        self.jump_on_edge(edge, order)
    }
}

impl fmt::Display for TensorBSpline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "N{}xN{}", self.x, self.y)
    }
}

/// `sum c_k B_k` over tensor B-splines.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SplineCombination {
    pub terms: Vec<(Rational, TensorBSpline)>,
}

impl SplineCombination {
    pub fn new(terms: Vec<(Rational, TensorBSpline)>) -> Self {
        SplineCombination { terms }
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        self.terms
            .iter()
            .filter(|(c, _)| !c.is_zero())
            .map(|(c, b)| c * b.eval(x, y))
            .sum()
    }

    pub fn cell_polynomial(
        &self,
        x0: &Rational,
        x1: &Rational,
        y0: &Rational,
        y1: &Rational,
        degrees: (usize, usize),
    ) -> Result<BiPoly, BSplineError> {
        let mut acc = BiPoly::zero(degrees.0, degrees.1);
        for (c, b) in &self.terms {
            if c.is_zero() || !b.overlaps(x0, x1, y0, y1) {
                continue;
            }
            acc.add_scaled(&b.cell_polynomial(x0, x1, y0, y1)?, c);
        }
        Ok(acc)
    }

    pub fn jump_on_edge(&self, edge: &Edge, order: usize) -> Result<UniPoly, BSplineError> {
        let len = self
            .terms
            .first()
            .map_or(0, |(_, b)| match edge.orientation {
                Orientation::Horizontal => b.x.degree() + 1,
                Orientation::Vertical => b.y.degree() + 1,
            });
        let mut acc = UniPoly::zero(len);
        for (c, b) in &self.terms {
            if !c.is_zero() {
                acc = acc.add(&b.jump_on_edge(edge, order)?.scale(c));
            }
        }
        Ok(acc)
    }
}
