use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use ptspline_bspline::{BSplineError, SplineCombination, SplineTag};
use ptspline_exact::certify::exact_sparse_rank;
use ptspline_exact::modular::{rank_mod, PRIMES};
use ptspline_exact::{format_rational, Rational};

use crate::{PtBasis, PtSpline};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NonnegError {
    #[error(
        "spline {spline} is negative on the cell at ({x}, {y}) where the cover is not positive"
    )]
    NoPositiveCover { spline: usize, x: String, y: String },
    #[error("the shifted family is linearly dependent")]
    Dependent,
    #[error(transparent)]
    BSpline(#[from] BSplineError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonnegativeBasis {
    pub splines: Vec<PtSpline>,
    /// `splines[k] = original[k] + lambdas[k] * cover`.
    pub lambdas: Vec<Rational>,
}

/// Bernstein coefficients of `f` on every grid cell, cell by cell.
fn grid_bernstein(
    basis: &PtBasis,
    f: &SplineCombination,
) -> Result<Vec<Vec<Rational>>, BSplineError> {
    let mesh = &basis.plan.extended_mesh;
    let mut out = Vec::new();
    for j in 0..mesh.ny() - 1 {
        for i in 0..mesh.nx() - 1 {
            let (x0, x1, y0, y1) = (mesh.x(i), mesh.x(i + 1), mesh.y(j), mesh.y(j + 1));
            let p = f.cell_polynomial(x0, x1, y0, y1, mesh.degrees())?;
            out.push(p.bernstein(&(x1 - x0), &(y1 - y0)).concat());
        }
    }
    Ok(out)
}

fn ceil(q: &Rational) -> Rational {
    let (n, d) = (q.numer(), q.denom());
    Rational::from_integer(n.div_ceil(d))
}

fn is_independent(splines: &[PtSpline]) -> bool {
    let rows: Vec<Vec<(usize, Rational)>> = splines.iter().map(|s| s.terms.clone()).collect();
    PRIMES[..2]
        .iter()
        .any(|&p| rank_mod(&rows, p) == Some(rows.len()))
        || exact_sparse_rank(&rows) == rows.len()
}

/// Shifts every member by the smallest nonnegative integer multiple of the
/// sum of all cross splines (the constant 1) that makes its Bernstein
/// coefficients nonnegative.
pub fn nonnegativize(basis: &PtBasis) -> Result<NonnegativeBasis, NonnegError> {
    let cover = PtSpline {
        terms: basis
            .extended
            .provenance
            .iter()
            .enumerate()
            .filter(|(_, p)| p.tag == SplineTag::Cross)
            .map(|(i, _)| (i, Rational::one()))
            .collect(),
    };
    nonnegativize_with(basis, &cover)
}

/// As [`nonnegativize`] with an explicit cover, which must lie in the
/// spline space of the original mesh.
pub fn nonnegativize_with(
    basis: &PtBasis,
    cover: &PtSpline,
) -> Result<NonnegativeBasis, NonnegError> {
    let mesh = &basis.plan.extended_mesh;
    let g = grid_bernstein(basis, &basis.combination(cover))?;
    let mut splines = Vec::with_capacity(basis.len());
    let mut lambdas = Vec::with_capacity(basis.len());
    for (k, s) in basis.splines.iter().enumerate() {
        let b = grid_bernstein(basis, &basis.combination(s))?;
        let mut lambda = Rational::zero();
        for (cell, (bc, gc)) in b.iter().zip(&g).enumerate() {
            for (bv, gv) in bc.iter().zip(gc) {
                if !bv.is_negative() {
                    continue;
                }
                if !gv.is_positive() {
                    let (i, j) = (cell % (mesh.nx() - 1), cell / (mesh.nx() - 1));
                    return Err(NonnegError::NoPositiveCover {
                        spline: k,
                        x: format_rational(mesh.x(i)),
                        y: format_rational(mesh.y(j)),
                    });
                }
                lambda = lambda.max(ceil(&(-bv / gv)));
            }
        }
        let mut dense = s.to_dense(basis.extended.len());
        for (i, c) in &cover.terms {
            dense[*i] += &lambda * c;
        }
        splines.push(PtSpline::from_dense(&dense));
        lambdas.push(lambda);
    }
    if !is_independent(&splines) {
        return Err(NonnegError::Dependent);
    }
    Ok(NonnegativeBasis { splines, lambdas })
}
