//! Exact smoothness, independence and completeness checks on combinations
//! of tensor B-splines.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use ptspline_bspline::{BiPoly, Edge, SplineCombination};
use ptspline_exact::certify::exact_sparse_rank;
use ptspline_exact::modular::{rank_mod, PRIMES};
use ptspline_exact::Rational;
use ptspline_mesh::{Orientation, TMesh};

use crate::cells::Coverage;
use crate::dimension::oracle_dimension;

/// First failed matching condition found on a grid edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub edge: Edge,
    /// Derivative order that fails to match.
    pub order: usize,
    /// Whether the edge lies on the mesh (otherwise it is interior to a cell).
    pub on_mesh: bool,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "order-{} mismatch across {} ({})",
            self.order,
            self.edge,
            if self.on_mesh {
                "mesh edge"
            } else {
                "cell interior"
            }
        )
    }
}

/// Mesh grid refined by every knot of the given functions.
struct Grid {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
}

impl Grid {
    fn new<'a>(mesh: &TMesh, fs: impl IntoIterator<Item = &'a SplineCombination>) -> Grid {
        let mut xs: BTreeSet<Rational> = mesh.xs().iter().cloned().collect();
        let mut ys: BTreeSet<Rational> = mesh.ys().iter().cloned().collect();
        let (x0, x1) = (mesh.xs()[0].clone(), mesh.xs().last().unwrap().clone());
        let (y0, y1) = (mesh.ys()[0].clone(), mesh.ys().last().unwrap().clone());
        for f in fs {
            for (_, b) in &f.terms {
                xs.extend(b.x.knots().iter().filter(|k| **k > x0 && **k < x1).cloned());
                ys.extend(b.y.knots().iter().filter(|k| **k > y0 && **k < y1).cloned());
            }
        }
        Grid {
            xs: xs.into_iter().collect(),
            ys: ys.into_iter().collect(),
        }
    }

    fn w(&self) -> usize {
        self.xs.len() - 1
    }

    fn h(&self) -> usize {
        self.ys.len() - 1
    }

    /// Per-grid-cell polynomials, `None` where no term is supported.
    fn polynomials(&self, f: &SplineCombination, degrees: (usize, usize)) -> Vec<Option<BiPoly>> {
        let mut out = Vec::with_capacity(self.w() * self.h());
        for j in 0..self.h() {
            for i in 0..self.w() {
                let (x0, x1, y0, y1) = (&self.xs[i], &self.xs[i + 1], &self.ys[j], &self.ys[j + 1]);
                let live = f
                    .terms
                    .iter()
                    .any(|(c, b)| !c.is_zero() && b.overlaps(x0, x1, y0, y1));
                if !live {
                    out.push(None);
                    continue;
                }
                let p = f
                    .cell_polynomial(x0, x1, y0, y1, degrees)
                    .expect("grid contains every knot");
                out.push(Some(p));
            }
        }
        out
    }
}

fn traces_match(
    a: Option<&BiPoly>,
    b: Option<&BiPoly>,
    vertical: bool,
    offset: &Rational,
    orders: usize,
    degrees: (usize, usize),
) -> Option<usize> {
    if a.is_none() && b.is_none() {
        return None;
    }
    let zero = BiPoly::zero(degrees.0, degrees.1);
    let a = a.unwrap_or(&zero);
    let b = b.unwrap_or(&zero);
    (0..orders).find(|&k| {
        if vertical {
            a.trace_s(offset, k) != b.trace_s(&Rational::zero(), k)
        } else {
            a.trace_t(offset, k) != b.trace_t(&Rational::zero(), k)
        }
    })
}

/// First edge where `f` fails to be `C^(d-1)` across mesh edges or
/// polynomial inside mesh cells.
pub fn smoothness_violation(f: &SplineCombination, mesh: &TMesh) -> Option<Violation> {
    let degrees = mesh.degrees();
    let grid = Grid::new(mesh, [f]);
    let polys = grid.polynomials(f, degrees);
    let cov = Coverage::new(mesh);
    let (w, h) = (grid.w(), grid.h());
    for j in 0..h {
        for i in 0..w {
            let here = polys[j * w + i].as_ref();
            if i + 1 < w {
                let x = &grid.xs[i + 1];
                let on_mesh = cov.vertical(x, &grid.ys[j], &grid.ys[j + 1]);
                let orders = if on_mesh { degrees.0 } else { degrees.0 + 1 };
                let width = x - &grid.xs[i];
                let next = polys[j * w + i + 1].as_ref();
                if let Some(order) = traces_match(here, next, true, &width, orders, degrees) {
                    return Some(Violation {
                        edge: Edge::new(
                            Orientation::Vertical,
                            x.clone(),
                            grid.ys[j].clone(),
                            grid.ys[j + 1].clone(),
                        ),
                        order,
                        on_mesh,
                    });
                }
            }
            if j + 1 < h {
                let y = &grid.ys[j + 1];
                let on_mesh = cov.horizontal(y, &grid.xs[i], &grid.xs[i + 1]);
                let orders = if on_mesh { degrees.1 } else { degrees.1 + 1 };
                let height = y - &grid.ys[j];
                let next = polys[(j + 1) * w + i].as_ref();
                if let Some(order) = traces_match(here, next, false, &height, orders, degrees) {
                    return Some(Violation {
                        edge: Edge::new(
                            Orientation::Horizontal,
                            y.clone(),
                            grid.xs[i].clone(),
                            grid.xs[i + 1].clone(),
                        ),
                        order,
                        on_mesh,
                    });
                }
            }
        }
    }
    None
}

pub fn verify_smoothness(f: &SplineCombination, mesh: &TMesh) -> bool {
    smoothness_violation(f, mesh).is_none()
}

/// Exact rank of the functions as vectors of per-cell coefficients.
pub fn function_rank(fs: &[SplineCombination], mesh: &TMesh) -> usize {
    let degrees = mesh.degrees();
    let grid = Grid::new(mesh, fs);
    let per = (degrees.0 + 1) * (degrees.1 + 1);
    let rows: Vec<Vec<(usize, Rational)>> = fs
        .iter()
        .map(|f| {
            let mut row = Vec::new();
            for (cell, p) in grid.polynomials(f, degrees).into_iter().enumerate() {
                if let Some(p) = p {
                    for (k, c) in p.flatten().enumerate() {
                        if !c.is_zero() {
                            row.push((cell * per + k, c.clone()));
                        }
                    }
                }
            }
            row
        })
        .collect();
    // Full rank modulo any prime already certifies full rank over Q.
    for &p in &PRIMES[..2] {
        if rank_mod(&rows, p) == Some(rows.len()) {
            return rows.len();
        }
    }
    exact_sparse_rank(&rows)
}

pub fn verify_independence(fs: &[SplineCombination], mesh: &TMesh) -> bool {
    function_rank(fs, mesh) == fs.len()
}

pub fn verify_completeness(fs: &[SplineCombination], mesh: &TMesh) -> bool {
    fs.len() == oracle_dimension(mesh) && verify_independence(fs, mesh)
}
