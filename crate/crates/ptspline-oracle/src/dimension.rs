//! Spline-space dimension as the nullity of the cross-cell matching system.

use std::collections::HashSet;

use num_traits::{One, Zero};

use ptspline_exact::certify::{self, Nullity};
use ptspline_exact::{int, Rational};
use ptspline_mesh::TMesh;

use crate::cells::{mesh_cells, OracleCell};

/// Cells beyond which exact elimination gets slow. Only a guideline.
pub const SIZE_GUIDELINE: usize = 200;

/// Unknowns are per-cell coefficient tables in `(x - x0)^i (y - y0)^j`,
/// index `cell * (d1 + 1) * (d2 + 1) + i * (d2 + 1) + j`.
#[derive(Debug, Clone)]
pub struct ConformalitySystem {
    pub degrees: (usize, usize),
    pub cells: Vec<OracleCell>,
    pub rows: Vec<Vec<(usize, Rational)>>,
}

impl ConformalitySystem {
    pub fn ncols(&self) -> usize {
        self.cells.len() * (self.degrees.0 + 1) * (self.degrees.1 + 1)
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut r = Rational::one();
    for i in 0..k {
        r = r * int((n - i) as i64) / int((i + 1) as i64);
    }
    r
}

fn falling(n: usize, k: usize) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * int((n - i) as i64))
}

fn power(base: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * base)
}

/// Coefficient of `u^m` in the `k`-th normal derivative trace of the monomial
/// `n^a t^b` at `n = n0`, with tangential `t = u + h`.
fn trace_entry(a: usize, b: usize, k: usize, m: usize, n0: &Rational, h: &Rational) -> Rational {
    if a < k || b < m {
        return Rational::zero();
    }
    falling(a, k) * power(n0, a - k) * binomial(b, m) * power(h, b - m)
}

struct EdgeSide {
    cell: usize,
    /// Normal offset of the edge from the cell origin.
    normal: Rational,
    /// Tangential offset of the edge start from the cell origin.
    tangential: Rational,
}

/// Rows equating normal derivatives of orders `0..orders` on a shared edge.
/// `vertical` means the edge runs along `y` and `x` is the normal direction.
fn matching_rows(
    degrees: (usize, usize),
    vertical: bool,
    orders: usize,
    left: &EdgeSide,
    right: &EdgeSide,
    out: &mut Vec<Vec<(usize, Rational)>>,
) {
    let (d1, d2) = degrees;
    let per = (d1 + 1) * (d2 + 1);
    let tangential_degree = if vertical { d2 } else { d1 };
    for k in 0..orders {
        for m in 0..=tangential_degree {
            let mut row = Vec::new();
            for (side, sign) in [(left, int(1)), (right, int(-1))] {
                for i in 0..=d1 {
                    for j in 0..=d2 {
                        let (a, b) = if vertical { (i, j) } else { (j, i) };
                        let v = trace_entry(a, b, k, m, &side.normal, &side.tangential);
                        if !v.is_zero() {
                            row.push((side.cell * per + i * (d2 + 1) + j, &v * &sign));
                        }
                    }
                }
            }
            if !row.is_empty() {
                out.push(row);
            }
        }
    }
}

pub fn conformality_system(mesh: &TMesh) -> ConformalitySystem {
    let degrees = mesh.degrees();
    let (cells, map) = mesh_cells(mesh);
    let xs = mesh.xs();
    let ys = mesh.ys();
    let w = xs.len() - 1;
    let h = ys.len() - 1;
    let mut seen = HashSet::new();
    let mut rows = Vec::new();
    for j in 0..h {
        for i in 0..w {
            let a = map[j * w + i];
            if i + 1 < w {
                let b = map[j * w + i + 1];
                if a != b && seen.insert((a, b)) {
                    let x = &xs[i + 1];
                    let left = EdgeSide {
                        cell: a,
                        normal: x - &cells[a].x0,
                        tangential: &ys[j] - &cells[a].y0,
                    };
                    let right = EdgeSide {
                        cell: b,
                        normal: x - &cells[b].x0,
                        tangential: &ys[j] - &cells[b].y0,
                    };
                    matching_rows(degrees, true, degrees.0, &left, &right, &mut rows);
                }
            }
            if j + 1 < h {
                let b = map[(j + 1) * w + i];
                if a != b && seen.insert((a, b)) {
                    let y = &ys[j + 1];
                    let below = EdgeSide {
                        cell: a,
                        normal: y - &cells[a].y0,
                        tangential: &xs[i] - &cells[a].x0,
                    };
                    let above = EdgeSide {
                        cell: b,
                        normal: y - &cells[b].y0,
                        tangential: &xs[i] - &cells[b].x0,
                    };
                    matching_rows(degrees, false, degrees.1, &below, &above, &mut rows);
                }
            }
        }
    }
    ConformalitySystem {
        degrees,
        cells,
        rows,
    }
}

/// Exact nullity together with how it was certified.
pub fn oracle_nullity(mesh: &TMesh) -> Nullity {
    let sys = conformality_system(mesh);
    certify::nullity(&sys.rows, sys.ncols())
}

/// Dimension of the space of `C^(d1-1, d2-1)` piecewise polynomials of
/// bi-degree `(d1, d2)` over the mesh.
pub fn oracle_dimension(mesh: &TMesh) -> usize {
    oracle_nullity(mesh).nullity
}

pub fn exceeds_size_guideline(mesh: &TMesh) -> bool {
    mesh_cells(mesh).0.len() > SIZE_GUIDELINE
}
