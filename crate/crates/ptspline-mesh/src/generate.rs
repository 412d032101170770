//! Random regular T-meshes for property tests.
//!
//! Meshes grow by splitting random cells with axis-parallel lines; a new
//! line is sometimes continued through neighbouring cells, which produces
//! long T l-edges, rays and cross-cuts. Every intermediate state is a valid
//! regular T-mesh.

use rand::Rng;

use ptspline_exact::{int, Rational};

use crate::{build_mesh, merge_intervals, GridSegment, Orientation, TMesh};

#[derive(Debug, Clone, Copy)]
pub struct MeshShape {
    pub d1: usize,
    pub d2: usize,
    /// Cells to reach (at least 1).
    pub cells: usize,
    /// Grid resolution per direction; coordinates live on `0..=resolution`.
    pub resolution: usize,
    /// Probability of continuing a new line into the next cell.
    pub continue_prob: f64,
}

impl Default for MeshShape {
    fn default() -> Self {
        MeshShape {
            d1: 2,
            d2: 2,
            cells: 20,
            resolution: 10,
            continue_prob: 0.6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Rect {
    x0: usize,
    x1: usize,
    y0: usize,
    y1: usize,
}

fn split_line(cells: &mut Vec<Rect>, idx: usize, vertical: bool, at: usize) -> (Rect, Rect) {
    let c = cells[idx];
    let (a, b) = if vertical {
        (Rect { x1: at, ..c }, Rect { x0: at, ..c })
    } else {
        (Rect { y1: at, ..c }, Rect { y0: at, ..c })
    };
    cells[idx] = a;
    cells.push(b);
    (a, b)
}

/// Extends a fresh line across the cell beyond `edge` while the coin says so.
fn continue_line<R: Rng>(
    rng: &mut R,
    cells: &mut Vec<Rect>,
    vertical: bool,
    at: usize,
    mut edge: usize,
    upward: bool,
    prob: f64,
    target: usize,
) {
    while cells.len() < target && rng.gen_bool(prob) {
        let next = cells.iter().position(|c| {
            if vertical {
                c.x0 < at && at < c.x1 && if upward { c.y0 == edge } else { c.y1 == edge }
            } else {
                c.y0 < at && at < c.y1 && if upward { c.x0 == edge } else { c.x1 == edge }
            }
        });
        let Some(i) = next else { return };
        let (a, _) = split_line(cells, i, vertical, at);
        edge = match (vertical, upward) {
            (true, true) => a.y1,
            (true, false) => a.y0,
            (false, true) => a.x1,
            (false, false) => a.x0,
        };
    }
}

/// Random regular T-mesh with about `shape.cells` cells and random integer
/// coordinates.
pub fn random_mesh<R: Rng>(rng: &mut R, shape: MeshShape) -> TMesh {
    let n = shape.resolution.max(2);
    let mut cells = vec![Rect {
        x0: 0,
        x1: n,
        y0: 0,
        y1: n,
    }];
    let mut attempts = 0;
    while cells.len() < shape.cells.max(1) && attempts < 10_000 {
        attempts += 1;
        let i = rng.gen_range(0..cells.len());
        let c = cells[i];
        let vertical = rng.gen_bool(0.5);
        let (lo, hi) = if vertical { (c.x0, c.x1) } else { (c.y0, c.y1) };
        if hi - lo < 2 {
            continue;
        }
        let at = rng.gen_range(lo + 1..hi);
        let (a, _) = split_line(&mut cells, i, vertical, at);
        let (start, end) = if vertical { (a.y0, a.y1) } else { (a.x0, a.x1) };
        continue_line(
            rng,
            &mut cells,
            vertical,
            at,
            end,
            true,
            shape.continue_prob,
            shape.cells,
        );
        continue_line(
            rng,
            &mut cells,
            vertical,
            at,
            start,
            false,
            shape.continue_prob,
            shape.cells,
        );
    }
    mesh_from_rects(rng, shape.d1, shape.d2, n, &cells)
}

fn mesh_from_rects<R: Rng>(rng: &mut R, d1: usize, d2: usize, n: usize, cells: &[Rect]) -> TMesh {
    let mut segs = Vec::new();
    for c in cells {
        for (fixed, lo, hi, orientation) in [
            (c.y0, c.x0, c.x1, Orientation::Horizontal),
            (c.y1, c.x0, c.x1, Orientation::Horizontal),
            (c.x0, c.y0, c.y1, Orientation::Vertical),
            (c.x1, c.y0, c.y1, Orientation::Vertical),
        ] {
            if fixed != 0 && fixed != n {
                segs.push(GridSegment {
                    orientation,
                    fixed,
                    lo,
                    hi,
                });
            }
        }
    }
    let segs = merge_intervals(&segs);
    // Keep only the coordinates in use and space them randomly.
    let mut used_x = vec![false; n + 1];
    let mut used_y = vec![false; n + 1];
    used_x[0] = true;
    used_x[n] = true;
    used_y[0] = true;
    used_y[n] = true;
    for s in &segs {
        match s.orientation {
            Orientation::Horizontal => used_y[s.fixed] = true,
            Orientation::Vertical => used_x[s.fixed] = true,
        }
    }
    let mut coords = |used: &[bool]| -> Vec<Option<Rational>> {
        let mut acc = 0i64;
        used.iter()
            .map(|&u| {
                u.then(|| {
                    let v = int(acc);
                    acc += rng.gen_range(1..=2);
                    v
                })
            })
            .collect()
    };
    let xmap = coords(&used_x);
    let ymap = coords(&used_y);
    let xs: Vec<Rational> = xmap.iter().flatten().cloned().collect();
    let ys: Vec<Rational> = ymap.iter().flatten().cloned().collect();
    let mut hs = Vec::new();
    let mut vs = Vec::new();
    for s in &segs {
        match s.orientation {
            Orientation::Horizontal => hs.push(crate::Segment::new(
                ymap[s.fixed].clone().expect("used"),
                xmap[s.lo].clone().expect("segment ends are used"),
                xmap[s.hi].clone().expect("segment ends are used"),
            )),
            Orientation::Vertical => vs.push(crate::Segment::new(
                xmap[s.fixed].clone().expect("used"),
                ymap[s.lo].clone().expect("segment ends are used"),
                ymap[s.hi].clone().expect("segment ends are used"),
            )),
        }
    }
    build_mesh(d1, d2, xs, ys, hs, vs).expect("cell splitting keeps the mesh regular")
}

/// `m x n` tensor-product mesh on integer coordinates.
pub fn integer_tensor_mesh(d1: usize, d2: usize, m: usize, n: usize) -> TMesh {
    let xs: Vec<Rational> = (0..=m as i64).map(int).collect();
    let ys: Vec<Rational> = (0..=n as i64).map(int).collect();
    crate::tensor_mesh(d1, d2, xs, ys).expect("tensor mesh is valid")
}
