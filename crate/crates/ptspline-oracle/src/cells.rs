//! Cells and edge coverage recomputed straight from the raw segments.

use ptspline_exact::Rational;
use ptspline_mesh::{Segment, TMesh};

/// Segment coverage test on exact coordinates.
pub struct Coverage {
    hsegs: Vec<Segment>,
    vsegs: Vec<Segment>,
}

impl Coverage {
    pub fn new(mesh: &TMesh) -> Self {
        Coverage {
            hsegs: mesh.hsegments(),
            vsegs: mesh.vsegments(),
        }
    }

    /// Whether `[a, b] x {y}` lies on a horizontal segment.
    pub fn horizontal(&self, y: &Rational, a: &Rational, b: &Rational) -> bool {
        self.hsegs
            .iter()
            .any(|s| &s.fixed == y && &s.lo <= a && b <= &s.hi)
    }

    /// Whether `{x} x [a, b]` lies on a vertical segment.
    pub fn vertical(&self, x: &Rational, a: &Rational, b: &Rational) -> bool {
        self.vsegs
            .iter()
            .any(|s| &s.fixed == x && &s.lo <= a && b <= &s.hi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleCell {
    pub x0: Rational,
    pub x1: Rational,
    pub y0: Rational,
    pub y1: Rational,
}

/// Mesh cells as unions of grid cells not separated by a segment, plus the
/// grid-cell to mesh-cell map (indexed `j * (nx - 1) + i`).
pub fn mesh_cells(mesh: &TMesh) -> (Vec<OracleCell>, Vec<usize>) {
    let xs = mesh.xs();
    let ys = mesh.ys();
    let (w, h) = (xs.len() - 1, ys.len() - 1);
    let cov = Coverage::new(mesh);
    let mut parent: Vec<usize> = (0..w * h).collect();
    fn root(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for j in 0..h {
        for i in 0..w {
            if i + 1 < w && !cov.vertical(&xs[i + 1], &ys[j], &ys[j + 1]) {
                let (a, b) = (
                    root(&mut parent, j * w + i),
                    root(&mut parent, j * w + i + 1),
                );
                parent[a] = b;
            }
            if j + 1 < h && !cov.horizontal(&ys[j + 1], &xs[i], &xs[i + 1]) {
                let (a, b) = (
                    root(&mut parent, j * w + i),
                    root(&mut parent, (j + 1) * w + i),
                );
                parent[a] = b;
            }
        }
    }
    let mut id_of_root = vec![usize::MAX; w * h];
    let mut bounds: Vec<(usize, usize, usize, usize)> = Vec::new();
    let mut map = vec![0; w * h];
    for j in 0..h {
        for i in 0..w {
            let r = root(&mut parent, j * w + i);
            if id_of_root[r] == usize::MAX {
                id_of_root[r] = bounds.len();
                bounds.push((i, i + 1, j, j + 1));
            }
            let id = id_of_root[r];
            let b = &mut bounds[id];
            b.0 = b.0.min(i);
            b.1 = b.1.max(i + 1);
            b.2 = b.2.min(j);
            b.3 = b.3.max(j + 1);
            map[j * w + i] = id;
        }
    }
    let cells = bounds
        .into_iter()
        .map(|(i0, i1, j0, j1)| OracleCell {
            x0: xs[i0].clone(),
            x1: xs[i1].clone(),
            y0: ys[j0].clone(),
            y1: ys[j1].clone(),
        })
        .collect();
    (cells, map)
}
