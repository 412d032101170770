use std::collections::HashMap;

use ptspline_exact::Rational;

use crate::ledge::derive_ledges;
use crate::{Axis, Cell, GridSegment, MeshError, Orientation, Segment, TMesh, Vertex, VertexKind};

/// Merges overlapping or touching collinear segments into maximal ones.
/// Output is sorted by `(orientation, fixed, lo)`.
pub fn merge_intervals(segs: &[GridSegment]) -> Vec<GridSegment> {
    let mut sorted = segs.to_vec();
    sorted.sort();
    let mut out: Vec<GridSegment> = Vec::with_capacity(sorted.len());
    for s in sorted {
        match out.last_mut() {
            Some(last)
                if last.orientation == s.orientation
                    && last.fixed == s.fixed
                    && s.lo <= last.hi =>
            {
                last.hi = last.hi.max(s.hi);
            }
            _ => out.push(s),
        }
    }
    out
}

fn check_axis(values: &[Rational], axis: Axis) -> Result<(), MeshError> {
    if values.len() < 2 {
        return Err(MeshError::TooFewLines(axis));
    }
    for i in 1..values.len() {
        if values[i] <= values[i - 1] {
            return Err(MeshError::NotIncreasing { axis, index: i });
        }
    }
    Ok(())
}

fn to_grid(
    segs: &[Segment],
    orientation: Orientation,
    fixed_axis: &[Rational],
    range_axis: &[Rational],
) -> Result<Vec<GridSegment>, MeshError> {
    let mut out = Vec::with_capacity(segs.len());
    for (index, s) in segs.iter().enumerate() {
        let find = |axis: &[Rational], v: &Rational| {
            axis.binary_search(v).map_err(|_| MeshError::OffGrid {
                orientation,
                index,
                value: v.clone(),
            })
        };
        let fixed = find(fixed_axis, &s.fixed)?;
        let lo = find(range_axis, &s.lo)?;
        let hi = find(range_axis, &s.hi)?;
        if lo >= hi {
            return Err(MeshError::EmptySegment { orientation, index });
        }
        if fixed == 0 || fixed + 1 == fixed_axis.len() {
            return Err(MeshError::NonRectangularBoundary { orientation, index });
        }
        out.push(GridSegment {
            orientation,
            fixed,
            lo,
            hi,
        });
    }
    Ok(out)
}

/// Sorts segments and rejects overlapping or touching collinear pairs.
/// Returned indices in errors refer to the caller's input order.
fn sort_disjoint(segs: Vec<GridSegment>) -> Result<Vec<GridSegment>, MeshError> {
    let mut order: Vec<usize> = (0..segs.len()).collect();
    order.sort_by_key(|&i| segs[i]);
    for w in order.windows(2) {
        let (a, b) = (segs[w[0]], segs[w[1]]);
        if a.fixed == b.fixed && b.lo <= a.hi {
            return Err(MeshError::OverlapSegment {
                orientation: a.orientation,
                first: w[0].min(w[1]),
                second: w[0].max(w[1]),
            });
        }
    }
    Ok(order.into_iter().map(|i| segs[i]).collect())
}

fn lines_of(segs: &[GridSegment], n: usize) -> Vec<Vec<(usize, usize)>> {
    let mut lines = vec![Vec::new(); n];
    for s in segs {
        lines[s.fixed].push((s.lo, s.hi));
    }
    lines
}

fn passes(intervals: &[(usize, usize)], t: usize) -> bool {
    intervals.iter().any(|&(lo, hi)| lo < t && t < hi)
}

fn ends(intervals: &[(usize, usize)], t: usize) -> bool {
    intervals.iter().any(|&(lo, hi)| lo == t || hi == t)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut a: usize) -> usize {
        while self.0[a] != a {
            self.0[a] = self.0[self.0[a]];
            a = self.0[a];
        }
        a
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Validates the input and derives cells, vertices and l-edges.
pub fn build_mesh(
    d1: usize,
    d2: usize,
    xs: Vec<Rational>,
    ys: Vec<Rational>,
    hsegs: Vec<Segment>,
    vsegs: Vec<Segment>,
) -> Result<TMesh, MeshError> {
    if d1 == 0 || d2 == 0 {
        return Err(MeshError::ZeroDegree(d1, d2));
    }
    check_axis(&xs, Axis::X)?;
    check_axis(&ys, Axis::Y)?;
    let (nx, ny) = (xs.len(), ys.len());
    let h = sort_disjoint(to_grid(&hsegs, Orientation::Horizontal, &ys, &xs)?)?;
    let v = sort_disjoint(to_grid(&vsegs, Orientation::Vertical, &xs, &ys)?)?;
    let hlines = lines_of(&h, ny);
    let vlines = lines_of(&v, nx);

    // Every segment end must rest on the boundary or strictly inside an
    // orthogonal segment.
    let original_index = |segs: &[Segment], g: &GridSegment, orient: Orientation| {
        let (fa, ra) = match orient {
            Orientation::Horizontal => (&ys, &xs),
            Orientation::Vertical => (&xs, &ys),
        };
        segs.iter()
            .position(|s| s.fixed == fa[g.fixed] && s.lo == ra[g.lo] && s.hi == ra[g.hi])
            .unwrap_or(0)
    };
    for g in &h {
        for end in [g.lo, g.hi] {
            if end != 0 && end + 1 != nx && !passes(&vlines[end], g.fixed) {
                return Err(MeshError::DanglingSegment {
                    orientation: Orientation::Horizontal,
                    index: original_index(&hsegs, g, Orientation::Horizontal),
                    x: xs[end].clone(),
                    y: ys[g.fixed].clone(),
                });
            }
        }
    }
    for g in &v {
        for end in [g.lo, g.hi] {
            if end != 0 && end + 1 != ny && !passes(&hlines[end], g.fixed) {
                return Err(MeshError::DanglingSegment {
                    orientation: Orientation::Vertical,
                    index: original_index(&vsegs, g, Orientation::Vertical),
                    x: xs[g.fixed].clone(),
                    y: ys[end].clone(),
                });
            }
        }
    }
    for (i, x) in xs.iter().enumerate().take(nx - 1).skip(1) {
        if vlines[i].is_empty() {
            return Err(MeshError::UnusedGridLine {
                axis: Axis::X,
                value: x.clone(),
            });
        }
    }
    for (j, y) in ys.iter().enumerate().take(ny - 1).skip(1) {
        if hlines[j].is_empty() {
            return Err(MeshError::UnusedGridLine {
                axis: Axis::Y,
                value: y.clone(),
            });
        }
    }

    let cells = derive_cells(nx, ny, &hlines, &vlines)?;

    let mut vertices = Vec::new();
    let mut vertex_at = HashMap::new();
    for iy in 0..ny {
        for ix in 0..nx {
            let bx = ix == 0 || ix + 1 == nx;
            let by = iy == 0 || iy + 1 == ny;
            let kind = if bx || by {
                let touched =
                    (bx && by) || (bx && ends(&hlines[iy], ix)) || (by && ends(&vlines[ix], iy));
                touched.then_some(VertexKind::Boundary)
            } else {
                let (hp, vp) = (passes(&hlines[iy], ix), passes(&vlines[ix], iy));
                let (he, ve) = (ends(&hlines[iy], ix), ends(&vlines[ix], iy));
                if hp && vp {
                    Some(VertexKind::CrossingNode)
                } else if (hp && ve) || (vp && he) {
                    Some(VertexKind::TNode)
                } else {
                    None
                }
            };
            if let Some(kind) = kind {
                vertex_at.insert((ix, iy), vertices.len());
                vertices.push(Vertex {
                    ix,
                    iy,
                    x: xs[ix].clone(),
                    y: ys[iy].clone(),
                    kind,
                });
            }
        }
    }

    let mut mesh = TMesh {
        d1,
        d2,
        xs,
        ys,
        hsegs: h,
        vsegs: v,
        hlines,
        vlines,
        vertices,
        vertex_at,
        cells,
        ledges: Vec::new(),
    };
    mesh.ledges = derive_ledges(&mesh);
    Ok(mesh)
}

/// Tensor-product mesh: every interior grid line is a cross-cut.
pub fn tensor_mesh(
    d1: usize,
    d2: usize,
    xs: Vec<Rational>,
    ys: Vec<Rational>,
) -> Result<TMesh, MeshError> {
    let (x0, x1) = (xs.first().cloned(), xs.last().cloned());
    let (y0, y1) = (ys.first().cloned(), ys.last().cloned());
    let (Some(x0), Some(x1), Some(y0), Some(y1)) = (x0, x1, y0, y1) else {
        return Err(MeshError::TooFewLines(if xs.is_empty() {
            Axis::X
        } else {
            Axis::Y
        }));
    };
    let inner = |v: &[Rational]| {
        v.iter()
            .skip(1)
            .take(v.len().saturating_sub(2))
            .cloned()
            .collect::<Vec<_>>()
    };
    let hs = inner(&ys)
        .into_iter()
        .map(|y| Segment::new(y, x0.clone(), x1.clone()))
        .collect();
    let vs = inner(&xs)
        .into_iter()
        .map(|x| Segment::new(x, y0.clone(), y1.clone()))
        .collect();
    build_mesh(d1, d2, xs, ys, hs, vs)
}

fn derive_cells(
    nx: usize,
    ny: usize,
    hlines: &[Vec<(usize, usize)>],
    vlines: &[Vec<(usize, usize)>],
) -> Result<Vec<Cell>, MeshError> {
    let (cx, cy) = (nx - 1, ny - 1);
    let id = |i: usize, j: usize| j * cx + i;
    let mut uf = UnionFind((0..cx * cy).collect());
    for j in 0..cy {
        for i in 0..cx {
            // Edge between grid cells (i, j) and (i + 1, j) lies on x-line i + 1.
            if i + 1 < cx && !vlines[i + 1].iter().any(|&(lo, hi)| lo <= j && j < hi) {
                uf.union(id(i, j), id(i + 1, j));
            }
            if j + 1 < cy && !hlines[j + 1].iter().any(|&(lo, hi)| lo <= i && i < hi) {
                uf.union(id(i, j), id(i, j + 1));
            }
        }
    }
    let mut boxes: HashMap<usize, (Cell, usize)> = HashMap::new();
    for j in 0..cy {
        for i in 0..cx {
            let r = uf.find(id(i, j));
            let e = boxes.entry(r).or_insert((
                Cell {
                    ix0: i,
                    ix1: i + 1,
                    iy0: j,
                    iy1: j + 1,
                },
                0,
            ));
            e.0.ix0 = e.0.ix0.min(i);
            e.0.ix1 = e.0.ix1.max(i + 1);
            e.0.iy0 = e.0.iy0.min(j);
            e.0.iy1 = e.0.iy1.max(j + 1);
            e.1 += 1;
        }
    }
    let mut cells: Vec<Cell> = Vec::with_capacity(boxes.len());
    for (c, count) in boxes.into_values() {
        if (c.ix1 - c.ix0) * (c.iy1 - c.iy0) != count {
            return Err(MeshError::NonRectangularCell);
        }
        // No mesh line may run through the inside of a cell.
        for i in c.ix0 + 1..c.ix1 {
            if vlines[i].iter().any(|&(lo, hi)| lo < c.iy1 && c.iy0 < hi) {
                return Err(MeshError::NonRectangularCell);
            }
        }
        for j in c.iy0 + 1..c.iy1 {
            if hlines[j].iter().any(|&(lo, hi)| lo < c.ix1 && c.ix0 < hi) {
                return Err(MeshError::NonRectangularCell);
            }
        }
        cells.push(c);
    }
    cells.sort_by_key(|c| (c.iy0, c.ix0));
    Ok(cells)
}
