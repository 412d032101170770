//! Tensor B-splines that fit a mesh, enumerated in grid indices.

use std::collections::BTreeSet;

use ptspline_bspline::{KnotVector, SplineTag, TensorBSpline};
use ptspline_mesh::{LEdge, LEdgeKind, Orientation, TMesh};

/// Knot vectors as grid indices, boundary indices possibly repeated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct IndexSpline {
    pub x: Vec<usize>,
    pub y: Vec<usize>,
}

impl IndexSpline {
    pub(crate) fn to_spline(&self, mesh: &TMesh, tag: SplineTag) -> TensorBSpline {
        let kv = |idx: &[usize], lines: &[ptspline_exact::Rational]| {
            KnotVector::new(idx.iter().map(|&i| lines[i].clone()).collect())
                .expect("indices are non-decreasing with distinct ends")
        };
        TensorBSpline::new(kv(&self.x, mesh.xs()), kv(&self.y, mesh.ys()), tag)
    }

    fn along(&self, o: Orientation) -> (&[usize], &[usize]) {
        match o {
            Orientation::Horizontal => (&self.x, &self.y),
            Orientation::Vertical => (&self.y, &self.x),
        }
    }
}

/// `lines` with a boundary index repeated to multiplicity `degree + 1`.
fn open_sequence(lines: &[usize], count: usize, degree: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(lines.len() + 2 * degree);
    if lines.first() == Some(&0) {
        out.extend(std::iter::repeat(0).take(degree));
    }
    out.extend_from_slice(lines);
    if lines.last() == Some(&(count - 1)) {
        out.extend(std::iter::repeat(count - 1).take(degree));
    }
    out
}

fn windows(seq: &[usize], len: usize) -> impl Iterator<Item = &[usize]> {
    seq.windows(len).filter(move |w| w[0] < w[len - 1])
}

/// Whether every knot line of `s` covers the whole support in the other
/// direction, i.e. the spline lies in the spline space of `mesh`.
pub(crate) fn fits(mesh: &TMesh, s: &IndexSpline) -> bool {
    let (xa, xb) = (s.x[0], *s.x.last().expect("knots"));
    let (ya, yb) = (s.y[0], *s.y.last().expect("knots"));
    let distinct_inside = |k: &[usize], n: usize| {
        k.windows(2)
            .all(|w| w[0] < w[1] || w[0] == 0 || w[0] == n - 1)
    };
    xa < xb
        && ya < yb
        && distinct_inside(&s.x, mesh.nx())
        && distinct_inside(&s.y, mesh.ny())
        && s.x.iter().all(|&i| mesh.v_covered(i, ya, yb))
        && s.y.iter().all(|&j| mesh.h_covered(j, xa, xb))
}

/// Whether `s` has a knot segment on the line of `l` that lies inside `l`.
pub(crate) fn associated(s: &IndexSpline, l: &LEdge) -> bool {
    let (tang, normal) = s.along(l.orientation);
    let g = l.grid;
    normal.contains(&g.fixed) && g.lo <= tang[0] && *tang.last().expect("knots") <= g.hi
}

/// The classical open-knot tensor basis over the cross-cuts.
pub(crate) fn cross_splines(mesh: &TMesh) -> Vec<IndexSpline> {
    let (d1, d2) = mesh.degrees();
    let full = |o: Orientation, n: usize| -> Vec<usize> {
        let mut v: Vec<usize> = vec![0];
        v.extend(
            mesh.ledges()
                .iter()
                .filter(|l| l.orientation == o && l.kind == LEdgeKind::CrossCut)
                .map(|l| l.grid.fixed),
        );
        v.push(n - 1);
        v.sort_unstable();
        v
    };
    let xs = open_sequence(&full(Orientation::Vertical, mesh.nx()), mesh.nx(), d1);
    let ys = open_sequence(&full(Orientation::Horizontal, mesh.ny()), mesh.ny(), d2);
    let mut out = Vec::new();
    for wx in windows(&xs, d1 + 2) {
        for wy in windows(&ys, d2 + 2) {
            out.push(IndexSpline {
                x: wx.to_vec(),
                y: wy.to_vec(),
            });
        }
    }
    out
}

/// Candidate associated with an l-edge, with its preference key.
#[derive(Debug, Clone)]
pub(crate) struct Candidate {
    pub spline: IndexSpline,
    pub key: (usize, usize, usize, usize, usize),
}

/// Splines associated with `l` whose knots in each direction are
/// consecutive among the lines that reach across the other direction's
/// span, plus the variants that stack a boundary knot and move a single
/// knot. Sorted by preference: least boundary stacking, fewest skipped
/// vertices of `l`, lowest tangential start, the knot on `l` nearest the
/// middle of the normal knots.
pub(crate) fn associated_candidates(mesh: &TMesh, l: &LEdge) -> Vec<Candidate> {
    let (d1, d2) = mesh.degrees();
    let o = l.orientation;
    let (dt, dn, nt, nn) = match o {
        Orientation::Horizontal => (d1, d2, mesh.nx(), mesh.ny()),
        Orientation::Vertical => (d2, d1, mesh.ny(), mesh.nx()),
    };
    // Perpendicular line `t` over the normal range, and parallel line `n`
    // over the tangential range.
    let covers_t = |t: usize, a: usize, b: usize| match o {
        Orientation::Horizontal => mesh.v_covered(t, a, b),
        Orientation::Vertical => mesh.h_covered(t, a, b),
    };
    let covers_n = |n: usize, a: usize, b: usize| match o {
        Orientation::Horizontal => mesh.h_covered(n, a, b),
        Orientation::Vertical => mesh.v_covered(n, a, b),
    };
    let g = l.grid;
    let f = g.fixed;
    let mut found: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for n0 in 0..=f {
        for n1 in f.max(n0 + 1)..nn {
            let tline: Vec<usize> = (g.lo..=g.hi).filter(|&t| covers_t(t, n0, n1)).collect();
            let tseq = open_sequence(&tline, nt, dt);
            let mut tangential: Vec<Vec<usize>> =
                windows(&tseq, dt + 2).map(|w| w.to_vec()).collect();
            if tline.first() == Some(&0) {
                for &t in &tline[1..] {
                    let mut w = vec![0; dt + 1];
                    w.push(t);
                    tangential.push(w);
                }
            }
            if tline.last() == Some(&(nt - 1)) && tline.len() > 1 {
                for &t in &tline[..tline.len() - 1] {
                    let mut w = vec![t];
                    w.extend(std::iter::repeat(nt - 1).take(dt + 1));
                    tangential.push(w);
                }
            }
            for w in tangential {
                let (ta, tb) = (w[0], w[dt + 1]);
                let nline: Vec<usize> = (0..nn).filter(|&n| covers_n(n, ta, tb)).collect();
                let nseq = open_sequence(&nline, nn, dn);
                let mut normals: Vec<Vec<usize>> = windows(&nseq, dn + 2)
                    .filter(|v| v[0] == n0 && v[dn + 1] == n1 && v.contains(&f))
                    .map(|v| v.to_vec())
                    .collect();
                if n0 == 0 && n1 == f {
                    let mut v = vec![0; dn + 1];
                    v.push(f);
                    normals.push(v);
                }
                if n0 == f && n1 == nn - 1 {
                    let mut v = vec![f];
                    v.extend(std::iter::repeat(nn - 1).take(dn + 1));
                    normals.push(v);
                }
                for v in normals {
                    found.insert((w.clone(), v));
                }
            }
        }
    }
    let vertex_t: BTreeSet<usize> = l
        .vertices
        .iter()
        .map(|&v| {
            let v = &mesh.vertices()[v];
            match o {
                Orientation::Horizontal => v.ix,
                Orientation::Vertical => v.iy,
            }
        })
        .collect();
    let stacking = |k: &[usize]| k.windows(2).filter(|w| w[0] == w[1]).count();
    let mut out: Vec<Candidate> = found
        .into_iter()
        .filter_map(|(w, v)| {
            let spline = match o {
                Orientation::Horizontal => IndexSpline { x: w, y: v },
                Orientation::Vertical => IndexSpline { x: v, y: w },
            };
            if !fits(mesh, &spline) {
                return None;
            }
            let (w, v) = spline.along(o);
            let skipped = vertex_t
                .range(w[0] + 1..w[dt + 1])
                .filter(|t| !w.contains(t))
                .count();
            let pos = v
                .iter()
                .position(|&n| n == f)
                .expect("normal knots contain l");
            let key = (
                stacking(w) + stacking(v),
                skipped,
                w[0],
                (2 * pos).abs_diff(dn + 1),
                pos,
            );
            Some(Candidate { spline, key })
        })
        .collect();
    out.sort_by(|a, b| a.key.cmp(&b.key).then_with(|| a.spline.cmp(&b.spline)));
    out
}
