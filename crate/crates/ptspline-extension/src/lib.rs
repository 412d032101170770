//! Extension of T-meshes until a full basis of associated tensor B-splines
//! exists.
//!
//! An extension step lengthens one l-edge end to the next line it meets.
//! The greedy planner first grows vanished l-edges, then steps toward
//! diagonalizability, then toward a basis selection with no shortfall,
//! trying every step each round. Extending every horizontal T l-edge and
//! ray to a cross-cut is the fallback, and extending everything is the
//! last resort.

mod blocks;

pub use blocks::{edge_blocks, eee_block_structure};

use std::fmt;

use ptspline_basis::quota_shortfalls;
use ptspline_bspline::Edge;
use ptspline_exact::{format_rational, Rational};
use ptspline_mesh::{
    detect_vanished_ledges, diagonalization_obstruction, GridSegment, LEdgeKind, MeshError,
    Orientation, TMesh,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Strategy {
    MinimalGreedy,
    FullHorizontal,
}

/// How the extended mesh was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// The input needed no extension.
    Unchanged,
    Greedy,
    FullHorizontal,
    /// Every l-edge extended to a cross-cut.
    FullTensor,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Hi,
    Lo,
}

impl fmt::Display for End {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            End::Hi => "hi",
            End::Lo => "lo",
        })
    }
}

/// One l-edge end moved to the next line it meets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionStep {
    /// Id of the l-edge in the mesh the step was applied to.
    pub ledge: usize,
    pub orientation: Orientation,
    pub fixed: Rational,
    pub end: End,
    pub from: Rational,
    pub to: Rational,
}

impl fmt::Display for ExtensionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = Edge::new(
            self.orientation,
            self.fixed.clone(),
            self.from.clone().min(self.to.clone()),
            self.from.clone().max(self.to.clone()),
        );
        write!(
            f,
            "l-edge {} {} end -> {} ({e})",
            self.ledge,
            self.end,
            format_rational(&self.to)
        )
    }
}

#[derive(Debug, Clone)]
pub struct ExtensionPlan {
    /// Segments added up front, before any step.
    pub given: Vec<GridSegment>,
    pub steps: Vec<ExtensionStep>,
    pub extended_mesh: TMesh,
    /// Edges of the extended mesh not in the input, split at the vertices of
    /// the extended mesh.
    pub extended_edges: Vec<Edge>,
    pub route: Route,
}

impl ExtensionPlan {
    /// `mesh`, then the mesh with the given segments, then the mesh after
    /// each step.
    pub fn chain(&self, mesh: &TMesh) -> Vec<TMesh> {
        let mut out = vec![mesh.clone()];
        if !self.given.is_empty() {
            out.push(
                mesh.with_segments(&self.given)
                    .expect("given segments were applied once already"),
            );
        }
        for s in &self.steps {
            let last = out.last().expect("nonempty");
            let next = last
                .with_segments(&[step_segment(last, s)])
                .expect("steps end on existing lines");
            out.push(next);
        }
        out
    }
}

fn step_segment(mesh: &TMesh, s: &ExtensionStep) -> GridSegment {
    let (lines, fixed_lines) = match s.orientation {
        Orientation::Horizontal => (mesh.xs(), mesh.ys()),
        Orientation::Vertical => (mesh.ys(), mesh.xs()),
    };
    let idx = |v: &Rational, ls: &[Rational]| ls.binary_search(v).expect("grid line");
    let (a, b) = (idx(&s.from, lines), idx(&s.to, lines));
    GridSegment {
        orientation: s.orientation,
        fixed: idx(&s.fixed, fixed_lines),
        lo: a.min(b),
        hi: a.max(b),
    }
}

fn line_count(mesh: &TMesh, o: Orientation) -> usize {
    match o {
        Orientation::Horizontal => mesh.nx(),
        Orientation::Vertical => mesh.ny(),
    }
}

/// Next point past `end` of l-edge `id` where a perpendicular line (or the
/// boundary) is met.
fn next_crossing(mesh: &TMesh, id: usize, end: End) -> Option<usize> {
    let l = &mesh.ledges()[id];
    let g = l.grid;
    let meets = |t: usize| match g.orientation {
        Orientation::Horizontal => mesh.v_covered(t, g.fixed, g.fixed),
        Orientation::Vertical => mesh.h_covered(t, g.fixed, g.fixed),
    };
    let n = line_count(mesh, g.orientation);
    match end {
        End::Hi if g.hi + 1 < n => (g.hi + 1..n).find(|&t| meets(t)),
        End::Lo if g.lo > 0 => (0..g.lo).rev().find(|&t| meets(t)),
        _ => None,
    }
}

fn step(mesh: &TMesh, id: usize, end: End) -> Option<(ExtensionStep, TMesh)> {
    let to = next_crossing(mesh, id, end)?;
    let l = &mesh.ledges()[id];
    let g = l.grid;
    let from = match end {
        End::Hi => g.hi,
        End::Lo => g.lo,
    };
    let seg = GridSegment {
        orientation: g.orientation,
        fixed: g.fixed,
        lo: from.min(to),
        hi: from.max(to),
    };
    let next = mesh
        .with_segments(&[seg])
        .expect("an end moved to the next crossing keeps the mesh regular");
    let coord = |i: usize| match g.orientation {
        Orientation::Horizontal => mesh.x(i).clone(),
        Orientation::Vertical => mesh.y(i).clone(),
    };
    let s = ExtensionStep {
        ledge: id,
        orientation: g.orientation,
        fixed: l.fixed.clone(),
        end,
        from: coord(from),
        to: coord(to),
    };
    Some((s, next))
}

/// Mesh state measured against the goal; smaller is better.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct Progress {
    vanished: usize,
    obstruction: usize,
    shortfall: usize,
}

fn progress(mesh: &TMesh) -> Progress {
    let vanished = detect_vanished_ledges(mesh).len();
    let obstruction = diagonalization_obstruction(mesh).len();
    let shortfall = if vanished == 0 && obstruction == 0 {
        quota_shortfalls(mesh)
            .expect("diagonalizable without vanished l-edges")
            .iter()
            .map(|s| s.quota - s.found)
            .sum()
    } else {
        usize::MAX
    };
    Progress {
        vanished,
        obstruction,
        shortfall,
    }
}

fn is_done(mesh: &TMesh) -> bool {
    progress(mesh)
        == Progress {
            vanished: 0,
            obstruction: 0,
            shortfall: 0,
        }
}

/// Greedy single-crossing extension; gives up after `budget` steps.
fn greedy(mesh: &TMesh, budget: usize) -> Option<(Vec<ExtensionStep>, TMesh)> {
    let mut m = mesh.clone();
    let mut steps = Vec::new();
    loop {
        if is_done(&m) {
            return Some((steps, m));
        }
        if steps.len() >= budget {
            return None;
        }
        let vanished = detect_vanished_ledges(&m);
        let (s, next) = if let Some(&id) = vanished.first() {
            // L-edge ids already follow (orientation, fixed, lo).
            step(&m, id, End::Hi).or_else(|| step(&m, id, End::Lo))?
        } else {
            let mut best: Option<(
                (Progress, Orientation, usize, usize, End),
                ExtensionStep,
                TMesh,
            )> = None;
            for l in m.ledges().iter().filter(|l| l.kind != LEdgeKind::CrossCut) {
                for end in [End::Hi, End::Lo] {
                    let Some((s, next)) = step(&m, l.id, end) else {
                        continue;
                    };
                    let key = (progress(&next), l.orientation, l.grid.fixed, l.grid.lo, end);
                    if best.as_ref().is_none_or(|b| key < b.0) {
                        best = Some((key, s, next));
                    }
                }
            }
            let (_, s, next) = best?;
            (s, next)
        };
        steps.push(s);
        m = next;
    }
}

/// Walks every end of the selected l-edges to the boundary, one crossing
/// at a time.
fn extend_to_cross_cuts(
    mesh: &TMesh,
    select: impl Fn(&TMesh, usize) -> bool,
) -> (Vec<ExtensionStep>, TMesh) {
    let mut m = mesh.clone();
    let mut steps = Vec::new();
    'outer: loop {
        let ids: Vec<usize> = m
            .ledges()
            .iter()
            .filter(|l| l.kind != LEdgeKind::CrossCut)
            .map(|l| l.id)
            .collect();
        for id in ids {
            if !select(&m, id) {
                continue;
            }
            for end in [End::Hi, End::Lo] {
                if let Some((s, next)) = step(&m, id, end) {
                    steps.push(s);
                    m = next;
                    // Ids shift after every change.
                    continue 'outer;
                }
            }
        }
        return (steps, m);
    }
}

fn full_horizontal(mesh: &TMesh) -> (Vec<ExtensionStep>, TMesh, Route) {
    let vanished = detect_vanished_ledges(mesh);
    let original: Vec<(Orientation, usize)> = vanished
        .iter()
        .map(|&id| (mesh.ledges()[id].orientation, mesh.ledges()[id].grid.fixed))
        .collect();
    let (steps, ext) = extend_to_cross_cuts(mesh, |m, id| {
        let l = &m.ledges()[id];
        l.is_horizontal() || original.contains(&(l.orientation, l.grid.fixed))
    });
    if is_done(&ext) {
        return (steps, ext, Route::FullHorizontal);
    }
    let (more, ext) = extend_to_cross_cuts(&ext, |_, _| true);
    let mut all = steps;
    all.extend(more);
    (all, ext, Route::FullTensor)
}

/// New edges of `ext` relative to `mesh`, split at the vertices of `ext`.
fn extended_edges(mesh: &TMesh, ext: &TMesh) -> Vec<Edge> {
    let mut out = Vec::new();
    for o in [Orientation::Horizontal, Orientation::Vertical] {
        let (nfixed, nt) = match o {
            Orientation::Horizontal => (ext.ny(), ext.nx()),
            Orientation::Vertical => (ext.nx(), ext.ny()),
        };
        let covered = |m: &TMesh, f: usize, a: usize, b: usize| match o {
            Orientation::Horizontal => m.h_covered(f, a, b),
            Orientation::Vertical => m.v_covered(f, a, b),
        };
        let vertex = |f: usize, t: usize| match o {
            Orientation::Horizontal => ext.vertex_index(t, f).is_some(),
            Orientation::Vertical => ext.vertex_index(f, t).is_some(),
        };
        let coord = |i: usize, fixed: bool| match (o, fixed) {
            (Orientation::Horizontal, true) | (Orientation::Vertical, false) => ext.y(i).clone(),
            _ => ext.x(i).clone(),
        };
        for f in 1..nfixed - 1 {
            let mut push = |a: usize, b: usize| {
                out.push(Edge::new(
                    o,
                    coord(f, true),
                    coord(a, false),
                    coord(b, false),
                ))
            };
            let mut start: Option<usize> = None;
            for t in 0..nt - 1 {
                let new = covered(ext, f, t, t + 1) && !covered(mesh, f, t, t + 1);
                match (start, new) {
                    (None, true) => start = Some(t),
                    (Some(a), false) => {
                        push(a, t);
                        start = None;
                    }
                    _ => {}
                }
                if let Some(a) = start {
                    if vertex(f, t + 1) {
                        push(a, t + 1);
                        start = None;
                    }
                }
            }
        }
    }
    out
}

/// Plans an extension of `mesh` after which a full basis of associated
/// tensor B-splines can be selected.
pub fn plan_extension(mesh: &TMesh, strategy: Strategy) -> ExtensionPlan {
    let (steps, ext, route) = if is_done(mesh) {
        (Vec::new(), mesh.clone(), Route::Unchanged)
    } else {
        let fallback = full_horizontal(mesh);
        match strategy {
            Strategy::FullHorizontal => fallback,
            Strategy::MinimalGreedy => match greedy(mesh, fallback.0.len()) {
                Some((steps, ext)) => (steps, ext, Route::Greedy),
                None => fallback,
            },
        }
    };
    ExtensionPlan {
        given: Vec::new(),
        extended_edges: extended_edges(mesh, &ext),
        steps,
        extended_mesh: ext,
        route,
    }
}

/// Plan that first adds `extra` (grid indices of `mesh`) and then
/// completes the extension as [`plan_extension`] would.
pub fn plan_from_segments(
    mesh: &TMesh,
    extra: &[GridSegment],
    strategy: Strategy,
) -> Result<ExtensionPlan, MeshError> {
    let start = mesh.with_segments(extra)?;
    let rest = plan_extension(&start, strategy);
    Ok(ExtensionPlan {
        given: extra.to_vec(),
        extended_edges: extended_edges(mesh, &rest.extended_mesh),
        ..rest
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ptspline_exact::int;
    use ptspline_mesh::generate::integer_tensor_mesh;

    #[test]
    fn tensor_mesh_needs_nothing() {
        let m = integer_tensor_mesh(2, 2, 3, 3);
        let plan = plan_extension(&m, Strategy::MinimalGreedy);
        assert!(plan.steps.is_empty());
        assert!(plan.extended_edges.is_empty());
        assert_eq!(plan.route, Route::Unchanged);
    }

    #[test]
    fn new_edges_split_at_vertices() {
        let m = integer_tensor_mesh(1, 1, 4, 4);
        let ext = m.clone();
        assert!(extended_edges(&m, &ext).is_empty());
        let e = Edge::new(Orientation::Horizontal, int(2), int(1), int(3));
        assert_eq!(e.to_string(), "[1,3]x{2}");
    }
}
