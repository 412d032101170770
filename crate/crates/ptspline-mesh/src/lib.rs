//! Regular T-meshes over exact rational coordinates.
//!
//! A mesh is given by its global grid lines and its maximal interior
//! segments; the bounding rectangle is implicit. Cells, vertices and the
//! l-edge classification are derived once at construction and the mesh is
//! immutable afterwards.

mod build;
mod ledge;
mod partition;

pub mod generate;

pub use build::{build_mesh, merge_intervals, tensor_mesh};
pub use ledge::{classify_ledges, Census, LEdge, LEdgeKind};
pub use partition::{
    detect_vanished_ledges, diagonalization_obstruction, dimension_diagonalizable, dimension_split,
    is_diagonalizable, ray_partition, t_partition, DimensionError, DimensionSplit, ReducedLEdge,
    TPartition,
};

use std::collections::HashMap;
use std::fmt;

use ptspline_exact::Rational;
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Orientation::Horizontal => "horizontal",
            Orientation::Vertical => "vertical",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axis::X => "x",
            Axis::Y => "y",
        })
    }
}

/// Axis-parallel segment in rational coordinates. For a horizontal segment
/// `fixed` is its y coordinate and `lo..hi` its x range.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Segment {
    pub fixed: Rational,
    pub lo: Rational,
    pub hi: Rational,
}

impl Segment {
    pub fn new(fixed: Rational, lo: Rational, hi: Rational) -> Self {
        Segment { fixed, lo, hi }
    }
}

/// Axis-parallel segment in grid indices. For a horizontal segment `fixed`
/// indexes `ys` and `lo`, `hi` index `xs`; the other way round for vertical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GridSegment {
    pub orientation: Orientation,
    pub fixed: usize,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    Boundary,
    TNode,
    CrossingNode,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub ix: usize,
    pub iy: usize,
    pub x: Rational,
    pub y: Rational,
    pub kind: VertexKind,
}

/// Cell as a half-open index rectangle `[ix0, ix1] x [iy0, iy1]` of grid lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub ix0: usize,
    pub ix1: usize,
    pub iy0: usize,
    pub iy1: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("polynomial degrees must be at least 1, got ({0}, {1})")]
    ZeroDegree(usize, usize),
    #[error("need at least two {0} coordinates")]
    TooFewLines(Axis),
    #[error("{axis} coordinates are not strictly increasing at index {index}")]
    NotIncreasing { axis: Axis, index: usize },
    #[error("{orientation} segment {index}: coordinate {value} is not a grid line")]
    OffGrid {
        orientation: Orientation,
        index: usize,
        value: Rational,
    },
    #[error("{orientation} segment {index} has lo >= hi")]
    EmptySegment {
        orientation: Orientation,
        index: usize,
    },
    #[error("{orientation} segment {index} lies on or outside the bounding rectangle")]
    NonRectangularBoundary {
        orientation: Orientation,
        index: usize,
    },
    #[error("{orientation} segments {first} and {second} overlap or touch on the same line")]
    OverlapSegment {
        orientation: Orientation,
        first: usize,
        second: usize,
    },
    #[error("{orientation} segment {index} has an unsupported end at ({x}, {y})")]
    DanglingSegment {
        orientation: Orientation,
        index: usize,
        x: Rational,
        y: Rational,
    },
    #[error("{axis} coordinate {value} carries no segment")]
    UnusedGridLine { axis: Axis, value: Rational },
    #[error("the segments do not split the rectangle into rectangular cells")]
    NonRectangularCell,
    #[error("t-partition order is not a permutation of the T l-edges")]
    InvalidOrder,
}

/// A validated regular T-mesh.
#[derive(Debug, Clone)]
pub struct TMesh {
    d1: usize,
    d2: usize,
    xs: Vec<Rational>,
    ys: Vec<Rational>,
    hsegs: Vec<GridSegment>,
    vsegs: Vec<GridSegment>,
    /// Per y index, the `(lo, hi)` x-index intervals of horizontal segments.
    hlines: Vec<Vec<(usize, usize)>>,
    /// Per x index, the `(lo, hi)` y-index intervals of vertical segments.
    vlines: Vec<Vec<(usize, usize)>>,
    vertices: Vec<Vertex>,
    vertex_at: HashMap<(usize, usize), usize>,
    cells: Vec<Cell>,
    ledges: Vec<LEdge>,
}

impl PartialEq for TMesh {
    fn eq(&self, other: &Self) -> bool {
        self.d1 == other.d1
            && self.d2 == other.d2
            && self.xs == other.xs
            && self.ys == other.ys
            && self.hsegs == other.hsegs
            && self.vsegs == other.vsegs
    }
}

impl Eq for TMesh {}

fn covered(intervals: &[(usize, usize)], a: usize, b: usize) -> bool {
    intervals.iter().any(|&(lo, hi)| lo <= a && b <= hi)
}

impl TMesh {
    pub fn degrees(&self) -> (usize, usize) {
        (self.d1, self.d2)
    }

    pub fn xs(&self) -> &[Rational] {
        &self.xs
    }

    pub fn ys(&self) -> &[Rational] {
        &self.ys
    }

    pub fn nx(&self) -> usize {
        self.xs.len()
    }

    pub fn ny(&self) -> usize {
        self.ys.len()
    }

    pub fn x(&self, i: usize) -> &Rational {
        &self.xs[i]
    }

    pub fn y(&self, j: usize) -> &Rational {
        &self.ys[j]
    }

    pub fn x_index(&self, x: &Rational) -> Option<usize> {
        self.xs.binary_search(x).ok()
    }

    pub fn y_index(&self, y: &Rational) -> Option<usize> {
        self.ys.binary_search(y).ok()
    }

    /// Interior segments in grid indices, horizontal ones sorted by
    /// `(fixed, lo)`.
    pub fn grid_hsegments(&self) -> &[GridSegment] {
        &self.hsegs
    }

    pub fn grid_vsegments(&self) -> &[GridSegment] {
        &self.vsegs
    }

    pub fn grid_segments(&self) -> impl Iterator<Item = &GridSegment> {
        self.hsegs.iter().chain(self.vsegs.iter())
    }

    pub fn to_segment(&self, g: &GridSegment) -> Segment {
        match g.orientation {
            Orientation::Horizontal => Segment::new(
                self.ys[g.fixed].clone(),
                self.xs[g.lo].clone(),
                self.xs[g.hi].clone(),
            ),
            Orientation::Vertical => Segment::new(
                self.xs[g.fixed].clone(),
                self.ys[g.lo].clone(),
                self.ys[g.hi].clone(),
            ),
        }
    }

    pub fn hsegments(&self) -> Vec<Segment> {
        self.hsegs.iter().map(|g| self.to_segment(g)).collect()
    }

    pub fn vsegments(&self) -> Vec<Segment> {
        self.vsegs.iter().map(|g| self.to_segment(g)).collect()
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_index(&self, ix: usize, iy: usize) -> Option<usize> {
        self.vertex_at.get(&(ix, iy)).copied()
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn ledges(&self) -> &[LEdge] {
        &self.ledges
    }

    pub fn is_boundary_x(&self, ix: usize) -> bool {
        ix == 0 || ix + 1 == self.xs.len()
    }

    pub fn is_boundary_y(&self, iy: usize) -> bool {
        iy == 0 || iy + 1 == self.ys.len()
    }

    /// Whether the horizontal line `y = ys[iy]` is part of the mesh over the
    /// whole x-index range `[a, b]` (boundary lines always are).
    pub fn h_covered(&self, iy: usize, a: usize, b: usize) -> bool {
        self.is_boundary_y(iy) || covered(&self.hlines[iy], a, b)
    }

    /// Whether the vertical line `x = xs[ix]` is part of the mesh over the
    /// whole y-index range `[a, b]`.
    pub fn v_covered(&self, ix: usize, a: usize, b: usize) -> bool {
        self.is_boundary_x(ix) || covered(&self.vlines[ix], a, b)
    }

    /// Whether the point `(ix, iy)` lies on the mesh lines in the given
    /// orientation (interior of a segment, its end, or the boundary).
    pub fn on_line(&self, orientation: Orientation, ix: usize, iy: usize) -> bool {
        match orientation {
            Orientation::Horizontal => self.h_covered(iy, ix, ix),
            Orientation::Vertical => self.v_covered(ix, iy, iy),
        }
    }

    /// Interior segment containing the given grid edge, if any.
    pub fn segment_containing(
        &self,
        orientation: Orientation,
        fixed: usize,
        a: usize,
        b: usize,
    ) -> Option<GridSegment> {
        let (lines, segs) = match orientation {
            Orientation::Horizontal => (&self.hlines, &self.hsegs),
            Orientation::Vertical => (&self.vlines, &self.vsegs),
        };
        lines
            .get(fixed)?
            .iter()
            .find(|&&(lo, hi)| lo <= a && b <= hi)?;
        segs.iter()
            .find(|s| s.fixed == fixed && s.lo <= a && b <= s.hi)
            .copied()
    }

    /// Number of interior vertices (T-nodes and crossings).
    pub fn interior_vertex_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind != VertexKind::Boundary)
            .count()
    }

    /// Multiplicity of the knot line: `d + 1` on the boundary, 1 inside.
    pub fn multiplicity(&self, axis: Axis, index: usize) -> usize {
        match axis {
            Axis::X if self.is_boundary_x(index) => self.d1 + 1,
            Axis::Y if self.is_boundary_y(index) => self.d2 + 1,
            _ => 1,
        }
    }

    /// Degree in the direction along a segment of the given orientation.
    pub fn tangential_degree(&self, orientation: Orientation) -> usize {
        match orientation {
            Orientation::Horizontal => self.d1,
            Orientation::Vertical => self.d2,
        }
    }

    /// Whether the mesh has no interior T-nodes (every segment is a cross-cut).
    pub fn is_tensor(&self) -> bool {
        self.ledges.iter().all(|l| l.kind == LEdgeKind::CrossCut)
    }

    /// Copy of this mesh with additional segments merged in.
    pub fn with_segments(&self, extra: &[GridSegment]) -> Result<TMesh, MeshError> {
        let mut h: Vec<GridSegment> = self.hsegs.clone();
        let mut v: Vec<GridSegment> = self.vsegs.clone();
        for g in extra {
            match g.orientation {
                Orientation::Horizontal => h.push(*g),
                Orientation::Vertical => v.push(*g),
            }
        }
        let hs = merge_intervals(&h)
            .iter()
            .map(|g| self.to_segment(g))
            .collect();
        let vs = merge_intervals(&v)
            .iter()
            .map(|g| self.to_segment(g))
            .collect();
        build_mesh(self.d1, self.d2, self.xs.clone(), self.ys.clone(), hs, vs)
    }

    /// Same topology, different degrees.
    pub fn with_degrees(&self, d1: usize, d2: usize) -> Result<TMesh, MeshError> {
        build_mesh(
            d1,
            d2,
            self.xs.clone(),
            self.ys.clone(),
            self.hsegments(),
            self.vsegments(),
        )
    }
}
